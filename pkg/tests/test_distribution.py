import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdcauchy.distribution import (DensityAtom, DiracAtom, Distribution, TestFunction,
                                   order_bound, pair_cauchy_detail, pair_cauchy_kernel,
                                   pair_test_detail, pair_test_function, random_test_function)
from pdcauchy.errors import InsufficientPower, PoleOnAxis


# --- atoms ---------------------------------------------------------------

def test_atom_validation():
    with pytest.raises(ValueError):
        DensityAtom("gaussian")
    with pytest.raises(ValueError):
        DensityAtom("constant", 1.0)
    with pytest.raises(ValueError):
        DensityAtom("laplace", -1.0)
    with pytest.raises(ValueError):
        DensityAtom("nope", 1.0)
    with pytest.raises(ValueError):
        DiracAtom(derivative_order=-1)
    with pytest.raises(ValueError):
        DiracAtom(weight=float("nan"))
    with pytest.raises(ValueError):
        DensityAtom("cosine", 1.0, poly=(0, 0, 1), growth_degree=1)


def test_trailing_zero_coefficients_are_dropped():
    assert DensityAtom("gaussian", 1.0, poly=(1.0, 0.0, 0.0)).degree == 0


@pytest.mark.parametrize("F, bound", [
    (Distribution.of(DiracAtom()), 0),
    (Distribution.of(DiracAtom(derivative_order=3)), 3),
    (Distribution.of(DensityAtom("gaussian", 1.0)), 2),
    (Distribution.of(DensityAtom("constant", poly=(0, 0, 1))), 4),
    (Distribution.of(DensityAtom("cosine", 1.0), DiracAtom(derivative_order=1)), 2),
    (Distribution(), 0),
])
def test_order_bound(F, bound):
    assert order_bound(F) == bound


def test_distribution_algebra():
    F = Distribution.of(DiracAtom(weight=2.0))
    G = Distribution.of(DensityAtom("gaussian", 1.0, weight=-1j))
    H = (F + G) * 0.5
    assert len(H) == 2
    assert H.atoms[0].weight == 1.0 and H.atoms[1].weight == -0.5j
    assert (-F).atoms[0].weight == -2.0
    assert H.modulate(3.0).atoms[1].modulation == 3.0
    assert H.abs_companion().atoms[1].weight == 0.5
    assert not H.dirac_only and not H.density_only


def test_evaluate_kinds():
    t = np.array([0.0, 0.5, 2.0])
    assert np.allclose(DensityAtom("triangle", 1.0).evaluate(t), [1.0, 0.5, 0.0])
    assert np.allclose(DensityAtom("indicator", 1.0).evaluate(t), [1.0, 1.0, 0.0])
    assert np.allclose(DensityAtom("laplace", 2.0).evaluate(t), np.exp(-2 * t))
    assert np.allclose(DensityAtom("bump", 1.0).evaluate(t), [math.exp(-1), math.exp(-1 / 0.75), 0])
    g = DensityAtom("gaussian", 1.0, poly=(1.0, 2.0), modulation=1.0)
    assert np.allclose(g.evaluate(t), (1 + 2 * t) * np.exp(-t * t / 2) * np.exp(1j * t))
    with pytest.raises(ValueError):
        Distribution.of(DiracAtom()).evaluate(t)


# --- Cauchy pairings -----------------------------------------------------

def _mp_pairing(f, z, q, a=0.0, lo=-mp.inf, hi=mp.inf, pts=()):
    mp.mp.dps = 30
    g = lambda t: f(t) * mp.e ** (1j * a * t) / (z - t) ** q
    x, y = mp.re(z), abs(mp.im(z))
    near = [x + k * y * 4 ** j for j in range(6) for k in (-1, 1)]
    return complex(mp.quad(g, sorted([lo, *pts, x, hi, *near]), maxdegree=10))


def test_dirac_derivative_pairing():
    # (delta_c', psi) = -psi'(c) with psi = e^{iat}(z - t)^{-q}
    c, a, z, q = 0.3, 1.5, 1 + 2j, 3
    F = Distribution.of(DiracAtom(c, 1))
    want = -(1j * a * (z - c) ** -q + q * (z - c) ** (-q - 1)) * np.exp(1j * a * c)
    assert abs(pair_cauchy_kernel(F, a, z, q) - want) < 1e-15


@pytest.mark.parametrize("z, q", [(1j, 3), (0.3 + 0.01j, 11), (-2 - 0.5j, 1)])
def test_gaussian_pairing_against_mpmath(z, q):
    F = Distribution.of(DensityAtom("gaussian", 1.0, poly=(1.0, -0.5)))
    want = _mp_pairing(lambda t: (1 - 0.5 * t) * mp.e ** (-t * t / 2), mp.mpc(z), q, a=0.7)
    got, err = pair_cauchy_detail(F, 0.7, z, q)
    assert abs(got - want) <= 1e-11 * abs(want)
    assert err < 1e-9 * abs(want)


def test_laplace_pairing_against_mpmath():
    F = Distribution.of(DensityAtom("laplace", 1.0))
    want = _mp_pairing(lambda t: mp.e ** (-abs(t)), mp.mpc(0, 0.2), 4, pts=(0,))
    assert abs(pair_cauchy_kernel(F, 0.0, 0.2j, 4) - want) <= 1e-11 * abs(want)


@pytest.mark.parametrize("kind, param, poly, q", [
    ("cosine", 1.0, (1.0,), 3), ("sine", 2.0, (1.0,), 3), ("constant", None, (0, 0, 1), 5)])
def test_trig_residues_match_quadrature(kind, param, poly, q):
    F = Distribution.of(DensityAtom(kind, param, poly=poly))
    for z in (0.5j, -1 + 1j, 2 - 0.7j):
        exact = pair_cauchy_kernel(F, 0.4, z, q)
        quad, _ = pair_cauchy_detail(F, 0.4, z, q, method="quadrature", rtol=1e-10, atol=1e-9,
                                     max_evals=2_000_000)
        assert abs(exact - quad) <= 1e-8 * max(1.0, abs(exact))


def test_pole_and_power_errors():
    F = Distribution.of(DensityAtom("constant"))
    with pytest.raises(PoleOnAxis):
        pair_cauchy_kernel(F, 0.0, 1.0, 3)
    with pytest.raises(InsufficientPower):
        pair_cauchy_kernel(F, 0.0, 1j, 2)
    with pytest.raises(ValueError):
        pair_cauchy_kernel(F, 0.0, 1j, 0)


# --- test functions ------------------------------------------------------

def test_autocorrelation_matches_numeric_convolution():
    phi = TestFunction(((1 + 1j, 0.5, 0.7), (-0.3, -1.0, 1.2)))
    psi = phi.autocorrelation()
    x = np.linspace(-12, 12, 24001)
    dx = x[1] - x[0]
    for t in (-1.3, 0.0, 2.1):
        # (phi * phi_star)(t) = int phi(x) conj(phi(x - t)) dx
        num = np.sum(phi(x) * np.conj(phi(x - t))) * dx
        assert abs(psi(t) - num) < 1e-10


def test_dirac_pairing_is_l2_norm():
    phi = TestFunction(((2.0, 0.0, 1.0),))
    # int |phi|^2 = 4 sqrt(pi)
    assert pair_test_function(Distribution.of(DiracAtom()), phi) == pytest.approx(4 * math.sqrt(math.pi))


@given(st.integers(0, 10_000))
def test_pd_fixture_gives_real_nonnegative_form(seed):
    rng = np.random.default_rng(seed)
    phi = random_test_function(rng)
    F = Distribution.of(DensityAtom("gaussian", 1.3))
    v, err, mass = pair_test_detail(F, phi)
    assert v.real >= -1e-10 * mass
    assert abs(v.imag) <= 1e-10 * mass


def test_random_test_function_is_seeded():
    a = random_test_function(np.random.default_rng(5))
    b = random_test_function(np.random.default_rng(5))
    assert a == b
    for _, p, w in a.components:
        assert -5 <= p <= 5 and 0.3 <= w <= 2.0
