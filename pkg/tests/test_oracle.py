import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdcauchy import catalog
from pdcauchy.distribution import DensityAtom, DiracAtom, Distribution
from pdcauchy.errors import UnsupportedAtom
from pdcauchy.oracle import (NO, UNKNOWN, YES, GroundTruth, fourier_truth, hermitian_form,
                             quadratic_form_truth)


def test_ground_truth_invariants():
    with pytest.raises(ValueError):
        GroundTruth(NO, "no evidence")
    with pytest.raises(ValueError):
        GroundTruth("perhaps", "")


def test_fourier_truth_on_catalog(fixture):
    gt = fourier_truth(fixture.distribution)
    assert gt.pd == (YES if fixture.pd else NO)
    if gt.pd == NO:
        assert gt.evidence["kind"] in ("density", "point_mass", "non_measure")


def test_fourier_evidence_details():
    ev = fourier_truth(Distribution.of(DiracAtom(derivative_order=1))).evidence
    assert ev["kind"] == "density"  # (i xi) is complex away from 0
    ev = fourier_truth(Distribution.of(DensityAtom("sine", 1.0))).evidence
    assert ev["kind"] == "point_mass" and abs(ev["xi"]) == 1.0
    ev = fourier_truth(Distribution.of(DensityAtom("constant", poly=(0, 0, 1)))).evidence
    assert ev["kind"] == "non_measure" and ev["order"] == 2
    # sin(xi)/xi is most negative near 4.49
    ev = fourier_truth(Distribution.of(DensityAtom("indicator", 1.0))).evidence
    assert abs(abs(ev["xi"]) - 4.4934) < 1e-2


def test_fourier_unknown_and_unsupported():
    # 2 e^{-t^2/2} - e^{-t^2/8} has a nonnegative transform but is not certified termwise
    F = Distribution.of(DensityAtom("gaussian", 1.0, weight=2.0),
                        DensityAtom("gaussian", 2.0, weight=-0.25))
    assert fourier_truth(F).pd == UNKNOWN
    with pytest.raises(UnsupportedAtom):
        fourier_truth(Distribution.of(DensityAtom("bump", 1.0)))


def test_quadratic_form_refutes_negative_dirac():
    gt = quadratic_form_truth(Distribution.of(DiracAtom(weight=-1.0)), 5)
    assert gt.pd == NO
    ev = gt.evidence
    assert ev["kind"] == "test_function" and ev["trial"] == 0 and ev["seed"] == 0
    assert ev["value"][0] < -ev["threshold"]


def test_quadratic_form_is_reproducible():
    F = catalog.get("indicator").distribution
    a = quadratic_form_truth(F, 64, seed=0)
    b = quadratic_form_truth(F, 64, seed=0)
    assert a.pd == NO and a.evidence == b.evidence


def test_quadratic_form_never_refutes_pd_sample():
    for name in ("gaussian", "dirac_comb_tight", "cosine"):
        assert quadratic_form_truth(catalog.get(name).distribution, 40, seed=7).pd == UNKNOWN


@given(st.integers(2, 8), st.integers(0, 1000))
def test_hermitian_form_real_for_real_even_f(m, seed):
    rng = np.random.default_rng(seed)
    F = Distribution.of(DensityAtom("laplace", 1.0), DensityAtom("cosine", 2.0, weight=0.3))
    x = rng.uniform(-5, 5, m)
    c = rng.normal(size=m) + 1j * rng.normal(size=m)
    q, scale = hermitian_form(F, x, c)
    assert abs(q.imag) <= 1e-12 * scale
    assert q.real >= -1e-12 * scale
