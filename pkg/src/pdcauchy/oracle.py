"""Independent ground truth for positive definiteness.

``fourier_truth`` builds the Fourier transform of every atom from a closed
form catalog (convention ``g^(xi) = int g(t) e^{-i xi t} dt``) and asks
whether the total is a nonnegative measure.  ``quadratic_form_truth`` tries
to refute positive definiteness directly with random test functions.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy as sp

from .distribution import (DensityAtom, DiracAtom, Distribution, TestFunction, component_gram,
                           pair_mixture_detail, pair_test_detail, random_test_function)
from .distribution.atoms import TRIG_KINDS
from .errors import UnsupportedAtom
from .monotone import Tolerance

YES, NO, UNKNOWN = "yes", "no", "unknown"

_XI = sp.Symbol("xi", real=True)
_P = sp.Symbol("p", positive=True)

# base transforms; p is the atom parameter
_CATALOG = {
    "gaussian": sp.sqrt(2 * sp.pi) * _P * sp.exp(-(_P * _XI) ** 2 / 2),
    "laplace": 2 * _P / (_P ** 2 + _XI ** 2),
    "indicator": 2 * sp.sin(_P * _XI) / _XI,
    "triangle": 4 * sp.sin(_P * _XI / 2) ** 2 / (_P * _XI ** 2),
}
# bases whose transform is a nonnegative function
_NONNEG = ("gaussian", "laplace", "triangle")


@dataclass
class GroundTruth:
    pd: str
    reason: str
    evidence: dict | None = None

    def __post_init__(self):
        if self.pd not in (YES, NO, UNKNOWN):
            raise ValueError(f"unknown ground truth {self.pd!r}")
        if self.pd == NO and not self.evidence:
            raise ValueError("a negative ground truth needs evidence")

    def to_dict(self) -> dict:
        return {"pd": self.pd, "reason": self.reason, "evidence": self.evidence}


@lru_cache(maxsize=None)
def _density_transform(kind: str, poly: tuple):
    """Numerical callable ``(xi, p) -> sum_d c_d (i d/dxi)^d base^(xi)``."""
    base = _CATALOG[kind]
    expr = 0
    deriv = base
    for d, c in enumerate(poly):
        if d:
            deriv = sp.diff(deriv, _XI)
        if c:
            expr += sp.nsimplify(c) * sp.I ** d * deriv
    return sp.lambdify((_XI, _P), sp.simplify(expr), "numpy")


@dataclass
class _FourierObject:
    points: dict = field(default_factory=lambda: defaultdict(complex))  # (freq, order) -> coef
    densities: list = field(default_factory=list)  # (callable, certified_nonneg, label, width)
    dirac: list = field(default_factory=list)


def _density_scale(atom: DensityAtom) -> float:
    """Frequency range over which the transform has interesting structure."""
    p = atom.param
    if atom.kind == "gaussian":
        return 12.0 / p
    if atom.kind == "laplace":
        return 50.0 * p
    return 40.0 / p


def _build(F: Distribution) -> _FourierObject:
    obj = _FourierObject()
    for atom in F.atoms:
        if isinstance(atom, DiracAtom):
            obj.dirac.append(atom)
            continue
        if atom.kind in TRIG_KINDS:
            for coef, w in atom.exponentials():
                freq = w + atom.modulation
                for d, c in enumerate(atom.poly):
                    if c:
                        key = (round(freq, 12), d)
                        obj.points[key] += atom.weight * coef * c * 2 * math.pi * 1j ** d
            continue
        if atom.kind not in _CATALOG:
            raise UnsupportedAtom(f"no closed-form Fourier transform for a {atom.kind} atom")
        fn = _density_transform(atom.kind, atom.poly)
        m, p, w = atom.modulation, atom.param, atom.weight

        def g(xi, fn=fn, m=m, p=p, w=w):
            return w * np.asarray(fn(xi - m, p), dtype=complex) * np.ones_like(xi)

        certified = (atom.kind in _NONNEG and atom.degree == 0
                     and w.imag == 0 and w.real >= 0 and atom.poly[0] >= 0)
        obj.densities.append((g, certified, atom.kind, _density_scale(atom) + abs(m)))
    return obj


def _dirac_density(atoms: list[DiracAtom]):
    def g(xi):
        out = np.zeros_like(xi, dtype=complex)
        for a in atoms:
            u = xi - a.modulation
            out += a.weight * (1j * u) ** a.derivative_order * np.exp(-1j * a.location * u)
        return out
    return g


def _dirac_certified(atoms: list[DiracAtom]) -> bool:
    """Diagonal dominance certificate for a real nonnegative trigonometric sum."""
    if not atoms:
        return True
    if any(a.derivative_order for a in atoms):
        return False
    if len({a.modulation for a in atoms}) != 1:
        return False
    coef = defaultdict(complex)
    for a in atoms:
        coef[a.location] += a.weight
    for c, w in coef.items():
        if abs(w - coef.get(-c, 0).conjugate()) > 1e-14 * max(1.0, abs(w)):
            return False
    w0 = coef.get(0.0, 0j)
    off = sum(abs(w) for c, w in coef.items() if c != 0.0)
    return w0.imag == 0 and w0.real >= off


def _scan_grid(obj: _FourierObject) -> np.ndarray:
    span = 20.0
    for _, _, _, width in obj.densities:
        span = max(span, width)
    for a in obj.dirac:
        span = max(span, abs(a.modulation) + 20.0)
        if a.location:
            span = max(span, abs(a.modulation) + 8 * math.pi / abs(a.location))
    # irrational offset avoids removable singularities at exact points
    n = 40001
    return np.linspace(-span, span, n) + span / (n * math.sqrt(2.0))


def fourier_truth(F: Distribution) -> GroundTruth:
    """Is the Fourier transform of F a nonnegative tempered measure?"""
    obj = _build(F)

    ref = max([abs(c) for c in obj.points.values()] + [1.0])
    for (freq, order), coef in sorted(obj.points.items()):
        if abs(coef) <= 1e-12 * ref:
            continue
        if order >= 1:
            return GroundTruth(NO, f"transform contains a derivative of order {order} of a "
                               f"point mass, which is not a measure",
                               {"kind": "non_measure", "xi": freq, "order": order,
                                "coefficient": [coef.real, coef.imag]})
        if coef.real < -1e-12 * ref or abs(coef.imag) > 1e-12 * ref:
            return GroundTruth(NO, "transform has a negative or complex point mass",
                               {"kind": "point_mass", "xi": freq,
                                "coefficient": [coef.real, coef.imag]})

    parts = [g for g, _, _, _ in obj.densities]
    if obj.dirac:
        parts.append(_dirac_density(obj.dirac))
    certified = all(c for _, c, _, _ in obj.densities) and _dirac_certified(obj.dirac)

    if parts:
        xi = _scan_grid(obj)
        vals = [np.nan_to_num(g(xi)) for g in parts]
        total = sum(vals)
        mag = sum(np.abs(v) for v in vals)
        theta = 1e-9 * mag + 1e-12 * float(np.max(mag))
        bad = (total.real < -theta) | (np.abs(total.imag) > theta)
        if bad.any():
            # report the most negative (or most complex) frequency
            score = np.where(bad, np.maximum(-total.real, np.abs(total.imag)), -1.0)
            i = int(np.argmax(score))
            return GroundTruth(NO, "transform density is negative or complex at a frequency",
                               {"kind": "density", "xi": float(xi[i]),
                                "value": [float(total[i].real), float(total[i].imag)]})
    if certified:
        return GroundTruth(YES, "transform is a sum of nonnegative densities and point masses")
    return GroundTruth(UNKNOWN, "no negative frequency found, but the terms are not "
                       "individually certified nonnegative")


# --------------------------------------------------------------------------


def _continuous_function(F: Distribution) -> bool:
    return bool(F.atoms) and F.density_only and all(a.kind != "indicator" for a in F.atoms)


def hermitian_form(F: Distribution, points, coefs) -> tuple[complex, float]:
    """``sum f(x_j - x_k) c_j conj(c_k)`` and the matching magnitude scale."""
    x = np.asarray(points, dtype=float)
    c = np.asarray(coefs, dtype=complex)
    diff = x[:, None] - x[None, :]
    fv = F.evaluate(diff.ravel()).reshape(diff.shape)
    w = c[:, None] * c.conj()[None, :]
    return complex(np.sum(fv * w)), float(np.sum(np.abs(fv) * np.abs(w)))


def _extremal_amplitudes(F: Distribution, phi: TestFunction) -> list[TestFunction]:
    """Re-weight the components of phi to push the form towards a violation.

    With ``K_lm = (F, g_l * g_m_star)`` the form is ``u^H K u`` for
    ``u = conj(c)``; the lowest eigenvector of the Hermitian part and the
    extreme eigenvector of the anti-Hermitian part are the best candidates.
    """
    gram = component_gram(phi)
    n = len(gram)
    K = np.array([[pair_mixture_detail(F, gram[l][m])[0] for m in range(n)] for l in range(n)])
    herm = 0.5 * (K + K.conj().T)
    anti = -0.5j * (K - K.conj().T)
    out = []
    _, vecs = np.linalg.eigh(herm)
    cands = [vecs[:, 0]]
    vals_a, vecs_a = np.linalg.eigh(anti)
    cands.append(vecs_a[:, int(np.argmax(np.abs(vals_a)))])
    for u in cands:
        c = np.conj(u)
        out.append(TestFunction(tuple((complex(ci), p, w)
                                      for ci, (_, p, w) in zip(c, phi.components))))
    return out


def _violation(F: Distribution, phi: TestFunction, tol: Tolerance):
    value, err, mass = pair_test_detail(F, phi)
    theta = tol.threshold(mass)
    bad = err <= 0.5 * theta and (value.real + err < -theta or abs(value.imag) - err > theta)
    return bad, value, theta


def quadratic_form_truth(F: Distribution, trials: int, seed: int = 0,
                         tol: Tolerance | None = None, max_points: int = 8) -> GroundTruth:
    """Refutation-only probe with seeded Gaussian-mixture test functions.

    Trial k uses ``default_rng(seed + k)``.  Each trial tests the random
    mixture and two re-weightings of its components; for continuous density
    atoms it also evaluates the Hermitian form on a random point set.
    """
    tol = tol or Tolerance()
    check_form = _continuous_function(F)
    for trial in range(int(trials)):
        rng = np.random.default_rng(seed + trial)
        phi = random_test_function(rng)
        for cand in [phi] + _extremal_amplitudes(F, phi):
            bad, value, theta = _violation(F, cand, tol)
            if bad:
                return GroundTruth(NO, f"(F, phi * phi_star) has the wrong sign in trial {trial}", {
                    "kind": "test_function", "trial": trial, "seed": seed + trial,
                    "components": [[[c.real, c.imag], p, w] for c, p, w in cand.components],
                    "value": [value.real, value.imag], "threshold": theta})
        if check_form:
            m = int(rng.integers(2, max_points + 1))
            pts = rng.uniform(-5.0, 5.0, size=m)
            cs = rng.normal(size=m) + 1j * rng.normal(size=m)
            q, scale = hermitian_form(F, pts, cs)
            th = tol.threshold(scale)
            if q.real < -th or abs(q.imag) > th:
                return GroundTruth(NO, f"Hermitian form is negative or non-real in trial {trial}", {
                    "kind": "hermitian_form", "trial": trial, "seed": seed + trial,
                    "points": pts.tolist(), "coefficients": [[z.real, z.imag] for z in cs],
                    "value": [q.real, q.imag], "threshold": th})
    return GroundTruth(UNKNOWN, f"no refutation in {int(trials)} trials")
