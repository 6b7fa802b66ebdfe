"""Numerical self-checks of the identities the checker relies on.

Each suite returns a ``SuiteResult`` listing its cases with the measured
residual and the bound it was held to.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .distribution import DensityAtom, Distribution, pair_cauchy_kernel
from .quadrature import adaptive, graded_points
from .transform import (CauchyParams, axis_derivative, cauchy_smooth, cauchy_transform,
                        kernel_closed_form, kernel_integral, plemelj_residual)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases}


def _finish(name: str, cases: list, t0: float) -> SuiteResult:
    return SuiteResult(name, all(c["passed"] for c in cases), cases, time.perf_counter() - t0)


def kernel_identity(qs=range(7), ys=(0.5, 1.0, 2.0), ts=(-3.0, 0.0, 5.0),
                    bound: float = 1e-8) -> SuiteResult:
    """Half-line Laplace integrals of x^q against their closed forms, both axes."""
    t0 = time.perf_counter()
    cases = []
    for sign in (1.0, -1.0):
        for q in qs:
            for y in ys:
                for t in ts:
                    yy = sign * y
                    got, _ = kernel_integral(q, yy, t)
                    want = kernel_closed_form(q, yy, t)
                    rel = abs(complex(got) - want) / abs(want)
                    cases.append({"q": q, "y": yy, "t": t, "residual": rel, "bound": bound,
                                  "passed": rel <= bound})
    return _finish("kernel-identity", cases, t0)


INTERCHANGE_PAIRS = (
    (DensityAtom("bump", 1.0), 0, DensityAtom("gaussian", 1.0), 0.5),
    (DensityAtom("bump", 1.5), 1, DensityAtom("laplace", 1.0), 0.7),
    (DensityAtom("triangle", 1.0), 0, DensityAtom("gaussian", 0.7), 0.4),
)


def _nested(u: DensityAtom, m: int, g: DensityAtom, y: float) -> complex:
    """(g, u~(., y)) with the smoothing evaluated inside the outer integral."""
    T = 12.0 * g.param if g.kind == "gaussian" else 40.0 / g.param

    def f(ts):
        return np.array([complex(g.evaluate(t)) * cauchy_smooth(u, m, y, float(t))
                         for t in np.atleast_1d(ts)])

    pts = sorted(set(graded_points(0.0, max(y, 0.25), -T, T) + g.kinks() + u.kinks()))
    return adaptive(f, pts, rtol=1e-10, atol=1e-14).value


def _iterated(u: DensityAtom, m: int, g: DensityAtom, y: float) -> complex:
    """(i/pi) int u(x) (g_t, (x + iy - t)^{-(m+1)}) dx."""
    G = Distribution.of(g)

    def f(xs):
        return np.array([complex(u.evaluate(x))
                         * pair_cauchy_kernel(G, 0.0, complex(x, y), m + 1, rtol=1e-12)
                         for x in np.atleast_1d(xs)])

    lo, hi = u.support
    pts = sorted(set([lo, hi] + u.kinks()))
    return 1j / math.pi * adaptive(f, pts, rtol=1e-10, atol=1e-14).value


def interchange(pairs=INTERCHANGE_PAIRS, bound: float = 1e-7) -> SuiteResult:
    t0 = time.perf_counter()
    cases = []
    for u, m, g, y in pairs:
        a, b = _nested(u, m, g, y), _iterated(u, m, g, y)
        rel = abs(a - b) / max(abs(a), abs(b))
        cases.append({"u": f"{u.kind}({u.param})", "m": m, "F": f"{g.kind}({g.param})", "y": y,
                      "nested": [a.real, a.imag], "iterated": [b.real, b.imag],
                      "residual": rel, "bound": bound, "passed": rel <= bound})
    return _finish("interchange", cases, t0)


def plemelj(ys=(0.1, 0.05, 0.025), ratio_range=(1.5, 2.5)) -> SuiteResult:
    """First-order decay of the boundary defect for the standard bump."""
    t0 = time.perf_counter()
    u = DensityAtom("bump", 1.0)
    res = [plemelj_residual(u, 0, y) for y in ys]
    cases = []
    for i, (y, r) in enumerate(zip(ys, res)):
        case = {"m": 0, "y": y, "residual": r, "passed": True}
        if i:
            ratio = res[i - 1] / r if r else math.inf
            case["ratio"] = ratio
            case["passed"] = r < res[i - 1] and ratio_range[0] <= ratio <= ratio_range[1]
        cases.append(case)
    r1, r2 = plemelj_residual(u, 1, 0.1), plemelj_residual(u, 1, 0.05)
    cases.append({"m": 1, "y": 0.1, "residual": r1, "passed": True})
    cases.append({"m": 1, "y": 0.05, "residual": r2, "passed": r2 < r1})
    return _finish("plemelj", cases, t0)


ANALYTICITY_POINTS = (complex(1, 1), complex(-2, 0.5), complex(0, 3))


def analyticity(fixtures=None, points=ANALYTICITY_POINTS, h: float = 1e-4,
                bound: float = 1e-5) -> SuiteResult:
    """Discrete Cauchy-Riemann residual of both transforms on a 5-point stencil."""
    t0 = time.perf_counter()
    fixtures = fixtures if fixtures is not None else list(catalog.CATALOG.values())
    cases = []
    for fx in fixtures:
        params = CauchyParams.auto(fx.distribution)
        for j in (1, 2):
            for z in points:
                f = lambda w: cauchy_transform(fx.distribution, params, j, w)
                c = f(z)
                dx = (f(z + h) - f(z - h)) / (2 * h)
                dy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
                r = abs(dx + 1j * dy)
                # at an exact zero of the transform fall back to the first-order
                # size |Im z| |f'| so the stencil error is not held to zero
                ref = max(abs(c), abs(z.imag) * abs(dx))
                cases.append({"fixture": fx.name, "j": j, "z": [z.real, z.imag], "residual": r,
                              "value": abs(c), "bound": bound * ref, "passed": r <= bound * ref})
    return _finish("analyticity", cases, t0)


def derivatives(fixtures=None, ys=(0.5, 2.0), s_max: int = 3, h: float = 1e-4,
                bound: float = 1e-6) -> SuiteResult:
    """Exact axis derivatives against central differences of the level below."""
    t0 = time.perf_counter()
    fixtures = fixtures if fixtures is not None else list(catalog.CATALOG.values())
    cases = []
    for fx in fixtures:
        F = fx.distribution
        params = CauchyParams.auto(F)
        for j in (1, 2):
            for y in ys:
                for s in range(1, s_max + 1):
                    hi = axis_derivative(F, params, j, y + h, s - 1).value
                    lo = axis_derivative(F, params, j, y - h, s - 1).value
                    exact = axis_derivative(F, params, j, y, s)
                    fd = (hi - lo) / (2 * h)
                    ref = max(abs(exact.value), exact.scale * math.exp(
                        math.lgamma(2 * params.n + s + 1) - math.lgamma(2 * params.n + 1)) / math.pi)
                    r = abs(fd - exact.value)
                    cases.append({"fixture": fx.name, "j": j, "y": y, "s": s, "residual": r,
                                  "bound": bound * ref, "passed": r <= bound * ref})
    return _finish("derivatives", cases, t0)


SUITES = {
    "kernel-identity": kernel_identity,
    "interchange": interchange,
    "plemelj": plemelj,
    "analyticity": analyticity,
    "derivatives": derivatives,
}


def run_suites(names) -> list[SuiteResult]:
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        out.append(SUITES[name]())
    return out
