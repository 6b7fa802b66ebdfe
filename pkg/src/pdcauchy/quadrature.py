"""Adaptive Gauss-Legendre quadrature with honest error estimates.

Every panel is integrated with an n-point and a 2n-point Gauss-Legendre rule;
the higher-order value is kept and their difference is the (conservative)
panel error.  A roundoff floor proportional to the integral of ``|f|`` is
added so that heavy cancellation shows up in the returned error instead of
silently corrupting the value.  Panel sums use ``math.fsum``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureFailure

EPS = float(np.finfo(float).eps)
DEFAULT_MAX_EVALS = 200_000
ROUNDOFF_FACTOR = 50.0


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    evaluations: int
    l1: float


@lru_cache(maxsize=None)
def _rule(n: int, dtype=float) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    if np.dtype(dtype) == np.dtype(float):
        return x, w
    # polish double-precision nodes by Newton steps in the wider type
    x = x.astype(dtype)
    for _ in range(3):
        p0, p1 = np.ones_like(x), x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1)
        x = x - p1 / dp
    p0, p1 = np.ones_like(x), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    w = 2 / ((1 - x * x) * dp * dp)
    return x, w


def csum(values) -> complex:
    """Correctly rounded sum of a sequence of complex numbers."""
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    points: Sequence[float],
    *,
    rtol: float = 1e-10,
    atol: float = 0.0,
    max_evals: int = DEFAULT_MAX_EVALS,
    order: int = 10,
    dtype=float,
) -> QuadResult:
    """Integrate a vectorized ``f`` over ``[points[0], points[-1]]``.

    Interior ``points`` are used as initial panel boundaries (kinks, peaks).
    Iteration stops when the summed panel error is below
    ``max(atol, rtol*|value|)`` or when every panel is roundoff limited.
    Raises QuadratureFailure once ``max_evals`` would be exceeded.
    """
    pts = np.unique(np.asarray(points, dtype=float))
    if pts.size < 2:
        return QuadResult(0j, 0.0, 0, 0.0)
    xl, wl = _rule(order, dtype)
    xh, wh = _rule(2 * order, dtype)
    nodes = np.concatenate([xl, xh])
    per_panel = nodes.size
    extended = np.dtype(dtype) != np.dtype(float)
    eps = float(np.finfo(dtype).eps)
    cdtype = np.result_type(dtype, 1j)

    a_all = np.empty(0, dtype=dtype)
    b_all = np.empty(0, dtype=dtype)
    val_all = np.empty(0, dtype=cdtype)
    err_all = np.empty(0)
    floor_all = np.empty(0)
    l1_all = np.empty(0)

    pts = pts.astype(dtype)
    new_a, new_b = pts[:-1], pts[1:]
    evals = 0
    while True:
        if evals + new_a.size * per_panel > max_evals:
            raise QuadratureFailure(
                f"quadrature budget of {max_evals} evaluations exhausted "
                f"(estimated error {float(np.sum(np.maximum(err_all, floor_all))):.3e})"
            )
        mid = 0.5 * (new_a + new_b)
        half = 0.5 * (new_b - new_a)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        fx = np.asarray(f(x.ravel())).reshape(x.shape)
        evals += x.size
        lo = fx[:, : xl.size]
        hi = fx[:, xl.size:]
        i_lo = half * (lo @ wl)
        i_hi = half * (hi @ wh)
        l1 = np.abs(half) * (np.abs(hi) @ wh)
        err = np.abs(i_hi - i_lo).astype(float)
        l1 = l1.astype(float)
        floor = ROUNDOFF_FACTOR * eps * l1

        a_all = np.concatenate([a_all, new_a])
        b_all = np.concatenate([b_all, new_b])
        val_all = np.concatenate([val_all, np.asarray(i_hi, dtype=cdtype)])
        err_all = np.concatenate([err_all, err])
        floor_all = np.concatenate([floor_all, floor])
        l1_all = np.concatenate([l1_all, l1])

        total = complex(np.sum(val_all)) if extended else csum(val_all)
        tol = max(atol, rtol * abs(total))
        est = np.maximum(err_all, floor_all)
        total_err = float(np.sum(est))
        if total_err <= tol:
            break
        share = tol / a_all.size
        refine = (err_all > floor_all) & (err_all > share)
        if not refine.any():
            break
        keep = ~refine
        ra, rb = a_all[refine], b_all[refine]
        mids = 0.5 * (ra + rb)
        new_a = np.concatenate([ra, mids])
        new_b = np.concatenate([mids, rb])
        a_all, b_all = a_all[keep], b_all[keep]
        val_all, err_all = val_all[keep], err_all[keep]
        floor_all, l1_all = floor_all[keep], l1_all[keep]

    return QuadResult(total, total_err, evals, float(np.sum(l1_all)))


def graded_points(center: float, width: float, lo: float, hi: float,
                  ratio: float = 4.0) -> list[float]:
    """Breakpoints clustered geometrically around ``center`` inside [lo, hi].

    Used to resolve a peak of width ``width`` (e.g. a near-pole) without
    waiting for bisection to find it.
    """
    out = [lo, hi]
    if lo < center < hi:
        out.append(center)
    if width <= 0:
        return sorted(out)
    d = width / ratio
    while d < (hi - lo):
        for p in (center - d, center + d):
            if lo < p < hi:
                out.append(p)
        d *= ratio
    return sorted(set(out))
