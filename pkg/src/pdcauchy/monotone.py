"""Complete and absolute monotonicity tests on sampled derivatives.

Each tested quantity is sign-normalized so that monotonicity means
``Re(v) >= 0`` and ``Im(v) == 0``.  A point fails only when the violation
exceeds the threshold and the quadrature error is at most half of it, which
keeps negative verdicts sound.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import NonUniformGrid
from .transform import AxisSample

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class GridSpec:
    y_min: float = 1e-2
    y_max: float = 1e2
    count: int = 25
    spacing: str = "log"

    def __post_init__(self):
        if not (self.y_min > 0 and self.y_max > self.y_min):
            raise ValueError("grid needs 0 < y_min < y_max")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError("grid needs at least 2 points")
        if self.spacing not in ("log", "linear"):
            raise ValueError("spacing must be 'log' or 'linear'")
        object.__setattr__(self, "count", int(self.count))

    def points(self) -> list[float]:
        if self.spacing == "log":
            pts = np.geomspace(self.y_min, self.y_max, self.count)
        else:
            pts = np.linspace(self.y_min, self.y_max, self.count)
        return [float(p) for p in pts]

    def mirrored(self) -> list[float]:
        return [-p for p in self.points()]

    def to_dict(self) -> dict:
        return {"y_min": self.y_min, "y_max": self.y_max, "count": self.count,
                "spacing": self.spacing}


@dataclass(frozen=True)
class Tolerance:
    rel: float = 1e-7
    abs: float = 1e-10

    def __post_init__(self):
        if self.rel < 0 or self.abs < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.rel == 0 and self.abs == 0:
            raise ValueError("tolerances cannot both be zero")

    def threshold(self, scale: float) -> float:
        return self.abs + self.rel * scale

    def to_dict(self) -> dict:
        return {"rel": self.rel, "abs": self.abs}


@dataclass(frozen=True)
class Witness:
    y: float
    s: int
    value: complex  # sign-normalized
    threshold: float
    error: float = 0.0


@dataclass
class MonotoneVerdict:
    status: str
    witnesses: list = field(default_factory=list)
    uncertain: list = field(default_factory=list)
    tested: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a fail verdict needs witnesses")
        if self.status == PASS and self.witnesses:
            raise ValueError("a pass verdict cannot carry witnesses")


def classify(v: complex, err: float, theta: float) -> str:
    """Classify one sign-normalized value against threshold ``theta``."""
    re, im = v.real, abs(v.imag)
    decisive = err <= 0.5 * theta
    if (re + err < -theta or im - err > theta) and decisive:
        return FAIL
    if re - err >= -theta and im + err <= theta:
        return PASS
    return INCONCLUSIVE


def _verdict(points: list[tuple[float, int, complex, float, float]], tested: dict) -> MonotoneVerdict:
    witnesses, uncertain = [], []
    for y, s, v, theta, err in points:
        c = classify(v, err, theta)
        if c == FAIL:
            witnesses.append(Witness(y, s, v, theta, err))
        elif c == INCONCLUSIVE:
            uncertain.append(Witness(y, s, v, theta, err))
    key = lambda w: (w.y, w.s)
    witnesses.sort(key=key)
    uncertain.sort(key=key)
    status = FAIL if witnesses else (INCONCLUSIVE if uncertain else PASS)
    return MonotoneVerdict(status, witnesses, uncertain, tested)


Provider = Callable[[float, int], Union[AxisSample, complex]]


def _normalized(raw, y: float, s: int, negative_axis: bool, tol: Tolerance):
    """(sign-normalized value, threshold, error) for one provider result.

    Positive axis: ``(-1)^s D``.  Negative axis: ``-D``.
    """
    if isinstance(raw, AxisSample):
        # core equals (-1)^s D up to a positive factor
        v, scale, err = raw.core, raw.scale, raw.error
        if negative_axis:
            v = -v if s % 2 == 0 else v
    else:
        d = complex(raw)
        v = -d if negative_axis else (-d if s % 2 else d)
        scale, err = abs(d), 0.0
    return v, tol.threshold(scale), err


def _sweep(D: Provider, ys: Sequence[float], s_max: int, tol: Tolerance,
           negative_axis: bool, jobs: int, tested: dict) -> MonotoneVerdict:
    if int(s_max) != s_max or s_max < 0:
        raise ValueError("s_max must be a natural number")
    cells = [(y, s) for y in ys for s in range(int(s_max) + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            raws = list(ex.map(lambda c: D(*c), cells))
    else:
        raws = [D(y, s) for y, s in cells]
    pts = []
    for (y, s), raw in zip(cells, raws):
        v, theta, err = _normalized(raw, y, s, negative_axis, tol)
        pts.append((y, s, v, theta, err))
    return _verdict(pts, tested)


def cm_exact(D: Provider, grid: GridSpec, s_max: int, tol: Tolerance,
             jobs: int = 1) -> MonotoneVerdict:
    """Complete monotonicity on (0, inf): ``(-1)^s D(y, s) >= 0``."""
    tested = {"grid": grid.to_dict(), "axis": "positive", "s_max": int(s_max)}
    return _sweep(D, grid.points(), s_max, tol, False, jobs, tested)


def am_exact(D: Provider, grid: GridSpec, s_max: int, tol: Tolerance,
             jobs: int = 1) -> MonotoneVerdict:
    """Absolute monotonicity of -F~ on (-inf, 0): ``-D(y, s) >= 0`` at mirrored y."""
    tested = {"grid": grid.to_dict(), "axis": "negative", "s_max": int(s_max)}
    return _sweep(D, grid.mirrored(), s_max, tol, True, jobs, tested)


def cm_finite_diff(samples: Sequence[tuple[float, complex]], k_max: int,
                   tol: Tolerance) -> MonotoneVerdict:
    """Alternating forward differences ``(-1)^k Delta_h^k f(y_i) >= 0``."""
    if len(samples) < k_max + 1:
        raise ValueError(f"need at least {k_max + 1} samples")
    ys = np.array([float(y) for y, _ in samples])
    fs = np.array([complex(f) for _, f in samples])
    steps = np.diff(ys)
    h = steps[0] if steps.size else 0.0
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(abs(h), np.max(np.abs(ys))):
        raise NonUniformGrid("samples must be increasing with a uniform step")
    pts = []
    for k in range(k_max + 1):
        binom = [math.comb(k, j) for j in range(k + 1)]
        for i in range(len(fs) - k):
            window = fs[i:i + k + 1]
            diff = sum((-1) ** (k - j) * binom[j] * window[j] for j in range(k + 1))
            scale = sum(b * abs(w) for b, w in zip(binom, window))
            pts.append((float(ys[i]), k, complex((-1) ** k * diff), tol.threshold(scale), 0.0))
    tested = {"grid": {"y_min": float(ys[0]), "y_max": float(ys[-1]), "count": len(ys),
                       "spacing": "linear"}, "axis": "positive", "s_max": int(k_max)}
    return _verdict(pts, tested)
