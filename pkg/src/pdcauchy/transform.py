"""Generalized Cauchy transform on the imaginary axis and related integrals.

For a distribution F and a modulation a the transform is

    F~(z) = (-1)^n (i/pi) (e^{iat} F_t, (z - t)^{-(2n+1)}),

and on the imaginary axis z = iy its derivatives are

    d^s/dy^s F~(iy) = ((-1)^s / pi) ((2n+s)! / (2n)!) (e^{iat} F_t, (y + it)^{-(2n+s+1)}).

The pairing on the right is called the *core* below.  It carries all sign
information, so the monotonicity tests look at the core and never at the
factorial-scaled value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .distribution import (CauchyKernel, DensityAtom, Distribution, PoissonKernel,
                           integrate_density, order_bound, pair_cauchy_detail)
from .distribution.atoms import TRIG_KINDS
from .errors import (FactorialOverflow, UnsupportedDistribution, UnsupportedOrder)
from .quadrature import adaptive, graded_points

LOG_SPACE_THRESHOLD = 150
PAIR_RTOL = 1e-12


@dataclass(frozen=True)
class CauchyParams:
    n: int
    modulations: tuple = (0.0, 1.0)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a natural number")
        object.__setattr__(self, "n", int(self.n))
        a1, a2 = (float(a) for a in self.modulations)
        if not (math.isfinite(a1) and math.isfinite(a2)):
            raise ValueError("modulations must be finite")
        if a1 == a2:
            raise ValueError("the two modulations must differ")
        object.__setattr__(self, "modulations", (a1, a2))

    @classmethod
    def auto(cls, F: Distribution, modulations=(0.0, 1.0)) -> "CauchyParams":
        return cls(math.ceil(order_bound(F) / 2), modulations)

    def a(self, j: int) -> float:
        if j not in (1, 2):
            raise ValueError("modulation index must be 1 or 2")
        return self.modulations[j - 1]

    def validate_for(self, F: Distribution) -> None:
        ob = order_bound(F)
        if 2 * self.n < ob:
            raise UnsupportedDistribution(
                f"2n = {2 * self.n} is below the order bound {ob} of the distribution")


@dataclass(frozen=True)
class AxisSample:
    """One derivative d^s/dy^s F~_j(iy).

    ``core`` is the factorial-free pairing, ``scale`` and ``error`` are in
    core units.  ``value`` is the full derivative; it is None when the
    factorial prefactor overflows, in which case ``log_magnitude`` and
    ``phase`` describe it.
    """

    j: int
    y: float
    s: int
    value: complex | None
    core: complex
    scale: float
    error: float
    log_magnitude: float
    phase: float

    def __post_init__(self):
        if self.y == 0.0:
            raise ValueError("axis samples need y != 0")
        if self.s < 0:
            raise ValueError("derivative order must be >= 0")


def _exact_ipow(q: int) -> complex:
    return (1, 1j, -1, -1j)[q % 4]


def core_pairing(F: Distribution, a: float, y: float, q: int,
                 rtol: float = PAIR_RTOL) -> tuple[complex, float]:
    """``(e^{iat} F_t, (y + it)^{-q})`` with an error estimate.

    Uses ``(y + it)^{-q} = i^q (iy - t)^{-q}``.
    """
    v, e = pair_cauchy_detail(F, a, complex(0.0, y), q, rtol=rtol)
    return _exact_ipow(q) * v, e


def _log_factor(n: int, s: int) -> float:
    """log of (2n+s)! / ((2n)! pi)."""
    return math.lgamma(2 * n + s + 1) - math.lgamma(2 * n + 1) - math.log(math.pi)


def cauchy_transform(F: Distribution, params: CauchyParams, j: int, z: complex) -> complex:
    params.validate_for(F)
    n = params.n
    v, _ = pair_cauchy_detail(F, params.a(j), complex(z), 2 * n + 1, rtol=PAIR_RTOL)
    return (-1) ** n * (1j / math.pi) * v


def _has_plain_weights(F: Distribution) -> bool:
    return all(a.weight.imag == 0.0 and a.weight.real >= 0.0 for a in F.atoms)


def axis_derivative(F: Distribution, params: CauchyParams, j: int, y: float, s: int,
                    companion: Distribution | None = None) -> AxisSample:
    """Exact ``d^s/dy^s F~_j(iy)``.

    ``companion`` overrides the absolute-weight companion used for ``scale``.
    """
    params.validate_for(F)
    y = float(y)
    if y == 0.0:
        raise ValueError("y must be nonzero")
    if int(s) != s or s < 0:
        raise ValueError("s must be a natural number")
    s = int(s)
    n = params.n
    q = 2 * n + s + 1
    a = params.a(j)
    core, err = core_pairing(F, a, y, q)
    if companion is None:
        companion = F if _has_plain_weights(F) else F.abs_companion()
    if companion is F:
        scale = abs(core)
    else:
        scale = max(abs(core_pairing(companion, a, y, q)[0]), abs(core))

    sign = -1.0 if s % 2 else 1.0
    if 2 * n + s > LOG_SPACE_THRESHOLD:
        lf = _log_factor(n, s)
    else:
        lf = math.log(math.factorial(2 * n + s) / math.factorial(2 * n) / math.pi)
    if core == 0:
        log_mag, phase = -math.inf, 0.0
    else:
        log_mag = lf + math.log(abs(core))
        phase = cmath.phase(sign * core)
    try:
        value = sign * math.exp(lf) * core if lf < 700 else None
    except OverflowError:
        value = None
    if value is not None and not (math.isfinite(value.real) and math.isfinite(value.imag)):
        value = None
    return AxisSample(j, y, s, value, core, scale, err, log_mag, phase)


def full_value(sample: AxisSample) -> complex:
    """The derivative value, raising FactorialOverflow if it is not representable."""
    if sample.value is None:
        raise FactorialOverflow(
            f"derivative of order {sample.s} overflows (log magnitude {sample.log_magnitude:.1f})")
    return sample.value


# --------------------------------------------------------------------------
# smoothing transform and the boundary relation


def cauchy_smooth(u: DensityAtom, m: int, y: float, t: float) -> complex:
    """``(i/pi) int u(x) (x + iy - t)^{-(m+1)} dx``."""
    if not u.compact:
        raise UnsupportedDistribution("the smoothing transform needs a compactly supported atom")
    if y == 0.0:
        raise ValueError("y must be nonzero")
    if u.weight == 0:
        return 0j
    # (x + iy - t) = -(z - x) with z = t - iy
    z = complex(t, -y)
    v, _ = integrate_density(u, CauchyKernel(z, m + 1), target_rel=1e-12)
    return (-1) ** (m + 1) * (1j / math.pi) * u.weight * v


def bump_derivative(u: DensityAtom, k: int, t) -> np.ndarray:
    """k-th derivative (k <= 2) of a bump atom exp(-1/(1 - (t/a)^2))."""
    if u.kind != "bump" or u.degree != 0 or u.modulation:
        raise UnsupportedDistribution("closed-form derivatives need a plain bump atom")
    a = u.param
    x = np.asarray(t, dtype=float) / a
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    w = 1.0 - xi * xi
    b = np.exp(-1.0 / w)
    if k == 0:
        d = b
    elif k == 1:
        d = -2.0 * xi / w ** 2 * b
    elif k == 2:
        d = (4.0 * xi * xi / w ** 4 - 2.0 / w ** 2 - 8.0 * xi * xi / w ** 3) * b
    else:
        raise UnsupportedOrder("bump derivatives are available up to order 2")
    out[inside] = d / a ** k
    return u.weight.real * u.poly[0] * out


def _half_jump(u: DensityAtom, m: int, p: int, y: float, t: float) -> complex:
    """p-th t-derivative of (u~(t, y) - u~(t, -y)) / 2."""
    r = m + 1 + p
    rising = math.prod(range(m + 1, m + 1 + p))
    c = 0.5j / math.pi * rising * u.weight

    def f(x):
        return u.function(x) * ((x + 1j * y - t) ** (-r) - (x - 1j * y - t) ** (-r))

    lo, hi = u.support
    pts = sorted(set(graded_points(t, y, lo, hi) + u.kinks()))
    res = adaptive(f, pts, rtol=1e-11, atol=1e-14)
    return c * res.value


def plemelj_residual(u: DensityAtom, m: int, y: float, t_grid=None) -> float:
    """Weighted sup over ``t_grid`` and p <= m of the Plemelj defect."""
    if m not in (0, 1):
        raise UnsupportedOrder("the boundary relation is checked for m in {0, 1}")
    if y <= 0:
        raise ValueError("y must be positive")
    if t_grid is None:
        t_grid = np.linspace(-8.0, 8.0, 401)
    t_grid = np.asarray(t_grid, dtype=float)
    if u.weight == 0:
        return 0.0
    worst = 0.0
    for p in range(m + 1):
        target = bump_derivative(u, m + p, t_grid) / math.factorial(m)
        for t, want in zip(t_grid, target):
            got = _half_jump(u, m, p, y, float(t))
            worst = max(worst, (1.0 + abs(t)) ** m * abs(got - want))
    return worst


# --------------------------------------------------------------------------
# Poisson transform on the imaginary axis


def _poisson_ready(f: Distribution) -> None:
    if not f.atoms:
        return
    if not f.density_only:
        raise UnsupportedDistribution("the Poisson transform path takes density atoms only")
    for a in f.atoms:
        if a.weight.imag != 0.0 or a.modulation != 0.0:
            raise UnsupportedDistribution("the Poisson transform path needs real even densities")
        if a.kind == "sine":
            raise UnsupportedDistribution("sine densities are odd")
        if a.kind in TRIG_KINDS and a.degree > 0:
            raise UnsupportedDistribution("polynomially growing densities are not bounded")
        if any(c != 0.0 for c in a.poly[1::2]):
            raise UnsupportedDistribution("odd polynomial terms make the density non-even")


def poisson_axis(f: Distribution, y: float) -> float:
    """``(1/pi) int y / (t^2 + y^2) f(t) dt``.

    Trigonometric atoms use ``int P_y(t) e^{iwt} dt = e^{-|w| y}``; the rest
    go through adaptive quadrature.
    """
    if y <= 0:
        raise ValueError("y must be positive")
    _poisson_ready(f)
    total = 0j
    for a in f.atoms:
        if a.kind in TRIG_KINDS:
            v = sum(c * math.exp(-abs(w) * y) for c, w in a.exponentials()) * a.poly[0]
        else:
            v, _ = integrate_density(a, PoissonKernel(y), target_rel=1e-12)
        total += a.weight * v
    if abs(total.imag) > 1e-12 * max(1.0, abs(total)):
        raise UnsupportedDistribution(f"Poisson transform is not real (Im = {total.imag:.3e})")
    return total.real


# --------------------------------------------------------------------------
# Laplace-kernel identities


def kernel_integral(q: int, y: float, t: float, rtol: float = 1e-12) -> tuple[complex, float]:
    """Quadrature of ``int x^q e^{-yx} e^{-ixt} dx`` over the half-line where it converges.

    The half-line is [0, inf) for y > 0 and (-inf, 0] for y < 0.
    """
    from .distribution.atoms import exp_moment_tail

    if y == 0:
        raise ValueError("y must be nonzero")
    lam = abs(y)
    sgn = 1.0 if y > 0 else -1.0
    mass = math.factorial(q) / lam ** (q + 1)
    X = max(8.0, 4.0 * q / lam)
    while exp_moment_tail(q, lam, X) > 1e-20 * mass:
        X *= 1.25

    # extended precision keeps the phase x*t accurate, which matters
    # because |integrand| integrates to up to 1e7 times the result
    ld = np.longdouble

    def f(u):
        x = sgn * u
        return x ** q * np.exp(-ld(y) * x - 1j * x * ld(t))

    peak = q / lam
    pts = sorted(set(graded_points(peak, 1.0 / lam, 0.0, X)
                     + np.linspace(0.0, X, 1 + int(X * (abs(t) + lam) / 2.0)).tolist()))
    r = adaptive(f, pts, rtol=rtol, atol=0.0, dtype=np.longdouble)
    # x = -u flips the orientation back, so no extra sign for y < 0
    return r.value, r.error + exp_moment_tail(q, lam, X)


def kernel_closed_form(q: int, y: float, t: float) -> complex:
    """``q!/(y+it)^{q+1}`` for y > 0 and ``-q!/(y+it)^{q+1}`` for y < 0."""
    v = math.factorial(q) / complex(y, t) ** (q + 1)
    return v if y > 0 else -v
