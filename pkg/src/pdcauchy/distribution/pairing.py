"""Pairings (F, psi) of atom sums with Cauchy kernels and test functions.

Dirac atoms are evaluated in closed form.  Density atoms go through
``integrate_density`` with one exception: trigonometric/constant bases
against Cauchy kernels are evaluated by residues, because on the real line
their integrals cancel catastrophically for small |Im z| and large powers.

Decaying analytic bases are integrated along a contour shifted away from the
pole ``t = z``.  The shift depth is the saddle point of the integrand
envelope, which removes most of the cancellation of the real-line integral.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InsufficientPower, PoleOnAxis, QuadratureFailure
from ..quadrature import DEFAULT_MAX_EVALS, EPS, QuadResult, adaptive, graded_points
from .atoms import (TRIG_KINDS, DensityAtom, DiracAtom, Distribution, exp_moment_tail,
                    gauss_moment_tail)
from .testfunc import GaussianMixture, TestFunction

PI = math.pi


# --------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class CauchyKernel:
    """``e^{i a t} (z - t)^{-power}``."""

    z: complex
    power: int
    modulation: float = 0.0

    def __post_init__(self):
        if complex(self.z).imag == 0.0:
            raise PoleOnAxis(f"Cauchy kernel pole {self.z!r} lies on the real axis")
        if int(self.power) != self.power or self.power < 1:
            raise ValueError("kernel power must be a natural number >= 1")

    def __call__(self, t):
        out = (self.z - t) ** (-self.power)
        if self.modulation:
            out = out * np.exp(1j * self.modulation * t)
        return out

    def sup(self) -> float:
        return abs(complex(self.z).imag) ** (-self.power)

    def peaks(self) -> list[tuple[float, float]]:
        z = complex(self.z)
        return [(z.real, abs(z.imag))]


@dataclass(frozen=True)
class PoissonKernel:
    """``y / (pi (t^2 + y^2))``."""

    y: float

    def __call__(self, t):
        return self.y / (PI * (t * t + self.y * self.y))

    def sup(self) -> float:
        return 1.0 / (PI * self.y)

    def peaks(self):
        return [(0.0, self.y)]


@dataclass(frozen=True)
class MixtureKernel:
    """A Gaussian mixture used as the test function of a pairing."""

    mixture: GaussianMixture

    def __call__(self, t):
        return self.mixture(t)

    def sup(self) -> float:
        return float(np.sum(np.abs(self.mixture.amplitudes)))

    def peaks(self):
        return list(zip(self.mixture.centers, self.mixture.widths))


# --------------------------------------------------------------------------
# density integration


def integrate_density(g: DensityAtom, kernel, target_rel: float = 1e-10,
                      target_abs: float = 0.0,
                      max_evals: int = DEFAULT_MAX_EVALS) -> tuple[complex, float]:
    """Quadrature of ``g(t) kernel(t)`` over the real line (weight excluded).

    Returns ``(value, error_estimate)``.  The atom's modulation is included.
    """
    r = _integrate(g, kernel, target_rel, target_abs, max_evals)
    return r.value, r.error


def _integrate(g: DensityAtom, kernel, rtol, atol, max_evals) -> QuadResult:
    if isinstance(kernel, CauchyKernel):
        if g.kind in TRIG_KINDS:
            return _trig_real_line(g, kernel, rtol, atol, max_evals)
        if g.kind != "bump":
            return _cauchy_contour(g, kernel, rtol, atol, max_evals)
    return _real_line(g, kernel, rtol, atol, max_evals)


def _combine(parts: list[QuadResult], tail: float = 0.0) -> QuadResult:
    vals = [p.value for p in parts]
    value = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return QuadResult(value, sum(p.error for p in parts) + tail,
                      sum(p.evaluations for p in parts), sum(p.l1 for p in parts))


def _run_parts(jobs: list[tuple[Callable, list]], rtol, atol, max_evals,
               tail: float = 0.0, order: int = 10) -> QuadResult:
    """Integrate several path pieces to a common tolerance on their sum.

    Pieces can cancel each other, so a second pass tightens the absolute
    tolerance once the size of the sum is known.
    """
    n = max(len(jobs), 1)
    budget = max_evals
    parts = []
    for f, pts in jobs:
        r = adaptive(f, pts, rtol=0.1 * rtol, atol=atol / n, max_evals=budget, order=order)
        budget -= r.evaluations
        parts.append(r)
    total = _combine(parts, tail)
    goal = max(atol, rtol * abs(total.value))
    if total.error > goal and len(jobs) > 1:
        parts2 = []
        for (f, pts), old in zip(jobs, parts):
            want = goal / n
            if old.error <= want:
                parts2.append(old)
                continue
            r = adaptive(f, pts, rtol=0.0, atol=want, max_evals=max(budget, 1), order=order)
            budget -= r.evaluations
            parts2.append(r)
        total = _combine(parts2, tail)
    return total


def _shift_depth(g: DensityAtom, y: float, omega: float, q: int) -> float:
    """Signed distance of the integration line from the real axis, away from the pole.

    Minimizes ``kappa C^2/2 + gamma C - q ln(|y| + C)``, the log of the
    integrand envelope on the shifted line.
    """
    ay = abs(y)
    gamma = omega if y > 0 else -omega
    qe = max(q - g.degree, 0.5)
    cap = 2.0 * (ay + 1.0)
    if g.kind == "gaussian":
        kappa = 1.0 / (g.param * g.param)
        b = kappa * ay + gamma
        c = (-b + math.sqrt((kappa * ay - gamma) ** 2 + 4 * kappa * qe)) / (2 * kappa)
        cap = max(cap, 8.0 * g.param)
    elif gamma > 0:
        c = qe / gamma - ay
    else:
        c = cap
    return min(max(c, -0.5 * ay), cap)


def _cauchy_contour(g: DensityAtom, k: CauchyKernel, rtol, atol, max_evals) -> QuadResult:
    z = complex(k.z)
    q = int(k.power)
    omega = k.modulation + g.modulation
    y = z.imag
    C = _shift_depth(g, y, omega, q)
    h = -C if y > 0 else C  # imaginary part of the shifted line
    dist = abs(y) + C  # distance from the pole to the shifted line
    poly = g.poly

    def integrand(branch):
        def f_t(t):
            out = branch(t) * np.polynomial.polynomial.polyval(t, poly) * (z - t) ** (-q)
            if omega:
                out = out * np.exp(1j * omega * t)
            return out
        return f_t

    pieces = g.pieces()
    jobs = []
    tail = 0.0

    # truncation of infinite horizontal pieces
    S = g.poly_abs_sum()
    d = g.degree
    growth = math.exp(-omega * h) * dist ** (-q) * S * 2.0 ** d
    if g.kind == "gaussian":
        s = g.param
        growth *= math.exp(h * h / (2 * s * s))
        scale = s

        def one_side(T):
            return growth * gauss_moment_tail(d, s, T)
    else:
        lam = g.param
        scale = 1.0 / lam

        def one_side(T):
            return growth * exp_moment_tail(d, lam, T)

    T = max(1.0, 2.0 * abs(h), 8.0 * scale, 2.0 * abs(z.real))
    # tails decay exponentially, so overshooting the truncation is cheap
    tail_goal = 1e-22 * growth * scale
    if atol > 0:
        tail_goal = min(tail_goal, 0.1 * atol)
    any_infinite = any(math.isinf(lo) or math.isinf(hi) for lo, hi, _ in pieces)
    if any_infinite:
        while one_side(T) > tail_goal and T < 1e8:
            T *= 1.5
        tail = 2.0 * one_side(T)

    for lo, hi, branch in pieces:
        lo_t = -T if math.isinf(lo) else lo
        hi_t = T if math.isinf(hi) else hi
        ft = integrand(branch)
        pts = graded_points(z.real, dist, lo_t, hi_t)
        if g.kind == "gaussian":
            pts = sorted(set(pts) | {p for p in (-g.param, 0.0, g.param) if lo_t < p < hi_t})
        jobs.append((lambda u, ft=ft: ft(u + 1j * h), pts))

    # vertical connectors at finite breakpoints carry the branch jump
    if abs(h) > 0:
        ends = sorted({e for lo, hi, _ in pieces for e in (lo, hi) if math.isfinite(e)})
        lo_v, hi_v = min(0.0, h), max(0.0, h)
        sign = 1.0 if h < 0 else -1.0
        for p in ends:
            left = [b for lo, hi, b in pieces if hi == p]
            right = [b for lo, hi, b in pieces if lo == p]
            fl = integrand(left[0]) if left else None
            fr = integrand(right[0]) if right else None

            def fv(v, p=p, fl=fl, fr=fr):
                t = p + 1j * v
                out = fl(t) if fl is not None else 0.0
                if fr is not None:
                    out = out - fr(t)
                return sign * 1j * out

            near = abs(complex(p, 0.0) - z)
            jobs.append((fv, graded_points(0.0, near, lo_v, hi_v)))

    return _run_parts(jobs, rtol, atol, max_evals, tail)


def _trig_real_line(g: DensityAtom, k: CauchyKernel, rtol, atol, max_evals) -> QuadResult:
    """Real-line quadrature for trig bases: half-period panels plus an
    integration-by-parts tail bound."""
    z = complex(k.z)
    q = int(k.power)
    d = g.degree
    S = g.poly_abs_sum()
    freqs = [(c, k.modulation + g.modulation + w) for c, w in g.exponentials()]
    for _, om in freqs:
        need = 2 if om == 0 else 1
        if q - d < need:
            raise InsufficientPower(f"power {q} too small for degree-{d} trigonometric density")

    def tail_one_side(T):
        r = 1.0 / (1.0 - abs(z) / T)
        out = 0.0
        for c, om in freqs:
            if om == 0:
                out += abs(c) * S * r ** q * T ** (d - q + 1) / (q - d - 1)
            else:
                out += abs(c) * S * r ** (q + 1) * T ** (d - q) * (1 + (d + q) / (q - d)) / abs(om)
        return out

    goal = 0.1 * atol if atol > 0 else 0.1 * rtol * S
    T = max(2.0 * abs(z) + 1.0, 10.0)
    while tail_one_side(T) > goal:
        T *= 2.0
        if T > 1e12:
            raise QuadratureFailure("tail truncation radius diverged")
    tail = 2.0 * tail_one_side(T)

    wmax = max(abs(om) for _, om in freqs)
    pts = graded_points(z.real, abs(z.imag), -T, T)
    if wmax > 0:
        step = PI / wmax
        n = int(math.ceil(2 * T / step))
        if n * 30 > max_evals:
            raise QuadratureFailure(
                f"{n} half-period panels exceed the {max_evals}-evaluation budget")
        pts = sorted(set(pts) | set(np.linspace(-T, T, n + 1).tolist()))

    def f(t):
        return g.function(t) * k(t)

    r = adaptive(f, pts, rtol=rtol, atol=atol, max_evals=max_evals)
    return QuadResult(r.value, r.error + tail, r.evaluations, r.l1)


def _real_line(g: DensityAtom, kernel, rtol, atol, max_evals) -> QuadResult:
    pts: list[float] = list(g.kinks())
    if g.compact:
        lo, hi = g.support
        tail = 0.0
    elif g.decays:
        ksup = kernel.sup()
        env = ksup * max(g.sup_abs(), 1e-300)
        goal = max(0.1 * atol, 1e-22 * env)
        T = 8.0 * (g.param if g.kind == "gaussian" else 1.0 / g.param)
        while g.tail_mass(T) * ksup > goal and T < 1e8:
            T *= 1.5
        tail = g.tail_mass(T) * ksup
        lo, hi = -T, T
    elif isinstance(kernel, MixtureKernel):
        lo, hi, tail = _mixture_window(g, kernel.mixture, atol)
    elif isinstance(kernel, PoissonKernel):
        # |g| <= S bounded (degree 0); tail <= 2 S y / (pi T)
        S = g.poly_abs_sum()
        goal = max(0.1 * atol, 1e-16)
        T = 2.0 * S * kernel.y / (PI * goal)
        lo, hi, tail = -T, T, goal
    else:
        raise InsufficientPower(f"no truncation rule for {g.kind} against {type(kernel).__name__}")

    for c, w in kernel.peaks():
        pts += graded_points(c, w, lo, hi)
    pts = sorted({p for p in pts + [lo, hi] if lo <= p <= hi})

    def f(t):
        return g.function(t) * kernel(t)

    r = adaptive(f, pts, rtol=rtol, atol=atol, max_evals=max_evals)
    return QuadResult(r.value, r.error + tail, r.evaluations, r.l1)


def _mixture_window(g: DensityAtom, mix: GaussianMixture, atol: float):
    """Truncation window for a polynomially bounded density against a mixture."""
    S = g.poly_abs_sum()
    d = g.degree
    amps = np.abs(np.asarray(mix.amplitudes))
    goal = max(0.1 * atol, 1e-22 * float(amps.sum()) * S)

    def tail(T):
        out = 0.0
        for A, mu, s in zip(amps, mix.centers, mix.widths):
            v0 = T - abs(mu)
            if v0 <= 0:
                return math.inf
            # (1+|t|)^d <= 2^d ((1+|mu|)^d + v^d) with t = mu + v
            out += 2 * A * S * 2 ** d * ((1 + abs(mu)) ** d * gauss_moment_tail(0, s, v0)
                                         + gauss_moment_tail(d, s, v0))
        return out

    T = max(abs(m) + 8 * s for m, s in zip(mix.centers, mix.widths))
    while tail(T) > goal:
        T *= 1.25
    return -T, T, tail(T)


# --------------------------------------------------------------------------
# pairings


def _dirac_cauchy(atom: DiracAtom, a: float, z: complex, q: int) -> complex:
    """``(-1)^k d^k/dt^k [e^{i w t} (z - t)^{-q}]`` at t = c, by Leibniz."""
    k = atom.derivative_order
    c = atom.location
    om = a + atom.modulation
    zc = z - c
    total = 0j
    for j in range(k + 1):
        rising = 1.0
        for i in range(j):
            rising *= q + i
        total += math.comb(k, j) * (1j * om) ** (k - j) * rising * zc ** (-(q + j))
    return (-1) ** k * cmath.exp(1j * om * c) * total


def _trig_residue(g: DensityAtom, a: float, z: complex, q: int) -> complex:
    """Closed-form ``int poly(t) e^{i w t} (z-t)^{-q} dt`` by residues at t = z."""
    d = g.degree
    y = z.imag
    derivs = [g.poly]
    for _ in range(min(d, q - 1)):
        derivs.append(tuple(np.polynomial.polynomial.polyder(derivs[-1])) or (0.0,))
    total = 0j
    for coef, w in g.exponentials():
        om = a + g.modulation + w
        if om == 0.0:
            if q - d < 2:
                raise InsufficientPower("constant-frequency term needs power >= degree + 2")
            continue  # closes in either half-plane without enclosing a pole
        if (om > 0) != (y > 0):
            continue
        acc = 0j
        for j in range(min(d, q - 1) + 1):
            pj = complex(np.polynomial.polynomial.polyval(z, derivs[j]))
            acc += math.comb(q - 1, j) * pj * (1j * om) ** (q - 1 - j)
        sgn = 1.0 if y > 0 else -1.0
        total += coef * sgn * 2j * PI * (-1) ** q / math.factorial(q - 1) * acc * cmath.exp(1j * om * z)
    return total


def pair_cauchy_detail(F: Distribution, a: float, z: complex, power: int, *,
                       rtol: float = 1e-12, atol: float = 0.0, method: str = "auto",
                       max_evals: int = DEFAULT_MAX_EVALS) -> tuple[complex, float]:
    """``(e^{iat} F_t, (z - t)^{-power})`` with an error estimate.

    ``method="quadrature"`` forces quadrature for trigonometric densities
    (slow; used to cross-check the residue route).
    """
    z = complex(z)
    if z.imag == 0.0:
        raise PoleOnAxis(f"z = {z!r} lies on the real axis")
    q = int(power)
    if q != power or q < 1:
        raise ValueError("power must be a natural number >= 1")
    vals, errs = [], []
    for atom in F.atoms:
        if isinstance(atom, DiracAtom):
            v = _dirac_cauchy(atom, a, z, q)
            vals.append(atom.weight * v)
            errs.append(4 * EPS * abs(atom.weight * v))
            continue
        if not atom.decays and q - atom.growth_degree < 3:
            raise InsufficientPower(
                f"power {q} leaves integrability margin {q - atom.growth_degree} < 3 "
                f"for a {atom.kind} density of growth degree {atom.growth_degree}")
        if atom.kind in TRIG_KINDS and method == "auto":
            v = _trig_residue(atom, a, z, q)
            vals.append(atom.weight * v)
            errs.append(16 * EPS * abs(atom.weight * v))
            continue
        v, e = integrate_density(atom, CauchyKernel(z, q, a), rtol, atol, max_evals)
        vals.append(atom.weight * v)
        errs.append(abs(atom.weight) * e)
    value = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return value, float(sum(errs))


def pair_cauchy_kernel(F: Distribution, a: float, z: complex, power: int, **kw) -> complex:
    """``(e^{iat} F_t, 1/(z - t)^{power})``; the i/pi prefactor is not applied."""
    return pair_cauchy_detail(F, a, z, power, **kw)[0]


def _dirac_mixture(atom: DiracAtom, psi: GaussianMixture) -> tuple[complex, float]:
    k = atom.derivative_order
    c = atom.location
    om = atom.modulation
    total = 0j
    mag = 0.0
    A, mu, s = psi._arrays()
    for j in range(k + 1):
        dj = complex(psi.derivative(c, j))
        # magnitude of the same sum without cancellation between components
        x = (c - mu) / s
        coef = np.zeros(j + 1)
        coef[j] = 1.0
        he = np.polynomial.hermite_e.hermeval(x, coef) if j else 1.0
        mj = float(np.sum(np.abs(A * s ** (-j) * he * np.exp(-0.5 * x * x))))
        cb = math.comb(k, j) * (1j * om) ** (k - j)
        total += cb * dj
        mag += abs(cb) * mj
    return (-1) ** k * cmath.exp(1j * om * c) * total, mag


def pair_mixture_detail(F: Distribution, psi: GaussianMixture, *, rtol: float = 1e-12,
                        max_evals: int = DEFAULT_MAX_EVALS) -> tuple[complex, float, float]:
    """``(F, psi)`` with ``(error, mass)``.

    ``mass`` pairs ``|F|`` with the componentwise envelope of ``psi``, so it
    bounds the roundoff of evaluating psi itself.
    """
    kernel = MixtureKernel(psi)
    vals, err, mass = [], 0.0, 0.0
    for atom in F.atoms:
        if isinstance(atom, DiracAtom):
            v, m = _dirac_mixture(atom, psi)
            vals.append(atom.weight * v)
            err += 8 * EPS * abs(atom.weight) * m
            mass += abs(atom.weight) * m
        else:
            env = _integrate(atom, _EnvelopeKernel(psi), 1e-3, 0.0, max_evals)
            # psi may cancel almost completely, so never chase more than
            # roundoff relative to the envelope
            r = _integrate(atom, kernel, rtol, 1e-15 * env.l1, max_evals)
            vals.append(atom.weight * r.value)
            err += abs(atom.weight) * r.error
            mass += abs(atom.weight) * max(env.l1, r.l1)
    value = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return value, err, mass


@dataclass(frozen=True)
class _EnvelopeKernel(MixtureKernel):
    def __call__(self, t):
        return self.mixture.abs_envelope(t)


def pair_test_detail(F: Distribution, phi: TestFunction, *, rtol: float = 1e-12,
                     max_evals: int = DEFAULT_MAX_EVALS) -> tuple[complex, float, float]:
    """``(F, phi * phi_star)`` with ``(error, mass)``."""
    return pair_mixture_detail(F, phi.autocorrelation(), rtol=rtol, max_evals=max_evals)


def pair_test_function(F: Distribution, phi: TestFunction, **kw) -> complex:
    """``(F, phi * phi_star)``; nonnegative for every phi iff F is positive definite."""
    return pair_test_detail(F, phi, **kw)[0]
