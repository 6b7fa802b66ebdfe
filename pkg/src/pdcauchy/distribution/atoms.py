"""Finite atom sums representing tempered distributions on the real line."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import special

DECAYING_KINDS = ("gaussian", "laplace", "indicator", "triangle", "bump")
COMPACT_KINDS = ("indicator", "triangle", "bump")
TRIG_KINDS = ("constant", "cosine", "sine")
BASE_KINDS = DECAYING_KINDS + TRIG_KINDS

# parameter name per kind, used by the spec-file schema and reprs
PARAM_NAMES = {
    "gaussian": "sigma",
    "laplace": "lam",
    "cosine": "b",
    "sine": "b",
    "constant": None,
    "indicator": "a",
    "triangle": "a",
    "bump": "a",
}


def _finite_complex(w) -> complex:
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError(f"weight must be finite, got {w!r}")
    return w


@dataclass(frozen=True)
class DiracAtom:
    """``weight * e^{i modulation t} * delta_c^{(k)}``.

    Pairs as ``(delta_c^{(k)}, psi) = (-1)^k psi^{(k)}(c)``.
    """

    location: float = 0.0
    derivative_order: int = 0
    weight: complex = 1.0
    modulation: float = 0.0

    def __post_init__(self):
        if int(self.derivative_order) != self.derivative_order or self.derivative_order < 0:
            raise ValueError("derivative_order must be a natural number")
        object.__setattr__(self, "derivative_order", int(self.derivative_order))
        object.__setattr__(self, "location", float(self.location))
        object.__setattr__(self, "modulation", float(self.modulation))
        object.__setattr__(self, "weight", _finite_complex(self.weight))

    def order_bound(self) -> int:
        return self.derivative_order

    def scaled(self, c: complex) -> "DiracAtom":
        return replace(self, weight=self.weight * c)


@dataclass(frozen=True)
class DensityAtom:
    """``weight * e^{i modulation t} * poly(t) * base(t)`` for a catalog base.

    ``poly`` holds ascending coefficients.  ``growth_degree`` is the exponent
    p of the bound ``|g(t)| <= C (1+|t|)^p``; it defaults to the polynomial
    degree.
    """

    kind: str
    param: float | None = None
    poly: tuple = (1.0,)
    weight: complex = 1.0
    modulation: float = 0.0
    growth_degree: int | None = None

    def __post_init__(self):
        if self.kind not in BASE_KINDS:
            raise ValueError(f"unknown base kind {self.kind!r}")
        if self.kind == "constant":
            if self.param is not None:
                raise ValueError("constant base takes no parameter")
        else:
            if self.param is None:
                raise ValueError(f"{self.kind} base requires {PARAM_NAMES[self.kind]}")
            p = float(self.param)
            if not math.isfinite(p):
                raise ValueError("base parameter must be finite")
            if self.kind not in ("cosine", "sine") and p <= 0:
                raise ValueError(f"{PARAM_NAMES[self.kind]} must be > 0 for {self.kind}")
            object.__setattr__(self, "param", p)
        poly = tuple(float(c) for c in self.poly) or (0.0,)
        while len(poly) > 1 and poly[-1] == 0.0:
            poly = poly[:-1]
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "weight", _finite_complex(self.weight))
        object.__setattr__(self, "modulation", float(self.modulation))
        d = len(poly) - 1
        p = d if self.growth_degree is None else int(self.growth_degree)
        if p < 0:
            raise ValueError("growth_degree must be >= 0")
        if self.kind in TRIG_KINDS and p < d:
            raise ValueError(f"growth_degree {p} below polynomial degree {d}")
        object.__setattr__(self, "growth_degree", p)

    # --- static facts about the base ---
    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def decays(self) -> bool:
        return self.kind in DECAYING_KINDS

    @property
    def compact(self) -> bool:
        return self.kind in COMPACT_KINDS

    @property
    def support(self) -> tuple[float, float]:
        if self.compact:
            return (-self.param, self.param)
        return (-math.inf, math.inf)

    def order_bound(self) -> int:
        return self.growth_degree + 2

    def scaled(self, c: complex) -> "DensityAtom":
        return replace(self, weight=self.weight * c)

    # --- evaluation ---
    def poly_eval(self, t):
        return P.polyval(t, self.poly)

    def poly_abs_sum(self) -> float:
        return float(sum(abs(c) for c in self.poly))

    def kinks(self) -> list[float]:
        """Points where the base is not smooth."""
        if self.kind == "laplace":
            return [0.0]
        if self.kind == "triangle":
            return [-self.param, 0.0, self.param]
        if self.kind in ("indicator", "bump"):
            return [-self.param, self.param]
        return []

    def pieces(self) -> list[tuple[float, float, Callable]]:
        """Intervals on which the base is the restriction of an analytic branch.

        Branches accept complex arrays.  The bump has essential singularities
        at its endpoints, so it is returned as a single real-only piece.
        """
        k, p = self.kind, self.param
        if k == "gaussian":
            s2 = 2.0 * p * p
            return [(-math.inf, math.inf, lambda t: np.exp(-(t * t) / s2))]
        if k == "laplace":
            return [(-math.inf, 0.0, lambda t: np.exp(p * t)),
                    (0.0, math.inf, lambda t: np.exp(-p * t))]
        if k == "indicator":
            return [(-p, p, lambda t: np.ones_like(t))]
        if k == "triangle":
            return [(-p, 0.0, lambda t: 1.0 + t / p), (0.0, p, lambda t: 1.0 - t / p)]
        if k == "bump":
            return [(-p, p, lambda t: _bump(np.real(t) / p))]
        if k == "cosine":
            return [(-math.inf, math.inf, lambda t: np.cos(p * t))]
        if k == "sine":
            return [(-math.inf, math.inf, lambda t: np.sin(p * t))]
        return [(-math.inf, math.inf, lambda t: np.ones_like(t))]

    def base(self, t) -> np.ndarray:
        """Base function at real points."""
        t = np.asarray(t, dtype=float)
        k, p = self.kind, self.param
        if k == "gaussian":
            return np.exp(-t * t / (2 * p * p))
        if k == "laplace":
            return np.exp(-p * np.abs(t))
        if k == "indicator":
            return (np.abs(t) <= p).astype(float)
        if k == "triangle":
            return np.maximum(0.0, 1.0 - np.abs(t) / p)
        if k == "bump":
            return _bump(t / p)
        if k == "cosine":
            return np.cos(p * t)
        if k == "sine":
            return np.sin(p * t)
        return np.ones_like(t)

    def function(self, t) -> np.ndarray:
        """Atom without its weight: ``e^{i m t} poly(t) base(t)`` at real t."""
        t = np.asarray(t, dtype=float)
        out = self.base(t) * self.poly_eval(t)
        if self.modulation:
            out = out * np.exp(1j * self.modulation * t)
        return out

    def evaluate(self, t) -> np.ndarray:
        return self.weight * self.function(t)

    def exponentials(self) -> list[tuple[complex, float]]:
        """Trig bases as sums ``sum c e^{i w t}`` (modulation excluded)."""
        b = self.param
        if self.kind == "constant":
            return [(1.0, 0.0)]
        if self.kind == "cosine":
            return [(0.5, b), (0.5, -b)]
        if self.kind == "sine":
            return [(-0.5j, b), (0.5j, -b)]
        raise ValueError(f"{self.kind} is not a trigonometric base")

    def tail_mass(self, T: float) -> float:
        """Upper bound on ``int_{|t|>T} |poly(t) base(t)| dt`` for decaying bases."""
        if self.compact:
            return 0.0 if T >= self.param else math.inf
        S = self.poly_abs_sum()
        d = self.degree
        T = max(T, 1.0)
        if self.kind == "gaussian":
            # |poly| <= S t^d for t >= 1
            return 2.0 * S * gauss_moment_tail(d, self.param, T)
        if self.kind == "laplace":
            return 2.0 * S * exp_moment_tail(d, self.param, T)
        return math.inf

    def sup_abs(self) -> float:
        """sup |base * poly| over the real line (inf if unbounded)."""
        if self.degree == 0:
            return abs(self.poly[0])
        if self.kind in TRIG_KINDS:
            return math.inf
        if self.compact:
            a = self.param
            return self.poly_abs_sum() * max(1.0, a) ** self.degree
        # gaussian / laplace: sup of t^k base is attained at a stationary point
        out = 0.0
        for k, c in enumerate(self.poly):
            if c == 0.0:
                continue
            if k == 0:
                out += abs(c)
            elif self.kind == "gaussian":
                s = self.param
                out += abs(c) * (k * s * s) ** (k / 2) * math.exp(-k / 2)
            else:
                lam = self.param
                out += abs(c) * (k / lam) ** k * math.exp(-k)
        return out


Atom = Union[DiracAtom, DensityAtom]


def _bump(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    return out


def gauss_moment_tail(k: int, s: float, v0: float) -> float:
    """``int_{v0}^inf v^k exp(-v^2/(2 s^2)) dv`` for ``v0 >= 0``."""
    a = (k + 1) / 2.0
    x = v0 * v0 / (2 * s * s)
    return 0.5 * (2 * s * s) ** a * special.gamma(a) * special.gammaincc(a, x)


def exp_moment_tail(k: int, lam: float, v0: float) -> float:
    """``int_{v0}^inf v^k exp(-lam v) dv`` for ``v0 >= 0``."""
    return special.gamma(k + 1) * special.gammaincc(k + 1, lam * v0) / lam ** (k + 1)


@dataclass(frozen=True)
class Distribution:
    """A finite sum of atoms; the object F in S'(R)."""

    atoms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        for a in atoms:
            if not isinstance(a, (DiracAtom, DensityAtom)):
                raise TypeError(f"not an atom: {a!r}")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def of(cls, *atoms: Atom) -> "Distribution":
        return cls(tuple(atoms))

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __add__(self, other: "Distribution") -> "Distribution":
        return Distribution(self.atoms + other.atoms)

    def __mul__(self, c: complex) -> "Distribution":
        return Distribution(tuple(a.scaled(c) for a in self.atoms))

    __rmul__ = __mul__

    def __neg__(self) -> "Distribution":
        return self * -1.0

    def modulate(self, b: float) -> "Distribution":
        """Multiply every atom by ``e^{i b t}``."""
        return Distribution(tuple(replace(a, modulation=a.modulation + b) for a in self.atoms))

    def abs_companion(self) -> "Distribution":
        """Same atoms with weights replaced by their moduli."""
        return Distribution(tuple(replace(a, weight=abs(a.weight)) for a in self.atoms))

    @property
    def dirac_only(self) -> bool:
        return all(isinstance(a, DiracAtom) for a in self.atoms)

    @property
    def density_only(self) -> bool:
        return all(isinstance(a, DensityAtom) for a in self.atoms)

    def require_nonempty(self):
        if not self.atoms:
            raise ValueError("distribution has no atoms")

    def evaluate(self, t) -> np.ndarray:
        """Pointwise value of a density-only distribution."""
        if not self.density_only:
            raise ValueError("pointwise evaluation needs a density-only distribution")
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for a in self.atoms:
            out += a.evaluate(t)
        return out


def order_bound(F: Distribution) -> int:
    """Certified upper bound on the S'-order of F.

    delta_c^{(k)} contributes k; a density with growth exponent p contributes
    p + 2 (the polynomial rule extended to polynomially bounded densities).
    """
    if not F.atoms:
        return 0
    return max(a.order_bound() for a in F.atoms)
