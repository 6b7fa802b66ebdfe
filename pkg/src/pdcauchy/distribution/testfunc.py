"""Gaussian-mixture test functions and their autocorrelations."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite_e

SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class GaussianMixture:
    """``sum_l A_l exp(-(t - mu_l)^2 / (2 s_l^2))`` with complex amplitudes."""

    amplitudes: tuple
    centers: tuple
    widths: tuple

    def __post_init__(self):
        n = len(self.amplitudes)
        if n == 0 or len(self.centers) != n or len(self.widths) != n:
            raise ValueError("mixture needs matching non-empty component lists")
        if any(w <= 0 for w in self.widths):
            raise ValueError("mixture widths must be strictly positive")

    def _arrays(self):
        return (np.asarray(self.amplitudes, dtype=complex),
                np.asarray(self.centers, dtype=float),
                np.asarray(self.widths, dtype=float))

    def __call__(self, t) -> np.ndarray:
        return self.derivative(t, 0)

    def derivative(self, t, k: int) -> np.ndarray:
        """k-th derivative; uses d^k/dx^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2}."""
        A, mu, s = self._arrays()
        t = np.asarray(t, dtype=float)
        x = (t[..., None] - mu) / s
        coef = np.zeros(k + 1)
        coef[k] = 1.0
        he = hermite_e.hermeval(x, coef) if k else 1.0
        terms = A * (-1.0 / s) ** k * he * np.exp(-0.5 * x * x)
        return terms.sum(axis=-1)

    def abs_envelope(self, t) -> np.ndarray:
        A, mu, s = self._arrays()
        t = np.asarray(t, dtype=float)
        x = (t[..., None] - mu) / s
        return (np.abs(A) * np.exp(-0.5 * x * x)).sum(axis=-1)

    def span(self, sigmas: float = 12.0) -> tuple[float, float]:
        _, mu, s = self._arrays()
        return float(np.min(mu - sigmas * s)), float(np.max(mu + sigmas * s))


@dataclass(frozen=True)
class TestFunction:
    """phi(x) = sum_l c_l exp(-(x - p_l)^2 / (2 w_l^2))."""

    __test__ = False  # not a pytest class

    components: tuple  # of (amplitude, center, width)

    def __post_init__(self):
        comps = tuple((complex(c), float(p), float(w)) for c, p, w in self.components)
        if not comps:
            raise ValueError("test function needs at least one component")
        if any(w <= 0 for _, _, w in comps):
            raise ValueError("widths must be strictly positive")
        object.__setattr__(self, "components", comps)

    def mixture(self) -> GaussianMixture:
        c, p, w = zip(*self.components)
        return GaussianMixture(c, p, w)

    def __call__(self, x):
        return self.mixture()(x)

    def autocorrelation(self) -> GaussianMixture:
        """Closed form of ``phi * phi_star`` with ``phi_star(x) = conj(phi(-x))``.

        Gaussians of variances A and B convolve to a Gaussian of variance
        A + B with amplitude sqrt(2 pi A B / (A + B)).
        """
        amps, cents, wids = [], [], []
        for cl, pl, wl in self.components:
            for cm, pm, wm in self.components:
                v = wl * wl + wm * wm
                amps.append(cl * cm.conjugate() * SQRT_2PI * wl * wm / math.sqrt(v))
                cents.append(pl - pm)
                wids.append(math.sqrt(v))
        return GaussianMixture(tuple(amps), tuple(cents), tuple(wids))


def random_test_function(rng: np.random.Generator, max_components: int = 4,
                         center_range: float = 5.0,
                         width_range: tuple[float, float] = (0.3, 2.0)) -> TestFunction:
    """Seeded mixture with 1..max_components components.

    Centers scatter around a random cluster point with a log-uniform spread
    and are clipped to the center range; widths are log-uniform.  Tight
    clusters of narrow components are what resolve fine spectral structure,
    and a uniform draw over the whole range almost never produces them.
    """
    n = int(rng.integers(1, max_components + 1))
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    hub = rng.uniform(-center_range, center_range)
    spread = math.exp(rng.uniform(math.log(0.1), math.log(center_range)))
    centers = np.clip(hub + spread * rng.normal(size=n), -center_range, center_range)
    lo, hi = width_range
    widths = np.exp(rng.uniform(math.log(lo), math.log(hi), size=n))
    return TestFunction(tuple(zip(amps, centers, widths)))


def component_gram(phi: TestFunction) -> list[list[GaussianMixture]]:
    """Mixtures ``g_l * g_m_star`` for unit-amplitude components l, m.

    ``(F, phi * phi_star) = sum_lm c_l conj(c_m) (F, gram[l][m])``.
    """
    comps = phi.components
    out = []
    for _, pl, wl in comps:
        row = []
        for _, pm, wm in comps:
            v = wl * wl + wm * wm
            row.append(GaussianMixture((SQRT_2PI * wl * wm / math.sqrt(v),), (pl - pm,),
                                       (math.sqrt(v),)))
        out.append(row)
    return out
