"""End-to-end positive-definiteness verdicts.

``check_theorem13`` samples the imaginary-axis derivatives of the two
modulated Cauchy transforms and tests complete monotonicity on y > 0 and
absolute monotonicity of the negated transform on y < 0.  ``check_theorem12``
is the single-condition test for characteristic functions through the
Poisson transform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .distribution import Distribution, order_bound
from .errors import NormalizationError, PDCheckError, UnsupportedDistribution
from .monotone import (FAIL, INCONCLUSIVE, PASS, GridSpec, MonotoneVerdict, Tolerance,
                       am_exact, cm_exact, cm_finite_diff)
from .oracle import NO, YES, GroundTruth, fourier_truth, quadratic_form_truth
from .transform import AxisSample, CauchyParams, axis_derivative, poisson_axis

NOT_PD, CONSISTENT_PD = "not_pd", "consistent_pd"
SUB_VERDICTS = ("j1_positive", "j1_negative", "j2_positive", "j2_negative")
THEOREM12_GRID = GridSpec(0.05, 5.0, 100, "linear")


@dataclass(frozen=True)
class CheckConfig:
    modulations: tuple = (0.0, 1.0)
    n: Any = "auto"
    grid: GridSpec = field(default_factory=GridSpec)
    s_max: int = 8
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self):
        a1, a2 = (float(a) for a in self.modulations)
        if a1 == a2:
            raise ValueError("the two modulations must differ")
        object.__setattr__(self, "modulations", (a1, a2))
        if self.n != "auto" and (int(self.n) != self.n or self.n < 0):
            raise ValueError("n must be 'auto' or a natural number")
        if self.n != "auto":
            object.__setattr__(self, "n", int(self.n))
        if int(self.s_max) != self.s_max or self.s_max < 0:
            raise ValueError("s_max must be a natural number")
        object.__setattr__(self, "s_max", int(self.s_max))

    def params_for(self, F: Distribution) -> CauchyParams:
        if self.n == "auto":
            p = CauchyParams(math.ceil(order_bound(F) / 2), self.modulations)
        else:
            p = CauchyParams(self.n, self.modulations)
        p.validate_for(F)
        return p

    def to_dict(self) -> dict:
        return {"modulations": list(self.modulations), "n": self.n,
                "grid": self.grid.to_dict(), "s_max": self.s_max, "tol": self.tol.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "CheckConfig":
        d = dict(d or {})
        kw: dict = {}
        if "modulations" in d:
            kw["modulations"] = tuple(d["modulations"])
        if "n" in d:
            kw["n"] = d["n"]
        if "grid" in d:
            kw["grid"] = GridSpec(**d["grid"])
        if "s_max" in d:
            kw["s_max"] = d["s_max"]
        if "tol" in d:
            kw["tol"] = Tolerance(**d["tol"])
        return cls(**kw)


@dataclass
class CheckReport:
    mode: str
    config: dict
    verdicts: dict
    overall: str
    samples: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def aggregate(statuses) -> str:
    """Overall verdict from sub-verdict statuses."""
    statuses = list(statuses)
    if any(s == FAIL for s in statuses):
        return NOT_PD
    if statuses and all(s == PASS for s in statuses):
        return CONSISTENT_PD
    return INCONCLUSIVE


def _failed(tested: dict, exc: Exception) -> MonotoneVerdict:
    return MonotoneVerdict(INCONCLUSIVE, tested=tested,
                           diagnostics=[f"{type(exc).__name__}: {exc}"])


def check_theorem13(F: Distribution, config: CheckConfig | None = None,
                    jobs: int = 1) -> CheckReport:
    config = config or CheckConfig()
    params = config.params_for(F)
    companion = F.abs_companion()
    samples: dict = {}

    def provider(j):
        def D(y, s):
            smp = axis_derivative(F, params, j, y, s, companion=companion)
            samples[(j, y, s)] = smp
            return smp
        return D

    verdicts = {}
    for j in (1, 2):
        for axis, fn in (("positive", cm_exact), ("negative", am_exact)):
            name = f"j{j}_{axis}"
            try:
                verdicts[name] = fn(provider(j), config.grid, config.s_max, config.tol, jobs=jobs)
            except PDCheckError as exc:
                verdicts[name] = _failed({"axis": axis, "s_max": config.s_max}, exc)
    overall = aggregate(v.status for v in verdicts.values())
    diags = [f"{k}: {d}" for k, v in verdicts.items() for d in v.diagnostics]
    cfg = config.to_dict()
    ordered = [samples[k] for k in sorted(samples, key=lambda k: (k[0], k[1], k[2]))]
    return CheckReport("theorem13", cfg, verdicts, overall, ordered, diags,
                       {"order_bound": order_bound(F), "n_effective": params.n})


def _check_even_real(f: Distribution) -> None:
    from .transform import _poisson_ready
    if not f.atoms:
        raise UnsupportedDistribution("empty distribution")
    _poisson_ready(f)
    if any(a.kind == "indicator" for a in f.atoms):
        raise UnsupportedDistribution("indicator densities are not continuous")


def check_theorem12(f: Distribution, config: CheckConfig | None = None, *,
                    k_max: int = 6, strict: bool = True) -> CheckReport:
    """Alternating-difference test of ``y -> u_f(0, y)``.

    The grid comes from ``config`` when it is linear; otherwise the uniform
    default on [0.05, 5] with step 0.05 is used.
    """
    config = config or CheckConfig(grid=THEOREM12_GRID)
    _check_even_real(f)
    f0 = complex(f.evaluate(0.0))
    if strict and abs(f0 - 1.0) > 1e-9:
        raise NormalizationError(f"f(0) = {f0.real:.12g} differs from 1")
    grid = config.grid if config.grid.spacing == "linear" else THEOREM12_GRID
    ys = grid.points()
    us = [poisson_axis(f, y) for y in ys]
    verdict = cm_finite_diff(list(zip(ys, us)), k_max, config.tol)
    overall = aggregate([verdict.status])
    samples = [AxisSample(0, y, 0, complex(u), complex(u), abs(u), 0.0,
                          math.log(abs(u)) if u else -math.inf, 0.0 if u >= 0 else math.pi)
               for y, u in zip(ys, us)]
    cfg = config.to_dict()
    cfg["grid"] = grid.to_dict()
    return CheckReport("theorem12", cfg, {"poisson_axis": verdict}, overall, samples, [],
                       {"f0": f0.real, "strict": strict, "k_max": k_max})


def cross_validate(F: Distribution, config: CheckConfig | None = None, *,
                   trials: int = 256, seed: int = 0, jobs: int = 1) -> dict:
    report = check_theorem13(F, config, jobs=jobs)
    ft: GroundTruth = fourier_truth(F)
    qt: GroundTruth = quadratic_form_truth(F, trials, seed, (config or CheckConfig()).tol)
    discordant = ((report.overall == NOT_PD and ft.pd == YES)
                  or (report.overall == CONSISTENT_PD and ft.pd == NO))
    return {"checker": report.overall, "fourier": ft, "quadratic": qt,
            "consistent": not discordant, "report": report}
