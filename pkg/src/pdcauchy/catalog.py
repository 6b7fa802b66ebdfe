"""Named reference distributions with known positive-definiteness status."""
from __future__ import annotations

from dataclasses import dataclass

from .distribution import DensityAtom, DiracAtom, Distribution


@dataclass(frozen=True)
class Fixture:
    name: str
    distribution: Distribution
    pd: bool
    note: str = ""


def _d(*atoms) -> Distribution:
    return Distribution.of(*atoms)


PD_FIXTURES = (
    Fixture("dirac", _d(DiracAtom()), True, "point mass at 0"),
    Fixture("gaussian", _d(DensityAtom("gaussian", 1.0)), True),
    Fixture("laplace", _d(DensityAtom("laplace", 1.0)), True),
    Fixture("cosine", _d(DensityAtom("cosine", 1.0)), True),
    Fixture("triangle", _d(DensityAtom("triangle", 1.0)), True),
    Fixture("dirac_comb", _d(DiracAtom(weight=3.0), DiracAtom(1.0), DiracAtom(-1.0)), True,
            "3 + 2 cos(xi) > 0"),
    Fixture("dirac_comb_tight", _d(DiracAtom(), DiracAtom(1.0, weight=0.5),
                                   DiracAtom(-1.0, weight=0.5)), True,
            "1 + cos(xi) touches zero"),
    Fixture("modulated_gaussian", _d(DensityAtom("gaussian", 1.0, modulation=3.0)), True,
            "e^{3it} times a Gaussian"),
)

NON_PD_FIXTURES = (
    Fixture("neg_dirac", _d(DiracAtom(weight=-1.0)), False),
    Fixture("sine", _d(DensityAtom("sine", 1.0)), False),
    Fixture("indicator", _d(DensityAtom("indicator", 1.0)), False),
    Fixture("t_squared", _d(DensityAtom("constant", poly=(0.0, 0.0, 1.0))), False,
            "order bound 4"),
    Fixture("t_gaussian", _d(DensityAtom("gaussian", 1.0, poly=(0.0, 1.0))), False),
    Fixture("dirac_prime", _d(DiracAtom(derivative_order=1)), False),
)

CATALOG = {f.name: f for f in PD_FIXTURES + NON_PD_FIXTURES}


def get(name: str) -> Fixture:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(CATALOG))}") from None
