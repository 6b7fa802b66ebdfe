import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdcauchy.errors import NonUniformGrid
from pdcauchy.monotone import (FAIL, INCONCLUSIVE, PASS, GridSpec, MonotoneVerdict, Tolerance,
                               am_exact, classify, cm_exact, cm_finite_diff)

TOL = Tolerance()


def recip(y, s):
    """Derivatives of 1/y, completely monotone on the positive axis."""
    return (-1) ** s * math.factorial(s) / y ** (s + 1)


def test_grid_and_tolerance_validation():
    with pytest.raises(ValueError):
        GridSpec(1.0, 0.5)
    with pytest.raises(ValueError):
        GridSpec(count=1)
    with pytest.raises(ValueError):
        GridSpec(spacing="cubic")
    with pytest.raises(ValueError):
        Tolerance(0.0, 0.0)
    g = GridSpec(0.01, 100.0, 5)
    assert g.points() == pytest.approx([0.01, 0.1, 1.0, 10.0, 100.0])
    assert g.mirrored()[0] == pytest.approx(-0.01)
    assert GridSpec(1, 2, 3, "linear").points() == [1.0, 1.5, 2.0]


def test_classify():
    assert classify(1.0 + 0j, 0.0, 1e-10) == PASS
    assert classify(-1.0 + 0j, 0.0, 1e-10) == FAIL
    assert classify(1.0 + 1j, 0.0, 1e-10) == FAIL
    assert classify(-1e-11 + 0j, 0.0, 1e-10) == PASS
    # a violation hidden by a large error estimate stays undecided
    assert classify(-1.0 + 0j, 1.0, 1e-10) == INCONCLUSIVE
    assert classify(-2e-10 + 0j, 1e-10, 1e-10) == INCONCLUSIVE


def test_verdict_invariants():
    with pytest.raises(ValueError):
        MonotoneVerdict(FAIL)
    with pytest.raises(ValueError):
        MonotoneVerdict("maybe")


def test_cm_and_am_on_reciprocal():
    v = cm_exact(recip, GridSpec(), 8, TOL)
    assert v.status == PASS and v.tested["axis"] == "positive"
    # 1/y on y < 0: -D(y, s) = s!/|y|^{s+1} >= 0
    assert am_exact(recip, GridSpec(), 8, TOL).status == PASS
    bad = cm_exact(lambda y, s: -recip(y, s), GridSpec(), 2, TOL)
    assert bad.status == FAIL
    assert (bad.witnesses[0].y, bad.witnesses[0].s) == (pytest.approx(0.01), 0)


def test_parallel_sweep_matches_serial():
    a = cm_exact(lambda y, s: recip(y, s) * math.cos(y), GridSpec(), 4, TOL)
    b = cm_exact(lambda y, s: recip(y, s) * math.cos(y), GridSpec(), 4, TOL, jobs=4)
    assert a == b


def test_finite_differences():
    ys = np.arange(1, 101) * 0.05
    good = cm_finite_diff([(y, math.exp(-y)) for y in ys], 6, TOL)
    assert good.status == PASS
    bad = cm_finite_diff([(y, math.cos(y)) for y in ys], 6, TOL)
    assert bad.status == FAIL
    with pytest.raises(NonUniformGrid):
        cm_finite_diff([(0.1, 1.0), (0.2, 1.0), (0.5, 1.0)], 1, TOL)
    with pytest.raises(ValueError):
        cm_finite_diff([(0.1, 1.0)], 3, TOL)


@given(st.floats(-3.0, 3.0), st.integers(2, 30))
def test_refinement_keeps_witnesses(shift, count):
    """Every witness on a coarse log grid is again a witness when the grid is refined."""
    D = lambda y, s: recip(y, s) * (y - 10 ** shift)
    coarse = GridSpec(1e-2, 1e2, count)
    fine = GridSpec(1e-2, 1e2, 2 * count - 1)
    a, b = cm_exact(D, coarse, 3, TOL), cm_exact(D, fine, 3, TOL)
    fine_keys = {(round(w.y, 12), w.s) for w in b.witnesses}
    assert all((round(w.y, 12), w.s) in fine_keys for w in a.witnesses)
    if b.status == PASS:
        assert a.status == PASS


@given(st.lists(st.floats(-1.0, 1.0), min_size=9, max_size=9))
def test_witnesses_sorted(vals):
    g = GridSpec(0.1, 10.0, 3)
    v = cm_exact(lambda y, s: vals[g.points().index(y) * 3 + s] * (-1) ** s, g, 2, TOL)
    keys = [(w.y, w.s) for w in v.witnesses]
    assert keys == sorted(keys)
    assert (v.status == FAIL) == bool(keys)
