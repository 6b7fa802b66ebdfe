import math

import numpy as np
import pytest

from pdcauchy.errors import QuadratureFailure
from pdcauchy.quadrature import adaptive, graded_points


def test_polynomial_is_exact():
    r = adaptive(lambda t: 3 * t ** 2 + 1, [0.0, 2.0])
    assert r.value == pytest.approx(10.0, rel=1e-14)


def test_breakpoints_handle_a_kink():
    r = adaptive(lambda t: np.abs(t - 0.3), [-1.0, 0.3, 1.0], rtol=1e-13)
    assert r.value.real == pytest.approx(0.5 * 1.3 ** 2 + 0.5 * 0.7 ** 2, rel=1e-13)


def test_oscillatory_complex():
    r = adaptive(lambda t: np.exp(1j * 20 * t), [0.0, math.pi], rtol=1e-12)
    want = (np.exp(1j * 20 * math.pi) - 1) / (20j)
    assert abs(r.value - want) < 1e-12
    assert r.error < 1e-10
    assert r.l1 == pytest.approx(math.pi, rel=1e-10)


def test_longdouble_mode_is_consistent():
    f = lambda t: np.exp(-t) * t ** 4
    a = adaptive(f, [0.0, 40.0], rtol=1e-13)
    b = adaptive(f, [0.0, 40.0], rtol=1e-13, dtype=np.longdouble)
    assert complex(b.value) == pytest.approx(24.0, rel=1e-12)
    assert abs(complex(a.value) - complex(b.value)) < 1e-11


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureFailure):
        adaptive(lambda t: np.sin(1.0 / t), [1e-9, 1.0], rtol=1e-14, max_evals=500)


def test_graded_points_cluster_inside_interval():
    pts = graded_points(0.5, 1e-3, -2.0, 3.0)
    assert pts == sorted(pts)
    assert pts[0] == -2.0 and pts[-1] == 3.0
    assert min(abs(p - 0.5) for p in pts if p != 0.5) < 1e-2
