import numpy as np
import pytest
from hypothesis import given, strategies as st

from snakemin import FinitePath, LifetimeExcursion


def _zigzag():
    return FinitePath(np.array([0.0, 1.0, 2.0, 3.0]),
                      np.array([0.0, 2.0, -1.0, 1.0]))


def test_interpolation_and_endpoints():
    p = _zigzag()
    assert p.start == 0.0
    assert p.endpoint == 1.0
    assert p.lifetime == 3.0
    assert p(0.5) == pytest.approx(1.0)
    assert p(2.5) == pytest.approx(0.0)


def test_first_hit_is_interpolated():
    p = _zigzag()
    t = p.first_hit(-0.5)
    assert t == pytest.approx(1.0 + 2.5 / 3.0)
    assert p(t) == pytest.approx(-0.5)
    assert p.first_hit(-5.0) is None


def test_truncated_and_shifted():
    p = _zigzag()
    q = p.truncated(1.5)
    assert q.lifetime == pytest.approx(1.5)
    assert q.endpoint == pytest.approx(p(1.5))
    r = p.shifted(2.0)
    assert r.endpoint == pytest.approx(3.0)
    assert r.start == pytest.approx(2.0)


def test_grid_must_increase():
    with pytest.raises(ValueError):
        FinitePath(np.array([0.0, 1.0, 0.5]), np.zeros(3))


def test_excursion_invariants():
    e = LifetimeExcursion(np.array([0.0, 1.0, 2.0]),
                          np.array([0.0, 1.5, 0.0]))
    assert e.sigma == 2.0
    assert e.height == 1.5
    with pytest.raises(ValueError):
        LifetimeExcursion(np.array([0.0, 1.0]), np.array([0.5, 0.0]))


@given(st.lists(st.floats(-5, 5), min_size=2, max_size=20),
       st.floats(0.05, 0.95))
def test_call_matches_numpy_interp(values, frac):
    values = np.asarray(values)
    grid = np.arange(values.size, dtype=float)
    p = FinitePath(grid, values)
    t = frac * grid[-1]
    assert p(t) == pytest.approx(float(np.interp(t, grid, values)), abs=1e-12)
