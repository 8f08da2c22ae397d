import numpy as np
import pytest

from snakemin import (FinitePath, RngStream, build_spine_sample,
                      count_deep_subtrees, deep_subtree_intensity,
                      ks_one_sample, reconstruct_wstar,
                      sample_conditioned_depth, sample_minimizing_path)

RNG = RngStream(31415)


def test_conditioned_depth_tail():
    gen = RNG.substream(0).generator()
    d = np.array([sample_conditioned_depth(0.5, gen) for _ in range(3000)])
    assert np.all(d >= 0.5)
    # (a / depth)^2 is uniform on (0, 1)
    u = (0.5 / d) ** 2
    _, p = ks_one_sample(u, lambda x: min(max(x, 0.0), 1.0))
    assert p > 1e-4


def test_minimizing_path_endpoints():
    path = sample_minimizing_path(1.2, 1e-3, RNG.substream(1))
    assert path.start == pytest.approx(0.0)
    assert path.endpoint == pytest.approx(-1.2)
    assert path.lifetime > 0
    assert np.all(path.values >= -1.2)


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        sample_minimizing_path(-1.0, 1e-3, RNG)
    with pytest.raises(ValueError):
        sample_conditioned_depth(0.0, RNG)


def test_spine_sample_reassembles_its_minimum():
    s = build_spine_sample(1.0, RNG.substream(2), depth=1.0, ds=1e-3,
                           trunc_eps=5e-3)
    assert reconstruct_wstar(s) == pytest.approx(-1.0)
    for t in s.subtrees:
        assert t.side in ("pre", "post")
        assert t.min_value > -1.0  # thinning keeps subtrees off the minimum
        assert 0.0 <= t.attach_lifetime <= s.min_path.lifetime
        assert t.height > 0


def test_straight_line_intensity_fixture():
    # spine w(t) = -t on [0, 1]: the per-side deep-subtree mean with band c
    # and attach buffer integrates in closed form
    grid = np.linspace(0.0, 1.0, 1001)
    path = FinitePath(grid, -grid)
    c, buf = 0.5, 0.1
    exact = 2.0 * 1.5 * ((1.0 / buf - 1.0 / (1.0 - c))
                         - (1.0 / (c + buf) - 1.0))
    approx = deep_subtree_intensity(path, c, buf)
    assert approx == pytest.approx(exact, rel=5e-4)
    refined = deep_subtree_intensity(path, c, buf, refine=80)
    assert approx == pytest.approx(refined, rel=1e-4)


def test_intensity_validates_band():
    path = FinitePath(np.array([0.0, 1.0]), np.array([0.0, -1.0]))
    with pytest.raises(ValueError):
        deep_subtree_intensity(path, 1.5)
    with pytest.raises(ValueError):
        deep_subtree_intensity(path, 0.0)


def test_count_matches_manual_enumeration():
    s = build_spine_sample(1.0, RNG.substream(3), depth=1.0, ds=1e-3,
                           trunc_eps=5e-3)
    c, buf = 0.25, 0.15
    thr = -1.0 + c
    manual = sum(1 for t in s.subtrees
                 if t.attach_value > thr + buf and t.min_value <= thr)
    assert count_deep_subtrees(s, c, buf) == manual
    per_side = (count_deep_subtrees(s, c, buf, side="pre")
                + count_deep_subtrees(s, c, buf, side="post"))
    assert per_side == manual
