import numpy as np
import pytest

from snakemin import (RngStream, first_hit_path, reconstruct_path,
                      simulate_snake, subtree_decomposition, time_reverse)

RNG = RngStream(777)


@pytest.fixture(scope="module")
def traj():
    return simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(1))


def test_determinism(traj):
    again = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(1))
    assert np.array_equal(traj.tips, again.tips)
    assert traj.wstar == again.wstar
    assert traj.sm_index == again.sm_index


def test_minimum_is_the_resolved_minimum(traj):
    finite = traj.popmin[np.isfinite(traj.popmin)]
    resolved = min(traj.tips.min(), finite.min() if finite.size else np.inf)
    assert traj.wstar == pytest.approx(resolved)
    assert traj.min_path.endpoint == pytest.approx(traj.wstar)
    assert traj.min_path.lifetime == pytest.approx(traj.min_lifetime)
    assert traj.min_lifetime <= traj.excursion.height


def test_replay_matches_tips(traj):
    for i in (0, traj.sm_index, traj.n_steps // 2, traj.n_steps):
        path = reconstruct_path(traj, i)
        assert path.endpoint == pytest.approx(traj.tips[i])
        assert path.lifetime == pytest.approx(traj.excursion.zeta[i])
        assert path.start == 0.0


def test_replay_paths_share_their_common_trunk(traj):
    # consecutive historical paths coincide up to the window's pop level:
    # the stored checkpoints of path i+1 start with those of path i minus
    # the entries discarded during step i
    _, _, lp_n, lq_n = traj.log
    i = traj.n_steps // 2
    a = reconstruct_path(traj, i)
    b = reconstruct_path(traj, i + 1)
    shared = a.grid.size - lq_n[i]
    assert shared >= 1
    assert np.array_equal(a.grid[:shared], b.grid[:shared])
    assert np.array_equal(a.values[:shared], b.values[:shared])


def test_hit_path_stops_at_the_level():
    b = 0.3
    t = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(2), hit_level=b)
    # excursions missing the level report no hit; find one that hits
    k = 2
    while t.hit_path is None:
        k += 1
        t = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(k), hit_level=b)
    assert t.hit_path.endpoint == pytest.approx(-b)
    assert np.min(t.hit_path.values[:-1]) > -b
    assert t.wstar <= -b


def test_first_hit_path_resimulates_identically():
    b = 0.3
    k = 2
    watched = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(k), hit_level=b)
    while watched.hit_path is None:
        k += 1
        watched = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(k),
                                 hit_level=b)
    plain = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(k))
    rebuilt = first_hit_path(plain, b)
    assert np.allclose(rebuilt.grid, watched.hit_path.grid)
    assert np.allclose(rebuilt.values, watched.hit_path.values)


def test_subtree_records_stay_above_minimum(traj):
    records = subtree_decomposition(traj)
    assert records, "a generic excursion has grid subtrees"
    for r in records:
        assert r.side in ("pre", "post")
        assert r.min_value > traj.wstar
        assert r.height > 0
        assert r.duration > 0
        assert r.attach_value == pytest.approx(
            float(traj.min_path(r.branch_lifetime)))


def test_time_reverse_is_an_involution(traj):
    rev = time_reverse(traj)
    back = time_reverse(rev)
    assert np.allclose(back.excursion.sgrid, traj.excursion.sgrid)
    assert np.array_equal(back.tips, traj.tips)
    assert np.array_equal(back.popmin, traj.popmin)
    assert np.array_equal(back.laidmin, traj.laidmin)
    assert back.sm_index == traj.sm_index
    assert rev.wstar == traj.wstar


def test_time_reverse_swaps_subtree_sides(traj):
    fwd = subtree_decomposition(traj)
    bwd = subtree_decomposition(time_reverse(traj))
    n_pre = sum(r.side == "pre" for r in fwd)
    n_post = sum(r.side == "post" for r in fwd)
    assert sum(r.side == "pre" for r in bwd) == n_post
    assert sum(r.side == "post" for r in bwd) == n_pre


def test_grid_scales_with_height():
    t1 = simulate_snake(0.05, 1e-3, 5e-3, RNG.substream(30), keep_log=False)
    h = t1.excursion.height
    steps = np.diff(t1.excursion.sgrid)
    assert steps.max() <= 1e-3 * h * h * (1.0 + 1e-9)
