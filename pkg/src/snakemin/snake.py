"""Grid simulation of the path-valued snake over one lifetime excursion.

The snake's tip follows the lifetime process: while the lifetime falls the
path is truncated, while it rises the path is extended by independent
Brownian increments.  On a grid this is a checkpoint stack: each step draws
the exact window minimum ``m`` of the lifetime (Brownian bridge reflection
law), pops every checkpoint above ``m`` — drawing the exact interior minimum
of each popped segment, so the overall spatial minimum is resolved below grid
scale — then extends from an exact bridge point at ``m`` up to the next grid
lifetime.

Per excursion the simulation keeps, besides the tip trajectory, two
step-indexed minimum attributions:

* ``popmin[i]``  – deepest spatial value *discarded* during step ``i``;
* ``laidmin[i]`` – deepest spatial value over all segments *created* during
  step ``i`` (resolved when those segments are eventually popped).

``popmin`` localizes subtree minima in tree time, ``laidmin`` localizes first
hitting times of spatial levels; the two swap roles under time reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from snakemin.paths import FinitePath, LifetimeExcursion
from snakemin.rng import RngStream
from snakemin.sde import _bridge_min_time, _bridge_min_value, sample_ito_excursion

__all__ = [
    "SnakeTrajectory",
    "SubtreeRecord",
    "simulate_snake",
    "extract_minimum",
    "first_hit_path",
    "reconstruct_path",
    "subtree_decomposition",
    "time_reverse",
]


@dataclass
class SnakeTrajectory:
    """One simulated snake excursion with its minimum fully resolved.

    ``sm_index`` is the grid step during which the minimizing value was laid;
    ``min_lifetime`` is the lifetime coordinate of the minimizer on its path;
    ``min_path`` is the historical path realizing ``wstar`` (endpoint equals
    ``wstar`` exactly).  When the simulation was asked to watch a hitting
    level ``b``, ``hit_path`` is the historical path at the first tree time
    the tip reaches ``-b``, truncated at the crossing.
    """

    excursion: LifetimeExcursion
    tips: np.ndarray
    popmin: np.ndarray
    laidmin: np.ndarray
    wstar: float
    sm_index: int
    min_lifetime: float
    min_path: FinitePath
    eps: float
    ds: float
    dt: float
    rng: RngStream | None = None
    hit_level: float | None = None
    hit_index: int | None = None
    hit_path: FinitePath | None = None
    log: tuple | None = field(default=None, repr=False)

    @property
    def n_steps(self) -> int:
        return self.excursion.sgrid.size - 1


@dataclass
class SubtreeRecord:
    """One subtree branching off the minimizing path.

    ``side`` is "pre" or "post" according to whether the subtree attaches
    before or after the minimizer in tree time.  ``branch_lifetime`` is the
    lifetime level of the branch point, ``attach_value`` the spatial position
    of the minimizing path there, ``min_value`` the deepest spatial value in
    the subtree, ``height`` its lifetime extent above the branch point and
    ``duration`` its width in tree time.
    """

    side: str
    branch_lifetime: float
    attach_value: float
    min_value: float
    height: float
    duration: float


@njit(cache=True)
def _k_snake(sg, zt, dt_eff, hit_b, z, un, cap_push):
    M = sg.size - 1
    cap_stack = cap_push + 2
    tips = np.zeros(M + 1)
    popmin = np.full(M + 1, np.inf)
    laidmin = np.full(M + 1, np.inf)
    stk_t = np.empty(cap_stack)
    stk_x = np.empty(cap_stack)
    stk_c = np.empty(cap_stack, np.int64)
    stk_t[0] = 0.0
    stk_x[0] = 0.0
    stk_c[0] = 0
    top = 0
    lp_t = np.empty(cap_push)
    lp_x = np.empty(cap_push)
    lp_n = np.zeros(M + 1, np.int64)
    lq_n = np.zeros(M + 1, np.int64)
    npush = 0
    wstar = np.inf
    sm_step = 0
    min_tau = 0.0
    snap_t = np.empty(cap_stack)
    snap_x = np.empty(cap_stack)
    nsnap = 0
    hit_step = -1
    hit_t0 = 0.0
    hsnap_t = np.empty(cap_stack)
    hsnap_x = np.empty(cap_stack)
    nhsnap = 0
    iz = 0
    iu = 0
    ok = 1
    for i in range(M):
        # exact window minimum of the lifetime over [s_i, s_{i+1}]
        if iu >= un.size:
            ok = 0
            break
        m = _bridge_min_value(sg[i + 1] - sg[i], zt[i], zt[i + 1], un[iu])
        iu += 1
        if m < 0.0:
            m = 0.0
        # truncate the current path to lifetime m
        while stk_t[top] > m:
            te = stk_t[top]
            xe = stk_x[top]
            ce = stk_c[top]
            top -= 1
            lq_n[i] += 1
            td = stk_t[top]
            xd = stk_x[top]
            if td < m:
                # straddling segment: exact bridge value at m, keep lower part
                if iz >= z.size or npush >= cap_push or top + 1 >= cap_stack:
                    ok = 0
                    break
                lam = (m - td) / (te - td)
                var = (m - td) * (te - m) / (te - td)
                xm = xd + lam * (xe - xd) + math.sqrt(var) * z[iz]
                iz += 1
                top += 1
                stk_t[top] = m
                stk_x[top] = xm
                stk_c[top] = ce
                lp_t[npush] = m
                lp_x[npush] = xm
                npush += 1
                lp_n[i] += 1
                t0 = m
                x0 = xm
            else:
                t0 = td
                x0 = xd
            seg = te - t0
            if seg > 0.0:
                if iu >= un.size:
                    ok = 0
                    break
                v = _bridge_min_value(seg, x0, xe, un[iu])
                iu += 1
            else:
                v = xe if xe < x0 else x0
            if v < popmin[i]:
                popmin[i] = v
            if v < laidmin[ce]:
                laidmin[ce] = v
            want_min = v < wstar
            want_hit = v <= -hit_b and (
                hit_step < 0 or ce < hit_step or (ce == hit_step and t0 < hit_t0))
            if want_min or want_hit:
                if seg > 0.0:
                    if iz >= z.size or iu >= un.size:
                        ok = 0
                        break
                    tau = _bridge_min_time(seg, x0 - v, xe - v, z[iz], un[iu])
                    iz += 1
                    iu += 1
                    lo = 1e-9 * seg
                    if tau < lo:
                        tau = lo
                    if tau > seg - lo:
                        tau = seg - lo
                    tau = t0 + tau
                else:
                    tau = t0
                if want_min:
                    wstar = v
                    sm_step = ce
                    min_tau = tau
                    nsnap = top + 1
                    for j in range(nsnap):
                        snap_t[j] = stk_t[j]
                        snap_x[j] = stk_x[j]
                    snap_t[nsnap] = tau
                    snap_x[nsnap] = v
                    nsnap += 1
                if want_hit:
                    hit_step = ce
                    hit_t0 = t0
                    if x0 <= -hit_b:
                        th = t0
                    else:
                        # first-passage time below -b estimated by Brownian
                        # scaling between the segment start and its argmin
                        frac = (x0 + hit_b) / (x0 - v)
                        th = t0 + (tau - t0) * frac * frac
                    nhsnap = top + 1
                    for j in range(nhsnap):
                        hsnap_t[j] = stk_t[j]
                        hsnap_x[j] = stk_x[j]
                    hsnap_t[nhsnap] = th
                    hsnap_x[nhsnap] = -hit_b
                    nhsnap += 1
            if t0 == m:
                break
        if not ok:
            break
        # extend the path from lifetime m up to the next grid lifetime
        xcur = stk_x[top]
        tcur = stk_t[top]
        rise = zt[i + 1] - tcur
        if rise > 0.0:
            k = int(rise / dt_eff) + 1
            dsub = rise / k
            sq = math.sqrt(dsub)
            for j in range(k):
                if iz >= z.size or npush >= cap_push or top + 1 >= cap_stack:
                    ok = 0
                    break
                xn = xcur + sq * z[iz]
                iz += 1
                tn = tcur + dsub * (j + 1)
                top += 1
                stk_t[top] = tn
                stk_x[top] = xn
                stk_c[top] = i
                lp_t[npush] = tn
                lp_x[npush] = xn
                npush += 1
                lp_n[i] += 1
                if xn < laidmin[i]:
                    laidmin[i] = xn
                xcur = xn
            if not ok:
                break
        tips[i + 1] = xcur
    return (ok, tips, popmin, laidmin, lp_t[:npush], lp_x[:npush], lp_n, lq_n,
            wstar, sm_step, min_tau, snap_t[:nsnap].copy(), snap_x[:nsnap].copy(),
            hit_step, hsnap_t[:nhsnap].copy(), hsnap_x[:nhsnap].copy())


def simulate_snake(eps: float, ds: float, dt: float, rng: RngStream,
                   hit_level: float | None = None,
                   keep_log: bool = True) -> SnakeTrajectory:
    """One snake excursion conditioned on lifetime height > eps.

    ``ds`` is the tree-time grid step per unit squared excursion height and
    ``dt`` the lifetime substep per unit height used when extending the path,
    so resolution is scale-uniform across excursion heights.  Everything is a
    pure function of ``rng`` (and the arguments): reruns are bit-identical.

    When ``hit_level = b`` is given, the historical path at the first tree
    time the tip reaches ``-b`` is recorded with a bridge-refined crossing.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    hb = 1e300 if hit_level is None else float(hit_level)
    if hit_level is not None and hb <= 0:
        raise ValueError("hit_level must be positive")
    mult = 1
    for _ in range(12):
        gen = rng.generator()
        exc = sample_ito_excursion(eps, ds, rng, gen=gen)
        sg, zt = exc.sgrid, exc.zeta
        h = exc.height
        M = sg.size - 1
        dt_eff = dt * h
        rises = np.maximum(np.diff(zt), 0.0) + 0.5 * math.sqrt(ds) * h
        cap_push = (int(1.3 * (M + rises.sum() / dt_eff)) + 256) * mult
        z = gen.standard_normal(cap_push + 4096 * mult)
        un = gen.random(M + cap_push + 4096 * mult)
        res = _k_snake(sg, zt, dt_eff, hb, z, un, cap_push)
        if res[0]:
            break
        mult *= 2
    else:
        raise RuntimeError("snake kernel failed to fit its random budget")
    (_, tips, popmin, laidmin, lp_t, lp_x, lp_n, lq_n,
     wstar, sm_step, min_tau, snap_t, snap_x, hit_step, hs_t, hs_x) = res
    if snap_t.size == 0:
        raise RuntimeError("excursion produced no minimum candidate")
    traj = SnakeTrajectory(
        excursion=exc, tips=tips, popmin=popmin, laidmin=laidmin,
        wstar=float(wstar), sm_index=int(sm_step), min_lifetime=float(min_tau),
        min_path=FinitePath(snap_t, snap_x),
        eps=eps, ds=ds, dt=dt, rng=rng, hit_level=hit_level,
        log=(lp_t, lp_x, lp_n, lq_n) if keep_log else None,
    )
    if hit_level is not None and hit_step >= 0:
        traj.hit_index = int(hit_step)
        traj.hit_path = FinitePath(hs_t, hs_x)
    return traj


def extract_minimum(traj: SnakeTrajectory) -> tuple[float, int, FinitePath]:
    """Overall spatial minimum, its grid step, and the path realizing it."""
    return traj.wstar, traj.sm_index, traj.min_path


def first_hit_path(traj: SnakeTrajectory, b: float) -> FinitePath | None:
    """Historical path at the first tree time the tip reaches ``-b``.

    Exact (bridge-refined) when ``b`` matches the trajectory's watched hit
    level; otherwise the excursion is re-simulated from its own stream with
    the level watched, which is deterministic and yields the same excursion.
    """
    if b <= 0:
        raise ValueError("b must be positive")
    if traj.hit_level is not None and b == traj.hit_level:
        return traj.hit_path
    if traj.rng is None:
        raise ValueError("trajectory carries no stream; re-simulation impossible")
    return simulate_snake(traj.eps, traj.ds, traj.dt, traj.rng,
                          hit_level=b, keep_log=False).hit_path


def reconstruct_path(traj: SnakeTrajectory, i: int) -> FinitePath:
    """Historical path W at grid index ``i``, replayed from the stack log."""
    if traj.log is None:
        raise ValueError("trajectory was simulated with keep_log=False")
    if not 0 <= i <= traj.n_steps:
        raise ValueError("grid index out of range")
    lp_t, lp_x, lp_n, lq_n = traj.log
    ts = [0.0]
    xs = [0.0]
    p = 0
    for step in range(i):
        for _ in range(lq_n[step]):
            ts.pop()
            xs.pop()
        for j in range(lp_n[step]):
            ts.append(lp_t[p + j])
            xs.append(lp_x[p + j])
        p += lp_n[step]
    return FinitePath(np.asarray(ts), np.asarray(xs))


def _side_records(traj: SnakeTrajectory, lo: int, hi: int, side: str,
                  spine: np.ndarray) -> list[SubtreeRecord]:
    """Subtree intervals on grid indices [lo, hi] against the given spine."""
    zt = traj.excursion.zeta
    sg = traj.excursion.sgrid
    out = []
    a = None
    for j in range(lo, hi + 2):
        inside = j <= hi and zt[j] > spine[j]
        if inside and a is None:
            a = j
        elif not inside and a is not None:
            b = j - 1
            base = float(spine[a])
            # pops during the closing step belong partly to the spine; the
            # values they could add sit near the branch point, so they are
            # left out to keep records strictly off the minimizing path
            mv = traj.tips[a:b + 1].min()
            if b > a:
                mv = min(mv, traj.popmin[a:b].min())
            out.append(SubtreeRecord(
                side=side,
                branch_lifetime=base,
                attach_value=float(traj.min_path(base)),
                min_value=float(mv),
                height=float(zt[a:b + 1].max() - base),
                duration=float(sg[min(b + 1, sg.size - 1)] - sg[max(a - 1, 0)]),
            ))
            a = None
    return out


def subtree_decomposition(traj: SnakeTrajectory) -> list[SubtreeRecord]:
    """Subtrees grafted on the minimizing path, one record per grid subtree.

    The spine level at a grid index is the running minimum of the lifetime
    between that index and the minimizer; maximal index runs strictly above
    it form the subtrees.  Each record's minimum is read off the per-step pop
    attribution, which resolves segment minima below grid scale.  Every
    record satisfies ``min_value > wstar``.
    """
    zt = traj.excursion.zeta
    M = traj.n_steps
    sm = traj.sm_index
    spine = np.empty(M + 1)
    spine[:sm + 1] = np.minimum(
        np.minimum.accumulate(zt[sm::-1])[::-1], traj.min_lifetime)
    spine[sm + 1:] = np.minimum(
        np.minimum.accumulate(zt[sm + 1:]), traj.min_lifetime)
    records = _side_records(traj, 0, sm, "pre", spine)
    records += _side_records(traj, sm + 1, M, "post", spine)
    return records


def time_reverse(traj: SnakeTrajectory) -> SnakeTrajectory:
    """The same excursion run backwards in tree time.

    Creation and discard swap under reversal, so the pop/laid attributions
    exchange roles.  The hit-level data and the replay log are dropped (they
    are direction-specific).
    """
    M = traj.n_steps
    sg = traj.excursion.sgrid
    rev_exc = LifetimeExcursion(sg[-1] - sg[::-1], traj.excursion.zeta[::-1].copy())

    def rev_steps(arr):
        out = np.full(M + 1, np.inf)
        out[:M] = arr[:M][::-1]
        return out

    return SnakeTrajectory(
        excursion=rev_exc,
        tips=traj.tips[::-1].copy(),
        popmin=rev_steps(traj.laidmin),
        laidmin=rev_steps(traj.popmin),
        wstar=traj.wstar,
        sm_index=M - 1 - traj.sm_index,
        min_lifetime=traj.min_lifetime,
        min_path=traj.min_path,
        eps=traj.eps, ds=traj.ds, dt=traj.dt,
        rng=None, hit_level=None,
    )
