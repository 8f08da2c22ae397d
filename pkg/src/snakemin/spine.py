"""Direct sampler of the snake decomposed along its minimizing path.

Conditionally on its overall spatial minimum, the snake splits into

* the *spine*: the historical path realizing the minimum, whose distance to
  the minimum is a dimension -5 Bessel process run from the root; and
* two independent Poisson clouds of *subtrees* (one per tree-time side of
  the minimizer) grafted along the spine, each side at rate 2 per unit
  lifetime, every subtree an independent snake excursion started at the
  local spine position and thinned to stay strictly above the minimum.

The cloud is truncated to subtrees of lifetime height above ``trunc_eps``
(rate ``1/(2*trunc_eps)`` per side per unit lifetime), which is what makes it
samplable; the closed-form intensity of *deep* subtrees is exact for the
untruncated cloud, so comparisons apply a spatial buffer below which the
truncation could bite (a subtree of height eta reaches depth x below its
attach point with probability ~exp(-x^2/(2*eta)), negligible once
``x > ~5*sqrt(trunc_eps)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from snakemin.paths import FinitePath
from snakemin.rng import RngStream
from snakemin.sde import BesselConfig, simulate_bessel
from snakemin.snake import SnakeTrajectory, simulate_snake

__all__ = [
    "SpineSubtree",
    "SpineSample",
    "sample_conditioned_depth",
    "sample_minimizing_path",
    "sample_spine_subtrees",
    "build_spine_sample",
    "reconstruct_wstar",
    "deep_subtree_intensity",
    "count_deep_subtrees",
]


@dataclass
class SpineSubtree:
    """One subtree grafted on the spine."""

    side: str               # "pre" or "post" in tree time, rate 1 each
    attach_lifetime: float  # lifetime coordinate of the branch point
    attach_value: float     # spine position there
    trajectory: SnakeTrajectory

    @property
    def min_value(self) -> float:
        return self.attach_value + self.trajectory.wstar

    @property
    def height(self) -> float:
        """Lifetime extent of the subtree."""
        return self.trajectory.excursion.height


@dataclass
class SpineSample:
    """One draw of (spine, truncated subtree cloud)."""

    depth: float            # -minimum; the spine runs from 0 down to -depth
    min_path: FinitePath
    subtrees: list
    trunc_eps: float


def sample_conditioned_depth(a: float, rng_or_gen) -> float:
    """|minimum| conditioned to exceed ``a``: tail P(depth > x) = (a/x)^2."""
    if a <= 0:
        raise ValueError("a must be positive")
    gen = rng_or_gen.generator() if isinstance(rng_or_gen, RngStream) else rng_or_gen
    return a / math.sqrt(gen.random())


def sample_minimizing_path(depth: float, dt: float, rng: RngStream) -> FinitePath:
    """Spine path from the root (0) down to ``-depth``.

    Its distance to the minimum is a dimension -5 Bessel process started from
    ``depth`` and absorbed at 0, simulated on step ``dt``.
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    cfg = BesselConfig(alpha=3.0, r0=depth, dt=dt,
                       max_time=max(50.0, 4.0 * depth * depth))
    bes = simulate_bessel(cfg, rng)
    if not bes.stopped_flag:
        raise RuntimeError("spine simulation hit its time horizon")
    return FinitePath(bes.times, bes.values - depth)


def sample_spine_subtrees(min_path: FinitePath, trunc_eps: float, ds: float,
                          dt: float, rng: RngStream,
                          gen: np.random.Generator | None = None) -> list:
    """Truncated Poisson clouds of subtrees along the spine, one per side.

    Each side independently carries rate 2 per unit lifetime of snake
    excursions, so proposals of height above ``trunc_eps`` arrive as
    Poisson(lifetime / trunc_eps) per side with uniform attach points.
    Proposals whose minimum would undercut the spine minimum are thinned
    out, which realizes the indicator in the conditional intensity exactly
    (resampling instead would distort the attach-time marginal near the
    deep end of the spine).
    """
    if trunc_eps <= 0:
        raise ValueError("trunc_eps must be positive")
    if gen is None:
        gen = rng.generator()
    zeta = min_path.lifetime
    wstar = min_path.endpoint
    base = (rng.stream_id + 1) << 24
    out = []
    offset = 0
    for side in ("pre", "post"):
        k = int(gen.poisson(zeta / trunc_eps))
        for j in range(k):
            t = zeta * gen.random()
            w = min_path(t)
            traj = simulate_snake(trunc_eps, ds, dt,
                                  rng.substream(base + offset + j),
                                  keep_log=False)
            if w + traj.wstar > wstar:
                out.append(SpineSubtree(side, t, w, traj))
        offset += k
    return out


def build_spine_sample(a: float, rng: RngStream, *, depth: float | None = None,
                       dt_spine: float = 1e-4, trunc_eps: float = 1e-3,
                       ds: float = 2e-4, dt: float = 5e-3) -> SpineSample:
    """One full spine decomposition draw with minimum below ``-a``.

    ``depth`` fixes the minimum at ``-depth`` instead of drawing it from the
    conditional tail.  The spine and each subtree use disjoint substreams of
    ``rng``, so the sample is reproducible and replicates (distinct stream
    ids below 2**24) are independent.
    """
    gen = rng.generator()
    if depth is None:
        depth = sample_conditioned_depth(a, gen)
    base = (rng.stream_id + 1) << 24
    path = sample_minimizing_path(depth, dt_spine, rng.substream(base - 1))
    subs = sample_spine_subtrees(path, trunc_eps, ds, dt, rng, gen=gen)
    return SpineSample(depth=depth, min_path=path, subtrees=subs,
                       trunc_eps=trunc_eps)


def reconstruct_wstar(sample: SpineSample) -> float:
    """Overall minimum of the reassembled snake.

    Equals ``-depth`` exactly: the spine endpoint achieves it and thinning
    keeps every subtree strictly above it.
    """
    best = sample.min_path.endpoint
    for s in sample.subtrees:
        best = min(best, s.min_value)
    return float(best)


def deep_subtree_intensity(min_path: FinitePath, c: float,
                           buffer: float = 0.0, refine: int = 8) -> float:
    """Expected per-side number of subtrees dipping to ``c`` above the minimum.

    For a spine ending at ``-a``, a subtree attached at position ``w`` dips
    below ``-a + c`` with excursion-measure rate
    ``(3/2) * ((w + a - c)^-2 - (w + a)^-2)`` (reaching depth minus
    undercutting, which thinning forbids); each side carries twice that rate
    per unit lifetime, so integrating along the spine and doubling gives the
    per-side Poisson mean.  Only attach points above
    ``-a + c + buffer`` are counted, matching the truncation-safe empirical
    count.  The quadrature subdivides each grid segment of the (piecewise
    linear) spine ``refine``-fold with the midpoint rule, so it integrates
    the same interpolated path the subtree sampler attaches to.
    """
    a = -min_path.endpoint
    if not 0.0 < c < a:
        raise ValueError("require 0 < c < a")
    g = min_path.grid
    widths = np.repeat(np.diff(g) / refine, refine)
    offs = (np.arange(refine) + 0.5) / refine
    mids = (g[:-1][:, None] + np.diff(g)[:, None] * offs[None, :]).ravel()
    w = np.interp(mids, g, min_path.values)
    mask = w > -a + c + buffer
    rate = np.zeros_like(w)
    rate[mask] = 1.5 * ((w[mask] + a - c) ** -2 - (w[mask] + a) ** -2)
    return float(2.0 * np.sum(widths * rate))


def count_deep_subtrees(sample: SpineSample, c: float, buffer: float = 0.0,
                        side: str | None = None) -> int:
    """Empirical counterpart of :func:`deep_subtree_intensity`.

    With ``side`` given ("pre"/"post"), counts that side only; otherwise both
    sides (twice the per-side mean).
    """
    a = -sample.min_path.endpoint
    thr = -a + c
    return sum(1 for s in sample.subtrees
               if (side is None or s.side == side)
               and s.attach_value > thr + buffer and s.min_value <= thr)
