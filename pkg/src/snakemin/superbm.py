"""Minimum functionals of one-dimensional super-Brownian motion.

For an initial finite measure mu with m = inf supp(mu) > -infinity, the
overall spatial minimum m_X of the super-Brownian motion started from mu has

    P(m_X >= x) = exp(-(3/2) * sum_j mass_j / (u_j - x)^2),    x < m,

with an atom at m when the exponent stays finite.  The module evaluates this
law in closed form, samples it by two independent routes (inverse CDF and a
Poisson construction over per-atom excursion minima), samples the joint law
of (starting point of the minimizing path, m_X), and builds the minimizing
historical path itself as a shifted dimension -5 Bessel absorption path.

Measures are represented atomically; continuous measures are ingested by
quadrature (one atom per quantile midpoint), which makes every closed form
exact for the represented measure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from snakemin.paths import FinitePath
from snakemin.rng import RngStream
from snakemin.sde import BesselConfig, simulate_bessel

__all__ = [
    "FiniteMeasure1D",
    "SuperMinSample",
    "cdf_mX",
    "atom_probability",
    "sample_mX",
    "joint_density_wmin0",
    "sample_wmin",
    "poisson_min_construction",
]


@dataclass(frozen=True)
class FiniteMeasure1D:
    """Finite atomic measure on the line with bounded-below support."""

    locations: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "locations", np.asarray(self.locations, dtype=float))
        object.__setattr__(self, "masses", np.asarray(self.masses, dtype=float))
        if self.locations.size == 0 or self.locations.size != self.masses.size:
            raise ValueError("need matching, nonempty atom arrays")
        if np.any(self.masses <= 0):
            raise ValueError("atom masses must be positive")
        if not np.all(np.isfinite(self.locations)):
            raise ValueError("atom locations must be finite")

    @property
    def m(self) -> float:
        """Infimum of the support."""
        return float(self.locations.min())

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    @classmethod
    def dirac(cls, u: float, mass: float = 1.0) -> "FiniteMeasure1D":
        return cls(np.array([u]), np.array([mass]))

    @classmethod
    def from_json(cls, text: str) -> "FiniteMeasure1D":
        """Parse the ``{"atoms": [{"u": ..., "mass": ...}]}`` interchange form."""
        data = json.loads(text)
        atoms = data["atoms"]
        return cls(np.array([a["u"] for a in atoms]),
                   np.array([a["mass"] for a in atoms]))

    def to_json(self) -> str:
        return json.dumps({"atoms": [
            {"u": float(u), "mass": float(w)}
            for u, w in zip(self.locations, self.masses)]})


@dataclass
class SuperMinSample:
    """One draw of (m_X, starting point, minimizing historical path)."""

    m_X: float
    w0: float | None
    path: FinitePath


def _exponent(mu: FiniteMeasure1D, x) -> np.ndarray:
    """(3/2) * sum_j mass_j / (u_j - x)^2, vectorized over x < m."""
    x = np.asarray(x, dtype=float)
    gaps = mu.locations[:, None] - x[None, :]
    return 1.5 * np.sum(mu.masses[:, None] / gaps ** 2, axis=0)


def cdf_mX(mu: FiniteMeasure1D, x: float) -> float:
    """P(m_X >= x) for x < m."""
    if x >= mu.m:
        raise ValueError("x must lie below inf supp(mu)")
    return float(np.exp(-_exponent(mu, [x]))[0])


def atom_probability(mu: FiniteMeasure1D) -> float:
    """P(m_X = m); zero when any atom sits at m (divergent exponent)."""
    m = mu.m
    if np.any(mu.locations == m):
        return 0.0
    return float(np.exp(-_exponent(mu, [m]))[0])


def sample_mX(mu: FiniteMeasure1D, rng: RngStream, n: int = 1) -> np.ndarray:
    """Inverse-transform draws of m_X.

    Solves ``exp(-(3/2) I(x)) = U`` for ``x < m`` by bracketed bisection to
    1e-12 relative tolerance; U below the atom probability maps to m itself.
    """
    gen = rng.generator()
    u = gen.random(n)
    p_atom = atom_probability(mu)
    out = np.full(n, mu.m)
    solve = u > p_atom
    if solve.any():
        target = -np.log(u[solve]) / 1.5  # I(x) = target, I increasing in x
        m = mu.m
        lo = np.full(target.size, m - 1.0)
        # expand the bracket geometrically leftward until I(lo) < target
        while True:
            bad = _exponent(mu, lo) / 1.5 > target
            if not bad.any():
                break
            lo[bad] = m - 2.0 * (m - lo[bad])
        hi = np.full(target.size, m)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            high = _exponent(mu, mid) / 1.5 > target
            hi[high] = mid[high]
            lo[~high] = mid[~high]
            if np.max((hi - lo) / np.maximum(np.abs(hi), 1.0)) < 1e-13:
                break
        out[solve] = 0.5 * (lo + hi)
    return out


def joint_density_wmin0(mu: FiniteMeasure1D, a: float, y: float) -> float:
    """Density in y of P(w_min(0) <= a, m_X in dy), for y < m <= a."""
    if y >= mu.m:
        raise ValueError("y must lie below inf supp(mu)")
    if a < mu.m:
        raise ValueError("a must be >= inf supp(mu)")
    gaps = mu.locations - y
    restricted = mu.locations <= a
    s3 = float(np.sum(mu.masses[restricted] / gaps[restricted] ** 3))
    s2 = float(np.sum(mu.masses / gaps ** 2))
    return 3.0 * s3 * math.exp(-1.5 * s2)


def sample_wmin(mu: FiniteMeasure1D, dt: float, rng: RngStream) -> SuperMinSample:
    """Draw (m_X, w0, minimizing path).

    Conditionally on m_X = x < m, the starting atom is chosen with weight
    ``mass_j / (u_j - x)^3`` and the path is ``x + R`` for a dimension -5
    Bessel process R started from ``w0 - x`` and absorbed at 0.
    """
    gen = rng.generator()
    u = gen.random(2)
    p_atom = atom_probability(mu)
    if u[0] <= p_atom:
        m = mu.m
        return SuperMinSample(m_X=m, w0=None,
                              path=FinitePath(np.array([0.0]), np.array([m])))
    # reuse the same uniform for the inverse CDF (conditional on > p_atom it
    # is uniform on (p_atom, 1), exactly the non-atom branch of the CDF)
    target = -math.log(u[0]) / 1.5
    m = mu.m
    lo, hi = m - 1.0, m
    while _exponent(mu, [lo])[0] / 1.5 > target:
        lo = m - 2.0 * (m - lo)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _exponent(mu, [mid])[0] / 1.5 > target:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    weights = mu.masses / (mu.locations - x) ** 3
    cum = np.cumsum(weights)
    j = int(np.searchsorted(cum, u[1] * cum[-1]))
    w0 = float(mu.locations[j])
    cfg = BesselConfig(alpha=3.0, r0=w0 - x, dt=dt)
    bes = simulate_bessel(cfg, rng.substream(rng.stream_id + (1 << 40)))
    path = FinitePath(bes.times, bes.values + x)
    return SuperMinSample(m_X=x, w0=w0, path=path)


def poisson_min_construction(mu: FiniteMeasure1D, floor: float,
                             rng: RngStream) -> float | None:
    """Alternative m_X sampler through the Poisson cloud of excursion minima.

    For each atom (u, mass) the excursion minima below ``floor`` form a
    Poisson process with intensity ``3 * mass / (u - y)^3 dy``; the sampler
    draws their count and positions by inverse transform and returns the
    overall minimum, or None when no point fell below the floor (the caller
    lowers the floor and retries).
    """
    if floor >= mu.m:
        raise ValueError("floor must lie below inf supp(mu)")
    gen = rng.generator()
    best = math.inf
    for u_loc, mass in zip(mu.locations, mu.masses):
        lam = 1.5 * mass / (u_loc - floor) ** 2
        k = gen.poisson(lam)
        if k:
            v = gen.random(k)
            ys = u_loc - (u_loc - floor) / np.sqrt(v)
            best = min(best, float(ys.min()))
    if math.isinf(best):
        return None
    return min(best, mu.m)
