"""Finite stopped paths and lifetime excursions on time grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FinitePath", "LifetimeExcursion"]


@dataclass
class FinitePath:
    """A continuous path w: [0, lifetime] -> R sampled on an increasing grid.

    The zero-lifetime path is identified with its start point.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.size != self.values.size or self.grid.size == 0:
            raise ValueError("grid and values must be nonempty and aligned")
        if self.grid[0] != 0.0:
            raise ValueError("grid must start at 0")
        if np.any(np.diff(self.grid) <= 0) and self.grid.size > 1:
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")

    @property
    def start(self) -> float:
        return float(self.values[0])

    @property
    def lifetime(self) -> float:
        return float(self.grid[-1])

    @property
    def endpoint(self) -> float:
        return float(self.values[-1])

    @property
    def is_trivial(self) -> bool:
        return self.grid.size == 1

    def __call__(self, t) -> float | np.ndarray:
        """Value at time(s) t by linear interpolation on the grid."""
        out = np.interp(t, self.grid, self.values)
        return float(out) if np.isscalar(t) else out

    def first_hit(self, level: float) -> float | None:
        """First time the path reaches ``level`` from above, or None.

        Located by scan plus linear interpolation between bracketing grid
        points.
        """
        below = self.values <= level
        if not below.any():
            return None
        i = int(np.argmax(below))
        if i == 0:
            return 0.0
        t0, t1 = self.grid[i - 1], self.grid[i]
        x0, x1 = self.values[i - 1], self.values[i]
        return float(t0 + (t1 - t0) * (x0 - level) / (x0 - x1))

    def truncated(self, t: float) -> "FinitePath":
        """Restriction of the path to [0, t] (interpolated endpoint)."""
        keep = self.grid < t
        g = np.append(self.grid[keep], t)
        v = np.append(self.values[keep], self(t))
        return FinitePath(g, v)

    def shifted(self, c: float) -> "FinitePath":
        return FinitePath(self.grid, self.values + c)


@dataclass
class LifetimeExcursion:
    """A positive excursion of the lifetime process on a time grid.

    ``zeta`` starts and ends at 0 and is positive in between (up to grid
    resolution); ``sigma`` is the excursion length and ``height`` its maximum.
    """

    sgrid: np.ndarray
    zeta: np.ndarray

    def __post_init__(self):
        self.sgrid = np.asarray(self.sgrid, dtype=float)
        self.zeta = np.asarray(self.zeta, dtype=float)
        if self.sgrid.size != self.zeta.size or self.sgrid.size < 2:
            raise ValueError("need matching grids with at least 2 points")
        if self.zeta[0] != 0.0 or self.zeta[-1] != 0.0:
            raise ValueError("zeta must start and end at 0")
        if np.any(np.diff(self.sgrid) <= 0):
            raise ValueError("sgrid must be strictly increasing")

    @property
    def sigma(self) -> float:
        """Excursion length."""
        return float(self.sgrid[-1])

    @property
    def height(self) -> float:
        return float(self.zeta.max())
