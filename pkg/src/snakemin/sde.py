"""Seeded numerical kernels for Brownian motion and Bessel processes.

Implements Euler--Maruyama simulation of the nonnegative diffusions

    dR = dB - (alpha/R) dt        (dimension d = 1 - 2*alpha < 1, absorbed at 0)
    dR = dB + (c/R) dt            (c = 1: dimension 3, c = 7/2: dimension 9)

together with first-passage / last-passage stopping, Girsanov reweighting of
Brownian paths into negative-dimension Bessel paths, Ito-excursion sampling of
the lifetime process via the Williams two-leg construction, and exact Brownian
bridge point / minimum draws used for grid refinement.

All samplers are pure functions of their :class:`~snakemin.rng.RngStream`;
replicates with distinct stream ids are independent and reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from snakemin.paths import LifetimeExcursion
from snakemin.rng import RngStream

__all__ = [
    "BesselConfig",
    "SamplePath",
    "HorizonExceeded",
    "simulate_bessel",
    "simulate_bessel_to_level",
    "simulate_bm_to_level",
    "girsanov_weight",
    "sample_ito_excursion",
    "sample_bessel9_to_last_passage",
    "bridge_point",
    "bridge_minimum",
    "bessel_absorption_stats",
    "bessel_absorption_times",
    "bessel_level_times",
    "bm_girsanov_stats",
]

_BLOCK = 1 << 16

# kernel status codes
_RUNNING = 0.0
_STOPPED = 1.0
_HORIZON = 2.0


class HorizonExceeded(RuntimeError):
    """Raised when a path reaches max_time before its stopping rule fires."""


@dataclass(frozen=True)
class BesselConfig:
    """Parameters of one negative-dimension Bessel simulation.

    ``alpha > 0`` sets the drift ``-alpha/R``; the corresponding dimension
    ``1 - 2*alpha`` is derived, never stored.  ``absorb_eps`` is the band near
    zero inside which the path is declared absorbed and projected to 0.
    """

    alpha: float
    r0: float
    dt: float = 1e-4
    absorb_eps: float | None = None
    max_time: float = 50.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.r0 < 0:
            raise ValueError("r0 must be nonnegative")
        if self.dt <= 0 or self.max_time <= 0:
            raise ValueError("dt and max_time must be positive")
        if self.absorb_eps is None:
            object.__setattr__(self, "absorb_eps", 1e-4 * max(self.r0, 1.0))
        if self.absorb_eps <= 0:
            raise ValueError("absorb_eps must be positive")
        if self.r0 > 0 and self.absorb_eps >= self.r0:
            raise ValueError("absorb_eps must be below r0")

    @property
    def dimension(self) -> float:
        return 1.0 - 2.0 * self.alpha


@dataclass
class SamplePath:
    """A stopped path on an increasing time grid starting at 0."""

    times: np.ndarray
    values: np.ndarray
    stopped_flag: bool
    horizon_exceeded: bool = False
    info: dict = field(default_factory=dict)

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    @property
    def terminal(self) -> float:
        return float(self.values[-1])

    def value_at(self, t: float) -> float:
        """Linear interpolation on the stored grid."""
        return float(np.interp(t, self.times, self.values))


# ---------------------------------------------------------------------------
# numba kernels.  State vector layout: [R, t, integral, status, used]
# where `integral` accumulates trapezoid of 1/(shift + R)^2 dt.
# Kernels consume normals (and uniforms) from the front of the given blocks
# and return the number recorded into rec_t/rec_v (0-size arrays disable
# recording); callers re-invoke with fresh blocks while status == RUNNING.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _k_bessel_down(alpha, dt, absorb_eps, max_time, shift, st, z, rec_t, rec_v):
    R = st[0]
    t = st[1]
    integ = st[2]
    nrec = 0
    cap = rec_t.size
    band = 10.0 * absorb_eps
    for i in range(z.size):
        if cap > 0 and nrec >= cap:
            break
        h = dt
        if R < band:
            h = dt * (R / band) * (R / band)
        if t + h > max_time:
            h = max_time - t
        Rn = R - (alpha / R) * h + math.sqrt(h) * z[i]
        f0 = 1.0 / ((shift + R) * (shift + R))
        Rp = Rn if Rn > 0.0 else 0.0
        f1 = 1.0 / ((shift + Rp) * (shift + Rp))
        integ += 0.5 * (f0 + f1) * h
        t += h
        if Rn <= absorb_eps:
            R = 0.0
            st[3] = _STOPPED
        else:
            R = Rn
        if cap > 0:
            rec_t[nrec] = t
            rec_v[nrec] = R
            nrec += 1
        st[4] += 1.0
        if st[3] == _STOPPED:
            break
        if t >= max_time:
            st[3] = _HORIZON
            break
    st[0] = R
    st[1] = t
    st[2] = integ
    return nrec


@njit(cache=True)
def _k_bessel_down_to_level(alpha, delta, dt, max_time, st, z, rec_t, rec_v):
    R = st[0]
    t = st[1]
    nrec = 0
    cap = rec_t.size
    for i in range(z.size):
        if cap > 0 and nrec >= cap:
            break
        h = dt
        if t + h > max_time:
            h = max_time - t
        Rn = R - (alpha / R) * h + math.sqrt(h) * z[i]
        if Rn <= delta:
            # linear-interpolated crossing time, terminal value exactly delta
            t = t + h * (R - delta) / (R - Rn)
            R = delta
            st[3] = _STOPPED
        else:
            t += h
            R = Rn
        if cap > 0:
            rec_t[nrec] = t
            rec_v[nrec] = R
            nrec += 1
        st[4] += 1.0
        if st[3] == _STOPPED:
            break
        if t >= max_time:
            st[3] = _HORIZON
            break
    st[0] = R
    st[1] = t
    return nrec


@njit(cache=True)
def _k_bm_to_level(delta, dt, max_time, st, z, u, rec_t, rec_v):
    # Brownian motion stopped at delta; sub-grid crossings detected with the
    # exact bridge probability exp(-2(B_i-delta)(B_{i+1}-delta)/dt).
    B = st[0]
    t = st[1]
    integ = st[2]
    nrec = 0
    cap = rec_t.size
    for i in range(z.size):
        if cap > 0 and nrec >= cap:
            break
        h = dt
        if t + h > max_time:
            h = max_time - t
        Bn = B + math.sqrt(h) * z[i]
        crossed = False
        tpart = h
        if Bn <= delta:
            tpart = h * (B - delta) / (B - Bn)
            crossed = True
        else:
            p = math.exp(-2.0 * (B - delta) * (Bn - delta) / h)
            if u[i] < p:
                tpart = 0.5 * h
                crossed = True
        if crossed:
            integ += 0.5 * (1.0 / (B * B) + 1.0 / (delta * delta)) * tpart
            t += tpart
            B = delta
            st[3] = _STOPPED
        else:
            integ += 0.5 * (1.0 / (B * B) + 1.0 / (Bn * Bn)) * h
            t += h
            B = Bn
        if cap > 0:
            rec_t[nrec] = t
            rec_v[nrec] = B
            nrec += 1
        st[4] += 1.0
        if st[3] == _STOPPED:
            break
        if t >= max_time:
            st[3] = _HORIZON
            break
    st[0] = B
    st[1] = t
    st[2] = integ
    return nrec


@njit(cache=True)
def _k_bessel_up_fp(c, target, ds, st, z, rec_t, rec_v):
    # dR = dB + (c/R) dt from st[0] >= 0, reflected at 0, stopped at the first
    # crossing of `target`.  The drift is capped over sqrt(c*ds) near zero so
    # the first steps from R = 0 stay finite (startup regularization).
    R = st[0]
    t = st[1]
    nrec = 0
    cap = rec_t.size
    floor = math.sqrt(c * ds)
    for i in range(z.size):
        if cap > 0 and nrec >= cap:
            break
        Rbase = R if R > floor else floor
        Rn = R + (c / Rbase) * ds + math.sqrt(ds) * z[i]
        if Rn < 0.0:
            Rn = -Rn
        if Rn >= target:
            t = t + ds * (target - R) / (Rn - R)
            R = target
            st[3] = _STOPPED
        else:
            t += ds
            R = Rn
        if cap > 0:
            rec_t[nrec] = t
            rec_v[nrec] = R
            nrec += 1
        st[4] += 1.0
        if st[3] == _STOPPED:
            break
    st[0] = R
    st[1] = t
    return nrec


# ---------------------------------------------------------------------------
# block-resume drivers
# ---------------------------------------------------------------------------


def _drive(kernel_step, gen, record: bool, first_block: int = _BLOCK,
           needs_uniforms: bool = False):
    """Run a resumable kernel until it stops, growing the record on demand.

    ``kernel_step(z, u, rec_t, rec_v) -> (nrec, status)`` must consume the
    blocks from the front and update its own state.
    """
    ts, vs = [], []
    block = first_block
    while True:
        z = gen.standard_normal(block)
        u = gen.random(block) if needs_uniforms else np.empty(0)
        if record:
            rt = np.empty(block)
            rv = np.empty(block)
        else:
            rt = np.empty(0)
            rv = np.empty(0)
        nrec, status = kernel_step(z, u, rt, rv)
        if record and nrec:
            ts.append(rt[:nrec])
            vs.append(rv[:nrec])
        if status != _RUNNING:
            break
        block = _BLOCK
    if record:
        t = np.concatenate(ts) if ts else np.empty(0)
        v = np.concatenate(vs) if vs else np.empty(0)
    else:
        t = v = np.empty(0)
    return t, v, status


def simulate_bessel(cfg: BesselConfig, rng: RngStream,
                    record: bool = True) -> SamplePath:
    """Euler--Maruyama path of ``dR = dB - (alpha/R) dt`` absorbed at 0.

    The step is refined by the factor ``(R/(10*absorb_eps))**2`` inside the
    band ``R < 10*absorb_eps``; absorption is declared on first entry to
    ``[0, absorb_eps]`` and the value is projected to exactly 0.  The hitting
    time is the terminal grid time.  ``horizon_exceeded`` is set instead of
    raising so callers can decide whether to discard.
    """
    if cfg.r0 == 0.0:
        return SamplePath(np.array([0.0]), np.array([0.0]), stopped_flag=True,
                          info={"integral": 0.0})
    gen = rng.generator()
    st = np.array([cfg.r0, 0.0, 0.0, _RUNNING, 0.0])

    def step(z, u, rt, rv):
        n = _k_bessel_down(cfg.alpha, cfg.dt, cfg.absorb_eps, cfg.max_time,
                           1.0, st, z, rt, rv)
        return n, st[3]

    first = min(_BLOCK, max(256, int(4 * cfg.r0 ** 2 / (2 * cfg.alpha - 1 + 0.5) / cfg.dt)))
    t, v, status = _drive(step, gen, record, first_block=first)
    t = np.concatenate(([0.0], t))
    v = np.concatenate(([cfg.r0], v))
    return SamplePath(t, v, stopped_flag=(status == _STOPPED),
                      horizon_exceeded=(status == _HORIZON),
                      info={"integral": float(st[2])})


def simulate_bessel_to_level(cfg: BesselConfig, delta: float,
                             rng: RngStream, record: bool = True) -> SamplePath:
    """Bessel path stopped at the first crossing of ``delta`` from above.

    The crossing time is linearly interpolated between the bracketing grid
    points and the terminal value is exactly ``delta``.
    """
    if not 0.0 < delta < cfg.r0:
        raise ValueError("require 0 < delta < r0")
    gen = rng.generator()
    st = np.array([cfg.r0, 0.0, 0.0, _RUNNING, 0.0])

    def step(z, u, rt, rv):
        n = _k_bessel_down_to_level(cfg.alpha, delta, cfg.dt, cfg.max_time,
                                    st, z, rt, rv)
        return n, st[3]

    t, v, status = _drive(step, gen, record)
    t = np.concatenate(([0.0], t))
    v = np.concatenate(([cfg.r0], v))
    return SamplePath(t, v, stopped_flag=(status == _STOPPED),
                      horizon_exceeded=(status == _HORIZON))


def simulate_bm_to_level(r0: float, delta: float, dt: float, rng: RngStream,
                         max_time: float = 200.0, record: bool = True) -> SamplePath:
    """Brownian motion from ``r0`` stopped at ``delta`` (< r0).

    Sub-grid crossings are detected with the exact bridge crossing
    probability, removing the O(sqrt(dt)) overshoot bias of naive grid
    detection.  ``info['integral']`` holds the trapezoid of ``1/B**2 dt``
    used by the Girsanov weight.
    """
    if not 0.0 < delta < r0:
        raise ValueError("require 0 < delta < r0")
    gen = rng.generator()
    st = np.array([r0, 0.0, 0.0, _RUNNING, 0.0])

    def step(z, u, rt, rv):
        n = _k_bm_to_level(delta, dt, max_time, st, z, u, rt, rv)
        return n, st[3]

    t, v, status = _drive(step, gen, record, needs_uniforms=True)
    t = np.concatenate(([0.0], t))
    v = np.concatenate(([r0], v))
    return SamplePath(t, v, stopped_flag=(status == _STOPPED),
                      horizon_exceeded=(status == _HORIZON),
                      info={"integral": float(st[2])})


def girsanov_weight(path: SamplePath, alpha: float, r: float,
                    delta: float) -> float:
    """Change-of-measure weight turning a Brownian path into a Bessel one.

    Returns ``(r/delta)**alpha * exp(-(alpha*(1+alpha)/2) * I)`` where ``I``
    is the trapezoid of ``1/B**2 dt`` along the path stopped at ``delta``.
    The weight lies in ``(0, (r/delta)**alpha]``.
    """
    if np.any(path.values <= 0):
        raise ValueError("Girsanov weight requires a strictly positive path")
    integral = path.info.get("integral")
    if integral is None:
        inv2 = 1.0 / path.values ** 2
        integral = float(np.trapezoid(inv2, path.times))
    return (r / delta) ** alpha * math.exp(-0.5 * alpha * (1 + alpha) * integral)


def _bessel3_first_passage(h: float, ds: float, gen: np.random.Generator,
                           r0: float = 0.0):
    """Dimension-3 first-passage leg from r0 up to h; returns (times, values)."""
    st = np.array([r0, 0.0, 0.0, _RUNNING, 0.0])

    def step(z, u, rt, rv):
        n = _k_bessel_up_fp(1.0, h, ds, st, z, rt, rv)
        return n, st[3]

    first = min(_BLOCK, max(256, int(8 * h * h / 3.0 / ds)))
    t, v, _ = _drive(step, gen, True, first_block=first)
    return np.concatenate(([0.0], t)), np.concatenate(([r0], v))


def sample_ito_excursion(eps: float, ds: float, rng: RngStream,
                         gen: np.random.Generator | None = None) -> LifetimeExcursion:
    """One lifetime excursion conditioned on height > eps.

    The height is drawn from the conditional tail ``P(h > y) = eps/y`` and
    the excursion is assembled from two independent dimension-3 first-passage
    legs to ``h``, the second time-reversed (Williams construction).  The grid
    step scales with the squared height (``ds`` applies per unit ``h**2``) so
    cost and relative resolution are uniform across heights.
    """
    if eps <= 0 or ds <= 0:
        raise ValueError("eps and ds must be positive")
    if gen is None:
        gen = rng.generator()
    h = eps / gen.random()
    ds_eff = ds * h * h
    t1, v1 = _bessel3_first_passage(h, ds_eff, gen)
    t2, v2 = _bessel3_first_passage(h, ds_eff, gen)
    # reverse the second leg; both legs end exactly at h
    sgrid = np.concatenate((t1, t1[-1] + t2[-1] - t2[-2::-1]))
    zeta = np.concatenate((v1, v2[-2::-1]))
    zeta[-1] = 0.0
    return LifetimeExcursion(sgrid, zeta)


def sample_bessel9_to_last_passage(a: float, dt: float, rng: RngStream,
                                   cutoff_mult: float = 10.0) -> SamplePath:
    """Dimension-9 Bessel path from 0 truncated at its last visit to ``a``.

    The path is simulated until it first exceeds ``cutoff_mult * a`` and cut
    at the last grid time it was <= a.  The probability of a later return
    below ``a`` is ``cutoff_mult**-7`` (hitting-probability scale invariance,
    d - 2 = 7), reported in ``info['return_probability']``.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if cutoff_mult < 10.0:
        raise ValueError("cutoff_mult must be >= 10")
    gen = rng.generator()
    st = np.array([0.0, 0.0, 0.0, _RUNNING, 0.0])

    def step(z, u, rt, rv):
        n = _k_bessel_up_fp(4.0, cutoff_mult * a, dt, st, z, rt, rv)
        return n, st[3]

    first = min(1 << 20, max(1024, int(2 * (cutoff_mult * a) ** 2 / 9.0 / dt)))
    t, v, _ = _drive(step, gen, True, first_block=first)
    below = np.nonzero(v <= a)[0]
    if below.size == 0:  # crossed a within the first step
        return SamplePath(np.array([0.0]), np.array([0.0]), stopped_flag=True,
                          info={"return_probability": cutoff_mult ** -7.0})
    last = below[-1]
    times = np.concatenate(([0.0], t[: last + 1]))
    values = np.concatenate(([0.0], v[: last + 1]))
    return SamplePath(times, values, stopped_flag=True,
                      info={"return_probability": cutoff_mult ** -7.0})


# ---------------------------------------------------------------------------
# Brownian bridge refinement draws
# ---------------------------------------------------------------------------


def bridge_point(t0: float, x0: float, t1: float, x1: float, t: float,
                 rng_or_gen) -> float:
    """Gaussian draw of a Brownian bridge at an interior time."""
    if not t0 < t < t1:
        raise ValueError("require t0 < t < t1")
    gen = rng_or_gen.generator() if isinstance(rng_or_gen, RngStream) else rng_or_gen
    lam = (t - t0) / (t1 - t0)
    mean = x0 + lam * (x1 - x0)
    var = (t - t0) * (t1 - t0 - (t - t0)) / (t1 - t0)
    return float(mean + math.sqrt(var) * gen.standard_normal())


@njit(cache=True)
def _bridge_min_value(L, x0, x1, u):
    # inverse transform of P(min <= y) = exp(-2 (x0-y)(x1-y) / L)
    if u < 1e-300:
        u = 1e-300
    d = (x0 - x1) ** 2 - 2.0 * L * math.log(u)
    return 0.5 * (x0 + x1 - math.sqrt(d))


@njit(cache=True)
def _ig_draw(mu, lam, z, u):
    # Michael-Schucany-Haas inverse-Gaussian draw
    y = z * z
    x = mu + (mu * mu * y) / (2.0 * lam) - (mu / (2.0 * lam)) * math.sqrt(
        4.0 * mu * lam * y + mu * mu * y * y)
    if u <= mu / (mu + x):
        return x
    return mu * mu / x


@njit(cache=True)
def _bridge_min_time(L, a, b, z, u):
    # location of the bridge minimum given gaps a = x0 - m, b = x1 - m > 0:
    # with y = (L - tau)/tau, the density is a two-component GIG mixture.
    if a <= 0.0:
        return 0.0
    if b <= 0.0:
        return L
    if u < a / (a + b):
        u2 = (u * (a + b)) / a  # reuse the stratum coordinate as fresh uniform
        y = _ig_draw(b / a, b * b / L, z, u2)
    else:
        u2 = ((u * (a + b)) - a) / b
        y = 1.0 / _ig_draw(a / b, a * a / L, z, u2)
    return L / (1.0 + y)


def bridge_minimum(t0: float, x0: float, t1: float, x1: float,
                   rng_or_gen) -> tuple[float, float]:
    """Draw (time, value) of the minimum of a Brownian bridge.

    The value uses the reflection-law inverse CDF; the location uses the
    exact inverse-Gaussian mixture for the argmin given the minimum.
    """
    if t1 - t0 <= 0:
        raise ValueError("degenerate interval")
    gen = rng_or_gen.generator() if isinstance(rng_or_gen, RngStream) else rng_or_gen
    L = t1 - t0
    m = _bridge_min_value(L, x0, x1, gen.random())
    tau = _bridge_min_time(L, x0 - m, x1 - m, gen.standard_normal(), gen.random())
    return t0 + tau, m


# ---------------------------------------------------------------------------
# batch helpers used by the verification checks (no path storage)
# ---------------------------------------------------------------------------


def bessel_absorption_stats(cfg: BesselConfig, n: int, rng: RngStream,
                            shift: float = 1.0, base_stream: int = 0):
    """Absorption times and ``exp(-3 * int (shift+R)^-2 dt)`` over replicates.

    Returns ``(times, laplace, n_horizon)``; horizon-limited paths are
    reported with ``times = nan``.
    """
    times = np.empty(n)
    lap = np.empty(n)
    nhor = 0
    for i in range(n):
        gen = rng.substream(base_stream + i).generator()
        st = np.array([cfg.r0, 0.0, 0.0, _RUNNING, 0.0])
        empty = np.empty(0)
        first = min(_BLOCK, max(256, int(4 * cfg.r0 ** 2 / (2 * cfg.alpha - 1 + 0.5) / cfg.dt)))
        block = first
        while st[3] == _RUNNING:
            z = gen.standard_normal(block)
            _k_bessel_down(cfg.alpha, cfg.dt, cfg.absorb_eps, cfg.max_time,
                           shift, st, z, empty, empty)
            block = _BLOCK
        if st[3] == _HORIZON:
            times[i] = np.nan
            nhor += 1
        else:
            times[i] = st[1]
        lap[i] = math.exp(-3.0 * st[2])
    return times, lap, nhor


def bessel_absorption_times(alpha: float, r0s, dt: float, rng: RngStream,
                            base_stream: int = 0, max_time_mult: float = 250.0):
    """Absorption times with a different starting point per replicate.

    ``dt`` and the horizon scale with ``r0**2`` (the process is self-similar),
    so relative resolution is uniform across starting points.  Returns
    ``(times, n_horizon)``; horizon-limited replicates get ``times = nan``.
    """
    r0s = np.asarray(r0s, dtype=float)
    times = np.empty(r0s.size)
    nhor = 0
    for i, r0 in enumerate(r0s):
        scale = r0 * r0
        gen = rng.substream(base_stream + i).generator()
        st = np.array([r0, 0.0, 0.0, _RUNNING, 0.0])
        empty = np.empty(0)
        block = min(_BLOCK, max(256, int(8.0 / dt)))
        while st[3] == _RUNNING:
            z = gen.standard_normal(block)
            _k_bessel_down(alpha, dt * scale, 1e-4 * r0, max_time_mult * scale,
                           1.0, st, z, empty, empty)
            block = _BLOCK
        if st[3] == _HORIZON:
            times[i] = np.nan
            nhor += 1
        else:
            times[i] = st[1]
    return times, nhor


def bessel_level_times(alpha: float, r0: float, delta: float, dt: float,
                       n: int, rng: RngStream, base_stream: int = 0,
                       max_time: float = 50.0):
    """First-crossing times of ``delta`` from ``r0`` over replicates.

    Returns ``(times, n_horizon)``; horizon-limited replicates get
    ``times = nan``.
    """
    times = np.empty(n)
    nhor = 0
    for i in range(n):
        gen = rng.substream(base_stream + i).generator()
        st = np.array([r0, 0.0, 0.0, _RUNNING, 0.0])
        empty = np.empty(0)
        block = min(_BLOCK, max(256, int(8 * (r0 - delta) ** 2 / dt)))
        while st[3] == _RUNNING:
            z = gen.standard_normal(block)
            _k_bessel_down_to_level(alpha, delta, dt, max_time, st, z,
                                    empty, empty)
            block = _BLOCK
        if st[3] == _HORIZON:
            times[i] = np.nan
            nhor += 1
        else:
            times[i] = st[1]
    return times, nhor


def bm_girsanov_stats(r0: float, delta: float, dt: float, n: int,
                      rng: RngStream, alpha: float, max_time: float = 200.0,
                      base_stream: int = 0):
    """Hitting times and Girsanov weights for BM stopped at ``delta``.

    Horizon-limited paths get weight 0 and ``times = nan`` (their true weight
    mass is the Bessel tail probability of ``T > max_time``, negligible for
    the configured horizons; see the checks module notes).
    """
    times = np.empty(n)
    weights = np.zeros(n)
    nhor = 0
    c = (r0 / delta) ** alpha
    k = 0.5 * alpha * (1.0 + alpha)
    for i in range(n):
        gen = rng.substream(base_stream + i).generator()
        st = np.array([r0, 0.0, 0.0, _RUNNING, 0.0])
        empty = np.empty(0)
        block = min(_BLOCK, max(256, int(8 * (r0 - delta) ** 2 / dt)))
        while st[3] == _RUNNING:
            z = gen.standard_normal(block)
            u = gen.random(block)
            _k_bm_to_level(delta, dt, max_time, st, z, u, empty, empty)
            block = _BLOCK
        if st[3] == _HORIZON:
            times[i] = np.nan
            nhor += 1
        else:
            times[i] = st[1]
            weights[i] = c * math.exp(-k * st[2])
    return times, weights, nhor
