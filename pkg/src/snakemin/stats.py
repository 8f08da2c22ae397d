"""Statistical machinery turning simulations into pass/fail verdicts.

Thin, explicit wrappers around scipy.stats primitives plus the report record
serialized by the CLI.  Chi-square helpers bin tails so that every expected
cell count is at least 5 and refuse to run when the sample cannot support
that, rather than passing silently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy import stats as sps

__all__ = [
    "VerdictReport",
    "ks_one_sample",
    "ks_two_sample",
    "chi_square_poisson",
    "chi_square_mixed_poisson",
    "chi_square_independence",
    "mc_mean_ci",
]


@dataclass
class VerdictReport:
    """Outcome of one statistical check."""

    check_id: str
    statistic: float
    threshold: float
    n: int
    master_seed: int
    passed: bool
    p_value: float | None = None
    runtime_seconds: float = 0.0
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return json.dumps(d, default=float)


def _clean(samples) -> np.ndarray:
    x = np.asarray(samples, dtype=float)
    if np.any(np.isnan(x)):
        raise ValueError("NaN samples rejected")
    return x


def ks_one_sample(samples, cdf_evaluator) -> tuple[float, float]:
    """Kolmogorov-Smirnov distance and asymptotic p against a CDF callable."""
    x = np.sort(_clean(samples))
    n = x.size
    if n < 20:
        raise ValueError("need at least 20 samples")
    cdf = np.asarray([cdf_evaluator(v) for v in x], dtype=float)
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    d = float(max(np.max(hi - cdf), np.max(cdf - lo)))
    p = float(sps.kstwobign.sf(d * math.sqrt(n)))
    return d, p


def ks_two_sample(samples_a, samples_b) -> tuple[float, float]:
    """Two-sample KS statistic and p-value."""
    a, b = _clean(samples_a), _clean(samples_b)
    res = sps.ks_2samp(a, b, method="asymp")
    return float(res.statistic), float(res.pvalue)


def _bin_poisson_tail(counts: np.ndarray, pmf, min_expected: float = 5.0):
    """Observed/expected count vectors with the upper tail merged."""
    n = counts.size
    kmax = int(counts.max())
    probs = np.array([pmf(k) for k in range(kmax + 1)])
    tail = max(0.0, 1.0 - probs.sum())
    expected = np.append(probs * n, tail * n)
    observed = np.append(np.bincount(counts, minlength=kmax + 1), 0)
    # merge cells from the top until every expected count is >= min_expected
    while expected.size > 2 and expected[-1] < min_expected:
        expected[-2] += expected[-1]
        observed[-2] += observed[-1]
        expected, observed = expected[:-1], observed[:-1]
    if expected.size < 2 or np.any(expected < min_expected):
        raise ValueError("insufficient samples for chi-square binning")
    return observed, expected


def chi_square_poisson(counts, lam: float) -> tuple[float, float]:
    """Goodness of fit of integer counts to Poisson(lam)."""
    counts = np.asarray(counts, dtype=int)
    obs, exp = _bin_poisson_tail(counts, lambda k: sps.poisson.pmf(k, lam))
    stat = float(np.sum((obs - exp) ** 2 / exp))
    dof = obs.size - 1
    return stat, float(sps.chi2.sf(stat, dof))


def chi_square_mixed_poisson(counts, lams) -> tuple[float, float]:
    """Goodness of fit to a Poisson mixture with known per-sample means.

    The null distribution of ``counts[i]`` is Poisson(lams[i]); the expected
    cell probabilities are the average of the per-sample pmfs.
    """
    counts = np.asarray(counts, dtype=int)
    lams = np.asarray(lams, dtype=float)
    if counts.size != lams.size:
        raise ValueError("counts and lams must align")

    def pmf(k):
        return float(np.mean(sps.poisson.pmf(k, lams)))

    obs, exp = _bin_poisson_tail(counts, pmf)
    stat = float(np.sum((obs - exp) ** 2 / exp))
    dof = obs.size - 1
    return stat, float(sps.chi2.sf(stat, dof))


def chi_square_independence(table) -> tuple[float, float]:
    """Chi-square independence test on a contingency table."""
    t = np.asarray(table, dtype=float)
    if t.ndim != 2 or t.shape[0] < 2 or t.shape[1] < 2:
        raise ValueError("table must be at least 2x2")
    res = sps.chi2_contingency(t)
    expected = res.expected_freq
    if np.any(expected < 5.0):
        raise ValueError("insufficient samples for chi-square binning")
    return float(res.statistic), float(res.pvalue)


def mc_mean_ci(samples, level: float = 0.99) -> tuple[float, float]:
    """Monte Carlo mean and normal-approximation half-width."""
    x = _clean(samples)
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    z = sps.norm.ppf(0.5 + level / 2.0)
    half = float(z * x.std(ddof=1) / math.sqrt(x.size))
    return float(x.mean()), half
