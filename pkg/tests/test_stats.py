import json
import math

import numpy as np
import pytest

from snakemin import (VerdictReport, chi_square_independence,
                      chi_square_mixed_poisson, chi_square_poisson,
                      ks_one_sample, ks_two_sample, mc_mean_ci)


def test_ks_one_sample_null_calibration():
    low = 0
    for seed in range(200):
        x = np.random.default_rng(seed).random(200)
        _, p = ks_one_sample(x, lambda v: min(max(v, 0.0), 1.0))
        low += p < 0.05
    assert 0.01 <= low / 200 <= 0.10


def test_ks_one_sample_degenerate():
    d, _ = ks_one_sample(np.full(50, 0.5), lambda v: v)
    assert d >= 0.5


def test_ks_one_sample_guards():
    with pytest.raises(ValueError):
        ks_one_sample(np.arange(5) / 5.0, lambda v: v)
    with pytest.raises(ValueError):
        ks_one_sample(np.array([0.1, np.nan] + [0.2] * 30), lambda v: v)


def test_ks_two_sample_identical_is_zero():
    x = np.random.default_rng(0).random(100)
    d, p = ks_two_sample(x, x)
    assert d == pytest.approx(0.0, abs=1e-12)
    assert p == pytest.approx(1.0)


def test_chi_square_poisson_null_calibration():
    low = 0
    for seed in range(200):
        counts = np.random.default_rng(seed).poisson(3.0, 400)
        _, p = chi_square_poisson(counts, 3.0)
        low += p < 0.05
    assert 0.01 <= low / 200 <= 0.12


def test_chi_square_poisson_detects_wrong_mean():
    counts = np.random.default_rng(1).poisson(3.0, 2000)
    _, p = chi_square_poisson(counts, 4.0)
    assert p < 1e-6


def test_chi_square_mixed_poisson_accepts_mixture():
    gen = np.random.default_rng(2)
    lams = gen.uniform(0.5, 4.0, 1500)
    counts = gen.poisson(lams)
    _, p = chi_square_mixed_poisson(counts, lams)
    assert p > 1e-3


def test_chi_square_refuses_tiny_samples():
    with pytest.raises(ValueError):
        chi_square_poisson(np.array([0, 1, 2]), 1.0)


def test_chi_square_independence_guards_and_null():
    gen = np.random.default_rng(3)
    a = gen.poisson(2.0, 3000).clip(max=4)
    b = gen.poisson(2.0, 3000).clip(max=4)
    table = np.zeros((5, 5))
    np.add.at(table, (a, b), 1)
    _, p = chi_square_independence(table)
    assert p > 1e-3
    with pytest.raises(ValueError):
        chi_square_independence(np.array([[1.0, 2.0]]))


def test_mc_mean_ci_coin_flip_width():
    flips = np.where(np.random.default_rng(4).random(10000) < 0.5, 1.0, -1.0)
    mean, half = mc_mean_ci(flips, level=0.99)
    assert half == pytest.approx(2.5758 / 100.0, rel=0.05)
    assert abs(mean) < 4 * half


def test_verdict_report_serialization():
    rep = VerdictReport(check_id="demo", statistic=0.1, threshold=0.2, n=10,
                        master_seed=7, passed=True, p_value=0.5,
                        notes="note")
    d = json.loads(rep.to_json())
    assert d["pass"] is True
    assert "passed" not in d
    assert d["check_id"] == "demo"
    assert d["p_value"] == 0.5
