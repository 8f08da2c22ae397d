import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from snakemin import (FiniteMeasure1D, RngStream, atom_probability, cdf_mX,
                      joint_density_wmin0, poisson_min_construction,
                      sample_mX, sample_wmin)

RNG = RngStream(2718)

THREE = FiniteMeasure1D(np.array([0.0, 1.0, 2.5]), np.array([0.5, 1.0, 0.3]))


def test_dirac_cdf_closed_form():
    mu = FiniteMeasure1D.dirac(1.0)
    for x in (-3.0, -1.0, 0.0, 0.9):
        assert cdf_mX(mu, x) == pytest.approx(math.exp(-1.5 / (1.0 - x) ** 2))


def test_exponent_additivity():
    mu1 = FiniteMeasure1D.dirac(1.0, 0.7)
    mu2 = FiniteMeasure1D(np.array([2.0, 3.0]), np.array([1.0, 0.4]))
    both = FiniteMeasure1D(np.concatenate([mu1.locations, mu2.locations]),
                           np.concatenate([mu1.masses, mu2.masses]))
    for x in (-2.0, 0.0, 0.5):
        assert cdf_mX(both, x) == pytest.approx(
            cdf_mX(mu1, x) * cdf_mX(mu2, x), rel=1e-14)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3))
def test_translation_equivariance(c):
    shifted = FiniteMeasure1D(THREE.locations + c, THREE.masses)
    x = -1.3
    assert cdf_mX(shifted, x + c) == pytest.approx(cdf_mX(THREE, x), rel=1e-12)
    a = sample_mX(THREE, RNG.substream(9), 50)
    b = sample_mX(shifted, RNG.substream(9), 50)
    assert np.allclose(a + c, b, atol=1e-9)


def test_joint_density_marginalizes_to_min_density():
    # with the atom restriction lifted (a above every atom) the joint density
    # integrates to the full non-atom probability mass
    total, err = integrate.quad(
        lambda y: joint_density_wmin0(THREE, 10.0, y), -200.0, THREE.m - 1e-9,
        limit=300)
    # the truncated tail below -200 carries exactly 1 - cdf_mX(-200) of mass
    expected = cdf_mX(THREE, -200.0) - atom_probability(THREE)
    assert total == pytest.approx(expected, rel=1e-6)


def test_json_roundtrip():
    again = FiniteMeasure1D.from_json(THREE.to_json())
    assert np.array_equal(again.locations, THREE.locations)
    assert np.array_equal(again.masses, THREE.masses)


def test_sampler_hits_the_atom_at_the_right_rate():
    xs = sample_mX(THREE, RNG.substream(1), 20000)
    p_hat = float(np.mean(xs == THREE.m))
    p = atom_probability(THREE)
    assert abs(p_hat - p) < 4.0 * math.sqrt(p * (1 - p) / 20000) + 1e-9


def test_sampler_matches_cdf():
    xs = sample_mX(THREE, RNG.substream(2), 20000)
    below = np.sort(xs[xs < THREE.m])
    grid = below[:: 40]
    emp = np.searchsorted(below, grid, side="right") / xs.size
    theo = np.array([1.0 - cdf_mX(THREE, g) for g in grid])
    assert np.max(np.abs(emp - theo)) < 0.02


def test_poisson_construction_floor_probability():
    floor = THREE.m - 0.6
    misses = 0
    n = 4000
    for i in range(n):
        if poisson_min_construction(THREE, floor, RNG.substream(100 + i)) is None:
            misses += 1
    p = cdf_mX(THREE, floor)
    se = math.sqrt(p * (1 - p) / n)
    assert abs(misses / n - p) < 4 * se + 1e-9


def test_wmin_sample_structure():
    mu = FiniteMeasure1D.dirac(1.0)
    s = sample_wmin(mu, 1e-3, RNG.substream(3))
    if s.w0 is None:
        assert s.m_X == mu.m
    else:
        assert s.w0 == 1.0
        assert s.path.start == pytest.approx(s.w0)
        assert s.path.endpoint == pytest.approx(s.m_X)
        assert s.m_X < 1.0
