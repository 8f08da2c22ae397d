"""The twelve acceptance checks at their stated sample sizes and tolerances.

Each test runs one named check end to end, prints its one-line verdict, and
asserts the pass flag.  These are long Monte Carlo runs (the snake-tail
check dominates); run them with ``pytest -m acceptance -v -s``.  The two
checks that probe sub-grid subtree counts are known to sit beyond any
affordable grid resolution and document their measured bias in the verdict
notes; they are asserted at the stated tolerances regardless.
"""

import pytest

from snakemin.checks import CHECK_NAMES, run_check

_RESULTS = {}


def _run(name):
    if name not in _RESULTS:
        _RESULTS[name] = run_check(name)
    for res in _RESULTS[name]:
        rep = res.report
        pbit = "" if rep.p_value is None else "  p=%.4g" % rep.p_value
        print("%s  %-18s statistic=%.4g  threshold=%.4g%s  n=%d  (%.1fs)"
              % ("PASS" if rep.passed else "FAIL", rep.check_id,
                 rep.statistic, rep.threshold, pbit, rep.n,
                 rep.runtime_seconds))
        assert rep.passed, rep.notes
    return _RESULTS[name]


@pytest.mark.acceptance
def test_laplace_bessel2():
    _run("laplace-bessel2")


@pytest.mark.acceptance
def test_girsanov_identity():
    _run("girsanov-identity")


@pytest.mark.acceptance
def test_super_min_cdf():
    _run("super-min-cdf")


@pytest.mark.acceptance
def test_super_joint():
    _run("super-joint")


@pytest.mark.acceptance
def test_super_path():
    _run("super-path")


@pytest.mark.acceptance
def test_reversal_williams():
    _run("reversal-williams")


@pytest.mark.acceptance
def test_integral_form():
    _run("integral-form")


@pytest.mark.acceptance
def test_hitting_path():
    _run("hitting-path")


@pytest.mark.acceptance
def test_minimizer_law():
    _run("minimizer-law")


@pytest.mark.acceptance
def test_spine_independence():
    _run("spine-independence")


@pytest.mark.acceptance
def test_spine_poisson():
    _run("spine-poisson")


@pytest.mark.acceptance
def test_law_wstar():
    _run("law-wstar")
