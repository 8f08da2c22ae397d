"""Monte Carlo toolkit for Brownian-snake and super-Brownian minimum laws.

The package simulates Bessel processes of negative dimension, Brownian-snake
excursions, spine decompositions around the minimizing path, and the minimum
functionals of one-dimensional super-Brownian motion, and verifies the
closed-form identities relating them with seeded statistical tests.
"""

from snakemin.paths import FinitePath, LifetimeExcursion
from snakemin.rng import RngStream
from snakemin.sde import (
    BesselConfig,
    SamplePath,
    bridge_minimum,
    bridge_point,
    girsanov_weight,
    sample_bessel9_to_last_passage,
    sample_ito_excursion,
    simulate_bessel,
    simulate_bessel_to_level,
    simulate_bm_to_level,
)
from snakemin.snake import (
    SnakeTrajectory,
    SubtreeRecord,
    extract_minimum,
    first_hit_path,
    reconstruct_path,
    simulate_snake,
    subtree_decomposition,
    time_reverse,
)
from snakemin.spine import (
    SpineSample,
    SpineSubtree,
    build_spine_sample,
    count_deep_subtrees,
    deep_subtree_intensity,
    reconstruct_wstar,
    sample_conditioned_depth,
    sample_minimizing_path,
    sample_spine_subtrees,
)
from snakemin.superbm import (
    FiniteMeasure1D,
    SuperMinSample,
    atom_probability,
    cdf_mX,
    joint_density_wmin0,
    poisson_min_construction,
    sample_mX,
    sample_wmin,
)
from snakemin.checks import CHECK_NAMES, CheckResult, run_check
from snakemin.stats import (
    VerdictReport,
    chi_square_independence,
    chi_square_mixed_poisson,
    chi_square_poisson,
    ks_one_sample,
    ks_two_sample,
    mc_mean_ci,
)

__all__ = [
    "RngStream",
    "BesselConfig",
    "SamplePath",
    "simulate_bessel",
    "simulate_bessel_to_level",
    "simulate_bm_to_level",
    "girsanov_weight",
    "sample_ito_excursion",
    "sample_bessel9_to_last_passage",
    "bridge_point",
    "bridge_minimum",
    "FinitePath",
    "LifetimeExcursion",
    "SnakeTrajectory",
    "SubtreeRecord",
    "simulate_snake",
    "extract_minimum",
    "first_hit_path",
    "reconstruct_path",
    "subtree_decomposition",
    "time_reverse",
    "SpineSample",
    "SpineSubtree",
    "build_spine_sample",
    "sample_conditioned_depth",
    "sample_minimizing_path",
    "sample_spine_subtrees",
    "deep_subtree_intensity",
    "count_deep_subtrees",
    "reconstruct_wstar",
    "FiniteMeasure1D",
    "SuperMinSample",
    "atom_probability",
    "cdf_mX",
    "sample_mX",
    "joint_density_wmin0",
    "sample_wmin",
    "poisson_min_construction",
    "CHECK_NAMES",
    "CheckResult",
    "run_check",
    "VerdictReport",
    "ks_one_sample",
    "ks_two_sample",
    "chi_square_poisson",
    "chi_square_mixed_poisson",
    "chi_square_independence",
    "mc_mean_ci",
]
