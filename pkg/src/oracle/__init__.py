"""Symbolic approximate cubes, exact measures and empirical exponent checks."""

from .cubes import (
    ApproximateCube,
    CubeBlock,
    approximate_cube,
    brute_force_cube_measure,
    cube_measure,
    cube_measure_under,
    tie_block_orderings,
)
from .sampler import FamilyFit, SamplerSummary, sample_exponents_within, sample_ratio_exponents
from .sandwich import (
    SameOrderingReport,
    SandwichReport,
    SubdivisionReport,
    verify_same_ordering_bounds,
    verify_sandwich,
    verify_subdivision_bound,
)
from .witness import LOWER, UPPER, ExtremalWitness, RatioSample, extremal_witness, ratio_sample, witness_scales

__all__ = [
    "ApproximateCube",
    "CubeBlock",
    "approximate_cube",
    "brute_force_cube_measure",
    "cube_measure",
    "cube_measure_under",
    "tie_block_orderings",
    "FamilyFit",
    "SamplerSummary",
    "sample_exponents_within",
    "sample_ratio_exponents",
    "SameOrderingReport",
    "SandwichReport",
    "SubdivisionReport",
    "verify_same_ordering_bounds",
    "verify_sandwich",
    "verify_subdivision_bound",
    "LOWER",
    "UPPER",
    "ExtremalWitness",
    "RatioSample",
    "extremal_witness",
    "ratio_sample",
    "witness_scales",
]
