"""Weights, fibre dimensions, natural measures and dimension bounds."""

from .bounds import DimensionBounds, LevelTerms, dimension_bounds, level_terms, natural_measure_sum, s_lower, s_upper
from .gap import AssouadObjective, GapCertificate, gap_certificate, minimize_assouad_over_p
from .weights import (
    FibreDimensions,
    ProjectedWeights,
    WeightSystem,
    fibre_dimensions,
    fibre_similarity_dimension,
    natural_measure,
    natural_measure_identity_check,
    project_weights,
    similarity_dimension,
    uniform_weights,
)

__all__ = [
    "DimensionBounds",
    "LevelTerms",
    "dimension_bounds",
    "level_terms",
    "natural_measure_sum",
    "s_lower",
    "s_upper",
    "AssouadObjective",
    "GapCertificate",
    "gap_certificate",
    "minimize_assouad_over_p",
    "FibreDimensions",
    "ProjectedWeights",
    "WeightSystem",
    "fibre_dimensions",
    "fibre_similarity_dimension",
    "natural_measure",
    "natural_measure_identity_check",
    "project_weights",
    "similarity_dimension",
    "uniform_weights",
]
