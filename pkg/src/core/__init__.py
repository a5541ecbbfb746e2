"""Exact sponge model, projection structure and separation checks."""

from .sponge import (
    AffineMapSpec,
    Ordering,
    SpongeSpec,
    SpongeSystem,
    WordSpec,
    dominates,
    evaluate_projection_point,
    exact_overlap,
    iterate_system,
    load_sponge_spec,
    map_ordering,
    parse_sponge_spec,
    stopping_time,
    stopping_times,
    validate_sponge,
)
from .projection import ROOT, ProjectionAtlas, ProjectionStructure, build_projection_structure
from .separation import SeparationReport, check_separation

__all__ = [
    "AffineMapSpec",
    "Ordering",
    "SpongeSpec",
    "SpongeSystem",
    "WordSpec",
    "dominates",
    "evaluate_projection_point",
    "exact_overlap",
    "iterate_system",
    "load_sponge_spec",
    "map_ordering",
    "parse_sponge_spec",
    "stopping_time",
    "stopping_times",
    "validate_sponge",
    "ROOT",
    "ProjectionAtlas",
    "ProjectionStructure",
    "build_projection_structure",
    "SeparationReport",
    "check_separation",
]
