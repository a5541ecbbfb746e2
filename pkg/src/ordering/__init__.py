"""Cube and cylinder ordering sets."""

from .certificates import CertificateKind, OrderingCertificate
from .lyapunov import (
    LyapunovProfile,
    TwoMapCondition,
    b_interval_two_maps,
    b_membership,
    lyapunov_profile,
    two_map_condition,
)
from .rules import consistent_orderings, cube_ordering, domination_pairs, forced_precedences, strict_cylinder_ordering
from .search import SearchResult, search_cube_orderings
from .sets import ClosureCheck, OrderingSets, SpongeClass, classify_sponge, closure_check, compute_ordering_sets

__all__ = [
    "CertificateKind",
    "OrderingCertificate",
    "LyapunovProfile",
    "TwoMapCondition",
    "b_interval_two_maps",
    "b_membership",
    "lyapunov_profile",
    "two_map_condition",
    "consistent_orderings",
    "cube_ordering",
    "domination_pairs",
    "forced_precedences",
    "strict_cylinder_ordering",
    "SearchResult",
    "search_cube_orderings",
    "ClosureCheck",
    "OrderingSets",
    "SpongeClass",
    "classify_sponge",
    "closure_check",
    "compute_ordering_sets",
]
