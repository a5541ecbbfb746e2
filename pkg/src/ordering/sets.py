"""The ordering sets A (cube) and B (cylinder) of a sponge."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..config import SearchConfig, SolverConfig
from ..core.sponge import Ordering, SpongeSystem
from ..errors import BorderlineOrdering, PreconditionViolated
from ..utils.logging import log_stage
from .lyapunov import b_membership
from .rules import consistent_orderings, domination_pairs
from .search import search_cube_orderings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderingSets:
    """
    B exactly (up to borderline orderings), and A bracketed as
    a_lower <= A <= a_upper. exact means a_lower == a_upper.
    """
    b: tuple
    a_lower: tuple
    a_upper: tuple
    exact: bool
    certificates: dict = field(default_factory=dict)  # Ordering -> B certificate
    a_certificates: dict = field(default_factory=dict)  # Ordering -> A certificate
    domination: tuple = ()
    borderline: tuple = ()
    words_examined: int = 0
    budget_exhausted: bool = False

    @property
    def a(self) -> tuple:
        """A when known exactly."""
        if not self.exact:
            raise PreconditionViolated("A is only bracketed; use a_lower / a_upper")
        return self.a_lower


def compute_ordering_sets(S: SpongeSystem, search: Optional[SearchConfig] = None,
                          solver: Optional[SolverConfig] = None, force_search: bool = False) -> OrderingSets:
    """
    Compute B by linear programming and bracket A.

    For d <= 3, A = B. Otherwise a_upper is every ordering respecting the
    forced precedences and a_lower is B plus every ordering with a verified
    cube witness.
    """
    search = search or SearchConfig()
    solver = solver or SolverConfig()

    b_certs = {}
    borderline = []
    with log_stage(logger, "cylinder ordering set"):
        for sigma in Ordering.all(S.d):
            try:
                certificate = b_membership(S, sigma, solver.tau_b, solver.witness_precision)
            except BorderlineOrdering as e:
                logger.warning(f"Skipping borderline ordering {sigma}: slack {e.slack:.3e}")
                borderline.append(sigma)
                continue
            if certificate is not None:
                b_certs[sigma] = certificate
    b = tuple(sorted(b_certs))
    logger.info(f"B has {len(b)} of {len(Ordering.all(S.d))} orderings: {', '.join(map(str, b))}")

    domination = tuple(domination_pairs(S))
    if S.d <= 3 and not force_search:
        return OrderingSets(
            b=b, a_lower=b, a_upper=b, exact=not borderline,
            certificates=b_certs, a_certificates=dict(b_certs),
            domination=domination, borderline=tuple(borderline),
        )

    a_upper = tuple(consistent_orderings(S))
    targets = [sigma for sigma in a_upper if sigma not in b_certs]
    with log_stage(logger, "cube witness search"):
        result = search_cube_orderings(S, targets, search)

    a_certs = dict(b_certs)
    for sigma, certificate in result.found.items():
        a_certs.setdefault(sigma, certificate)
    a_lower = tuple(sorted(a_certs))
    exact = set(a_lower) == set(a_upper) and not borderline
    logger.info(f"A bracketed: {len(a_lower)} <= #A <= {len(a_upper)} (exact={exact})")

    return OrderingSets(
        b=b, a_lower=a_lower, a_upper=a_upper, exact=exact,
        certificates=b_certs, a_certificates=a_certs,
        domination=domination, borderline=tuple(borderline),
        words_examined=result.words_examined, budget_exhausted=result.budget_exhausted,
    )


@dataclass(frozen=True)
class ClosureCheck:
    holds: bool
    violations: tuple = ()  # (x, y, z) triples whose closure ordering is missing


def closure_check(S: SpongeSystem, a_set) -> ClosureCheck:
    """
    For d = 3: whenever x dominates y, z is the third coordinate and both
    (x,y,z) and (z,x,y) are in A, then (x,z,y) must be in A too.
    """
    if S.d != 3:
        raise PreconditionViolated(f"closure check is for d=3, got d={S.d}")
    a_set = set(a_set)
    violations = []
    for x, y in domination_pairs(S):
        z = 6 - x - y
        if Ordering((x, y, z)) in a_set and Ordering((z, x, y)) in a_set:
            if Ordering((x, z, y)) not in a_set:
                violations.append((x, y, z))
    if violations:
        logger.warning(f"Closure property fails for {violations}")
    return ClosureCheck(not violations, tuple(violations))


class SpongeClass(Enum):
    SELF_SIMILAR = "self-similar"
    LALLEY_GATZOURAS = "lalley-gatzouras"
    BARANSKI = "baranski"
    GENUINE = "genuine"
    DOMINANT_FIRST = "dominant-first"
    DOMINATED_LAST = "dominated-last"
    IMPOSSIBLE = "impossible-under-sppc"
    PARTIAL_DOMINATION = "partial-domination"
    GENERAL = "general"


def classify_sponge(S: SpongeSystem, sets: OrderingSets) -> SpongeClass:
    a_set = sets.a_upper
    if S.d == 1:
        return SpongeClass.SELF_SIMILAR
    if S.d == 2:
        return SpongeClass.LALLEY_GATZOURAS if len(a_set) == 1 else SpongeClass.BARANSKI
    if S.d >= 4:
        return SpongeClass.GENERAL

    if not sets.domination:
        return SpongeClass.GENUINE
    if len(a_set) == 1:
        return SpongeClass.LALLEY_GATZOURAS
    if len(a_set) == 2:
        first, second = a_set
        if first[1] == second[1]:
            return SpongeClass.DOMINANT_FIRST
        if first[3] == second[3]:
            return SpongeClass.DOMINATED_LAST
        return SpongeClass.IMPOSSIBLE
    return SpongeClass.PARTIAL_DOMINATION
