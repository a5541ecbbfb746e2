"""Upper and lower exponent sums and the Assouad / lower dimension brackets."""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..core.separation import SeparationReport
from ..core.sponge import Ordering, SpongeSystem
from ..errors import PreconditionViolated, SeparationNotVerified
from ..ordering.sets import OrderingSets
from ..utils.numbers import log_number
from .weights import ProjectedWeights, WeightSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelTerms:
    """
    Per-level extremes of log P_{n-1}(i) / log lambda_i^(sigma_n).

    k_upper[n-1] is the maximising symbol at level n, s_upper[n-1] its term;
    likewise for the minimisers. Ties go to the smallest symbol.
    """
    sigma: Ordering
    k_upper: tuple
    s_upper: tuple
    k_lower: tuple
    s_lower: tuple

    @property
    def upper(self) -> float:
        return math.fsum(self.s_upper)

    @property
    def lower(self) -> float:
        return math.fsum(self.s_lower)


def level_terms(S: SpongeSystem, W: ProjectedWeights) -> LevelTerms:
    P = W.structure
    k_up, s_up, k_lo, s_lo = [], [], [], []
    for n in range(1, S.d + 1):
        coord = P.sigma[n]
        terms = []
        for i in P.index_set(n):
            cond = W.conditional(n, i)
            term = 0.0 if cond == 1 else log_number(cond) / log_number(S.ratio(i, coord))
            terms.append((i, term))
        best = max(terms, key=lambda t: t[1])
        worst = min(terms, key=lambda t: t[1])
        k_up.append(best[0])
        s_up.append(best[1])
        k_lo.append(worst[0])
        s_lo.append(worst[1])
    return LevelTerms(P.sigma, tuple(k_up), tuple(s_up), tuple(k_lo), tuple(s_lo))


def s_upper(S: SpongeSystem, W: ProjectedWeights) -> float:
    """S-bar(p, sigma)."""
    return level_terms(S, W).upper


def s_lower(S: SpongeSystem, W: ProjectedWeights) -> float:
    """S-underbar(p, sigma)."""
    return level_terms(S, W).lower


@dataclass(frozen=True)
class DimensionBounds:
    assouad_lo: float
    assouad_hi: float
    lower_lo: float
    lower_hi: float
    exact: bool
    hypothesis_met: bool = True
    terms: dict = field(default_factory=dict)  # Ordering -> LevelTerms
    assouad_argmax: Optional[Ordering] = None
    lower_argmin: Optional[Ordering] = None


def dimension_bounds(S: SpongeSystem, weights: WeightSystem, sets: OrderingSets,
                     separation: SeparationReport, formula_only: bool = False,
                     band: float = 1e-9) -> DimensionBounds:
    """
    max over B of S-bar <= dim_A <= max over A of S-bar, and
    min over A of S-underbar <= dim_L <= min over B of S-underbar.

    Raises:
        SeparationNotVerified: very strong SPPC fails and formula_only is off
    """
    hypothesis_met = separation.very_strong
    if not hypothesis_met:
        if not formula_only:
            raise SeparationNotVerified("very strong SPPC fails; Assouad and lower bounds are not claimed")
        logger.warning("Very strong SPPC fails: reporting formula values only")
    if not sets.b:
        raise PreconditionViolated("cylinder ordering set is empty (all candidates borderline?)")

    terms = {sigma: level_terms(S, weights[sigma]) for sigma in sets.a_upper}
    for sigma in sets.b:
        terms.setdefault(sigma, level_terms(S, weights[sigma]))

    assouad_lo = max(terms[sigma].upper for sigma in sets.b)
    assouad_hi, argmax = max((terms[sigma].upper, sigma) for sigma in sets.a_upper)
    lower_lo, argmin = min((terms[sigma].lower, sigma) for sigma in sets.a_upper)
    lower_hi = min(terms[sigma].lower for sigma in sets.b)

    exact = sets.exact or (abs(assouad_hi - assouad_lo) <= band and abs(lower_hi - lower_lo) <= band)
    logger.info(
        f"dim_A in [{assouad_lo:.6f}, {assouad_hi:.6f}], dim_L in [{lower_lo:.6f}, {lower_hi:.6f}], exact={exact}"
    )
    return DimensionBounds(
        assouad_lo, assouad_hi, lower_lo, lower_hi, exact, hypothesis_met,
        terms, assouad_argmax=argmax, lower_argmin=argmin,
    )


def natural_measure_sum(dims_levels: Sequence[dict], pick=max) -> float:
    """s_0(root) + sum over n >= 1 of pick_i s_n(i): S-bar (or S-underbar) of the natural measure."""
    return math.fsum(pick(level.values()) for level in dims_levels)
