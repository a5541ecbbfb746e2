"""Separation of principal projections (SPPC) and its very strong form."""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .sponge import Ordering, SpongeSystem, exact_overlap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairFailure:
    """Non-overlapping pair whose projected images still meet."""
    sigma: Ordering
    level: int
    i: int
    j: int
    closed_only: bool  # True if only the closed images meet

    def to_dict(self) -> dict:
        return {
            "sigma": str(self.sigma),
            "level": self.level,
            "maps": [self.i, self.j],
            "touching_only": self.closed_only,
        }


@dataclass(frozen=True)
class SeparationReport:
    sppc: bool
    very_strong: bool
    delta0: Optional[Fraction]
    orderings: tuple = ()
    failures: tuple = field(default_factory=tuple)


def _coordinate_gap(S: SpongeSystem, i: int, j: int, coord: int) -> Fraction:
    """Signed gap between the images of f_i and f_j in one coordinate."""
    lo_i, hi_i = S.maps[i].interval(coord)
    lo_j, hi_j = S.maps[j].interval(coord)
    return max(lo_j - hi_i, lo_i - hi_j)


def check_separation(S: SpongeSystem, orderings: Iterable[Ordering]) -> SeparationReport:
    """
    Check SPPC over the given orderings with exact interval arithmetic.

    Projected images are products of intervals, so two of them are disjoint
    iff some coordinate of E_n separates them: open cuboids need a gap >= 0,
    closed cuboids a gap > 0. delta0 is the smallest Chebyshev gap over all
    non-overlapping (sigma, n, i, j).
    """
    orderings = tuple(sorted(set(orderings)))
    if not orderings:
        raise ValueError("check_separation needs at least one ordering")

    sppc = True
    very_strong = True
    delta0: Optional[Fraction] = None
    failures = []

    for sigma in orderings:
        for n in S.coordinates:
            coords = [sigma[m] for m in range(1, n + 1)]
            for i, j in itertools.combinations(S.indices, 2):
                if exact_overlap(S, i, j, sigma, n):
                    continue
                gap = max(_coordinate_gap(S, i, j, c) for c in coords)
                if gap < 0:
                    sppc = False
                    very_strong = False
                    failures.append(PairFailure(sigma, n, i, j, closed_only=False))
                elif gap == 0:
                    very_strong = False
                    failures.append(PairFailure(sigma, n, i, j, closed_only=True))
                elif delta0 is None or gap < delta0:
                    delta0 = gap

    if very_strong and delta0 is None:
        # no non-overlapping pairs at all
        delta0 = Fraction(1)
    if not very_strong:
        delta0 = None

    logger.info(
        f"Separation over {len(orderings)} ordering(s): sppc={sppc}, very_strong={very_strong}, delta0={delta0}"
    )
    return SeparationReport(sppc, very_strong, delta0, orderings, tuple(failures))
