"""Cube and cylinder orderings with their tie-break conventions, and domination."""

import itertools
import logging
from fractions import Fraction
from typing import Optional

from ..core.sponge import Ordering, SpongeSystem, WordSpec, dominates, stopping_times, word_products

logger = logging.getLogger(__name__)


def cube_ordering(S: SpongeSystem, w: WordSpec, r: Fraction) -> Ordering:
    """
    The sigma with L(r,sigma_d) <= ... <= L(r,sigma_1).

    Equal stopping times: k before m iff prod^{(k)} >= prod^{(m)} at that
    length, and equal products keep index order.
    """
    L = stopping_times(S, w, r)
    longest = max(L)
    products = {c: word_products(S, w, c, longest) for c in S.coordinates}
    key = {c: (-L[c - 1], -products[c][L[c - 1]], c) for c in S.coordinates}
    return Ordering(tuple(sorted(S.coordinates, key=key.__getitem__)))


def strict_cylinder_ordering(S: SpongeSystem, w: WordSpec, r: Fraction) -> Optional[Ordering]:
    """
    Ordering of the side lengths of the cylinder of length K = L(r, sigma_d).

    sigma_d has the smallest side, so K is the smallest stopping time. None
    when two sides tie.
    """
    K = min(stopping_times(S, w, r))
    sides = {c: word_products(S, w, c, K)[K] for c in S.coordinates}
    if len(set(sides.values())) < len(sides):
        return None
    return Ordering(tuple(sorted(S.coordinates, key=lambda c: (-sides[c], c))))


def domination_pairs(S: SpongeSystem) -> list:
    """All (x, y) with x dominating y, in lexicographic order."""
    return [(x, y) for x, y in itertools.permutations(S.coordinates, 2) if dominates(S, x, y)]


def forced_precedences(S: SpongeSystem) -> list:
    """
    Pairs (x, y) such that x precedes y in every cube ordering.

    Domination gives L(r,y) <= L(r,x). On equal stopping times the product
    comparison still favours x, except when the products tie exactly and y
    has the smaller index; that can only happen if some map has equal
    ratios in x and y.
    """
    forced = []
    for x, y in domination_pairs(S):
        if x < y or all(m.ratios[x - 1] != m.ratios[y - 1] for m in S.maps):
            forced.append((x, y))
    return forced


def consistent_orderings(S: SpongeSystem, constraints=None) -> list:
    """Orderings with x before y for every constraint pair (default: forced precedences)."""
    if constraints is None:
        constraints = forced_precedences(S)
    return [sigma for sigma in Ordering.all(S.d) if all(sigma.precedes(x, y) for x, y in constraints)]
