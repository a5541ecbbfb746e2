"""Projection index chains I_d ⊇ ... ⊇ I_1 and the maps Pi_n for an ordering."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator

from .sponge import Ordering, SpongeSystem, exact_overlap

logger = logging.getLogger(__name__)

# Parent of every level-1 symbol: the empty word.
ROOT = -1


@dataclass(frozen=True)
class ProjectionStructure:
    """
    Index chain and projection maps for one ordering.

    index_chain[n-1] is I_n (sorted tuple); projections[n-1][j] is Pi_n j.
    """
    sigma: Ordering
    index_chain: tuple
    projections: tuple

    @property
    def d(self) -> int:
        return len(self.index_chain)

    def index_set(self, n: int) -> tuple:
        """I_n for n in 0..d; I_0 is the single root symbol."""
        if n == 0:
            return (ROOT,)
        return self.index_chain[n - 1]

    def project(self, n: int, j: int) -> int:
        """Pi_n j, with Pi_0 j = ROOT."""
        if n == 0:
            return ROOT
        return self.projections[n - 1][j]

    def fibre(self, n: int, i: int) -> tuple:
        """I_n^{sigma,i}: symbols of I_n whose level-(n-1) projection is i."""
        return tuple(j for j in self.index_set(n) if self.project(n - 1, j) == i)


def build_projection_structure(S: SpongeSystem, sigma: Ordering) -> ProjectionStructure:
    """
    Pair-scan in lexicographic (i, j) order: j leaves I_{n'}, ..., I_1 where n'
    is the deepest level below d on which f_i and f_j overlap exactly.
    """
    d = S.d
    chain = [set(S.indices) for _ in range(d)]
    for i in S.indices:
        for j in range(i + 1, S.N):
            for n_prime in range(d - 1, 0, -1):
                if exact_overlap(S, i, j, sigma, n_prime):
                    for n in range(1, n_prime + 1):
                        chain[n - 1].discard(j)
                    break

    index_chain = tuple(tuple(sorted(level)) for level in chain)
    projections = []
    for n in range(1, d + 1):
        survivors = index_chain[n - 1]
        row = []
        for j in S.indices:
            representative = next(i for i in survivors if exact_overlap(S, i, j, sigma, n))
            row.append(representative)
        projections.append(tuple(row))

    structure = ProjectionStructure(sigma, index_chain, tuple(projections))
    logger.debug(f"Projection structure for {sigma}: sizes {[len(s) for s in index_chain]}")
    return structure


class ProjectionAtlas:
    """Lazily built projection structures, one per ordering."""

    def __init__(self, system: SpongeSystem):
        self.system = system
        self._structures: Dict[Ordering, ProjectionStructure] = {}

    def __getitem__(self, sigma: Ordering) -> ProjectionStructure:
        if sigma not in self._structures:
            self._structures[sigma] = build_projection_structure(self.system, sigma)
        return self._structures[sigma]

    def __iter__(self) -> Iterator[Ordering]:
        return iter(sorted(self._structures))

    def __len__(self) -> int:
        return len(self._structures)
