"""Symbolic approximate cubes and their exact measure.

A cube of the word i at scale r is the set of words j with
Pi_n j_l = Pi_n i_l for l <= L(r, sigma_n), n = 1..d. Since the
projections refine each other, only the deepest constraint at each position
matters, so the cube is a product of per-position symbol classes.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from ..core.projection import ProjectionAtlas, ProjectionStructure
from ..core.sponge import Ordering, SpongeSystem, WordSpec, stopping_times
from ..dimension.weights import ProjectedWeights, WeightSystem
from ..errors import CapExceeded, InconsistentWeights, PreconditionViolated
from ..ordering.rules import cube_ordering
from ..utils.numbers import numbers_agree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeBlock:
    """Positions start..end (1-based, inclusive) constrained at projection level `level`."""
    level: int
    start: int
    end: int
    symbols: tuple  # Pi_level of the base letters at those positions


@dataclass(frozen=True)
class ApproximateCube:
    """
    L[n-1] is the stopping time L(r, sigma_n). Blocks run from level d
    (positions 1..L[d-1]) down to level 1 (ending at L[0]); empty blocks are
    omitted.
    """
    base: WordSpec
    r: Fraction
    sigma: Ordering
    L: tuple
    blocks: tuple

    @property
    def length(self) -> int:
        return self.L[0]

    def level_at(self, ell: int) -> int:
        """The deepest level constraining position ell."""
        for block in self.blocks:
            if block.start <= ell <= block.end:
                return block.level
        raise IndexError(f"position {ell} outside 1..{self.length}")

    def tie_runs(self) -> list:
        """Maximal runs of levels (as 1-based ranges) sharing a stopping time."""
        runs = []
        start = 1
        for n in range(2, len(self.L) + 2):
            if n > len(self.L) or self.L[n - 1] != self.L[start - 1]:
                runs.append((start, n - 1))
                start = n
        return runs


def approximate_cube(S: SpongeSystem, atlas: ProjectionAtlas, w: WordSpec, r: Fraction) -> ApproximateCube:
    r = Fraction(r)
    sigma = cube_ordering(S, w, r)
    return _cube_for_ordering(S, atlas[sigma], w, r, sigma)


def _cube_for_ordering(S: SpongeSystem, P: ProjectionStructure, w: WordSpec, r: Fraction,
                       sigma: Ordering) -> ApproximateCube:
    by_coord = stopping_times(S, w, r)
    L = tuple(by_coord[sigma[n] - 1] for n in range(1, S.d + 1))
    blocks = []
    previous = 0
    for n in range(S.d, 0, -1):
        end = L[n - 1]
        if end > previous:
            symbols = tuple(P.project(n, w.letter(ell)) for ell in range(previous + 1, end + 1))
            blocks.append(CubeBlock(n, previous + 1, end, symbols))
        previous = max(previous, end)
    return ApproximateCube(w, r, sigma, L, tuple(blocks))


def cube_measure(S: SpongeSystem, W: ProjectedWeights, cube: ApproximateCube):
    """
    mu_p of the cube, computed as a product of projected weights block by
    block and, independently, as a product of conditional weights over
    every level's full prefix. The two must agree.
    """
    if W.sigma != cube.sigma:
        raise PreconditionViolated(f"weights are for {W.sigma}, cube is {cube.sigma}-ordered")

    by_blocks = math.prod((W.weight(b.level, s) for b in cube.blocks for s in b.symbols), start=1)

    P = W.structure
    by_levels = 1
    for n in range(1, S.d + 1):
        for ell in range(1, cube.L[n - 1] + 1):
            by_levels *= W.conditional(n, P.project(n, cube.base.letter(ell)))

    if not numbers_agree(by_blocks, by_levels):
        raise InconsistentWeights(f"cube measure forms disagree: {by_blocks} vs {by_levels}")
    return by_blocks


def cube_measure_under(S: SpongeSystem, weights: WeightSystem, cube: ApproximateCube, omega: Ordering):
    """The cube's measure recomputed with the projection structure of omega."""
    recast = _cube_for_ordering(S, weights.atlas[omega], cube.base, cube.r, omega)
    return cube_measure(S, weights[omega], recast)


def tie_block_orderings(cube: ApproximateCube) -> list:
    """Orderings obtained from the cube's sigma by permuting levels with equal stopping times."""
    pieces = []
    for start, end in cube.tie_runs():
        run = [cube.sigma[n] for n in range(start, end + 1)]
        pieces.append(list(itertools.permutations(run)))
    return [Ordering(tuple(itertools.chain.from_iterable(choice))) for choice in itertools.product(*pieces)]


def allowed_symbols(S: SpongeSystem, P: ProjectionStructure, cube: ApproximateCube) -> list:
    """Per position, the letters j with Pi_n j equal to the base letter's class."""
    allowed = []
    for block in cube.blocks:
        for symbol in block.symbols:
            allowed.append(tuple(j for j in S.indices if P.project(block.level, j) == symbol))
    return allowed


def cube_members(S: SpongeSystem, P: ProjectionStructure, cube: ApproximateCube,
                 cap: int = 14, limit: int = 65536) -> Iterator[tuple]:
    """
    Every length-L(r, sigma_1) word in the cube.

    Raises:
        CapExceeded: the cube is longer than `cap` or has more than `limit` members
    """
    if cube.length > cap:
        raise CapExceeded(f"cube length {cube.length} exceeds enumeration cap {cap}")
    allowed = allowed_symbols(S, P, cube)
    size = math.prod(len(a) for a in allowed)
    if size > limit:
        raise CapExceeded(f"cube has {size} member words, limit is {limit}")
    return itertools.product(*allowed)


def brute_force_cube_measure(S: SpongeSystem, p: Sequence, w: WordSpec, r: Fraction,
                             atlas: Optional[ProjectionAtlas] = None, cap: int = 14, limit: int = 65536):
    """
    Sum of prod p over every word j of length L(r, sigma_1) with
    Pi_n j_l = Pi_n i_l for all l <= L(r, sigma_n) and every n.

    Scans the whole of I^L and tests each level separately, so it shares
    no block bookkeeping with cube_measure.

    Raises:
        CapExceeded: L(r, sigma_1) exceeds `cap` or N^L exceeds `limit`
    """
    r = Fraction(r)
    atlas = atlas or ProjectionAtlas(S)
    sigma = cube_ordering(S, w, r)
    P = atlas[sigma]
    by_coord = stopping_times(S, w, r)
    L = [by_coord[sigma[n] - 1] for n in range(1, S.d + 1)]
    length = max(L)
    if length > cap:
        raise CapExceeded(f"cube length {length} exceeds enumeration cap {cap}")
    if S.N ** length > limit:
        raise CapExceeded(f"{S.N}^{length} candidate words, limit is {limit}")

    base = [w.letter(ell) for ell in range(1, length + 1)]
    targets = [[P.project(n, base[ell]) for ell in range(L[n - 1])] for n in range(1, S.d + 1)]
    total = 0
    members = 0
    for word in itertools.product(S.indices, repeat=length):
        if all(
            P.project(n, word[ell]) == targets[n - 1][ell]
            for n in range(1, S.d + 1)
            for ell in range(L[n - 1])
        ):
            members += 1
            total += math.prod((p[j] for j in word), start=1)
    logger.debug(f"Brute-force measure of cube {w} at r={r}: {members} member(s), {total}")
    return total
