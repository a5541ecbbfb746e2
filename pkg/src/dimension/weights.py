"""Projected and conditional weights, fibre similarity dimensions, natural measures.

Weights may be exact rationals or floats; the arithmetic here is generic and
only the agreement checks care which one they got.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

from ..core.projection import ROOT, ProjectionAtlas, ProjectionStructure
from ..core.sponge import Ordering, SpongeSystem
from ..errors import InconsistentWeights, PreconditionViolated, RootOutOfUnitInterval
from ..utils.numbers import log_number, numbers_agree
from ..utils.roots import bisect_decreasing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectedWeights:
    """
    p_n^sigma on I_n^sigma for n = 0..d.

    levels[n] maps each symbol of I_n to its weight; levels[0] is {ROOT: 1}.
    """
    structure: ProjectionStructure
    levels: tuple

    @property
    def sigma(self) -> Ordering:
        return self.structure.sigma

    def weight(self, n: int, i: int):
        return self.levels[n][i]

    def conditional(self, n: int, i: int):
        """P_{n-1}^sigma(i) = p_n(i) / p_{n-1}(Pi_{n-1} i) for i in I_n."""
        return self.levels[n][i] / self.levels[n - 1][self.structure.project(n - 1, i)]


def project_weights(S: SpongeSystem, P: ProjectionStructure, p: Sequence) -> ProjectedWeights:
    """
    Projected weights by direct summation over Pi_n-classes, cross-checked
    against the recursive fibre sums p_n(i) = sum_{j in I_{n+1}^i} p_{n+1}(j).

    Raises:
        InconsistentWeights: if the two computations disagree
    """
    if len(p) != S.N:
        raise PreconditionViolated(f"weight vector has {len(p)} entries, system has {S.N} maps")
    if any(w <= 0 for w in p):
        raise PreconditionViolated("weights must be positive")

    zero = Fraction(0) if all(isinstance(w, Fraction) for w in p) else 0.0
    one = Fraction(1) if isinstance(zero, Fraction) else 1.0

    direct = [{ROOT: one}]
    for n in range(1, S.d + 1):
        level = {i: zero for i in P.index_set(n)}
        for j in S.indices:
            level[P.project(n, j)] += p[j]
        direct.append(level)

    recursive: list = [None] * (S.d + 1)
    recursive[S.d] = dict(direct[S.d])
    for n in range(S.d - 1, -1, -1):
        recursive[n] = {i: sum((recursive[n + 1][j] for j in P.fibre(n + 1, i)), zero) for i in P.index_set(n)}

    for n in range(S.d + 1):
        for i, value in direct[n].items():
            if not numbers_agree(value, recursive[n][i]):
                raise InconsistentWeights(
                    f"{P.sigma} level {n} symbol {i}: direct {value} != recursive {recursive[n][i]}"
                )
    return ProjectedWeights(P, tuple(direct))


class WeightSystem:
    """A probability vector p with its projected weights for every ordering asked for."""

    def __init__(self, system: SpongeSystem, p: Sequence, atlas: Optional[ProjectionAtlas] = None):
        self.system = system
        self.p = tuple(p)
        self.atlas = atlas or ProjectionAtlas(system)
        self._projected: Dict[Ordering, ProjectedWeights] = {}

    def __getitem__(self, sigma: Ordering) -> ProjectedWeights:
        if sigma not in self._projected:
            self._projected[sigma] = project_weights(self.system, self.atlas[sigma], self.p)
        return self._projected[sigma]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, Fraction) for w in self.p)


def uniform_weights(S: SpongeSystem) -> tuple:
    return tuple(Fraction(1, S.N) for _ in S.indices)


# -- fibre similarity dimensions ----------------------------------------------

def similarity_dimension(ratios: Sequence[Fraction], iterations: int = 64) -> float:
    """
    The s in [0,1] with sum ratios^s = 1.

    Raises:
        RootOutOfUnitInterval: if sum ratios > 1, so the root would exceed 1
    """
    if not ratios:
        raise PreconditionViolated("similarity dimension of an empty fibre")
    if len(ratios) == 1:
        return 0.0
    total = sum(ratios)
    if total == 1:
        return 1.0
    if total > 1:
        raise RootOutOfUnitInterval(f"ratios {[str(r) for r in ratios]} sum to {total} > 1")
    logs = [log_number(r) for r in ratios]
    return bisect_decreasing(lambda s: math.fsum(math.exp(s * x) for x in logs) - 1.0, 0.0, 1.0, iterations)


def fibre_similarity_dimension(S: SpongeSystem, P: ProjectionStructure, n: int, i: int,
                               iterations: int = 64) -> float:
    """s_n^sigma(i): similarity dimension of the fibre I_{n+1}^{sigma,i} in coordinate sigma_{n+1}."""
    if not 0 <= n < S.d:
        raise PreconditionViolated(f"fibre level {n} outside 0..{S.d - 1}")
    fibre = P.fibre(n + 1, i)
    coord = P.sigma[n + 1]
    return similarity_dimension([S.ratio(j, coord) for j in fibre], iterations)


@dataclass(frozen=True)
class FibreDimensions:
    """levels[n][i] = s_n^sigma(i) for n = 0..d-1 and i in I_n."""
    sigma: Ordering
    levels: tuple

    def __call__(self, n: int, i: int) -> float:
        return self.levels[n][i]


def fibre_dimensions(S: SpongeSystem, P: ProjectionStructure, iterations: int = 64) -> FibreDimensions:
    levels = tuple(
        {i: fibre_similarity_dimension(S, P, n, i, iterations) for i in P.index_set(n)}
        for n in range(S.d)
    )
    return FibreDimensions(P.sigma, levels)


# -- natural measure ----------------------------------------------------------

def natural_measure(S: SpongeSystem, P: ProjectionStructure, dims: Optional[FibreDimensions] = None) -> tuple:
    """q^sigma(i) = prod_n (lambda_{Pi_n i}^(sigma_n)) ** s_{n-1}(Pi_{n-1} i)."""
    dims = dims or fibre_dimensions(S, P)
    q = []
    for i in S.indices:
        exponent = 0.0
        for n in range(1, S.d + 1):
            rep = P.project(n, i)
            exponent += dims(n - 1, P.project(n - 1, i)) * log_number(S.ratio(rep, P.sigma[n]))
        q.append(math.exp(exponent))
    logger.debug(f"Natural measure for {P.sigma}: {q} (sum {math.fsum(q)!r})")
    return tuple(q)


def natural_measure_identity_check(S: SpongeSystem, P: ProjectionStructure, q: Sequence,
                                   dims: Optional[FibreDimensions] = None, tol: float = 1e-12) -> bool:
    """log Q_{n-1}(i) / log lambda_i^(sigma_n) == s_{n-1}(Pi_{n-1} i) for every level and symbol."""
    dims = dims or fibre_dimensions(S, P)
    weights = project_weights(S, P, q)
    worst = 0.0
    for n in range(1, S.d + 1):
        coord = P.sigma[n]
        for i in P.index_set(n):
            Q = weights.conditional(n, i)
            lhs = math.log(Q) / log_number(S.ratio(i, coord))
            worst = max(worst, abs(lhs - dims(n - 1, P.project(n - 1, i))))
    logger.debug(f"Natural-measure identity for {P.sigma}: max error {worst:.3e}")
    return worst <= tol
