"""Words that realise the extremal exponent S-bar (or S-underbar) for an ordering in B."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..core.projection import ProjectionAtlas
from ..core.sponge import Ordering, SpongeSystem, WordSpec, iterate_system, map_ordering, stopping_times
from ..dimension.bounds import level_terms
from ..dimension.weights import WeightSystem
from ..errors import InterleavingViolated, NoStrictLetter, RangeEmpty
from ..utils.numbers import log_fraction, log_number
from .cubes import approximate_cube, cube_measure

logger = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class RatioSample:
    word: WordSpec
    R: Fraction
    r: Fraction
    log_ratio: float
    log_scale: float
    sigma_R: Optional[Ordering] = None
    sigma_r: Optional[Ordering] = None

    @property
    def exponent(self) -> float:
        return self.log_ratio / self.log_scale


def ratio_sample(S: SpongeSystem, weights: WeightSystem, w: WordSpec, R: Fraction, r: Fraction) -> RatioSample:
    """log mu(B(R)) / mu(B(r)) for one word, evaluated exactly and logged once."""
    big = approximate_cube(S, weights.atlas, w, R)
    small = approximate_cube(S, weights.atlas, w, r)
    mu_big = cube_measure(S, weights[big.sigma], big)
    mu_small = cube_measure(S, weights[small.sigma], small)
    if mu_big < mu_small:
        raise AssertionError(f"cube at R={R} lighter than cube at r={r} for {w}")
    log_ratio = log_number(mu_big / mu_small)
    return RatioSample(w, R, r, log_ratio, log_fraction(Fraction(R) / Fraction(r)), big.sigma, small.sigma)


def theta(S: SpongeSystem, v: int, a: int, b: int) -> float:
    """log lambda_v^(a) / log lambda_v^(b)."""
    return log_fraction(S.ratio(v, a)) / log_fraction(S.ratio(v, b))


def find_strict_letter(S: SpongeSystem, sigma: Ordering, max_iterate: int = 3) -> tuple:
    """
    (m, iterate system, letter) for the first letter of the m-th iterate whose
    ratios are strictly sigma-ordered.

    Raises:
        NoStrictLetter: none up to max_iterate
    """
    for m in range(1, max_iterate + 1):
        T = iterate_system(S, m)
        for j in T.indices:
            if map_ordering(T, j) == sigma:
                if m > 1:
                    logger.info(f"Strict {sigma} letter found only at iterate {m}")
                return m, T, j
    raise NoStrictLetter(sigma, max_iterate)


def product_weights(S: SpongeSystem, p: Sequence, m: int) -> tuple:
    """Bernoulli weights of the m-th iterate, in the same letter order as iterate_system."""
    if m == 1:
        return tuple(p)
    return tuple(math.prod((p[i] for i in u), start=1) for u in itertools.product(S.indices, repeat=m))


def admissible_log_range(S: SpongeSystem, sigma: Ordering, j: int, R: Fraction) -> tuple:
    """Open interval of log r for which the extremal word is well defined."""
    log_R = log_fraction(R)
    log_min = log_fraction(S.lambda_min)
    lower = -math.inf
    for n in range(2, S.d + 1):
        theta_j = theta(S, j, sigma[n - 1], sigma[n])
        for v in S.indices:
            total = sum(theta(S, v, sigma[n - 1], sigma[ell]) for ell in range(n, S.d + 1))
            bound = (1 + (1 - theta_j) / total) * log_R - (1 + theta_j / total) * log_min
            lower = max(lower, bound)
    upper = log_min + log_R
    return lower, upper


def build_extremal_word(S: SpongeSystem, sigma: Ordering, j: int, letters: Sequence[int],
                        R: Fraction, r: Fraction) -> WordSpec:
    """
    j up to L(R, sigma_n), then letters[n-1] up to L(r, sigma_n), for n = d
    down to 1; the tail repeats j.

    Raises:
        InterleavingViolated: some L(r, sigma_n) reaches L(R, sigma_{n-1})
    """
    prefix = []
    products = {c: Fraction(1) for c in S.coordinates}

    def push(letter):
        prefix.append(letter)
        for c in S.coordinates:
            products[c] *= S.ratio(letter, c)

    for n in range(S.d, 0, -1):
        coord = sigma[n]
        if products[coord] <= R:
            raise InterleavingViolated(n + 1, f"coordinate {coord} already below R at length {len(prefix)}")
        while products[coord] > R:
            push(j)
        while products[coord] > r:
            push(letters[n - 1])
    return WordSpec(tuple(prefix), (j,))


@dataclass(frozen=True)
class WitnessTriple:
    R: Fraction
    r: Fraction
    word: WordSpec
    sample: RatioSample


@dataclass(frozen=True)
class ExtremalWitness:
    sigma: Ordering
    kind: str
    iterate: int
    j: int
    letters: tuple  # per level: k-bar (upper) or k-underbar (lower)
    target: float  # S-bar or S-underbar of the iterate's weights
    triples: tuple = ()
    skipped: tuple = field(default_factory=tuple)  # scales R whose range was empty


def witness_triple(T: SpongeSystem, weights: WeightSystem, sigma: Ordering, j: int, letters: Sequence[int],
                   R: Fraction) -> WitnessTriple:
    """
    Raises:
        RangeEmpty: R is not small enough for an admissible r
        InterleavingViolated: the built word breaks the stopping-time interleaving
    """
    lower, upper = admissible_log_range(T, sigma, j, R)
    if lower >= upper:
        raise RangeEmpty(f"no admissible r for R={R}: [{lower:.4f}, {upper:.4f}] in log scale")
    r = Fraction.from_float(math.exp((lower + upper) / 2))
    word = build_extremal_word(T, sigma, j, letters, R, r)

    L_R = stopping_times(T, word, R)
    L_r = stopping_times(T, word, r)
    for n in range(2, T.d + 1):
        if not L_r[sigma[n] - 1] < L_R[sigma[n - 1] - 1]:
            raise InterleavingViolated(n, f"L(r)={L_r[sigma[n] - 1]} vs L(R)={L_R[sigma[n - 1] - 1]}")
    return WitnessTriple(R, r, word, ratio_sample(T, weights, word, R, r))


def extremal_witness(S: SpongeSystem, p: Sequence, sigma: Ordering, scales: Iterable[Fraction],
                     kind: str = UPPER, max_iterate: int = 3,
                     max_ratio: Optional[float] = None) -> ExtremalWitness:
    """
    Triples (R, r, word) whose measure ratios grow like (R/r)^S-bar(p, sigma)
    (or S-underbar for kind="lower"). Scales with an empty admissible range
    are skipped and listed. Scales should decrease; generation stops at the
    first triple with R/r above max_ratio.

    Raises:
        NoStrictLetter: no strictly sigma-ordered letter up to max_iterate
    """
    m, T, j = find_strict_letter(S, sigma, max_iterate)
    atlas = ProjectionAtlas(T)
    weights = WeightSystem(T, product_weights(S, p, m), atlas)
    terms = level_terms(T, weights[sigma])
    letters = terms.k_upper if kind == UPPER else terms.k_lower
    target = terms.upper if kind == UPPER else terms.lower

    triples, skipped = [], []
    for R in scales:
        R = Fraction(R)
        try:
            triple = witness_triple(T, weights, sigma, j, letters, R)
        except RangeEmpty:
            skipped.append(R)
            continue
        if max_ratio is not None and triple.sample.log_scale > math.log(max_ratio):
            break
        triples.append(triple)
    logger.debug(f"Extremal {kind} witness for {sigma}: {len(triples)} triple(s), {len(skipped)} skipped")
    return ExtremalWitness(sigma, kind, m, j, tuple(letters), target, tuple(triples), tuple(skipped))


def witness_scales(per_decade: int = 8, decades: int = 40) -> list:
    """Decreasing exact scales 1/round(10^x), x from 1/2 in steps of 1/per_decade."""
    scales = []
    for k in range(per_decade * decades):
        R = Fraction(1, int(round(10 ** (0.5 + k / per_decade))))
        if not scales or R < scales[-1]:
            scales.append(R)
    return scales
