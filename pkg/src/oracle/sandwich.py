"""Spot checks of the two-sided measure bounds and the cube/ball sandwich."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.stats import linregress

from ..core.projection import ProjectionAtlas
from ..core.separation import SeparationReport
from ..core.sponge import Ordering, SpongeSystem, compose_word
from ..dimension.bounds import level_terms
from ..dimension.weights import WeightSystem
from ..errors import InvalidEpsilon, SeparationNotVerified
from ..utils.numbers import log_fraction
from .cubes import allowed_symbols, approximate_cube
from .sampler import exact_weights, random_word
from .witness import ratio_sample

logger = logging.getLogger(__name__)

MAX_ATTEMPTS_PER_TRIAL = 40


def _trend(xs: list, ys: list) -> float:
    """Slope of ys against xs, 0 when there is nothing to fit."""
    if len(xs) < 3 or len(set(xs)) < 2:
        return 0.0
    return float(linregress(xs, ys).slope)


@dataclass
class SameOrderingReport:
    """
    Smallest C with C^-1 (R/r)^S-underbar <= mu(B(R)) / mu(B(r)) <= C (R/r)^S-bar
    over pairs of sigma-ordered cubes.
    """
    sigma: Ordering
    s_upper: float
    s_lower: float
    samples: int
    fitted_C: float
    bound: float  # lambda_min ** -(S-bar + S-underbar)
    trend: float  # slope of log C against log(R/r)
    boundary_samples: int = 0

    @property
    def bounded(self) -> bool:
        return self.fitted_C <= self.bound * (1 + 1e-9)


def verify_same_ordering_bounds(S: SpongeSystem, p: Sequence, sigma: Ordering, trials: int = 200,
                                seed: int = 0, max_ratio: float = 1e6,
                                atlas: Optional[ProjectionAtlas] = None) -> SameOrderingReport:
    """
    Sample (w, R, r) with r < lambda_min R and both cubes sigma-ordered. Every
    tenth attempt uses the boundary scale r = lambda_min R / 2.
    """
    rng = np.random.default_rng(seed)
    weights = WeightSystem(S, exact_weights(p), atlas or ProjectionAtlas(S))
    terms = level_terms(S, weights[sigma])
    upper, lower = terms.upper, terms.lower
    lam = S.lambda_min
    low_ratio = 2 / float(lam)

    log_C, log_x = [], []
    boundary = 0
    for attempt in range(trials * MAX_ATTEMPTS_PER_TRIAL):
        if len(log_C) >= trials:
            break
        w = random_word(rng, S.N)
        R = Fraction(1, int(rng.integers(2, 64)))
        at_boundary = attempt % 10 == 0
        if at_boundary:
            r = lam * R / 2
        else:
            x = math.exp(rng.uniform(math.log(low_ratio), math.log(max(max_ratio, low_ratio * 2))))
            r = R / int(math.ceil(x))
        if not r < lam * R:
            continue
        sample = ratio_sample(S, weights, w, R, r)
        if sample.sigma_R != sigma or sample.sigma_r != sigma:
            continue
        boundary += at_boundary
        log_x.append(sample.log_scale)
        log_C.append(max(sample.log_ratio - upper * sample.log_scale, lower * sample.log_scale - sample.log_ratio))

    fitted = math.exp(max(log_C)) if log_C else 1.0
    bound = math.exp(-(upper + lower) * log_fraction(lam))
    report = SameOrderingReport(sigma, upper, lower, len(log_C), fitted, bound, _trend(log_x, log_C), boundary)
    if len(log_C) < trials:
        logger.warning(f"Only {len(log_C)} of {trials} {sigma}-ordered cube pairs found")
    logger.info(f"Same-ordering bound for {sigma}: C={fitted:.4f} (bound {bound:.4f}), trend {report.trend:+.4f}")
    return report


@dataclass
class SubdivisionReport:
    """mu(B(R)) / mu(B((1 - eps) R)) over sampled words and scales."""
    epsilon: Fraction
    samples: int
    max_ratio: float
    c_max: Fraction
    bound: Fraction  # c_max ** (d * d)
    trend: float  # slope of log ratio against log(1/R)

    @property
    def bounded(self) -> bool:
        return self.max_ratio <= float(self.bound) * (1 + 1e-9)


def largest_weight_ratio(S: SpongeSystem, weights: WeightSystem) -> Fraction:
    """max of p_n(Pi_n i) / p_n'(Pi_n' i) over orderings, maps and 0 <= n < n' <= d."""
    best = Fraction(1)
    for omega in Ordering.all(S.d):
        W = weights[omega]
        P = W.structure
        for i in S.indices:
            chain = [W.weight(n, P.project(n, i)) for n in range(S.d + 1)]
            for n in range(S.d):
                for n_prime in range(n + 1, S.d + 1):
                    best = max(best, chain[n] / chain[n_prime])
    return best


def verify_subdivision_bound(S: SpongeSystem, p: Sequence, epsilon, trials: int = 500, seed: int = 0,
                             atlas: Optional[ProjectionAtlas] = None) -> SubdivisionReport:
    """
    Raises:
        InvalidEpsilon: unless 0 < eps and 1 - eps > every contraction ratio
    """
    epsilon = Fraction(epsilon)
    if not (0 < epsilon < 1 and 1 - epsilon > S.lambda_max):
        raise InvalidEpsilon(f"need 1 - eps > {S.lambda_max}, got eps={epsilon}")

    rng = np.random.default_rng(seed)
    weights = WeightSystem(S, exact_weights(p), atlas or ProjectionAtlas(S))
    c_max = largest_weight_ratio(S, weights)
    bound = c_max ** (S.d * S.d)

    ratios, depths = [], []
    for _ in range(trials):
        w = random_word(rng, S.N)
        R = Fraction(1, int(rng.integers(2, 10**5)))
        sample = ratio_sample(S, weights, w, R, (1 - epsilon) * R)
        ratios.append(sample.log_ratio)
        depths.append(-log_fraction(R))

    worst = math.exp(max(ratios)) if ratios else 1.0
    report = SubdivisionReport(epsilon, len(ratios), worst, c_max, bound, _trend(depths, ratios))
    logger.info(f"Subdivision ratio for eps={epsilon}: max {worst:.4f}, bound {bound}, trend {report.trend:+.4f}")
    return report


@dataclass
class SandwichReport:
    cubes: int = 0
    members: int = 0
    non_members: int = 0
    max_spread: float = 0.0  # largest coordinate spread of a cube, in units of r
    min_gap: float = math.inf  # smallest member / non-member gap, in units of r
    violations: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _box(S: SpongeSystem, word: Sequence[int]) -> list:
    f = compose_word(S, word)
    return [f.interval(c) for c in S.coordinates]


def _chebyshev_gap(a: list, b: list) -> Fraction:
    return max(max(lo_b - hi_a, lo_a - hi_b) for (lo_a, hi_a), (lo_b, hi_b) in zip(a, b))


def verify_sandwich(S: SpongeSystem, separation: SeparationReport, trials: int = 100, seed: int = 0,
                    members: int = 6, atlas: Optional[ProjectionAtlas] = None) -> SandwichReport:
    """
    For sampled cubes B(r): the cylinders of sampled members spread at most r
    in every coordinate (so within a sqrt(d) r ball), and every sampled
    non-member cylinder keeps a Chebyshev gap of at least delta0 r from them.

    Raises:
        SeparationNotVerified: very strong SPPC fails
    """
    if not separation.very_strong:
        raise SeparationNotVerified("sandwich needs the very strong SPPC")
    rng = np.random.default_rng(seed)
    atlas = atlas or ProjectionAtlas(S)
    delta0 = separation.delta0
    report = SandwichReport()

    for _ in range(trials):
        w = random_word(rng, S.N)
        r = Fraction(1, int(rng.integers(2, 500)))
        cube = approximate_cube(S, atlas, w, r)
        allowed = allowed_symbols(S, atlas[cube.sigma], cube)
        L = cube.length

        member_words = [w.take(L)] + [tuple(int(rng.choice(a)) for a in allowed) for _ in range(members)]
        boxes = [_box(S, u) for u in member_words]
        spread = [max(b[c][1] for b in boxes) - min(b[c][0] for b in boxes) for c in range(S.d)]
        report.cubes += 1
        report.members += len(member_words)
        report.max_spread = max(report.max_spread, float(max(spread) / r))
        if max(spread) > r or sum(s * s for s in spread) > S.d * r * r:
            report.violations.append(f"cube of {w} at r={r} spreads {[str(s) for s in spread]}")

        for u in _non_members(S, rng, w, cube, allowed, atlas):
            box = _box(S, u)
            gap = min(_chebyshev_gap(box, b) for b in boxes)
            report.non_members += 1
            report.min_gap = min(report.min_gap, float(gap / r))
            if gap < delta0 * r:
                report.violations.append(f"non-member {u} of cube {w} at r={r} is only {gap} away")

    logger.info(
        f"Sandwich: {report.cubes} cubes, {report.members} members, {report.non_members} non-members, "
        f"spread <= {report.max_spread:.4f} r, gap >= {report.min_gap:.4f} r"
    )
    if report.violations:
        logger.warning(f"Sandwich check failed {len(report.violations)} time(s)")
    return report


def _non_members(S: SpongeSystem, rng: np.random.Generator, w, cube, allowed: list, atlas) -> list:
    """One word differing from the base in a single position's class, plus one random outsider."""
    L = cube.length
    base = list(w.take(L))
    found = []
    ell = int(rng.integers(1, L + 1))
    outside = [j for j in S.indices if j not in allowed[ell - 1]]
    if outside:
        word = base[:ell - 1] + [int(rng.choice(outside))] + [int(x) for x in rng.integers(0, S.N, size=L - ell)]
        found.append(tuple(word))
    word = tuple(int(x) for x in rng.integers(0, S.N, size=L))
    if any(j not in a for j, a in zip(word, allowed)):
        found.append(word)
    return found
