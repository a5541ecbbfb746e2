"""Empirical Assouad / lower exponents from measure ratios of nested cubes."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.stats import linregress

from ..config import OracleConfig
from ..core.projection import ProjectionAtlas
from ..core.sponge import SpongeSystem, WordSpec, word_products
from ..dimension.weights import WeightSystem
from ..errors import NoStrictLetter
from ..ordering.certificates import CertificateKind
from ..ordering.sets import OrderingSets
from ..utils.numbers import rationalize
from .witness import LOWER, UPPER, extremal_witness, ratio_sample, witness_scales

logger = logging.getLogger(__name__)

LADDER_POINTS = 12
RANDOM_WORDS = 8
MAX_CYCLE_DENOMINATOR = 24


@dataclass(frozen=True)
class FamilyFit:
    """Regression of log-ratio on log-scale over one family of samples."""
    label: str
    slope: float
    intercept: float
    samples: int


@dataclass
class SamplerSummary:
    sup_estimate: float
    inf_estimate: float
    raw_max: float
    raw_min: float
    families: list = field(default_factory=list)
    samples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def sample_count(self) -> int:
        return len(self.samples)


def exact_weights(p: Sequence) -> tuple:
    """Rational weights for exact cube measures; floats are rationalised."""
    if all(isinstance(w, Fraction) for w in p):
        return tuple(p)
    return rationalize(p)


def _endpoint_below(S: SpongeSystem, w: WordSpec, bound: Fraction) -> Fraction:
    """The largest side length prod lambda^(c) of a prefix of w that is <= bound."""
    best = Fraction(0)
    for c in S.coordinates:
        product = Fraction(1)
        for letter in w.letters():
            product *= S.ratio(letter, c)
            if product <= bound:
                break
        best = max(best, product)
    return best


def scale_ladder(S: SpongeSystem, w: WordSpec, max_ratio: float, points: int = LADDER_POINTS) -> tuple:
    """
    (R, [r_1, ...]) with R the first side length of w and each r an exact
    side length of w with R/r growing geometrically up to max_ratio.
    """
    R = max(word_products(S, w, c, 1)[1] for c in S.coordinates)
    start = max(10.0, 2.0 / float(S.lambda_min))
    if start >= max_ratio:
        return R, []
    targets = np.geomspace(start, max_ratio, points)
    scales = []
    for t in targets:
        r = _endpoint_below(S, w, R / int(round(t)))
        if r < S.lambda_min * R and r not in scales:
            scales.append(r)
    return R, scales


def _fit(label: str, samples: list) -> Optional[FamilyFit]:
    if len(samples) < 2 or len({s.log_scale for s in samples}) < 2:
        return None
    fit = linregress([s.log_scale for s in samples], [s.log_ratio for s in samples])
    return FamilyFit(label, float(fit.slope), float(fit.intercept), len(samples))


def random_word(rng: np.random.Generator, N: int, max_prefix: int = 7, max_cycle: int = 3) -> WordSpec:
    prefix = tuple(int(x) for x in rng.integers(0, N, size=int(rng.integers(0, max_prefix + 1))))
    cycle = tuple(int(x) for x in rng.integers(0, N, size=int(rng.integers(1, max_cycle + 1))))
    return WordSpec(prefix, cycle)


def _fixed_words(S: SpongeSystem, sets: OrderingSets, rng: np.random.Generator) -> list:
    words = [(f"constant {i}", WordSpec.constant(i)) for i in S.indices]
    for sigma in sets.b:
        certificate = sets.certificates.get(sigma)
        if certificate is None or certificate.kind is not CertificateKind.CYLINDER_STRICT:
            continue
        q = math.lcm(*(w.denominator for w in certificate.weights))
        if q <= MAX_CYCLE_DENOMINATOR:
            block = tuple(i for i, w in enumerate(certificate.weights) for _ in range(int(w * q)))
            words.append((f"cycle {sigma}", WordSpec.periodic(block)))
    for k in range(RANDOM_WORDS):
        words.append((f"random {k}", random_word(rng, S.N)))
    return words


def sample_ratio_exponents(S: SpongeSystem, p: Sequence, sets: OrderingSets,
                           config: Optional[OracleConfig] = None, seed: Optional[int] = None,
                           atlas: Optional[ProjectionAtlas] = None) -> SamplerSummary:
    """
    Bracket the Assouad and lower exponents of mu_p from below and above by
    regressing log mu(B(R)) / mu(B(r)) on log(R/r) over several word families.

    Deterministic for a fixed (seed, config).
    """
    config = config or OracleConfig()
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    p = exact_weights(p)
    weights = WeightSystem(S, p, atlas or ProjectionAtlas(S))
    budget = config.max_samples
    max_log_scale = math.log(config.max_ratio) + 1e-9

    summary = SamplerSummary(-math.inf, math.inf, -math.inf, math.inf)

    def record(label: str, samples: list):
        samples = [s for s in samples if s.log_scale <= max_log_scale]
        room = budget - len(summary.samples)
        samples = samples[:max(room, 0)]
        summary.samples.extend(samples)
        fit = _fit(label, samples)
        if fit is not None:
            summary.families.append(fit)

    for label, w in _fixed_words(S, sets, rng):
        if len(summary.samples) >= budget:
            break
        R, scales = scale_ladder(S, w, config.max_ratio)
        record(label, [ratio_sample(S, weights, w, R, r) for r in scales])

    scales = witness_scales()
    for sigma in sets.b:
        for kind in (UPPER, LOWER):
            if len(summary.samples) >= budget:
                break
            try:
                witness = extremal_witness(S, p, sigma, scales, kind, config.max_iterate, config.max_ratio)
            except NoStrictLetter as e:
                summary.notes.append(str(e))
                logger.warning(f"Skipping extremal {kind} family: {e}")
                continue
            record(f"extremal {kind} {sigma}", [t.sample for t in witness.triples])

    if summary.families:
        summary.sup_estimate = max(f.slope for f in summary.families)
        summary.inf_estimate = min(f.slope for f in summary.families)
    if summary.samples:
        exponents = [s.exponent for s in summary.samples]
        summary.raw_max = max(exponents)
        summary.raw_min = min(exponents)
    logger.info(
        f"Sampled {summary.sample_count} ratios in {len(summary.families)} families: "
        f"slopes in [{summary.inf_estimate:.4f}, {summary.sup_estimate:.4f}]"
    )
    return summary


def sample_exponents_within(summary: SamplerSummary, low: float, high: float, tolerance: float) -> bool:
    """Every family slope lies in [low - tolerance, high + tolerance]."""
    return all(low - tolerance <= f.slope <= high + tolerance for f in summary.families)
