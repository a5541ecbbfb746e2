"""Exact model of a diagonal self-affine sponge.

Maps are indexed 0..N-1 (list positions in the description file). Coordinates are
labelled 1..d, matching the way orderings are written: sigma = (2,1,3) means
coordinate 2 has the longest side.
"""

import itertools
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from ..errors import SpecParseError, SpongeValidationError, Violation, ViolationKind, PreconditionViolated
from ..utils.numbers import format_rational, log_fraction, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineMapSpec:
    """Diagonal affine contraction x -> diag(ratios) x + translation."""
    ratios: tuple
    translation: tuple

    def interval(self, coord: int) -> tuple:
        """Image of [0,1] in coordinate `coord` (1-based) as a closed interval."""
        t = self.translation[coord - 1]
        return t, t + self.ratios[coord - 1]

    def compose(self, inner: "AffineMapSpec") -> "AffineMapSpec":
        """self o inner."""
        return AffineMapSpec(
            ratios=tuple(a * b for a, b in zip(self.ratios, inner.ratios)),
            translation=tuple(t + a * s for t, a, s in zip(self.translation, self.ratios, inner.translation)),
        )

    def to_dict(self) -> dict:
        return {
            "ratios": [format_rational(v) for v in self.ratios],
            "translation": [format_rational(v) for v in self.translation],
        }


@dataclass(frozen=True)
class SpongeSystem:
    """A validated IFS of diagonal affine maps on [0,1]^d."""
    dimension: int
    maps: tuple

    @property
    def d(self) -> int:
        return self.dimension

    @property
    def N(self) -> int:
        return len(self.maps)

    @property
    def indices(self) -> range:
        return range(len(self.maps))

    @property
    def coordinates(self) -> range:
        return range(1, self.dimension + 1)

    def ratio(self, i: int, coord: int) -> Fraction:
        return self.maps[i].ratios[coord - 1]

    @cached_property
    def lambda_min(self) -> Fraction:
        return min(min(m.ratios) for m in self.maps)

    @cached_property
    def lambda_max(self) -> Fraction:
        return max(max(m.ratios) for m in self.maps)

    @cached_property
    def log_ratios(self) -> np.ndarray:
        """(N, d) array of log lambda_i^(n); column n-1 is coordinate n."""
        return np.array([[log_fraction(r) for r in m.ratios] for m in self.maps], dtype=float)

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "maps": [m.to_dict() for m in self.maps]}


@dataclass(frozen=True, order=True)
class Ordering:
    """A permutation sigma = (sigma_1, ..., sigma_d) of the coordinates."""
    perm: tuple

    def __post_init__(self):
        perm = tuple(int(c) for c in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"not a permutation of 1..{len(perm)}: {self.perm}")
        object.__setattr__(self, "perm", perm)

    @property
    def d(self) -> int:
        return len(self.perm)

    def __getitem__(self, n: int) -> int:
        """sigma_n for n in 1..d."""
        if not 1 <= n <= len(self.perm):
            raise IndexError(f"level {n} outside 1..{len(self.perm)}")
        return self.perm[n - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.perm)

    def __len__(self) -> int:
        return len(self.perm)

    def position(self, coord: int) -> int:
        """Level n with sigma_n = coord."""
        return self.perm.index(coord) + 1

    def precedes(self, x: int, y: int) -> bool:
        return self.position(x) < self.position(y)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.perm) + ")"

    @classmethod
    def parse(cls, text: str) -> "Ordering":
        """Accept "(1,2,3)", "1,2,3", "1 2 3" or a bare digit string "123"."""
        digits = re.findall(r"\d+", text)
        if len(digits) == 1 and len(digits[0]) > 1:
            digits = list(digits[0])
        if not digits:
            raise ValueError(f"no ordering in {text!r}")
        return cls(tuple(int(c) for c in digits))

    @classmethod
    def all(cls, d: int) -> list:
        """Every ordering of d coordinates in lexicographic order."""
        return [cls(p) for p in itertools.permutations(range(1, d + 1))]

    @classmethod
    def identity(cls, d: int) -> "Ordering":
        return cls(tuple(range(1, d + 1)))


@dataclass(frozen=True)
class WordSpec:
    """The eventually periodic word prefix . cycle^inf over map indices."""
    prefix: tuple = ()
    cycle: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(i) for i in self.prefix))
        object.__setattr__(self, "cycle", tuple(int(i) for i in self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    def letter(self, ell: int) -> int:
        """The ell-th letter, ell >= 1."""
        if ell <= len(self.prefix):
            return self.prefix[ell - 1]
        return self.cycle[(ell - len(self.prefix) - 1) % len(self.cycle)]

    def take(self, length: int) -> tuple:
        return tuple(self.letter(ell) for ell in range(1, length + 1))

    def letters(self) -> Iterator[int]:
        yield from self.prefix
        while True:
            yield from self.cycle

    @classmethod
    def constant(cls, i: int) -> "WordSpec":
        return cls((), (i,))

    @classmethod
    def periodic(cls, block: Sequence[int]) -> "WordSpec":
        return cls((), tuple(block))

    def to_dict(self) -> dict:
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}

    def __str__(self) -> str:
        sep = "" if all(i < 10 for i in self.prefix + self.cycle) else ","
        head = sep.join(str(i) for i in self.prefix)
        tail = sep.join(str(i) for i in self.cycle)
        return f"{head}({tail})^inf" if head else f"({tail})^inf"


@dataclass(frozen=True)
class SpongeSpec:
    """A validated system together with the optional weights from its file."""
    system: SpongeSystem
    weights: Optional[tuple] = None
    source: Optional[str] = None

    def to_dict(self) -> dict:
        data = self.system.to_dict()
        if self.weights is not None:
            data["weights"] = [format_rational(w) for w in self.weights]
        return data


# -- validation ------------------------------------------------------------

def _parse_vector(values, d: int, what: str) -> tuple:
    if not isinstance(values, (list, tuple)):
        raise SpecParseError(f"{what} must be a list")
    if len(values) != d:
        raise SpecParseError(f"{what} has {len(values)} entries, expected {d}")
    return tuple(parse_rational(v) for v in values)


def collect_violations(dimension: int, maps: Sequence[AffineMapSpec]) -> list:
    """Every invariant failure of a parsed system, in a stable order."""
    violations = []
    if not maps:
        violations.append(Violation(ViolationKind.EMPTY_SYSTEM, "system has no maps"))
        return violations

    for i, m in enumerate(maps):
        for n in range(1, dimension + 1):
            lam, t = m.ratios[n - 1], m.translation[n - 1]
            if not 0 < lam < 1:
                violations.append(Violation(
                    ViolationKind.RATIO_OUT_OF_RANGE,
                    f"map {i} coordinate {n}: ratio {lam} not in (0,1)",
                    (i, n),
                ))
            if t < 0 or t + lam > 1:
                violations.append(Violation(
                    ViolationKind.ESCAPES_UNIT_CUBE,
                    f"map {i} coordinate {n}: [{t}, {t + lam}] leaves [0,1]",
                    (i, n),
                ))

    for i, j in itertools.combinations(range(len(maps)), 2):
        if maps[i] == maps[j]:
            violations.append(Violation(ViolationKind.DUPLICATE_MAP, f"maps {i} and {j} are identical", (i, j)))

    for m, n in itertools.combinations(range(1, dimension + 1), 2):
        if all(f.ratios[m - 1] == f.ratios[n - 1] for f in maps):
            violations.append(Violation(
                ViolationKind.INDISTINGUISHABLE_COORDINATES,
                f"coordinates {m} and {n} have equal ratios in every map",
                (m, n),
            ))
    return violations


def parse_sponge_spec(raw: Mapping, source: Optional[str] = None) -> SpongeSpec:
    """
    Parse and validate a raw sponge description (the decoded JSON object).

    Raises:
        SpecParseError: malformed structure or numbers
        SpongeValidationError: well-formed input breaking an invariant
    """
    if not isinstance(raw, Mapping):
        raise SpecParseError("sponge description must be an object")
    dimension = raw.get("dimension")
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise SpecParseError(f"dimension must be a positive integer, got {dimension!r}")
    raw_maps = raw.get("maps")
    if not isinstance(raw_maps, list):
        raise SpecParseError("maps must be a list")

    maps = []
    for i, entry in enumerate(raw_maps):
        if not isinstance(entry, Mapping):
            raise SpecParseError(f"map {i} must be an object")
        if "ratios" not in entry or "translation" not in entry:
            raise SpecParseError(f"map {i} needs 'ratios' and 'translation'")
        maps.append(AffineMapSpec(
            ratios=_parse_vector(entry["ratios"], dimension, f"map {i} ratios"),
            translation=_parse_vector(entry["translation"], dimension, f"map {i} translation"),
        ))

    violations = collect_violations(dimension, maps)

    weights = None
    if raw.get("weights") is not None:
        raw_weights = raw["weights"]
        if not isinstance(raw_weights, list) or len(raw_weights) != len(maps):
            raise SpecParseError(f"weights must be a list of {len(maps)} numbers")
        weights = tuple(parse_rational(w) for w in raw_weights)
        if any(w <= 0 for w in weights) or sum(weights) != 1:
            violations.append(Violation(
                ViolationKind.INVALID_WEIGHTS,
                f"weights must be positive and sum to 1 (sum is {sum(weights)})",
            ))

    if violations:
        for v in violations:
            logger.debug(f"Validation: {v}")
        raise SpongeValidationError(violations)

    return SpongeSpec(SpongeSystem(dimension, tuple(maps)), weights, source)


def validate_sponge(raw: Mapping) -> SpongeSystem:
    """Validated SpongeSystem for a raw description; raises on any violation."""
    return parse_sponge_spec(raw).system


def load_sponge_spec(path) -> SpongeSpec:
    """Read and validate a sponge JSON file."""
    path = Path(path)
    logger.info(f"Loading sponge description from {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise SpecParseError(f"{path}: {e}") from e
    return parse_sponge_spec(raw, source=str(path))


def make_system(ratios: Iterable, translations: Iterable) -> SpongeSystem:
    """Build and validate a system from per-map ratio and translation vectors."""
    ratios = [list(r) for r in ratios]
    translations = [list(t) for t in translations]
    if not ratios:
        raise SpongeValidationError([Violation(ViolationKind.EMPTY_SYSTEM, "system has no maps")])
    raw = {
        "dimension": len(ratios[0]),
        "maps": [
            {"ratios": [str(v) for v in r], "translation": [str(v) for v in t]}
            for r, t in zip(ratios, translations)
        ],
    }
    return validate_sponge(raw)


# -- exact predicates ------------------------------------------------------

def exact_overlap(S: SpongeSystem, i: int, j: int, sigma: Ordering, n: int) -> bool:
    """True iff f_i and f_j agree on coordinates sigma_1..sigma_n."""
    if not 1 <= n <= S.d:
        raise IndexError(f"level {n} outside 1..{S.d}")
    fi, fj = S.maps[i], S.maps[j]
    for m in range(1, n + 1):
        c = sigma[m] - 1
        if fi.ratios[c] != fj.ratios[c] or fi.translation[c] != fj.translation[c]:
            return False
    return True


def dominates(S: SpongeSystem, x: int, y: int) -> bool:
    """Coordinate x dominates y: lambda_i^(y) <= lambda_i^(x) for every map."""
    if x == y:
        raise PreconditionViolated(f"dominates needs distinct coordinates, got {x} twice")
    return all(m.ratios[y - 1] <= m.ratios[x - 1] for m in S.maps)


def map_ordering(S: SpongeSystem, i: int) -> Optional[Ordering]:
    """The strict ordering of map i's ratios (largest first), None on a tie."""
    ratios = S.maps[i].ratios
    if len(set(ratios)) < len(ratios):
        return None
    return Ordering(tuple(sorted(S.coordinates, key=lambda c: -ratios[c - 1])))


# -- stopping times ----------------------------------------------------------

def word_products(S: SpongeSystem, w: WordSpec, coord: int, length: int) -> list:
    """[P_0, ..., P_length] with P_L = prod_{l<=L} lambda_{w_l}^(coord)."""
    products = [Fraction(1)]
    for ell in range(1, length + 1):
        products.append(products[-1] * S.ratio(w.letter(ell), coord))
    return products


def stopping_time(S: SpongeSystem, w: WordSpec, r: Fraction, n: int) -> int:
    """The L with prod_{l<=L} lambda^(n) <= r < prod_{l<=L-1} lambda^(n)."""
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError(f"scale must lie in (0,1), got {r}")
    product = Fraction(1)
    ell = 0
    for letter in w.letters():
        ell += 1
        product *= S.ratio(letter, n)
        if product <= r:
            return ell
    raise AssertionError("unreachable")


def stopping_times(S: SpongeSystem, w: WordSpec, r: Fraction) -> tuple:
    """Stopping times for all coordinates; entry n-1 is coordinate n."""
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError(f"scale must lie in (0,1), got {r}")
    result = [0] * S.d
    products = [Fraction(1)] * S.d
    pending = set(S.coordinates)
    ell = 0
    for letter in w.letters():
        ell += 1
        for n in list(pending):
            products[n - 1] *= S.ratio(letter, n)
            if products[n - 1] <= r:
                result[n - 1] = ell
                pending.discard(n)
        if not pending:
            return tuple(result)
    raise AssertionError("unreachable")


def evaluate_projection_point(S: SpongeSystem, w: WordSpec, depth: int) -> tuple:
    """
    Approximate the natural projection of an infinite word.

    Returns:
        (f_{w_1..w_depth}(0), per-coordinate error bound prod lambda)
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    point = [Fraction(0)] * S.d
    scale = [Fraction(1)] * S.d
    for ell in range(1, depth + 1):
        f = S.maps[w.letter(ell)]
        for c in range(S.d):
            point[c] += scale[c] * f.translation[c]
            scale[c] *= f.ratios[c]
    return tuple(point), tuple(scale)


def compose_word(S: SpongeSystem, word: Sequence[int]) -> AffineMapSpec:
    """f_{u_1} o ... o f_{u_k} for a finite word u."""
    identity = AffineMapSpec(tuple(Fraction(1) for _ in S.coordinates), tuple(Fraction(0) for _ in S.coordinates))
    return reduce(lambda acc, i: acc.compose(S.maps[i]), word, identity)


def iterate_system(S: SpongeSystem, m: int) -> SpongeSystem:
    """The m-th iterate {f_u : u in I^m}, maps in lexicographic order of u."""
    if m < 1:
        raise ValueError("iterate must be >= 1")
    if m == 1:
        return S
    maps = tuple(compose_word(S, u) for u in itertools.product(S.indices, repeat=m))
    return SpongeSystem(S.dimension, maps)
