"""Exception hierarchy for sponge-dim.

Library code raises these; the pipeline service maps them to states and
exit codes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence


class SpongeError(Exception):
    """Base class for every error raised by sponge-dim."""


class SpecParseError(SpongeError):
    """Sponge description could not be parsed (bad JSON, numbers, shapes)."""


class ViolationKind(Enum):
    """Ways a parsed sponge description can fail validation."""
    RATIO_OUT_OF_RANGE = "RatioOutOfRange"
    ESCAPES_UNIT_CUBE = "EscapesUnitCube"
    DUPLICATE_MAP = "DuplicateMap"
    INDISTINGUISHABLE_COORDINATES = "IndistinguishableCoordinates"
    EMPTY_SYSTEM = "EmptySystem"
    INVALID_WEIGHTS = "InvalidWeights"


@dataclass(frozen=True)
class Violation:
    """A single validation failure."""
    kind: ViolationKind
    message: str
    indices: tuple = field(default_factory=tuple)

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.message}"


class SpongeValidationError(SpongeError):
    """Sponge description parsed but violates one or more invariants."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {summary}")


class BorderlineOrdering(SpongeError):
    """LP slack for an ordering fell inside the borderline band."""

    def __init__(self, sigma, slack: float):
        self.sigma = sigma
        self.slack = slack
        super().__init__(f"ordering {sigma} is borderline (max slack {slack:.3e})")


class PreconditionViolated(SpongeError):
    """Operation called outside its hypotheses."""


class RootOutOfUnitInterval(SpongeError):
    """Fibre similarity dimension would exceed 1."""


class SeparationNotVerified(SpongeError):
    """Very strong SPPC fails, so Assouad bounds are not claimed."""


class NotApplicable(SpongeError):
    """Input does not satisfy the hypotheses of the requested analysis."""


class UnsupportedDimension(SpongeError):
    """Operation does not support the sponge's ambient dimension."""


class CapExceeded(SpongeError):
    """Brute-force enumeration would exceed its configured cap."""


class NoStrictLetter(SpongeError):
    """No strictly ordered letter up to the iterate bound."""

    def __init__(self, sigma, iterate_bound: int):
        self.sigma = sigma
        self.iterate_bound = iterate_bound
        super().__init__(
            f"no letter is strictly {sigma}-ordered up to iterate {iterate_bound}"
        )


class RangeEmpty(SpongeError):
    """Admissible range for the small scale is empty; R must be decreased."""


class InvalidEpsilon(SpongeError):
    """Subdivision parameter violates 1 - eps > max ratio."""


class InconsistentWeights(SpongeError):
    """Direct and recursive projected weights disagree."""


class InterleavingViolated(SpongeError):
    """Extremal witness word broke the stopping-time interleaving."""

    def __init__(self, level: int, detail: Optional[str] = None):
        self.level = level
        super().__init__(f"interleaving violated at level {level}" + (f": {detail}" if detail else ""))
