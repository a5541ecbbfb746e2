"""Witnesses for ordering-set membership and their exact re-verification."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import mpmath

from ..core.sponge import Ordering, SpongeSystem, WordSpec
from ..utils.numbers import format_rational, format_real


class CertificateKind(Enum):
    CYLINDER_STRICT = "cylinder-strict"
    CUBE = "cube"


def chi_high_precision(S: SpongeSystem, p, precision: int = 40) -> list:
    """Lyapunov exponents chi_1..chi_d of a rational p evaluated with mpmath."""
    with mpmath.workdps(precision):
        chi = []
        for c in S.coordinates:
            total = mpmath.mpf(0)
            for i, weight in enumerate(p):
                lam = S.ratio(i, c)
                w = mpmath.mpf(weight.numerator) / weight.denominator
                total -= w * mpmath.log(mpmath.mpf(lam.numerator) / lam.denominator)
            chi.append(total)
        return chi


def strict_chain_holds(S: SpongeSystem, sigma: Ordering, p, precision: int = 40) -> bool:
    """chi_{sigma_1}(p) < ... < chi_{sigma_d}(p), decided at `precision` digits."""
    if any(w <= 0 for w in p) or sum(p) != 1:
        return False
    chi = chi_high_precision(S, p, precision)
    with mpmath.workdps(precision):
        # anything closer than the working precision is not a certificate
        floor = mpmath.mpf(10) ** (-(precision // 2))
        return all(chi[sigma[k + 1] - 1] - chi[sigma[k] - 1] > floor for k in range(1, S.d))


@dataclass(frozen=True)
class OrderingCertificate:
    """
    Why sigma belongs to B (a rational p with a strict chi-chain) or to A
    (a word and scale whose cube is sigma-ordered).
    """
    sigma: Ordering
    kind: CertificateKind
    weights: Optional[tuple] = None
    word: Optional[WordSpec] = None
    scale: Optional[Fraction] = None
    slack: Optional[float] = None

    def verify(self, S: SpongeSystem, precision: int = 40) -> bool:
        """Re-check the witness against the defining inequalities."""
        if self.kind is CertificateKind.CYLINDER_STRICT:
            return strict_chain_holds(S, self.sigma, self.weights, precision)
        from .rules import cube_ordering
        return cube_ordering(S, self.word, self.scale) == self.sigma

    def to_dict(self) -> dict:
        data = {"sigma": str(self.sigma), "kind": self.kind.value}
        if self.weights is not None:
            data["p"] = [format_rational(w) for w in self.weights]
        if self.word is not None:
            data["word"] = self.word.to_dict()
            data["scale"] = format_rational(self.scale)
        if self.slack is not None:
            data["lp_slack"] = format_real(self.slack)
        return data
