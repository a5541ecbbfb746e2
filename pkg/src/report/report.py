"""Run reports: versioned JSON with a plain-text twin."""

import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from ..core.separation import SeparationReport
from ..core.sponge import Ordering, SpongeSystem, WordSpec
from ..dimension.bounds import DimensionBounds, LevelTerms
from ..dimension.gap import GapCertificate
from ..dimension.weights import FibreDimensions, ProjectedWeights
from ..ordering.certificates import CertificateKind, chi_high_precision
from ..ordering.lyapunov import TwoMapCondition
from ..ordering.sets import OrderingSets, SpongeClass
from ..utils.numbers import format_rational, format_real

logger = logging.getLogger(__name__)

SCHEMA = "sponge-dim/1"


def to_jsonable(value):
    """Rationals become "p/q", reals are rounded, non-finite reals become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return format_real(value)
    if isinstance(value, (Ordering, WordSpec)):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return to_jsonable(value.item())
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dataclass
class RunReport:
    command: str
    status: str = "START"
    exit_code: int = 0
    sections: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, name: str, content) -> None:
        self.sections[name] = content

    def note(self, text: str) -> None:
        logger.info(f"Note: {text}")
        self.notes.append(text)

    def to_dict(self) -> dict:
        data = {
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "notes": list(self.notes),
        }
        data.update(self.sections)
        return to_jsonable(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = []
        _text_lines(self.to_dict(), 0, lines)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "json") -> str:
        if fmt == "text":
            return self.to_text()
        return self.to_json()


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _text_lines(value, indent: int, lines: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        width = max((len(k) for k in value), default=0)
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and not _flat_list(item):
                lines.append(f"{pad}{key}:")
                _text_lines(item, indent + 1, lines)
            elif isinstance(item, list):
                lines.append(f"{pad}{key.ljust(width)}  {', '.join(_scalar(v) for v in item) or '-'}")
            else:
                lines.append(f"{pad}{key.ljust(width)}  {_scalar(item)}")
    elif isinstance(value, list):
        for k, item in enumerate(value):
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.append(f"{pad}[{k}]")
                _text_lines(item, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_scalar(item) if not isinstance(item, list) else ', '.join(map(_scalar, item))}")
    else:
        lines.append(f"{pad}{_scalar(value)}")


def _flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


# -- sections -----------------------------------------------------------------

def validation_section(violations: list) -> dict:
    return {
        "valid": not violations,
        "violations": [{"kind": v.kind.value, "message": v.message, "indices": list(v.indices)} for v in violations],
    }


def separation_section(report: SeparationReport) -> dict:
    return {
        "sppc": report.sppc,
        "very_strong": report.very_strong,
        "delta0": report.delta0,
        "orderings": list(report.orderings),
        "failures": [f.to_dict() for f in report.failures],
    }


def orderings_section(S: SpongeSystem, sets: OrderingSets, classification: SpongeClass,
                      precision: int = 40) -> dict:
    b_entries = []
    for sigma in sets.b:
        certificate = sets.certificates[sigma]
        entry = certificate.to_dict()
        entry["chi"] = [float(x) for x in chi_high_precision(S, certificate.weights, precision)]
        b_entries.append(entry)
    a_entries = [
        sets.a_certificates[sigma].to_dict()
        for sigma in sets.a_lower
        if sets.a_certificates[sigma].kind is CertificateKind.CUBE
    ]
    return {
        "B": b_entries,
        "A_lower": list(sets.a_lower),
        "A_upper": list(sets.a_upper),
        "A_witnesses": a_entries,
        "exact": sets.exact,
        "domination": [{"dominant": x, "dominated": y} for x, y in sets.domination],
        "borderline": list(sets.borderline),
        "words_examined": sets.words_examined,
        "budget_exhausted": sets.budget_exhausted,
        "classification": classification,
    }


def sigma_table(S: SpongeSystem, W: ProjectedWeights, dims: FibreDimensions, q: Optional[tuple] = None) -> dict:
    """Per level: projected weights, conditional weights and fibre dimensions."""
    P = W.structure
    levels = []
    for n in range(1, S.d + 1):
        symbols = {}
        for i in P.index_set(n):
            symbols[str(i)] = {
                "p": W.weight(n, i),
                "P": W.conditional(n, i),
                "s": dims(n - 1, P.project(n - 1, i)),
            }
        levels.append({"level": n, "coordinate": P.sigma[n], "symbols": symbols})
    table = {"sigma": P.sigma, "levels": levels}
    if q is not None:
        table["q"] = list(q)
    return table


def _terms_entry(terms: LevelTerms) -> dict:
    return {
        "upper": terms.upper,
        "lower": terms.lower,
        "k_upper": list(terms.k_upper),
        "k_lower": list(terms.k_lower),
        "s_upper": list(terms.s_upper),
        "s_lower": list(terms.s_lower),
    }


def bounds_section(label: str, p: tuple, bounds: DimensionBounds) -> dict:
    return {
        "measure": label,
        "p": list(p),
        "assouad": [bounds.assouad_lo, bounds.assouad_hi],
        "lower": [bounds.lower_lo, bounds.lower_hi],
        "exact": bounds.exact,
        "hypothesis_met": bounds.hypothesis_met,
        "assouad_argmax": bounds.assouad_argmax,
        "lower_argmin": bounds.lower_argmin,
        "per_ordering": {str(sigma): _terms_entry(t) for sigma, t in sorted(bounds.terms.items())},
    }


def sampler_section(summary, bounds: DimensionBounds, tolerance: float) -> dict:
    """Sampler brackets, flagged when they leave the formula brackets by more than tolerance."""
    sup_ok = summary.sup_estimate <= bounds.assouad_hi + tolerance
    inf_ok = summary.inf_estimate >= bounds.lower_lo - tolerance
    if bounds.exact:
        sup_ok = sup_ok and summary.sup_estimate >= bounds.assouad_lo - tolerance
        inf_ok = inf_ok and summary.inf_estimate <= bounds.lower_hi + tolerance
    return {
        "sup_estimate": summary.sup_estimate,
        "inf_estimate": summary.inf_estimate,
        "raw_max": summary.raw_max,
        "raw_min": summary.raw_min,
        "samples": summary.sample_count,
        "families": [
            {"label": f.label, "slope": f.slope, "intercept": f.intercept, "samples": f.samples}
            for f in summary.families
        ],
        "agrees": sup_ok and inf_ok,
        "tolerance": tolerance,
        "notes": list(summary.notes),
    }


def gap_section(p_star: tuple, value: float, certificate: Optional[GapCertificate] = None,
                reason: Optional[str] = None) -> dict:
    data = {"inf_estimate": value, "p_star": list(p_star)}
    if certificate is not None:
        data["certificate"] = {
            "s": certificate.s,
            "t": certificate.t,
            "swapped": certificate.swapped,
            "epsilon": certificate.epsilon,
            "ell": certificate.ell,
            "first_term": certificate.first_term,
            "second_terms": list(certificate.second_terms),
            "delta_F": certificate.delta_F,
            "confirmed": certificate.confirmed,
        }
    if reason is not None:
        data["certificate"] = None
        data["not_applicable"] = reason
    return data


def two_map_section(condition: TwoMapCondition, interval: Optional[tuple]) -> dict:
    return {
        "lhs": condition.lhs,
        "rhs": condition.rhs,
        "identity_in_B": condition.identity_in_b,
        "swapped_in_B": condition.swapped_in_b,
        "lp_agrees": condition.lp_agrees,
        "p_interval": list(interval) if interval else None,
    }


def two_map_borderline_section(slack: float) -> dict:
    """Equal log-ratio quotients: the closed form gives no verdict."""
    return {
        "borderline": True,
        "difference": slack,
        "identity_in_B": None,
        "swapped_in_B": None,
    }


def two_map_note(condition: TwoMapCondition, interval: Optional[tuple]) -> str:
    """Discrepancy note for the two-map four-coordinate family."""
    if not condition.identity_in_b:
        return f"(2,1,4,3) is in B and (1,2,3,4) is not: {condition.lhs:.6g} >= {condition.rhs:.6g}"
    where = f" for p in ({interval[0]:.6g}, {interval[1]:.6g})" if interval else ""
    return (
        f"(1,2,3,4) is in B: the log-ratio test gives {condition.lhs:.6g} < {condition.rhs:.6g} and the "
        f"chi-chain is strict{where}. A claim that (1,2,3,4) lies outside B for this system contradicts "
        f"both the closed form and the LP; the reported sets follow the computation."
    )
