"""Exact rational parsing and report-friendly number formatting."""

import math
from fractions import Fraction
from numbers import Rational, Real
from typing import Union

from ..errors import SpecParseError

Number = Union[Fraction, float]

REAL_DIGITS = 12


def parse_rational(value) -> Fraction:
    """
    Parse a numeric entry of a sponge description into an exact rational.

    Accepts "p/q" strings, decimal strings (converted exactly, so "0.1" is
    1/10), integers and Fractions. Floats go through their shortest repr.

    Raises:
        SpecParseError: if the value is not a well-formed number
    """
    if isinstance(value, bool):
        raise SpecParseError(f"not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SpecParseError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise SpecParseError(f"malformed number {value!r}: {e}") from e
    raise SpecParseError(f"not a number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" for integers)."""
    return str(Fraction(value))


def format_real(value: Real) -> float:
    """Round a real to 12 significant digits for reports."""
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(f"{value:.{REAL_DIGITS}g}")


def log_fraction(value: Fraction) -> float:
    """Natural log of a positive rational without overflowing to float."""
    if value <= 0:
        raise ValueError(f"log of non-positive rational {value}")
    return math.log(value.numerator) - math.log(value.denominator)


def log_number(value: Number) -> float:
    """Natural log of a positive rational or float."""
    if isinstance(value, Fraction):
        return log_fraction(value)
    return math.log(value)


def numbers_agree(a: Number, b: Number, rel: float = 1e-12, abs_tol: float = 1e-15) -> bool:
    """Exact equality for rationals, a tight tolerance once floats are involved."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=rel, abs_tol=abs_tol)


def rationalize(weights, max_denominator: int = 10**9) -> tuple:
    """Positive rational approximation of a probability vector, renormalised exactly."""
    approx = []
    for w in weights:
        f = Fraction(float(w)).limit_denominator(max_denominator)
        if f <= 0:
            f = Fraction(1, max_denominator)
        approx.append(f)
    total = sum(approx)
    return tuple(f / total for f in approx)
