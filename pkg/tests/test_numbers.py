import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import SpecParseError
from src.utils.numbers import (
    format_rational,
    format_real,
    log_fraction,
    numbers_agree,
    parse_rational,
    rationalize,
)
from src.utils.roots import bisect_decreasing


@pytest.mark.parametrize("raw, expected", [
    ("0.1", F(1, 10)),
    ("3/4", F(3, 4)),
    (" 2/8 ", F(1, 4)),
    (2, F(2)),
    (0.25, F(1, 4)),
    (0.1, F(1, 10)),
    (F(5, 7), F(5, 7)),
])
def test_parse_rational(raw, expected):
    assert parse_rational(raw) == expected


@pytest.mark.parametrize("raw", ["0.1.2", "abc", "1/0", "", True, None, [1], float("nan"), float("inf")])
def test_parse_rational_rejects(raw):
    with pytest.raises(SpecParseError):
        parse_rational(raw)


def test_format_rational():
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(4, 2)) == "2"


def test_format_real_rounds_to_twelve_digits():
    assert format_real(1 / 3) == 0.333333333333
    assert format_real(math.log(3) / math.log(2)) == 1.58496250072
    assert math.isinf(format_real(math.inf))


def test_log_fraction_handles_huge_rationals():
    value = F(10**400, 3)
    assert log_fraction(value) == pytest.approx(400 * math.log(10) - math.log(3))
    with pytest.raises(ValueError):
        log_fraction(F(0))


def test_numbers_agree():
    assert numbers_agree(F(1, 3), F(1, 3))
    assert not numbers_agree(F(1, 3), F(1, 3) + F(1, 10**30))
    assert numbers_agree(F(1, 3), 1 / 3)


@given(st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=8))
@settings(max_examples=200)
def test_rationalize_is_an_exact_probability_vector(raw):
    total = sum(raw)
    weights = rationalize([w / total for w in raw])
    assert sum(weights) == 1
    assert all(isinstance(w, F) and w > 0 for w in weights)
    for w, x in zip(weights, raw):
        assert float(w) == pytest.approx(x / total, rel=1e-6, abs=1e-8)


def test_bisect_decreasing_golden_root():
    s = bisect_decreasing(lambda s: 0.5 ** s + 0.25 ** s - 1.0)
    assert abs(0.5 ** s + 0.25 ** s - 1.0) <= 1e-12
    assert s == pytest.approx(math.log((math.sqrt(5) - 1) / 2) / math.log(0.5))


def test_bisect_decreasing_is_reproducible():
    f = lambda s: 0.3 ** s + 0.6 ** s - 1.0  # noqa: E731
    assert bisect_decreasing(f) == bisect_decreasing(f)
