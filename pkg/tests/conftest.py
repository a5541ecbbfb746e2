"""Shared fixtures: the named systems used across the suite."""

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from src.core.sponge import make_system
from tests.factories import three_column_carpet

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"


@pytest.fixture
def specs_dir() -> Path:
    return SPECS_DIR


@pytest.fixture
def bm_2x4():
    """Bedford-McMullen carpet on a 2x4 grid; columns touch, so only SPPC holds."""
    return make_system(
        [(F(1, 2), F(1, 4))] * 3,
        [(0, 0), (0, F(1, 2)), (F(1, 2), 0)],
    )


@pytest.fixture
def bm_shrunk():
    """The same pattern with gaps; very strong SPPC with delta0 = 1/10."""
    return make_system(
        [(F(9, 20), F(1, 5))] * 3,
        [(0, 0), (0, F(1, 2)), (F(11, 20), 0)],
    )


@pytest.fixture
def two_map_4d():
    return make_system(
        [(F(1, 5), F(2, 5), F(2, 25), F(1, 50)), (F(3, 5), F(3, 10), F(1, 10), F(1, 5))],
        [(0, 0, 0, 0), (F(2, 5), F(7, 10), F(9, 10), F(4, 5))],
    )


@pytest.fixture
def two_map_balanced():
    """Both log-ratio quotients equal 1, so neither closed-form ordering is strict."""
    return make_system(
        [(F(1, 4), F(1, 2), F(1, 8), F(1, 16)), (F(1, 2), F(1, 4), F(1, 16), F(1, 8))],
        [(0, 0, 0, 0), (F(1, 2), F(1, 2), F(1, 2), F(1, 2))],
    )


@pytest.fixture
def gap_carpet():
    """Two maps with swapped ratios and no overlap on either axis."""
    return make_system(
        [(F(1, 2), F(1, 5)), (F(1, 5), F(1, 2))],
        [(0, 0), (F(4, 5), F(1, 2))],
    )


@pytest.fixture
def column_carpet():
    return three_column_carpet(F(11, 20), F(1, 100))


@pytest.fixture
def write_spec(tmp_path):
    """Write a raw description to a JSON file and return its path."""
    def write(raw, name="spec.json") -> Path:
        path = tmp_path / name
        path.write_text(raw if isinstance(raw, str) else json.dumps(raw), encoding="utf-8")
        return path
    return write
