import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.separation import check_separation
from src.core.sponge import Ordering, make_system
from tests.factories import grid_sponge, separated_sponge


def test_shrunk_carpet_is_very_strongly_separated(bm_shrunk):
    report = check_separation(bm_shrunk, [Ordering((1, 2))])
    assert report.sppc and report.very_strong
    assert report.delta0 == F(1, 10)
    assert report.failures == ()
    assert check_separation(bm_shrunk, Ordering.all(2)).delta0 == F(1, 10)


def test_touching_columns_fail_only_the_strong_form(bm_2x4):
    report = check_separation(bm_2x4, [Ordering((1, 2))])
    assert report.sppc
    assert not report.very_strong
    assert report.delta0 is None
    assert report.failures
    assert all(f.closed_only for f in report.failures)
    assert report.failures[0].to_dict()["sigma"] == "(1,2)"


def test_overlapping_pieces_fail_sppc():
    S = make_system([(F(1, 2), F(1, 3)), (F(1, 2), F(1, 3))], [(0, 0), (F(1, 4), F(1, 4))])
    report = check_separation(S, Ordering.all(2))
    assert not report.sppc
    assert not report.very_strong
    assert any(not f.closed_only for f in report.failures)


def test_four_coordinate_example(two_map_4d):
    report = check_separation(two_map_4d, Ordering.all(4))
    assert report.very_strong
    assert report.delta0 == F(1, 5)


def test_column_carpet(column_carpet):
    report = check_separation(column_carpet, Ordering.all(2))
    assert report.very_strong
    assert report.delta0 == F(1, 100)


def test_single_map_has_no_pairs():
    S = make_system([(F(1, 2), F(1, 3))], [(0, 0)])
    report = check_separation(S, [Ordering((1, 2))])
    assert report.very_strong
    assert report.delta0 == 1


def test_needs_an_ordering(bm_2x4):
    with pytest.raises(ValueError):
        check_separation(bm_2x4, [])


@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.integers(2, 4))
@settings(max_examples=50, deadline=None)
def test_generated_sponges_are_very_strongly_separated(seed, d, N):
    rng = random.Random(seed)
    for S in (grid_sponge(rng, d, N), separated_sponge(rng, d, N)):
        report = check_separation(S, Ordering.all(d))
        assert report.sppc and report.very_strong
        assert 0 < report.delta0 <= 1
