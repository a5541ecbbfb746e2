from fractions import Fraction as F

from src.core.sponge import Ordering, WordSpec
from src.ordering.rules import (
    consistent_orderings,
    cube_ordering,
    domination_pairs,
    forced_precedences,
    strict_cylinder_ordering,
)


def test_cube_ordering_longest_side_first(bm_2x4):
    assert cube_ordering(bm_2x4, WordSpec.constant(0), F(1, 4)) == Ordering((1, 2))


def test_cube_ordering_swapped(gap_carpet):
    assert cube_ordering(gap_carpet, WordSpec.constant(1), F(1, 4)) == Ordering((2, 1))


def test_equal_stopping_times_compare_products(bm_2x4):
    # both stop at length 1; the larger product (coordinate 1) comes first
    assert cube_ordering(bm_2x4, WordSpec.constant(0), F(1, 2)) == Ordering((1, 2))


def test_equal_products_keep_index_order(gap_carpet):
    w = WordSpec((0,), (1,))
    # after two letters both sides are 1/10
    assert cube_ordering(gap_carpet, w, F(1, 10)) == Ordering((1, 2))
    assert strict_cylinder_ordering(gap_carpet, w, F(1, 10)) is None


def test_four_coordinate_cube(two_map_4d):
    w = WordSpec((0, 0, 0, 0), (1,))
    assert cube_ordering(two_map_4d, w, F(1, 20000)) == Ordering((1, 2, 3, 4))


def test_strict_cylinder_ordering(bm_2x4, gap_carpet):
    assert strict_cylinder_ordering(bm_2x4, WordSpec.constant(0), F(1, 4)) == Ordering((1, 2))
    assert strict_cylinder_ordering(gap_carpet, WordSpec.constant(1), F(1, 4)) == Ordering((2, 1))


def test_domination(bm_2x4, gap_carpet, two_map_4d):
    assert domination_pairs(bm_2x4) == [(1, 2)]
    assert domination_pairs(gap_carpet) == []
    assert domination_pairs(two_map_4d) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert forced_precedences(two_map_4d) == [(1, 3), (1, 4), (2, 3), (2, 4)]


def test_consistent_orderings(bm_2x4, gap_carpet, two_map_4d):
    assert consistent_orderings(bm_2x4) == [Ordering((1, 2))]
    assert consistent_orderings(gap_carpet) == Ordering.all(2)
    assert consistent_orderings(two_map_4d) == [
        Ordering((1, 2, 3, 4)), Ordering((1, 2, 4, 3)), Ordering((2, 1, 3, 4)), Ordering((2, 1, 4, 3)),
    ]
    assert consistent_orderings(two_map_4d, constraints=[(2, 1)]) == [
        sigma for sigma in Ordering.all(4) if sigma.precedes(2, 1)
    ]
