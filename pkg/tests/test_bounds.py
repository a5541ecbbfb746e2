import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.core.projection import ProjectionAtlas
from src.core.separation import check_separation
from src.core.sponge import Ordering, make_system
from src.dimension.bounds import dimension_bounds, level_terms, s_lower, s_upper
from src.dimension.weights import WeightSystem, natural_measure, uniform_weights
from src.errors import SeparationNotVerified
from src.ordering.sets import compute_ordering_sets
from tests.factories import grid_sponge, random_weights, three_column_carpet

SIGMA = Ordering((1, 2))
SWAPPED = Ordering((2, 1))


def _bounds(S, p, formula_only=False):
    sets = compute_ordering_sets(S)
    separation = check_separation(S, sets.a_upper)
    return dimension_bounds(S, WeightSystem(S, p), sets, separation, formula_only=formula_only)


def test_uniform_bedford_mcmullen_terms(bm_2x4):
    W = WeightSystem(bm_2x4, uniform_weights(bm_2x4))
    terms = level_terms(bm_2x4, W[SIGMA])
    assert terms.upper == pytest.approx(math.log(3) / math.log(2) + 0.5)
    assert terms.lower == pytest.approx(math.log(1.5) / math.log(2))
    assert terms.k_upper == (2, 0)
    assert terms.k_lower == (0, 2)
    assert s_upper(bm_2x4, W[SIGMA]) == terms.upper
    assert s_lower(bm_2x4, W[SIGMA]) == terms.lower


def test_natural_measure_terms(bm_2x4):
    q = natural_measure(bm_2x4, ProjectionAtlas(bm_2x4)[SIGMA])
    W = WeightSystem(bm_2x4, q)
    assert s_upper(bm_2x4, W[SIGMA]) == pytest.approx(1.5)
    assert s_lower(bm_2x4, W[SIGMA]) == pytest.approx(1.0)


def test_shrunk_carpet_bounds(bm_shrunk):
    bounds = _bounds(bm_shrunk, uniform_weights(bm_shrunk))
    expected = math.log(3) / math.log(20 / 9) + math.log(2) / math.log(5)
    assert bounds.exact
    assert bounds.hypothesis_met
    assert bounds.assouad_lo == bounds.assouad_hi == pytest.approx(expected)
    assert bounds.lower_lo == bounds.lower_hi
    assert bounds.lower_hi <= bounds.assouad_lo
    assert bounds.assouad_argmax == SIGMA


def test_touching_columns_need_formula_only(bm_2x4):
    with pytest.raises(SeparationNotVerified):
        _bounds(bm_2x4, uniform_weights(bm_2x4))
    bounds = _bounds(bm_2x4, uniform_weights(bm_2x4), formula_only=True)
    assert not bounds.hypothesis_met
    assert bounds.assouad_hi == pytest.approx(2.0849625007)


def test_swapped_ratios_take_the_max_over_both_orderings(gap_carpet):
    p = (F(1, 4), F(3, 4))
    bounds = _bounds(gap_carpet, p)
    W = WeightSystem(gap_carpet, p)
    per_ordering = [s_upper(gap_carpet, W[sigma]) for sigma in (SIGMA, SWAPPED)]
    assert bounds.assouad_hi == pytest.approx(max(per_ordering))
    assert bounds.lower_lo == pytest.approx(min(s_lower(gap_carpet, W[sigma]) for sigma in (SIGMA, SWAPPED)))
    assert set(bounds.terms) == {SIGMA, SWAPPED}


def _column_widths(count=50):
    lo, hi = 0.5, 1 - 1 / (2 * math.sqrt(2))
    return [F(lo + (hi - lo) * k / (count + 1)).limit_denominator(10**6) for k in range(1, count + 1)]


@pytest.mark.parametrize("a1", _column_widths())
def test_three_column_carpet_weights(a1):
    S = three_column_carpet(a1)
    q = (a1 / 2, 1 - a1, a1 / 2)
    W = WeightSystem(S, q)
    assert s_upper(S, W[SIGMA]) == pytest.approx(1.5, abs=1e-9)
    swapped = s_upper(S, W[SWAPPED])
    expected = max(math.log(float(a1) / 2) / math.log(1 / 4), math.log(1 - float(a1)) / math.log(1 / 2))
    assert swapped == pytest.approx(expected, abs=1e-9)
    assert swapped < 1.5


def test_three_column_carpet_boundary():
    a1 = 1 - 1 / (2 * math.sqrt(2))
    S = three_column_carpet(F(a1))
    W = WeightSystem(S, (a1 / 2, 1 - a1, a1 / 2))
    assert s_upper(S, W[SWAPPED]) == pytest.approx(1.5, abs=1e-6)


def test_separated_column_carpet(column_carpet):
    q = natural_measure(column_carpet, ProjectionAtlas(column_carpet)[SIGMA])
    bounds = _bounds(column_carpet, q)
    assert bounds.exact
    assert abs(bounds.assouad_hi - 1.5) < 0.05
    assert bounds.assouad_argmax == SIGMA


def _relabel(S, p, map_order, coord_order):
    ratios = [[S.maps[i].ratios[c] for c in coord_order] for i in map_order]
    translations = [[S.maps[i].translation[c] for c in coord_order] for i in map_order]
    return make_system(ratios, translations), tuple(p[i] for i in map_order)


@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.integers(2, 4))
@settings(max_examples=40, deadline=None)
def test_bounds_ignore_map_and_coordinate_labels(seed, d, N):
    rng = random.Random(seed)
    S = grid_sponge(rng, d, N)
    p = random_weights(rng, N)
    map_order = rng.sample(range(N), N)
    coord_order = rng.sample(range(d), d)
    T, q = _relabel(S, p, map_order, coord_order)

    sets = compute_ordering_sets(S)
    relabelled = compute_ordering_sets(T)
    assume(sets.b and not sets.borderline and not relabelled.borderline)
    assert len(relabelled.b) == len(sets.b)

    before = _bounds(S, p)
    after = _bounds(T, q)
    assert after.assouad_lo == pytest.approx(before.assouad_lo, abs=1e-9)
    assert after.assouad_hi == pytest.approx(before.assouad_hi, abs=1e-9)
    assert after.lower_lo == pytest.approx(before.lower_lo, abs=1e-9)
    assert after.lower_hi == pytest.approx(before.lower_hi, abs=1e-9)
