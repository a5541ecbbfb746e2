import json
from fractions import Fraction as F

import pytest

from src.core.sponge import (
    Ordering,
    WordSpec,
    compose_word,
    dominates,
    evaluate_projection_point,
    exact_overlap,
    iterate_system,
    load_sponge_spec,
    make_system,
    map_ordering,
    parse_sponge_spec,
    stopping_time,
    stopping_times,
    word_products,
)
from src.errors import PreconditionViolated, SpecParseError, SpongeValidationError, ViolationKind


def raw_carpet(maps, weights=None):
    raw = {"dimension": 2, "maps": [{"ratios": r, "translation": t} for r, t in maps]}
    if weights is not None:
        raw["weights"] = weights
    return raw


def violation_kinds(raw):
    with pytest.raises(SpongeValidationError) as excinfo:
        parse_sponge_spec(raw)
    return [v.kind for v in excinfo.value.violations]


# -- parsing and validation ----------------------------------------------------

def test_parse_bedford_mcmullen(specs_dir):
    spec = load_sponge_spec(specs_dir / "bedford_mcmullen_2x4.json")
    S = spec.system
    assert (S.d, S.N) == (2, 3)
    assert S.maps[1].translation == (F(0), F(1, 2))
    assert spec.weights == (F(1, 3),) * 3
    assert S.lambda_min == F(1, 4)
    assert S.lambda_max == F(1, 2)


def test_decimal_strings_are_exact(specs_dir):
    S = load_sponge_spec(specs_dir / "two_map_4d.json").system
    assert S.ratio(0, 1) == F(1, 5)
    assert S.ratio(1, 3) == F(1, 10)


@pytest.mark.parametrize("name", [
    "bedford_mcmullen_2x4.json",
    "bedford_mcmullen_shrunk.json",
    "two_map_4d.json",
    "baranski_three_column.json",
    "baranski_gap.json",
    "baranski_three_maps.json",
])
def test_bundled_specs_are_valid(specs_dir, name):
    spec = load_sponge_spec(specs_dir / name)
    assert spec.system.N >= 2


def test_escaping_map():
    raw = raw_carpet([(["1/2", "1/2"], ["3/4", "0"]), (["1/3", "1/4"], ["0", "0"])])
    assert violation_kinds(raw) == [ViolationKind.ESCAPES_UNIT_CUBE]


def test_ratio_out_of_range():
    raw = raw_carpet([(["1", "1/2"], ["0", "0"]), (["1/3", "1/4"], ["0", "1/2"])])
    assert ViolationKind.RATIO_OUT_OF_RANGE in violation_kinds(raw)


def test_duplicate_maps_and_indistinguishable_coordinates():
    raw = raw_carpet([(["1/2", "1/2"], ["0", "0"]), (["1/2", "1/2"], ["0", "0"])])
    assert violation_kinds(raw) == [ViolationKind.DUPLICATE_MAP, ViolationKind.INDISTINGUISHABLE_COORDINATES]


def test_empty_system():
    assert violation_kinds({"dimension": 2, "maps": []}) == [ViolationKind.EMPTY_SYSTEM]


def test_weights_must_sum_to_one():
    raw = raw_carpet([(["1/2", "1/4"], ["0", "0"]), (["1/2", "1/4"], ["1/2", "0"])], weights=["1/2", "1/3"])
    assert violation_kinds(raw) == [ViolationKind.INVALID_WEIGHTS]


def test_all_violations_are_reported_together():
    raw = raw_carpet([
        (["1/2", "1/4"], ["3/4", "0"]),
        (["1/2", "1/4"], ["3/4", "0"]),
        (["0", "1/4"], ["0", "0"]),
    ])
    kinds = violation_kinds(raw)
    assert kinds.count(ViolationKind.ESCAPES_UNIT_CUBE) == 2
    assert ViolationKind.RATIO_OUT_OF_RANGE in kinds
    assert ViolationKind.DUPLICATE_MAP in kinds


@pytest.mark.parametrize("raw", [
    [],
    {"dimension": "2", "maps": []},
    {"dimension": 0, "maps": []},
    {"dimension": True, "maps": []},
    {"dimension": 2, "maps": {}},
    {"dimension": 2, "maps": [{"ratios": ["1/2"], "translation": ["0", "0"]}]},
    {"dimension": 2, "maps": [{"ratios": ["1/2", "1/4"]}]},
    {"dimension": 2, "maps": [{"ratios": ["0.1.2", "1/4"], "translation": ["0", "0"]}]},
    {"dimension": 2, "maps": [{"ratios": ["1/2", "1/4"], "translation": ["0", "0"]}], "weights": ["1", "0"]},
])
def test_malformed_input(raw):
    with pytest.raises(SpecParseError):
        parse_sponge_spec(raw)


def test_load_rejects_bad_json_and_missing_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpecParseError):
        load_sponge_spec(bad)
    with pytest.raises(SpecParseError):
        load_sponge_spec(tmp_path / "missing.json")


def test_input_echo_round_trips(specs_dir):
    spec = load_sponge_spec(specs_dir / "bedford_mcmullen_shrunk.json")
    echoed = json.loads(json.dumps(spec.to_dict()))
    again = parse_sponge_spec(echoed)
    assert again.system == spec.system
    assert again.weights == spec.weights


def test_make_system_empty():
    with pytest.raises(SpongeValidationError):
        make_system([], [])


# -- orderings and words ----------------------------------------------------------

@pytest.mark.parametrize("text", ["(2,1,3)", "2,1,3", "2 1 3", "213"])
def test_ordering_parse(text):
    assert Ordering.parse(text) == Ordering((2, 1, 3))


def test_ordering_basics():
    sigma = Ordering((2, 1, 3))
    assert sigma[1] == 2 and sigma[3] == 3
    assert sigma.position(3) == 3
    assert sigma.precedes(2, 1)
    assert not sigma.precedes(3, 1)
    assert str(sigma) == "(2,1,3)"
    assert Ordering.all(3)[0] == Ordering.identity(3)
    assert len(Ordering.all(4)) == 24
    with pytest.raises(IndexError):
        sigma[0]
    with pytest.raises(ValueError):
        Ordering((1, 1))
    with pytest.raises(ValueError):
        Ordering.parse("none")


def test_word_spec():
    w = WordSpec((0, 0, 0, 0), (1,))
    assert w.take(6) == (0, 0, 0, 0, 1, 1)
    assert w.letter(5) == 1
    assert str(w) == "0000(1)^inf"
    assert str(WordSpec.periodic((0, 1))) == "(01)^inf"
    assert WordSpec.constant(2).take(3) == (2, 2, 2)
    with pytest.raises(ValueError):
        WordSpec((0,), ())


# -- stopping times ------------------------------------------------------------------

def test_stopping_times_four_coordinates(two_map_4d):
    w = WordSpec((0, 0, 0, 0), (1,))
    assert stopping_times(two_map_4d, w, F(1, 20000)) == (11, 10, 4, 3)
    assert [stopping_time(two_map_4d, w, F(1, 20000), n) for n in range(1, 5)] == [11, 10, 4, 3]


def test_stopping_time_boundary_is_inclusive(bm_2x4):
    w = WordSpec.constant(0)
    assert stopping_times(bm_2x4, w, F(1, 4)) == (2, 1)
    assert stopping_times(bm_2x4, w, F(1, 4) + F(1, 10**9)) == (2, 1)
    assert stopping_times(bm_2x4, w, F(1, 4) - F(1, 10**9)) == (3, 2)


def test_stopping_time_scale_range(bm_2x4):
    with pytest.raises(ValueError):
        stopping_times(bm_2x4, WordSpec.constant(0), F(1))
    with pytest.raises(ValueError):
        stopping_time(bm_2x4, WordSpec.constant(0), F(0), 1)


def test_word_products(bm_2x4):
    assert word_products(bm_2x4, WordSpec.constant(2), 2, 3) == [1, F(1, 4), F(1, 16), F(1, 64)]


# -- maps ------------------------------------------------------------------------------

def test_compose_word(bm_2x4):
    f = compose_word(bm_2x4, (0, 1))
    assert f.ratios == (F(1, 4), F(1, 16))
    assert f.translation == (F(0), F(1, 8))
    assert compose_word(bm_2x4, ()).ratios == (1, 1)


def test_iterate_system(bm_2x4):
    T = iterate_system(bm_2x4, 2)
    assert T.N == 9
    assert T.maps[1] == compose_word(bm_2x4, (0, 1))
    assert iterate_system(bm_2x4, 1) is bm_2x4
    with pytest.raises(ValueError):
        iterate_system(bm_2x4, 0)


def test_map_ordering():
    S = make_system([(F(1, 2), F(1, 2)), (F(1, 3), F(1, 4))], [(0, 0), (F(1, 2), F(1, 2))])
    assert map_ordering(S, 0) is None
    assert map_ordering(S, 1) == Ordering((1, 2))


def test_dominates(bm_2x4, two_map_4d):
    assert dominates(bm_2x4, 1, 2)
    assert not dominates(bm_2x4, 2, 1)
    assert [(x, y) for x in range(1, 5) for y in range(1, 5) if x != y and dominates(two_map_4d, x, y)] == [
        (1, 3), (1, 4), (2, 3), (2, 4),
    ]
    with pytest.raises(PreconditionViolated):
        dominates(bm_2x4, 1, 1)


def test_exact_overlap(bm_2x4):
    sigma = Ordering((1, 2))
    assert exact_overlap(bm_2x4, 0, 1, sigma, 1)
    assert not exact_overlap(bm_2x4, 0, 1, sigma, 2)
    assert exact_overlap(bm_2x4, 0, 2, Ordering((2, 1)), 1)
    with pytest.raises(IndexError):
        exact_overlap(bm_2x4, 0, 1, sigma, 3)


def test_evaluate_projection_point(bm_2x4):
    point, error = evaluate_projection_point(bm_2x4, WordSpec.constant(2), 3)
    assert point == (F(7, 8), F(0))
    assert error == (F(1, 8), F(1, 64))
