import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from src.core.sponge import Ordering, WordSpec, make_system
from src.errors import UnsupportedDimension
from src.ordering.lyapunov import TwoMapCondition
from src.ordering.sets import SpongeClass
from src.report.render import cylinder_boxes, render_svg, save_svg
from src.report.report import SCHEMA, RunReport, gap_section, to_jsonable, two_map_note


# -- serialisation -----------------------------------------------------------------

def test_to_jsonable():
    value = {
        Ordering((2, 1)): [F(1, 3), 0.1234567890123456, math.inf],
        "word": WordSpec((0,), (1,)),
        "class": SpongeClass.BARANSKI,
        "flag": True,
        "count": np.int64(3),
        "missing": None,
    }
    assert to_jsonable(value) == {
        "(2,1)": ["1/3", 0.123456789012, "inf"],
        "word": "0(1)^inf",
        "class": "baranski",
        "flag": True,
        "count": 3,
        "missing": None,
    }
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_run_report_json():
    report = RunReport("validate", status="DONE")
    report.add("separation", {"delta0": F(1, 10)})
    report.note("first note")
    data = json.loads(report.render("json"))
    assert data["schema"] == SCHEMA
    assert data["command"] == "validate"
    assert data["separation"] == {"delta0": "1/10"}
    assert data["notes"] == ["first note"]
    assert report.render("json") == report.to_json()


def test_run_report_text():
    report = RunReport("dims", status="DONE")
    report.add("bounds", {"assouad": [F(3, 2), F(3, 2)], "per_ordering": {"(1,2)": {"upper": 1.5}}})
    text = report.render("text")
    assert SCHEMA in text
    assert "assouad" in text and "3/2, 3/2" in text
    assert "per_ordering:" in text


def test_gap_section_not_applicable():
    section = gap_section((0.5, 0.5), 1.0, reason="overlaps")
    assert section["certificate"] is None
    assert section["not_applicable"] == "overlaps"


def test_two_map_note():
    inside = TwoMapCondition(0.5, 1.0, True, False, True)
    assert "(1,2,3,4) is in B" in two_map_note(inside, (1 / 3, 0.5))
    assert "0.333333" in two_map_note(inside, (1 / 3, 0.5))
    outside = TwoMapCondition(2.0, 1.0, False, True, True)
    assert two_map_note(outside, None).startswith("(2,1,4,3) is in B")


# -- rendering ----------------------------------------------------------------------

def test_render_carpet(bm_2x4):
    svg = render_svg(bm_2x4, depth=1)
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert svg.count("<rect") == 4
    assert 'x="0" y="250" width="500" height="250" data-word="1"' in svg
    assert render_svg(bm_2x4, depth=1) == svg


def test_render_depth_two(bm_shrunk):
    svg = render_svg(bm_shrunk, depth=2)
    assert svg.count("data-word=") == 9
    assert 'data-word="21"' in svg


def test_render_sponge_panels():
    S = make_system(
        [(F(1, 2), F(1, 3), F(1, 4)), (F(1, 3), F(1, 4), F(1, 2))],
        [(0, 0, 0), (F(1, 2), F(1, 2), F(1, 2))],
    )
    svg = render_svg(S, depth=1)
    assert svg.count("<g data-plane=") == 3
    assert svg.count("data-word=") == 6


def test_render_rejects_four_coordinates(two_map_4d):
    with pytest.raises(UnsupportedDimension):
        render_svg(two_map_4d)


def test_cylinder_boxes(bm_2x4):
    boxes = cylinder_boxes(bm_2x4, 2)
    assert len(boxes) == 9
    word, box = boxes[1]
    assert word == (0, 1)
    assert box == [(F(0), F(1, 4)), (F(1, 8), F(3, 16))]
    with pytest.raises(ValueError):
        cylinder_boxes(bm_2x4, 0)


def test_save_svg(tmp_path, bm_2x4):
    path = save_svg(bm_2x4, tmp_path / "carpet.svg")
    assert path.read_text(encoding="utf-8") == render_svg(bm_2x4)
