"""Run reports and SVG rendering."""

from .render import cylinder_boxes, render_svg, save_svg
from .report import SCHEMA, RunReport, to_jsonable

__all__ = ["cylinder_boxes", "render_svg", "save_svg", "SCHEMA", "RunReport", "to_jsonable"]
