"""SVG pictures of depth-k cylinders for carpets and sponges."""

import itertools
import logging
from fractions import Fraction
from pathlib import Path

from ..core.sponge import SpongeSystem, compose_word
from ..errors import UnsupportedDimension

logger = logging.getLogger(__name__)

ns_svg = "http://www.w3.org/2000/svg"

# principal planes drawn for d = 3, as (horizontal, vertical) coordinates
PLANES = ((1, 2), (1, 3), (2, 3))

STYLE = {"fill": "#4a78b5", "fill_opacity": "0.55", "stroke": "#1d3557", "stroke_width": "0.5"}
FRAME = {"fill": "none", "stroke": "#000000", "stroke_width": "1"}


def demangle(k: str) -> str:
    return k.replace("_", "-")


def rounder(x, prec: int = 6):
    """Exact rationals are only rounded here, at serialization."""
    if isinstance(x, (Fraction, float)):
        xr = round(float(x), prec)
        return int(xr) if xr % 1 == 0 else xr
    return x


def props_repr(d: dict) -> str:
    return " ".join(f'{demangle(k)}="{rounder(v)}"' for k, v in d.items())


def element(tag: str, **attr) -> str:
    return f"<{tag} {props_repr(attr)} />"


def cylinder_boxes(S: SpongeSystem, depth: int) -> list:
    """(word, [(lo, hi) per coordinate]) for every word of length depth, lexicographically."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    boxes = []
    for word in itertools.product(S.indices, repeat=depth):
        f = compose_word(S, word)
        boxes.append((word, [f.interval(c) for c in S.coordinates]))
    return boxes


def _panel(boxes: list, plane: tuple, x0: Fraction, y0: Fraction, size: Fraction) -> list:
    """Rectangles of one projection; the vertical axis points up."""
    h, v = plane
    lines = [element("rect", x=x0, y=y0, width=size, height=size, **FRAME)]
    for word, box in boxes:
        (x_lo, x_hi), (y_lo, y_hi) = box[h - 1], box[v - 1]
        lines.append(element(
            "rect",
            x=x0 + x_lo * size,
            y=y0 + (1 - y_hi) * size,
            width=(x_hi - x_lo) * size,
            height=(y_hi - y_lo) * size,
            data_word="".join(str(i) if i < 10 else f"[{i}]" for i in word),
            **STYLE,
        ))
    return lines


def render_svg(S: SpongeSystem, depth: int = 1, viewport: int = 1000) -> str:
    """
    Depth-k cylinder rectangles in a fixed viewport. Carpets fill the
    viewport; sponges get their three principal-plane projections side by
    side.

    Raises:
        UnsupportedDimension: d is not 2 or 3
    """
    if S.d not in (2, 3):
        raise UnsupportedDimension(f"rendering supports d=2 and d=3, got d={S.d}")
    boxes = cylinder_boxes(S, depth)
    V = Fraction(viewport)

    lines = [f'<svg xmlns="{ns_svg}" width="{viewport}" height="{viewport}" viewBox="0 0 {viewport} {viewport}">']
    if S.d == 2:
        lines += _panel(boxes, (1, 2), Fraction(0), Fraction(0), V)
    else:
        gap = V / 60
        size = (V - 4 * gap) / 3
        for k, plane in enumerate(PLANES):
            lines.append(f"<g data-plane=\"{plane[0]}{plane[1]}\">")
            lines += _panel(boxes, plane, gap + k * (size + gap), (V - size) / 2, size)
            lines.append("</g>")
    lines.append("</svg>")
    logger.debug(f"Rendered {len(boxes)} cylinder(s) at depth {depth}")
    return "\n".join(lines) + "\n"


def save_svg(S: SpongeSystem, path, depth: int = 1, viewport: int = 1000) -> Path:
    path = Path(path)
    path.write_text(render_svg(S, depth, viewport), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
