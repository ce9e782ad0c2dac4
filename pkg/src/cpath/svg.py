"""Scene to SVG serialization.

Output is a small SVG 1.1 subset: one ``g`` per placement carrying the
stroke attributes, one ``polyline`` per path.  Joins and caps are round
by default so strokes that meet at a shared path endpoint fuse without
interior voids, which is what lets tilings of paths read as continuous
ornaments when cut or printed.

Coordinates are shifted so the view box starts at the origin, the y
axis is flipped to mathematical orientation, and every number is
written with a fixed number of decimals.  Rendering the same scene
twice yields byte-identical documents.
"""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .compose import Scene, scene_bounds

__all__ = ["DegenerateSceneError", "emit_svg"]


class DegenerateSceneError(ValueError):
    """The scene collapses to a point or line; nothing to draw."""


def emit_svg(scene: Scene, width_mm: Optional[float] = None,
             height_mm: Optional[float] = None, precision: int = 6,
             titles: bool = False) -> str:
    """Serialize a scene to SVG text.

    One millimeter per scene unit unless a page size is given; a lone
    ``width_mm`` or ``height_mm`` keeps the aspect ratio.  With
    ``titles=True`` each polyline carries its objective-vector label as
    a tooltip.
    """
    bounds = scene_bounds(scene)
    span = bounds[1] - bounds[0]
    if not np.all(np.isfinite(bounds)) or min(span) <= 0:
        raise DegenerateSceneError(f"scene bounds {bounds.tolist()} span no area")

    if width_mm is None and height_mm is None:
        width_mm, height_mm = float(span[0]), float(span[1])
    elif width_mm is None:
        width_mm = height_mm * span[0] / span[1]
    elif height_mm is None:
        height_mm = width_mm * span[1] / span[0]

    def num(v: float) -> str:
        out = f"{v:.{precision}f}"
        # never emit negative zero
        return f"{0.0:.{precision}f}" if float(out) == 0.0 else out

    def pair(x: float, y: float) -> str:
        # shift to origin, flip y to keep the math orientation
        return f"{num(x - bounds[0][0])},{num(bounds[1][1] - y)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{num(width_mm)}mm" height="{num(height_mm)}mm" '
        f'viewBox="0 0 {num(span[0])} {num(span[1])}">',
    ]
    for placement in scene.placements:
        style = placement.style
        r, g, b = style.color
        out.append(
            f'<g fill="none" stroke="rgb({r},{g},{b})" '
            f'stroke-width="{num(style.stroke_width)}" '
            f'stroke-linejoin="{style.join}" stroke-linecap="round">'
        )
        for label, line in zip(placement.labels, placement.polylines):
            points = " ".join(pair(x, y) for x, y in line)
            if titles:
                out.append(f'<polyline points="{points}">'
                           f'<title>{escape(label)}</title></polyline>')
            else:
                out.append(f'<polyline points="{points}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
