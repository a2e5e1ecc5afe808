"""SVG drawings of two-dimensional patterns (y axis pointing up)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional
from xml.sax.saxutils import escape, quoteattr

from .core import DimensionError, Pattern, sorted_symbols

PALETTE = ("#f4d35e", "#8ecae6", "#f28482", "#90be6d", "#cdb4db", "#f6bd60", "#84a59d", "#bde0fe")


@dataclass(frozen=True)
class RenderStyle:
    cell_size: int = 20
    label: bool = True
    fill_map: Optional[Mapping[str, str]] = None
    stroke: str = "black"

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")


def render_svg(P: Pattern, style: RenderStyle = RenderStyle()) -> str:
    if P.dim != 2:
        raise DimensionError("only two-dimensional patterns can be drawn")
    s = style.cell_size
    if P:
        (x0, y0), (x1, y1) = P.bounding_box()
        vb = (s * x0, -s * (y1 + 1), s * (x1 - x0 + 1), s * (y1 - y0 + 1))
    else:
        vb = (0, 0, 0, 0)
    symbols = sorted_symbols({c.type for c in P})
    fills = {t: PALETTE[i % len(PALETTE)] for i, t in enumerate(symbols)}
    if style.fill_map:
        fills.update(style.fill_map)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{vb[2]}" height="{vb[3]}" '
        f'viewBox="{vb[0]} {vb[1]} {vb[2]} {vb[3]}">',
    ]
    font = max(s * 0.6, 1)
    for c in P:
        x, y = c.vector
        px, py = s * x, -s * (y + 1)
        out.append(
            f'  <rect x="{px}" y="{py}" width="{s}" height="{s}" fill={quoteattr(fills[c.type])} '
            f'stroke={quoteattr(style.stroke)}/>'
        )
        if style.label:
            out.append(
                f'  <text x="{px + s / 2:g}" y="{py + s / 2:g}" font-size="{font:g}" '
                f'text-anchor="middle" dominant-baseline="central">{escape(c.type)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
