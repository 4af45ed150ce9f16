"""SVG figures of a layout.

One meter is 100 user units.  Geometry is drawn inside a group carrying
``scale(100,-100)`` so +Y points up; text is placed outside that group so
it is not mirrored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

from .geometry import Layout, Point2, Rect, SensorModel
from .partition import assign
from .simulation import default_window

SCALE = 100.0

OVERLAYS = ("rects", "restricted", "partition", "lrf", "labels", "points")


@dataclass(frozen=True)
class RenderSpec:
    rects: bool = True
    restricted: bool = True
    partition: bool = True
    lrf: bool = True
    labels: bool = True
    points: Tuple[Point2, ...] = ()

    def __post_init__(self) -> None:
        if not (self.rects or self.restricted or self.partition or self.lrf or self.labels or self.points):
            raise ValueError("at least one overlay must be enabled")

    @classmethod
    def from_names(cls, names: Sequence[str], points: Sequence[Point2] = ()) -> "RenderSpec":
        unknown = sorted(set(names) - set(OVERLAYS))
        if unknown:
            raise ValueError(f"unknown overlay(s): {', '.join(unknown)}")
        flags = {k: k in names for k in OVERLAYS if k != "points"}
        pts = tuple(points) if "points" in names else ()
        return cls(points=pts, **flags)


def _n(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _ray_end(origin: Point2, direction: Tuple[float, float], window: Rect) -> Optional[Point2]:
    """Where a ray leaves ``window``; None if it starts outside."""
    if not window.contains(origin):
        return None
    t = float("inf")
    dx, dy = direction
    if dx > 0:
        t = min(t, (window.xmax - origin.x) / dx)
    elif dx < 0:
        t = min(t, (window.xmin - origin.x) / dx)
    if dy > 0:
        t = min(t, (window.ymax - origin.y) / dy)
    elif dy < 0:
        t = min(t, (window.ymin - origin.y) / dy)
    return Point2(origin.x + t * dx, origin.y + t * dy)


def _rect_el(r: Rect, cls: str, style: str) -> str:
    return (
        f'<rect class="{cls}" x="{_n(r.xmin)}" y="{_n(r.ymin)}" width="{_n(r.width)}" '
        f'height="{_n(r.height)}" style="{style}"/>'
    )


def _line_el(a: Point2, b: Point2, cls: str, style: str) -> str:
    return (
        f'<line class="{cls}" x1="{_n(a.x)}" y1="{_n(a.y)}" x2="{_n(b.x)}" y2="{_n(b.y)}" '
        f'style="{style}"/>'
    )


def _text_el(p: Point2, text: str, cls: str) -> str:
    # text lives in the unflipped frame
    return (
        f'<text class="{cls}" x="{_n(SCALE * p.x + 4)}" y="{_n(-SCALE * p.y - 4)}" '
        f'font-family="sans-serif" font-size="10">{escape(text)}</text>'
    )


def _partition_lines(layout: Layout, window: Rect) -> List[str]:
    r = layout.virtual_rect
    out = []
    if layout.model is SensorModel.FOUR_CORNER:
        style = "stroke:#c0392b;stroke-width:0.01;stroke-dasharray:0.05,0.03"
        for corner, d in zip(r.corners(), ((-1, 1), (1, 1), (-1, -1), (1, -1))):
            end = _ray_end(corner, d, window)
            if end is not None:
                out.append(_line_el(corner, end, "diagonal-ray", style))
    else:
        style = "stroke:#2c3e50;stroke-width:0.01;stroke-dasharray:0.05,0.03"
        fl, fr, bl, br = r.corners()
        # each edge extended past both of its ends
        for a, b in ((fl, fr), (br, fr), (bl, br), (bl, fl)):
            for start, other in ((a, b), (b, a)):
                d = (start.x - other.x, start.y - other.y)
                norm = max(abs(d[0]), abs(d[1]))
                end = _ray_end(start, (d[0] / norm, d[1] / norm), window)
                if end is not None:
                    out.append(_line_el(start, end, "edge-extension", style))
    return out


def render_svg(layout: Layout, spec: RenderSpec = RenderSpec(), window: Optional[Rect] = None) -> str:
    """Deterministic SVG 1.1 text for ``layout``."""
    if window is None:
        window = default_window(layout)
    vb = (SCALE * window.xmin, -SCALE * window.ymax, SCALE * window.width, SCALE * window.height)
    geo: List[str] = []
    text: List[str] = []

    if spec.restricted:
        geo.append(_rect_el(layout.restricted_rect, "restricted-area", "fill:#f5b7b1;fill-opacity:0.6;stroke:#c0392b;stroke-width:0.01"))
    if spec.rects:
        geo.append(_rect_el(layout.virtual_rect, "virtual-robot", "fill:#bdc3c7;fill-opacity:0.5;stroke:#7f8c8d;stroke-width:0.01"))
        geo.append(_rect_el(layout.real_rect, "real-robot", "fill:#5dade2;fill-opacity:0.6;stroke:#1f618d;stroke-width:0.01"))
    if spec.partition:
        geo.extend(_partition_lines(layout, window))
    if spec.lrf:
        for u in layout.lrf_units:
            radius = 0.04 if u.index == 0 else 0.025
            geo.append(
                f'<circle class="lrf-unit" data-unit={quoteattr(u.name)} cx="{_n(u.position.x)}" '
                f'cy="{_n(u.position.y)}" r="{_n(radius)}" style="fill:none;stroke:#117a65;stroke-width:0.01"/>'
            )
    if spec.labels:
        for name, p in layout.key_points.items():
            text.append(_text_el(p, name, "key-point-label"))
    for p in spec.points:
        geo.append(
            f'<circle class="sample-point" cx="{_n(p.x)}" cy="{_n(p.y)}" r="0.03" style="fill:#8e44ad"/>'
        )
        text.append(_text_el(p, assign(layout, p).region.label, "sample-point-label"))

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_n(vb[2])}" height="{_n(vb[3])}" viewBox="{" ".join(_n(v) for v in vb)}">',
        f'<rect class="background" x="{_n(vb[0])}" y="{_n(vb[1])}" width="{_n(vb[2])}" height="{_n(vb[3])}" fill="#ffffff"/>',
        f'<g class="geometry" transform="scale({_n(SCALE)},{_n(-SCALE)})">',
        *geo,
        "</g>",
        *text,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
