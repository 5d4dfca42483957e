"""SVG rendering of immersions and diagrams.

The document is plain SVG 1.1 with exactly one polyline per edge and one
marker per crossing.  For a bare immersion the marker is a dot; for a
diagram it is a white disk that breaks the under strand, with the over
strand redrawn on top, so crossings read in the usual diagram style.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import Diagram
from .immersion import PlaneImmersion, crossings

_PAD = 0.6
_TARGET = 720.0


@dataclass(frozen=True)
class SvgScene:
    """Layout-resolved scene in pixel coordinates.

    Attributes:
        width, height: Canvas size in pixels.
        scale: Pixels per source unit (y is flipped).
        polylines: (edge name, point tuple) per edge.
        vertices: (vertex name, point) per vertex.
        markers: One entry per crossing: (point, over_segment), where
            over_segment is None for plain immersions and a point pair for
            diagrams.
        labels: Whether edge names are drawn.
    """

    width: float
    height: float
    scale: float
    polylines: tuple
    vertices: tuple
    markers: tuple
    labels: bool


def _over_segment(diagram, rec):
    first = diagram.over[rec.id] == "first"
    name = rec.edges[0] if first else rec.edges[1]
    seg = rec.seg_a if first else rec.seg_b
    pts = diagram.immersion.edge_polyline[name]
    return pts[seg], pts[seg + 1], rec.point


def build_scene(immersion: PlaneImmersion, diagram=None, labels=False) -> SvgScene:
    """Resolve an immersion (or its diagram) into pixel-space primitives."""
    points = [p for pts in immersion.edge_polyline.values() for p in pts]
    points += list(immersion.vertex_position.values())
    if not points:
        points = [(0, 0)]
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    x0, x1 = min(xs) - _PAD, max(xs) + _PAD
    y0, y1 = min(ys) - _PAD, max(ys) + _PAD
    scale = _TARGET / max(x1 - x0, 1e-9)
    scale = min(scale, _TARGET / max(y1 - y0, 1e-9))

    def to_px(p):
        return ((float(p[0]) - x0) * scale, (y1 - float(p[1])) * scale)

    polylines = tuple(
        (name, tuple(to_px(p) for p in immersion.edge_polyline[name]))
        for name in immersion.graph.edge_names
    )
    vertices = tuple(
        (v, to_px(immersion.vertex_position[v])) for v in immersion.graph.vertices
    )
    markers = []
    for rec in crossings(immersion):
        if diagram is None:
            markers.append((to_px(rec.point), None))
        else:
            a, b, point = _over_segment(diagram, rec)
            pa, pb, pc = to_px(a), to_px(b), to_px(point)
            gap = 7.0
            markers.append((pc, (_toward(pc, pa, gap * 1.7), _toward(pc, pb, gap * 1.7))))
    return SvgScene(
        width=round((x1 - x0) * scale, 2),
        height=round((y1 - y0) * scale, 2),
        scale=scale,
        polylines=polylines,
        vertices=vertices,
        markers=tuple(markers),
        labels=labels,
    )


def _toward(origin, target, dist):
    dx, dy = target[0] - origin[0], target[1] - origin[1]
    norm = (dx * dx + dy * dy) ** 0.5
    if norm <= dist:
        return target
    f = dist / norm
    return (origin[0] + dx * f, origin[1] + dy * f)


def _fmt(value):
    return f"{value:.2f}"


def svg_document(scene: SvgScene) -> str:
    """Serialize a scene as an SVG 1.1 document string."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(scene.width)}" height="{_fmt(scene.height)}" '
        f'viewBox="0 0 {_fmt(scene.width)} {_fmt(scene.height)}">',
        '<g fill="none" stroke="#31547c" stroke-width="1.8" '
        'stroke-linecap="round" stroke-linejoin="round">',
    ]
    for _, pts in scene.polylines:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        out.append(f'<polyline points="{coords}"/>')
    out.append("</g>")
    out.append('<g class="crossings">')
    for point, over in scene.markers:
        x, y = point
        if over is None:
            out.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.6" fill="#c2402a"/>'
            )
        else:
            (ax, ay), (bx, by) = over
            out.append(
                "<g>"
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="7" fill="#ffffff"/>'
                f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
                'stroke="#31547c" stroke-width="1.8" stroke-linecap="round"/>'
                "</g>"
            )
    out.append("</g>")
    for name, (x, y) in scene.vertices:
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.4" fill="#1b2733"/>')
    if scene.labels:
        for name, pts in scene.polylines:
            mx, my = pts[len(pts) // 2]
            out.append(
                f'<text x="{_fmt(mx + 4)}" y="{_fmt(my - 4)}" '
                f'font-size="11" fill="#5b6b7c">{name}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(source, labels=False) -> str:
    """SVG text for a PlaneImmersion or a Diagram."""
    if isinstance(source, Diagram):
        scene = build_scene(source.immersion, diagram=source, labels=labels)
    else:
        scene = build_scene(source, labels=labels)
    return svg_document(scene)
