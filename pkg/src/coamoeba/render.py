"""Deterministic SVG pictures of two-dimensional coamoebas.

The unit square of the torus is drawn dark (the coamoeba), with the open
zonotopes of its complement as white holes, in the style of the arrangement
pictures for these hypersurfaces.  Vertices come from the sorted-generator
zonogon construction, computed exactly and only converted to fixed-precision
decimals at emission, so output bytes are reproducible.  No external
resources are referenced.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import ceil, floor

from . import exactmath, geometry
from .model import NormalizedModel

SIZE = 640

_DARK = "#1c1c1c"
_HOLE = "#ffffff"
_EDGE = "#5a5a5a"
_CENTER = "#d62728"
_ARROW = "#2e8b57"


def _angle_cmp(u, v) -> int:
    cross = u[0] * v[1] - u[1] * v[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return -1 if u < v else (0 if u == v else 1)


def zonogon_vertices(generators, center):
    """Boundary vertices of a 2-D zonotope, counterclockwise.

    Generators are folded into the upper half-plane, sorted by angle, then
    walked forward and backward from the lowest vertex.
    """
    oriented = []
    for g in generators:
        if g[1] < 0 or (g[1] == 0 and g[0] < 0):
            g = (-g[0], -g[1])
        oriented.append(g)
    oriented.sort(key=cmp_to_key(_angle_cmp))
    v = (
        center[0] - sum(g[0] for g in oriented) / 2,
        center[1] - sum(g[1] for g in oriented) / 2,
    )
    pts = []
    for g in oriented + [(-g[0], -g[1]) for g in oriented]:
        pts.append(v)
        v = (v[0] + g[0], v[1] + g[1])
    return pts


def _px(x: Fraction) -> str:
    return f"{float(x) * SIZE:.3f}"


def _py(y: Fraction) -> str:
    return f"{(1.0 - float(y)) * SIZE:.3f}"


def _polygon(pts, shift) -> str:
    coords = " ".join(
        f"{_px(x + shift[0])},{_py(y + shift[1])}" for x, y in pts
    )
    return (
        f'  <polygon points="{coords}" fill="{_HOLE}" '
        f'stroke="{_EDGE}" stroke-width="1"/>'
    )


def render_svg(
    model: NormalizedModel,
    show_centers: bool = False,
    show_conjugation: bool = False,
) -> str:
    """SVG document for an n = 2 model."""
    if model.n != 2:
        raise ValueError(f"rendering needs n = 2, got n = {model.n}")
    dec = exactmath.snf([list(r) for r in model.A])
    arr = geometry.arrangement(model, dec)
    shape_pts = zonogon_vertices(arr.shape.generators, (Fraction(0), Fraction(0)))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "  <defs>",
        f'    <clipPath id="unit"><rect x="0" y="0" width="{SIZE}" '
        f'height="{SIZE}"/></clipPath>',
        f'    <marker id="tip" viewBox="0 0 10 10" refX="9" refY="5" '
        f'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{_ARROW}"/></marker>',
        "  </defs>",
        f'  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="{_DARK}"/>',
        '  <g clip-path="url(#unit)">',
    ]

    half = [ext / 2 for ext in arr.extents]
    for alpha in arr.omega():
        c = arr.center(alpha)
        for kx in range(floor(-c[0] - half[0]), ceil(1 - c[0] + half[0]) + 1):
            for ky in range(floor(-c[1] - half[1]), ceil(1 - c[1] + half[1]) + 1):
                pts = [(x + c[0], y + c[1]) for x, y in shape_pts]
                lines.append(_polygon(pts, (Fraction(kx), Fraction(ky))))

    if show_centers:
        for alpha in arr.omega():
            c = arr.center(alpha)
            lines.append(
                f'    <circle cx="{_px(c[0])}" cy="{_py(c[1])}" r="4" '
                f'fill="{_CENTER}"/>'
            )
    if show_conjugation:
        for alpha in arr.omega():
            mate = geometry.conjugate_index(arr, alpha)
            c = arr.center(alpha)
            if mate == alpha:
                lines.append(
                    f'    <circle cx="{_px(c[0])}" cy="{_py(c[1])}" r="8" '
                    f'fill="none" stroke="{_ARROW}" stroke-width="1.5"/>'
                )
            elif alpha < mate:
                e = arr.center(mate)
                lines.append(
                    f'    <line x1="{_px(c[0])}" y1="{_py(c[1])}" '
                    f'x2="{_px(e[0])}" y2="{_py(e[1])}" stroke="{_ARROW}" '
                    f'stroke-width="1.5" marker-end="url(#tip)"/>'
                )

    lines.extend(
        [
            "  </g>",
            f'  <rect x="0.5" y="0.5" width="{SIZE - 1}" height="{SIZE - 1}" '
            f'fill="none" stroke="#000000" stroke-width="1"/>',
            "</svg>",
            "",
        ]
    )
    return "\n".join(lines)
