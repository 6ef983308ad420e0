"""Deterministic SVG renderings of the obstruction and billiard scenes.

This is the one place floats are allowed: geometry is computed exactly
upstream and converted at emission time with a fixed 6-decimal format, so
identical inputs yield byte-identical SVG.  Each figure embeds its exact
inputs in a leading comment.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import QuadExt, SQRT3
from .billiards import (
    SquarePath,
    TrianglePath,
    square_path_segments,
    triangle_cell,
    triangle_path_segments,
)

__all__ = ["SCENES", "render_svg"]

_STROKE = 0.012


def _fmt(value) -> str:
    return f"{float(value):.6f}"


class _Canvas:
    """Collects SVG elements in user coordinates with y pointing up."""

    def __init__(self, comment: str):
        self.comment = comment
        self.elements: list[str] = []

    def line(self, a, b, stroke="#1f3b73", width=_STROKE, dash: str | None = None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(-b[1])}" stroke="{stroke}" stroke-width="{_fmt(width)}"'
            f"{dash_attr} />"
        )

    def polygon(self, points, fill="#c8d4ea", stroke="#40404a", width=_STROKE):
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)
        self.elements.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}" />'
        )

    def circle(self, center, radius, fill="#9c2b2b"):
        self.elements.append(
            f'<circle cx="{_fmt(center[0])}" cy="{_fmt(-center[1])}" '
            f'r="{_fmt(radius)}" fill="{fill}" />'
        )

    def document(self, x_range, y_range) -> str:
        x0, x1 = float(x_range[0]), float(x_range[1])
        y0, y1 = float(y_range[0]), float(y_range[1])
        pad = 0.05 * max(x1 - x0, y1 - y0, 1.0)
        min_x, width = x0 - pad, (x1 - x0) + 2 * pad
        min_y, height = -(y1 + pad), (y1 - y0) + 2 * pad
        header = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_fmt(min_x)} {_fmt(min_y)} {_fmt(width)} {_fmt(height)}">'
        )
        body = "\n".join(self.elements)
        return f"<!-- {self.comment} -->\n{header}\n{body}\n</svg>\n"


def _obstruction2d(alpha: Fraction, rays: list[Fraction], extent: int = 6) -> str:
    canvas = _Canvas(
        f"scene=obstruction2d alpha={alpha} "
        f"rays=[{', '.join(str(r) for r in rays)}] extent={extent}"
    )
    canvas.line((0, 0), (extent, 0), stroke="#40404a")
    canvas.line((0, 0), (0, extent), stroke="#40404a")
    half = alpha / 2
    for i in range(extent):
        for j in range(extent):
            cx, cy = Fraction(2 * i + 1, 2), Fraction(2 * j + 1, 2)
            canvas.polygon(
                [
                    (cx - half, cy - half),
                    (cx + half, cy - half),
                    (cx + half, cy + half),
                    (cx - half, cy + half),
                ]
            )
    for slope in rays:
        end_x = Fraction(extent) if slope <= 1 else Fraction(extent) / slope
        canvas.line((0, 0), (end_x, slope * end_x), stroke="#9c2b2b")
    return canvas.document((0, extent), (0, extent))


def _square_billiard(slope: Fraction, alpha: Fraction | None, segments: int = 12) -> str:
    path: SquarePath = square_path_segments(slope, segments)
    canvas = _Canvas(f"scene=square_billiard slope={slope} alpha={alpha} segments={segments}")
    canvas.polygon([(0, 0), (1, 0), (1, 1), (0, 1)], fill="none")
    if alpha is not None:
        half = alpha / 2
        c = Fraction(1, 2)
        canvas.polygon(
            [
                (c - half, c - half),
                (c + half, c - half),
                (c + half, c + half),
                (c - half, c + half),
            ]
        )
    for a, b in path.segments:
        canvas.line(a, b, stroke="#9c2b2b")
    canvas.circle(path.segments[-1][1], 0.015)
    return canvas.document((0, 1), (0, 1))


def _scaled_triangle(cell, alpha: Fraction):
    cx, cy = cell.incenter
    pts = []
    for vx, vy in cell.vertices:
        sx = (1 - alpha) * cx + alpha * vx
        sy = (1 - alpha) * cy + alpha * vy
        pts.append((float(sx), float(sy)))
    return pts


def _triangle_billiard(slope: QuadExt, alpha: Fraction | None, strikes: int = 10) -> str:
    path: TrianglePath = triangle_path_segments(slope, strikes)
    canvas = _Canvas(f"scene=triangle_billiard slope={slope} alpha={alpha} strikes={strikes}")
    apex = float(SQRT3) / 2
    canvas.polygon([(0, 0), (1, 0), (0.5, apex)], fill="none")
    if alpha is not None:
        canvas.polygon(_scaled_triangle(triangle_cell(0, 0, True), alpha))
    for a, b in path.segments:
        canvas.line((float(a[0]), float(a[1])), (float(b[0]), float(b[1])), stroke="#9c2b2b")
    last = path.segments[-1][1]
    canvas.circle((float(last[0]), float(last[1])), 0.012)
    return canvas.document((0, 1), (0, apex))


def _triangle_tiling(alpha: Fraction, rays: list[QuadExt], extent: int = 8) -> str:
    canvas = _Canvas(
        f"scene=triangle_tiling alpha={alpha} "
        f"rays=[{', '.join(str(r) for r in rays)}] extent={extent}"
    )
    top = float(SQRT3) / 2 * extent
    canvas.line((0, 0), (extent, 0), stroke="#40404a")
    canvas.line((0, 0), (extent / 2, top), stroke="#40404a")
    for row in range(extent):
        base = Fraction(row, 2)
        for col in range(extent):
            if float(base + col + 1) <= extent:
                cell = triangle_cell(row, col, True)
                canvas.polygon([(float(x), float(y)) for x, y in cell.vertices], fill="none",
                               stroke="#b0b4c0", width=_STROKE / 2)
                canvas.polygon(_scaled_triangle(cell, alpha))
            if float(base + col + Fraction(3, 2)) <= extent:
                cell = triangle_cell(row, col, False)
                canvas.polygon([(float(x), float(y)) for x, y in cell.vertices], fill="none",
                               stroke="#b0b4c0", width=_STROKE / 2)
                canvas.polygon(_scaled_triangle(cell, alpha))
    for idx, slope in enumerate(rays):
        dash = "0.08,0.05" if idx == 2 else None  # third reference ray is dashed
        s = float(slope)
        end_x = extent if s <= top / extent else top / s
        canvas.line((0, 0), (end_x, s * end_x), stroke="#9c2b2b", dash=dash)
    return canvas.document((0, extent), (0, top))


SCENES = ("obstruction2d", "square_billiard", "triangle_billiard", "triangle_tiling")


def render_svg(scene: str, **params) -> str:
    """Render one of the four supported scenes to SVG 1.1 text."""
    if scene == "obstruction2d":
        return _obstruction2d(
            params["alpha"], list(params["rays"]), int(params.get("extent", 6))
        )
    if scene == "square_billiard":
        return _square_billiard(
            params["slope"], params.get("alpha"), int(params.get("segments", 12))
        )
    if scene == "triangle_billiard":
        return _triangle_billiard(
            params["slope"], params.get("alpha"), int(params.get("strikes", 10))
        )
    if scene == "triangle_tiling":
        return _triangle_tiling(
            params["alpha"], list(params["rays"]), int(params.get("extent", 8))
        )
    raise ValueError(f"unknown scene {scene!r}; expected one of {', '.join(SCENES)}")
