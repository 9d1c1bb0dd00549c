"""Contour extraction and SVG rendering for the real zero set of a curve.

This is the only module that leaves exact arithmetic: coefficients are
converted to floating point once, the polynomial is sampled on a grid with
a two-level Horner scheme, and marching squares turns sign changes into
line segments.  Rendering needs speed, not exactness; everything upstream
stays symbolic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .errors import InvalidViewport
from .poly import BivarPoly

Point = Tuple[float, float]
Segment = Tuple[Point, Point]


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned sampling rectangle plus grid resolution (cell counts)."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float
    cells_u: int = 512
    cells_v: int = 512

    def __post_init__(self):
        bounds = (self.u_min, self.u_max, self.v_min, self.v_max)
        if not all(math.isfinite(b) for b in bounds):
            raise InvalidViewport(f"bounds must be finite, got {bounds}")
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise InvalidViewport(f"empty viewport {bounds}")
        if self.cells_u < 2 or self.cells_v < 2:
            raise InvalidViewport("need at least 2 cells per side")

    @property
    def u_nodes(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.cells_u + 1)

    @property
    def v_nodes(self) -> np.ndarray:
        return np.linspace(self.v_min, self.v_max, self.cells_v + 1)


@dataclass(frozen=True)
class SampleStats:
    min_abs: float
    max_abs: float


@dataclass(frozen=True)
class ContourSet:
    """Line segments approximating the zero set, in curve coordinates."""

    segments: Tuple[Segment, ...]
    stats: SampleStats


def sample_grid(p: BivarPoly, vp: Viewport) -> np.ndarray:
    """Polynomial values at every grid node; ``grid[j, i]`` is the value
    at ``(u_nodes[i], v_nodes[j])``."""
    u = vp.u_nodes
    v = vp.v_nodes
    if p.is_zero:
        return np.zeros((len(v), len(u)))
    deg_u = max(m[0] for m in p.terms)
    deg_v = max(m[1] for m in p.terms)
    # coefficient matrix: rows indexed by the u exponent
    coeff = np.zeros((deg_u + 1, deg_v + 1))
    for (i, j), c in p.terms.items():
        coeff[i, j] = float(c)
    # inner Horner in v gives one column vector per u exponent,
    # outer Horner in u combines them
    acc = np.zeros((len(v), len(u)))
    for i in range(deg_u, -1, -1):
        inner = np.zeros(len(v))
        for j in range(deg_v, -1, -1):
            inner = inner * v + coeff[i, j]
        acc = acc * u[None, :] + inner[:, None]
    return acc


# Each cell gets a 4-bit case from which corners are strictly positive:
# bit 0 = (i, j), bit 1 = (i+1, j), bit 2 = (i+1, j+1), bit 3 = (i, j+1).
# Values are lists of edge pairs to connect; edges are numbered
# 0 bottom, 1 right, 2 top, 3 left.  Cases 5 and 10 are saddles and get
# resolved by the sign at the cell center.
_CASES = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(3, 1)],
    13: [(0, 1)],
    14: [(3, 0)],
}
_SADDLE = {
    # case -> (segments when center > 0, segments when center <= 0)
    5: ([(0, 1), (2, 3)], [(3, 0), (1, 2)]),
    10: ([(3, 0), (1, 2)], [(0, 1), (2, 3)]),
}


def _edge_point(edge: int, i: int, j: int, grid: np.ndarray,
                u: np.ndarray, v: np.ndarray) -> Point:
    """Linear-interpolation crossing on one cell edge."""
    if edge == 0:
        a, b = grid[j, i], grid[j, i + 1]
        t = a / (a - b)
        return (u[i] + t * (u[i + 1] - u[i]), v[j])
    if edge == 1:
        a, b = grid[j, i + 1], grid[j + 1, i + 1]
        t = a / (a - b)
        return (u[i + 1], v[j] + t * (v[j + 1] - v[j]))
    if edge == 2:
        a, b = grid[j + 1, i + 1], grid[j + 1, i]
        t = a / (a - b)
        return (u[i + 1] + t * (u[i] - u[i + 1]), v[j + 1])
    a, b = grid[j + 1, i], grid[j, i]
    t = a / (a - b)
    return (u[i], v[j + 1] + t * (v[j] - v[j + 1]))


def marching_squares(grid: np.ndarray, vp: Viewport) -> ContourSet:
    """Standard 16-case marching squares with center-sample saddle
    disambiguation; returns segments in curve coordinates."""
    expected = (vp.cells_v + 1, vp.cells_u + 1)
    if grid.shape != expected:
        raise ValueError(f"grid shape {grid.shape} does not match "
                         f"viewport nodes {expected}")
    u = vp.u_nodes
    v = vp.v_nodes
    inside = grid > 0
    case = (inside[:-1, :-1].astype(np.int8)
            + 2 * inside[:-1, 1:]
            + 4 * inside[1:, 1:]
            + 8 * inside[1:, :-1])
    active_j, active_i = np.nonzero((case != 0) & (case != 15))
    segments: List[Segment] = []
    for j, i in zip(active_j.tolist(), active_i.tolist()):
        c = int(case[j, i])
        if c in _SADDLE:
            center = (grid[j, i] + grid[j, i + 1]
                      + grid[j + 1, i] + grid[j + 1, i + 1]) / 4.0
            pairs = _SADDLE[c][0] if center > 0 else _SADDLE[c][1]
        else:
            pairs = _CASES[c]
        for e0, e1 in pairs:
            segments.append((_edge_point(e0, i, j, grid, u, v),
                             _edge_point(e1, i, j, grid, u, v)))
    magnitudes = np.abs(grid)
    stats = SampleStats(float(magnitudes.min()), float(magnitudes.max()))
    return ContourSet(segments=tuple(segments), stats=stats)


def emit_svg(cs: ContourSet, vp: Viewport, *, width: int = 640,
             height: Optional[int] = None, axes: bool = True,
             stroke: str = "#0b5fa5", stroke_width: float = 1.5,
             background: str = "#ffffff") -> str:
    """Deterministic standalone SVG document for a contour set.

    The viewport maps onto a ``width``-pixel-wide image with the v axis
    pointing up (pixel y runs down).  ``height`` defaults to preserving
    the viewport's aspect ratio.
    """
    du = vp.u_max - vp.u_min
    dv = vp.v_max - vp.v_min
    if height is None:
        height = max(1, round(width * dv / du))

    def to_px(point: Point) -> Tuple[float, float]:
        x = (point[0] - vp.u_min) / du * width
        y = (vp.v_max - point[1]) / dv * height
        return x, y

    def fmt(value: float) -> str:
        return f"{value:.2f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="{background}"/>',
    ]
    if axes:
        axis_parts = []
        if vp.u_min < 0 < vp.u_max:
            x0, _ = to_px((0.0, 0.0))
            axis_parts.append(f"M{fmt(x0)} 0 L{fmt(x0)} {height}")
        if vp.v_min < 0 < vp.v_max:
            _, y0 = to_px((0.0, 0.0))
            axis_parts.append(f"M0 {fmt(y0)} L{width} {fmt(y0)}")
        if axis_parts:
            lines.append(f'<path d="{" ".join(axis_parts)}" stroke="#b0b0b0" '
                         'stroke-width="1" fill="none"/>')
    if cs.segments:
        parts = []
        for (p0, p1) in cs.segments:
            x0, y0 = to_px(p0)
            x1, y1 = to_px(p1)
            parts.append(f"M{fmt(x0)} {fmt(y0)} L{fmt(x1)} {fmt(y1)}")
        lines.append(f'<path d="{" ".join(parts)}" stroke="{stroke}" '
                     f'stroke-width="{stroke_width}" fill="none" '
                     'stroke-linecap="round"/>')
    lines.append("</svg>")
    return "\n".join(lines)


def render_svg(p: BivarPoly, vp: Viewport, **style) -> str:
    """Sample, contour, and render in one call."""
    return emit_svg(marching_squares(sample_grid(p, vp), vp), vp, **style)
