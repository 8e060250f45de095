"""Removed-area accounting, box-counting dimension and SVG rendering of the Rauzy gasket.

Δ₀ is the midpoint triangle with vertices (0,1/2,1/2), (1/2,0,1/2), (1/2,1/2,0).
The gasket is Δ minus the interiors of all f_w(Δ₀).  Triangles are carried
as integer 3×3 matrices whose columns are unnormalised vertices, so
f_w(Δ₀) has vertex matrix M_w·V₀ with V₀ = 2·(vertices of Δ₀).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .gasket import matrix_M

V0 = ((0, 1, 1), (1, 0, 1), (1, 1, 0))  # rows are vertices of 2Δ₀


def _apply(i: int, cols):
    """Multiply each column vector by M_i: coordinate i becomes the column sum."""
    out = []
    for c in cols:
        c = list(c)
        c[i] = sum(c)
        out.append(tuple(c))
    return tuple(out)


def _chart_area(cols) -> Fraction:
    """Area of the triangle with projective vertices cols, relative to area(Δ) = 1.

    Computed in the (λ1, λ2) chart: the chart triangle has area |det|/2 and Δ has area 1/2.
    """
    pts = [(Fraction(c[0], sum(c)), Fraction(c[1], sum(c))) for c in cols]
    (x0, y0), (x1, y1), (x2, y2) = pts
    det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    return abs(det)


def removed_areas(depth: int) -> list[Fraction]:
    """[removed_area(0), …, removed_area(depth)], exact."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    level = [V0]
    total = Fraction(0)
    out = []
    for d in range(depth + 1):
        total += sum((_chart_area(t) for t in level), Fraction(0))
        out.append(total)
        if d < depth:
            level = [_apply(i, t) for t in level for i in range(3)]
    return out


def removed_area(depth: int) -> Fraction:
    """Exact area of ⋃_{|w|≤depth} f_w(Δ₀), normalised so that area(Δ) = 1."""
    return removed_areas(depth)[-1]


def projective_area(cols) -> Fraction:
    """Same area via |det C| / (s1 s2 s3), s_j the column sums; an independent check."""
    m = np.array(cols, dtype=object).T
    det = (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]) - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
           + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
    s = [sum(c) for c in cols]
    return Fraction(abs(int(det)), s[0] * s[1] * s[2])


# -- box counting ------------------------------------------------------------------------------

def _to_plane(p: np.ndarray) -> np.ndarray:
    """Barycentric (…,3) → equilateral plane coordinates in [0,1]², side 1."""
    x = p[..., 1] + 0.5 * p[..., 2]
    y = (math.sqrt(3) / 2) * p[..., 2]
    return np.stack([x, y], axis=-1)


def _cells(xy: np.ndarray, top: int) -> np.ndarray:
    c = np.floor(xy.reshape(-1, 2) * (1 << top)).astype(np.int64)
    return np.unique(c[:, 0] * (1 << (top + 1)) + c[:, 1])


def gasket_cells(depth: int, top: int) -> np.ndarray:
    """Finest-grid cells (side 2^-top) hit by vertices of the triangles f_w(Δ), |w| ≤ depth.

    Words are refined until the triangle diameter drops below 2^-(top+1).
    Every vertex lies in the gasket, and every gasket point lies within that
    mesh of a recorded vertex once refinement stops.  Triangles are carried as
    3×3 float matrices of unnormalised column vertices.
    """
    mats = [np.asarray(matrix_M(i + 1), dtype=float) for i in range(3)]
    mesh = 2.0 ** -(top + 1)
    level = np.eye(3)[None, :, :]
    cells = [_cells(_to_plane(np.eye(3)), top)]
    for _ in range(depth):
        children = np.concatenate([np.einsum("ij,njk->nik", m, level) for m in mats])
        verts = np.transpose(children, (0, 2, 1))
        verts = verts / verts.sum(axis=2, keepdims=True)
        xy = _to_plane(verts)
        cells.append(_cells(xy, top))
        diam = np.max(np.linalg.norm(xy - np.roll(xy, 1, axis=1), axis=2), axis=1)
        level = children[diam >= mesh]
        if len(level) == 0:
            break
    return np.unique(np.concatenate(cells))


def sierpinski_cells(top: int) -> np.ndarray:
    """Same for the Sierpinski triangle construction (side halves each level)."""
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    tri = corners[None]
    cells = [_cells(corners, top)]
    side = 1.0
    while side >= 2.0 ** -(top + 1):
        tri = np.concatenate([(tri + corners[k]) / 2 for k in range(3)])
        side /= 2
        cells.append(_cells(tri, top))
    return np.unique(np.concatenate(cells))


def box_counts(cells: np.ndarray, top: int, exponents) -> list[int]:
    """Occupied cells at side 2^-m, m ≤ top, from the finest-grid cell codes."""
    x, y = cells >> (top + 1), cells & ((1 << (top + 1)) - 1)
    out = []
    for m in exponents:
        k = top - m
        out.append(len(np.unique(((x >> k) << (m + 1)) + (y >> k))))
    return out


@dataclass
class DimensionEstimate:
    estimate: float
    exponents: list
    counts: list
    residuals: list
    slope_residual: float  # RMS of the fit residuals
    cells: int  # occupied cells on the finest grid

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "slope_residual": self.slope_residual, "exponents": self.exponents,
                "counts": self.counts, "residuals": self.residuals, "cells": self.cells}


def _fit(cells: np.ndarray, top: int, exponents) -> DimensionEstimate:
    exponents = list(exponents)
    counts = box_counts(cells, top, exponents)
    x = np.array(exponents, dtype=float) * math.log(2)
    y = np.log(np.array(counts, dtype=float))
    slope, icept = np.polyfit(x, y, 1)
    res = y - (slope * x + icept)
    return DimensionEstimate(float(slope), exponents, counts, [float(r) for r in res],
                             float(np.sqrt(np.mean(res ** 2))), len(cells))


def _top(grid: int) -> int:
    top = int(round(math.log2(grid)))
    if 1 << top != grid or top < 4:
        raise ValueError("grid must be a power of two ≥ 16")
    return top


def box_dimension_estimate(depth: int = 4096, grid: int = 1 << 10) -> DimensionEstimate:
    """Least-squares slope of log N(2^-m) against m log 2 for the gasket point cloud.

    The cloud is refined to mesh 1/(2·grid) or word length ``depth``,
    whichever comes first; near the vertices of Δ the triangles shrink only
    like 1/n so a small depth leaves those corners under-resolved.
    """
    top = _top(grid)
    return _fit(gasket_cells(depth, top), top, range(top // 2, top + 1))


def sierpinski_self_test(grid: int = 1 << 10) -> DimensionEstimate:
    top = _top(grid)
    return _fit(sierpinski_cells(top), top, range(top // 2, top + 1))


SIERPINSKI_DIMENSION = math.log(3) / math.log(2)


# -- rendering ----------------------------------------------------------------------------------

def render_svg(depth: int, out=None, size: int = 600) -> str:
    """SVG with one polygon per removed triangle f_w(Δ₀), |w| ≤ depth, in breadth-first word order."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    h = math.sqrt(3) / 2
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{round(size * h)}" '
             f'viewBox="0 0 {size} {size * h:.3f}">',
             f'<g fill="#223" stroke="none"><!-- removed triangles, depth {depth} -->']
    level = [V0]
    for d in range(depth + 1):
        for cols in level:
            pts = []
            for c in cols:
                s = sum(c)
                x = (c[1] + c[2] / 2) / s
                y = h * c[2] / s
                pts.append(f"{size * x:.3f},{size * (h - y):.3f}")
            lines.append(f'<polygon points="{" ".join(pts)}"/>')
        if d < depth:
            level = [_apply(i, t) for t in level for i in range(3)]
    lines.append("</g>")
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
