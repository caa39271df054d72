"""Grid sampling, marching-squares streamlines, and CSV/SVG output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from skimage.measure import find_contours

from .errors import EmptyFieldError, HallflowError, NoClosedFormError
from .solutions.base import PROJECTIONS, FlowSolution, project

DEFAULT_WINDOW = (-2.0, 2.0, -2.0, 2.0)
DEFAULT_N = 201


@dataclass(frozen=True)
class Grid:
    x_range: tuple = (-2.0, 2.0)
    y_range: tuple = (-2.0, 2.0)
    nx: int = DEFAULT_N
    ny: int = DEFAULT_N
    projection: str = "real"

    def __post_init__(self):
        object.__setattr__(self, "x_range", tuple(float(v) for v in self.x_range))
        object.__setattr__(self, "y_range", tuple(float(v) for v in self.y_range))
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if not (self.x_range[1] > self.x_range[0] and self.y_range[1] > self.y_range[0]):
            raise ValueError(f"degenerate grid ranges {self.x_range}, {self.y_range}")
        if self.projection not in PROJECTIONS:
            raise ValueError(f"projection must be one of {PROJECTIONS}")

    @classmethod
    def from_window(cls, window, nx=DEFAULT_N, ny=DEFAULT_N, projection="real"):
        x0, x1, y0, y1 = window
        return cls((x0, x1), (y0, y1), nx, ny, projection)

    @property
    def window(self):
        return self.x_range + self.y_range

    @property
    def x(self):
        return np.linspace(*self.x_range, self.nx)

    @property
    def y(self):
        return np.linspace(*self.y_range, self.ny)

    @property
    def dx(self):
        return (self.x_range[1] - self.x_range[0]) / (self.nx - 1)

    @property
    def dy(self):
        return (self.y_range[1] - self.y_range[0]) / (self.ny - 1)

    def mesh(self):
        """(X, Y) with shape (ny, nx): row j is y[j], column i is x[i]."""
        return np.meshgrid(self.x, self.y, indexing="xy")

    def to_dict(self):
        return {"window": list(self.window), "nx": self.nx, "ny": self.ny,
                "projection": self.projection}


@dataclass
class FieldArrays:
    """Projected fields on a grid; ``mask`` is True where evaluation was impossible."""

    grid: Grid
    psi: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray
    mask: np.ndarray


def sample(sol: FlowSolution, grid: Grid) -> FieldArrays:
    X, Y = grid.mesh()
    mask = np.zeros(X.shape, dtype=bool)
    supported = getattr(sol, "supported", None)
    if supported is not None:
        col_ok = supported(grid.x)
        mask[:, ~col_ok] = True
    if mask.all():
        raise EmptyFieldError("every grid cell lies outside the evaluation region")

    out = {k: np.full(X.shape, np.nan) for k in ("psi", "u", "v", "p")}
    cols = ~mask[0]
    xs, ys = X[:, cols], Y[:, cols]
    u, v = sol.velocity(xs, ys)
    out["psi"][:, cols] = project(sol.psi(xs, ys), grid.projection)
    out["u"][:, cols] = project(u, grid.projection)
    out["v"][:, cols] = project(v, grid.projection)
    out["p"][:, cols] = project(sol.printed_pressure(xs, ys), grid.projection)
    return FieldArrays(grid=grid, mask=mask, **out)


@dataclass
class StreamlineSet:
    """Polylines per level. ``lines`` holds (level, array of shape (n, 2)) pairs."""

    levels: tuple
    lines: list = field(default_factory=list)
    method: str = "marching-squares"

    def for_level(self, level):
        return [pts for lev, pts in self.lines if lev == level]

    def crossings_at(self, level, x0):
        """y values where this level's polylines cross the vertical line x = x0."""
        ys = []
        for pts in self.for_level(level):
            if len(pts) == 1:
                if pts[0, 0] == x0:
                    ys.append(pts[0, 1])
                continue
            xa, xb = pts[:-1, 0], pts[1:, 0]
            ya, yb = pts[:-1, 1], pts[1:, 1]
            lo, hi = np.minimum(xa, xb), np.maximum(xa, xb)
            hit = (lo <= x0) & (x0 <= hi)
            for k in np.flatnonzero(hit):
                if xa[k] == xb[k]:
                    ys.extend((ya[k], yb[k]))
                else:
                    t = (x0 - xa[k]) / (xb[k] - xa[k])
                    ys.append(ya[k] + t * (yb[k] - ya[k]))
        return np.asarray(ys)


def contour(values, levels, grid: Grid | None = None, mask=None) -> StreamlineSet:
    """Marching-squares level sets of a sampled field, linear interpolation on edges.

    ``values`` is a :class:`FieldArrays` (its psi is contoured) or a 2-D array
    with shape (ny, nx), in which case ``grid`` is required.
    """
    if isinstance(values, FieldArrays):
        grid, mask, data = values.grid, values.mask, values.psi
    else:
        if grid is None:
            raise ValueError("a grid is required when contouring a bare array")
        data = np.asarray(values, dtype=float)
    if mask is None:
        mask = ~np.isfinite(data)
    filled = np.where(mask, 0.0, data)
    levels = tuple(float(l) for l in levels)
    out = StreamlineSet(levels=levels, method="marching-squares")
    valid = ~mask
    finite_vals = data[valid]
    for level in levels:
        if finite_vals.size == 0 or not (finite_vals.min() <= level <= finite_vals.max()):
            continue
        for rc in find_contours(filled, level, mask=valid if mask.any() else None):
            xy = np.column_stack((grid.x_range[0] + rc[:, 1] * grid.dx,
                                  grid.y_range[0] + rc[:, 0] * grid.dy))
            out.lines.append((level, xy))
    return out


def closed_form_streamlines(sol: FlowSolution, grid: Grid, levels) -> StreamlineSet:
    """Evaluate the closed-form y(x) on the grid columns, split at gaps and window exits."""
    if grid.projection != "real":
        raise NoClosedFormError("closed-form streamlines use the real projection")
    x = grid.x
    out = StreamlineSet(levels=tuple(float(l) for l in levels), method="closed-form")
    y0, y1 = grid.y_range
    for level in out.levels:
        y = np.asarray(sol.streamline_y(level, x), dtype=float)
        inside = np.isfinite(y) & (y >= y0) & (y <= y1)
        start = None
        for i in range(len(x) + 1):
            if i < len(x) and inside[i]:
                if start is None:
                    start = i
            elif start is not None:
                out.lines.append((level, np.column_stack((x[start:i], y[start:i]))))
                start = None
    return out


def max_vertical_deviation(closed: StreamlineSet, traced: StreamlineSet, x_columns):
    """Largest |y_closed - nearest traced crossing| over columns where both exist."""
    worst = 0.0
    compared = 0
    for level in closed.levels:
        for pts in closed.for_level(level):
            for xc, yc in pts:
                if not np.any(np.isclose(xc, x_columns, rtol=0, atol=1e-12)):
                    continue
                ys = traced.crossings_at(level, xc)
                if ys.size == 0:
                    continue
                worst = max(worst, float(np.min(np.abs(ys - yc))))
                compared += 1
    return worst, compared


# ---------------------------------------------------------------------------
# emission

CSV_HEADER = ("level", "seq", "x", "y")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def streamlines_to_csv(sset: StreamlineSet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for seq, (level, pts) in enumerate(sset.lines):
        for x, y in pts:
            w.writerow((_fmt(level), seq, _fmt(x), _fmt(y)))
    return buf.getvalue()


def parse_csv(text: str, method: str = "marching-squares") -> StreamlineSet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("not a streamline CSV: bad header")
    groups: dict[int, tuple[float, list]] = {}
    order = []
    for level, seq, x, y in rows[1:]:
        seq = int(seq)
        if seq not in groups:
            groups[seq] = (float(level), [])
            order.append(seq)
        groups[seq][1].append((float(x), float(y)))
    lines = [(groups[s][0], np.asarray(groups[s][1])) for s in order]
    levels = tuple(dict.fromkeys(lev for lev, _ in lines))
    return StreamlineSet(levels=levels, lines=lines, method=method)


def streamlines_to_svg(sset: StreamlineSet, window, width: int = 600) -> str:
    x0, x1, y0, y1 = (float(v) for v in window)
    w, h = x1 - x0, y1 - y0
    height = max(1, int(round(width * h / w)))
    f = lambda v: format(float(v), ".9g")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{f(x0)} {f(-y1)} {f(w)} {f(h)}">',
        f'<rect x="{f(x0)}" y="{f(-y1)}" width="{f(w)}" height="{f(h)}" fill="white" stroke="none"/>',
        '<g fill="none" stroke="black" stroke-width="1.5" vector-effect="non-scaling-stroke">',
    ]
    labels = []
    font = f(0.03 * min(w, h) if min(w, h) > 0 else 1)
    for seq, (level, pts) in enumerate(sset.lines):
        if len(pts) == 0:
            continue
        d = "M " + " L ".join(f"{f(x)} {f(-y)}" for x, y in pts)
        lines.append(f'<path id="s{seq}" data-level="{f(level)}" d="{d}"/>')
        mid = pts[len(pts) // 2]
        labels.append(f'<text x="{f(mid[0])}" y="{f(-mid[1])}" font-size="{font}">{f(level)}</text>')
    lines.append("</g>")
    lines.append('<g fill="black" font-family="sans-serif">')
    lines.extend(labels)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit(sset: StreamlineSet, fmt: str, path, window=None) -> Path:
    """Write a streamline set as CSV or SVG; I/O failures name the path."""
    path = Path(path)
    if fmt == "csv":
        text = streamlines_to_csv(sset)
    elif fmt == "svg":
        if window is None:
            raise ValueError("SVG output needs the grid window")
        text = streamlines_to_svg(sset, window)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'svg'")
    try:
        path.write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise HallflowError(f"cannot write {path}: {exc}") from exc
    return path


def finite_window(values):
    vals = np.asarray(values, dtype=float)
    vals = vals[np.isfinite(vals)]
    return (float(vals.min()), float(vals.max())) if vals.size else (math.nan, math.nan)
