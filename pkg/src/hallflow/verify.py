"""Residual certification against the steady governing equations.

Every residual here is assembled independently of the closed forms the
solution families were derived from: the compatibility operator, the two
momentum components and continuity are written out directly in terms of psi
derivatives, which come either from a solution's analytic ``derivative`` or from
centred finite differences.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, InconsistentFieldError, StencilError
from .fieldio import Grid
from .solutions.base import FlowSolution

TAGS = ("compatibility", "momentum-x", "momentum-y", "continuity", "integrability")
DEFAULT_TOL = {"analytic": 1e-10, "fd": 1e-6, "momentum": 1e-8, "loop": 1e-8,
               "integrability": 1e-8, "concordance": 1e-7}


# ---------------------------------------------------------------------------
# stencils

@lru_cache(maxsize=None)
def central_weights(order: int, accuracy: int = 4):
    """Exact weights of the centred stencil for d^order/dx^order.

    Returns (offsets, weights) with integer offsets -M..M; the truncation error
    is O(h**accuracy) (accuracy must be even). Weights come from Fornberg's
    recursion in rational arithmetic, so they are exact before the float cast.
    """
    if order < 0 or accuracy < 2 or accuracy % 2:
        raise ValueError("order >= 0 and even accuracy >= 2 required")
    if order == 0:
        return (0,), (1.0,)
    npts = 2 * ((order + 1) // 2) - 1 + accuracy
    M = (npts - 1) // 2
    nodes = [Fraction(k) for k in range(-M, M + 1)]
    # Fornberg (1988) with x0 = 0
    n = len(nodes)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(order + 1)]
    c[0][0][0] = Fraction(1)
    c1 = Fraction(1)
    for i in range(1, n):
        c2 = Fraction(1)
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            for m in range(min(i, order), -1, -1):
                prev = c[m - 1][i - 1][j] if m else 0
                c[m][i][j] = (nodes[i] * c[m][i - 1][j] - m * prev) / c3
        for m in range(min(i, order), -1, -1):
            prev = c[m - 1][i - 1][i - 1] if m else 0
            c[m][i][i] = c1 / c2 * (m * prev - nodes[i - 1] * c[m][i - 1][i - 1])
        c1 = c2
    w = tuple(float(c[order][n - 1][j]) for j in range(n))
    return tuple(range(-M, M + 1)), w


def _pairs(max_order):
    return [(i, k - i) for k in range(max_order + 1) for i in range(k + 1)]


def differential_operators(psi_eval, x, y, h: float, accuracy: int = 4, max_order: int = 5,
                           orders=None):
    """Centred finite-difference partials of ``psi_eval`` at (x, y).

    Mixed partials use tensor products of 1-D stencils, so every entry is
    O(h**accuracy). Returns a dict keyed by (i, j) for d^(i+j)/dx^i dy^j with
    i + j <= ``max_order`` (or the explicit ``orders``), plus ``"lap"`` and,
    when available, ``"bih"``.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    pairs = list(orders) if orders is not None else _pairs(max_order)
    M = max(len(central_weights(max(i, j), accuracy)[0]) // 2 for i, j in pairs)
    offs = np.arange(-M, M + 1)
    # evaluate on the full (2M+1)**2 footprint once
    XS = x[..., None, None] + offs[:, None] * h
    YS = y[..., None, None] + offs[None, :] * h
    vals = np.asarray(psi_eval(XS, YS))
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = np.argwhere(bad)[0]
        pt = (float(XS[tuple(idx)]), float(YS[tuple(idx)]))
        raise StencilError(f"non-finite value inside stencil at {pt}", pt)
    out = {}
    for i, j in pairs:
        oi, wi = central_weights(i, accuracy)
        oj, wj = central_weights(j, accuracy)
        wx = np.zeros(2 * M + 1)
        wy = np.zeros(2 * M + 1)
        wx[np.asarray(oi) + M] = wi
        wy[np.asarray(oj) + M] = wj
        out[(i, j)] = np.einsum("...ab,a,b->...", vals, wx, wy) / h ** (i + j)
    _add_operators(out)
    return out


def _add_operators(d):
    if (2, 0) in d and (0, 2) in d:
        d["lap"] = d[(2, 0)] + d[(0, 2)]
    if all(k in d for k in ((4, 0), (2, 2), (0, 4))):
        d["bih"] = d[(4, 0)] + 2 * d[(2, 2)] + d[(0, 4)]
    return d


def analytic_derivatives(sol: FlowSolution, x, y, max_order: int = 5):
    d = {(i, j): sol.derivative(i, j, x, y) for i, j in _pairs(max_order)}
    return _add_operators(d)


@dataclass(frozen=True)
class FDSteps:
    """Finite-difference settings, steps measured in units of the solution's length scale.

    Orders 1..3 use ``low`` with ``accuracy``; orders 4..5 use ``high`` and,
    when ``richardson`` is set, combine steps H and H/2 to cancel the leading
    O(H**high_accuracy) error term.
    """

    low: float = 2e-2
    high: float = 0.5
    accuracy: int = 4
    high_accuracy: int = 8
    richardson: bool = True

    def to_dict(self):
        return {"low": self.low, "high": self.high, "accuracy": self.accuracy,
                "high_accuracy": self.high_accuracy, "richardson": self.richardson}


DEFAULT_STEPS = FDSteps()
LOW_PAIRS = [p for p in _pairs(3)]
HIGH_PAIRS = [(i, k - i) for k in (4, 5) for i in range(k + 1)]


def fd_derivatives(psi_eval, x, y, scale: float = 1.0, steps: FDSteps = DEFAULT_STEPS):
    d = differential_operators(psi_eval, x, y, steps.low * scale, steps.accuracy,
                               orders=LOW_PAIRS)
    H = steps.high * scale
    hi = differential_operators(psi_eval, x, y, H, steps.high_accuracy, orders=HIGH_PAIRS)
    if steps.richardson:
        half = differential_operators(psi_eval, x, y, H / 2, steps.high_accuracy, orders=HIGH_PAIRS)
        f = 2.0 ** steps.high_accuracy
        hi = {k: (f * half[k] - hi[k]) / (f - 1) for k in HIGH_PAIRS}
    d.update({k: hi[k] for k in HIGH_PAIRS})
    return _add_operators(d)


# ---------------------------------------------------------------------------
# operators

def compatibility_terms(d, rho, mu, alpha1, hd):
    """Individual terms of the steady compatibility operator.

    -rho {psi, lap psi} - mu lap^2 psi + alpha1 {psi, lap^2 psi} + hd lap psi with
    {f, g} = f_x g_y - f_y g_x. Returns a list whose sum is the operator.
    """
    lap_x = d[(3, 0)] + d[(1, 2)]
    lap_y = d[(2, 1)] + d[(0, 3)]
    bih_x = d[(5, 0)] + 2 * d[(3, 2)] + d[(1, 4)]
    bih_y = d[(4, 1)] + 2 * d[(2, 3)] + d[(0, 5)]
    px, py = d[(1, 0)], d[(0, 1)]
    return [
        -rho * px * lap_y,
        rho * py * lap_x,
        -mu * d["bih"],
        alpha1 * px * bih_y,
        -alpha1 * py * bih_x,
        hd * d["lap"],
    ]


def compatibility_operator(d, rho, mu, alpha1, hd):
    return sum(compatibility_terms(d, rho, mu, alpha1, hd))


def second_grade_operator(d, nu, lambda_sg):
    """Second-grade operator divided by rho, written with nu and Lambda; no MHD or porous terms."""
    lap_x = d[(3, 0)] + d[(1, 2)]
    lap_y = d[(2, 1)] + d[(0, 3)]
    bih_x = d[(5, 0)] + 2 * d[(3, 2)] + d[(1, 4)]
    bih_y = d[(4, 1)] + 2 * d[(2, 3)] + d[(0, 5)]
    px, py = d[(1, 0)], d[(0, 1)]
    jac_lap = px * lap_y - py * lap_x
    jac_bih = px * bih_y - py * bih_x
    return -jac_lap - nu * d["bih"] + lambda_sg * jac_bih


def momentum_rhs(d, rho, mu, alpha1, hd):
    """Right-hand sides of the two momentum components, i.e. grad p-hat.

    Returns ((gx terms), (gy terms)); each tuple sums to the component.
    """
    u, v = d[(0, 1)], -d[(1, 0)]
    omega = -d["lap"]
    lap_u = d[(2, 1)] + d[(0, 3)]
    lap_v = -(d[(3, 0)] + d[(1, 2)])
    lap_omega = -d["bih"]
    gx = (rho * v * omega, mu * lap_u, -alpha1 * v * lap_omega, -hd * u)
    gy = (-rho * u * omega, mu * lap_v, alpha1 * u * lap_omega, -hd * v)
    return gx, gy


def pressure_correction(d, rho, alpha1):
    """p-hat - p = rho/2 (u^2 + v^2) - alpha1 [u lap u + v lap v + |A1|^2 / 4]."""
    u, v = d[(0, 1)], -d[(1, 0)]
    ux, vy = d[(1, 1)], -d[(1, 1)]
    uy, vx = d[(0, 2)], -d[(2, 0)]
    lap_u = d[(2, 1)] + d[(0, 3)]
    lap_v = -(d[(3, 0)] + d[(1, 2)])
    a1sq = 4 * ux * ux + 4 * vy * vy + 2 * (uy + vx) ** 2
    return 0.5 * rho * (u * u + v * v) - alpha1 * (u * lap_u + v * lap_v + 0.25 * a1sq)


def _coeffs(sol):
    p = sol.params
    return p.rho, p.mu, p.alpha1, sol.hd


# ---------------------------------------------------------------------------
# reports

@dataclass
class ResidualReport:
    """Residual of one equation on a set of points.

    ``relative`` is the max-norm of the residual over ``normalization``, the
    largest individual term magnitude seen on the grid; ``relative_real`` and
    ``relative_imag`` apply the same scale to the two real equations.
    """

    tag: str
    path: str
    x: np.ndarray
    y: np.ndarray
    residual: np.ndarray
    normalization: float
    grid: dict = field(default_factory=dict)
    steps: dict = field(default_factory=dict)
    excluded: list = field(default_factory=list)
    fd: "ResidualReport | None" = None
    extra: dict = field(default_factory=dict)

    @property
    def magnitudes(self):
        return np.abs(self.residual)

    @property
    def max_norm(self) -> float:
        return float(np.max(self.magnitudes)) if self.residual.size else 0.0

    @property
    def rms(self) -> float:
        return float(np.sqrt(np.mean(self.magnitudes ** 2))) if self.residual.size else 0.0

    def _rel(self, vals):
        m = float(np.max(np.abs(vals))) if vals.size else 0.0
        if m == 0.0:
            return 0.0
        return m / self.normalization if self.normalization > 0 else math.inf

    @property
    def relative(self) -> float:
        return self._rel(self.residual)

    @property
    def relative_real(self) -> float:
        return self._rel(np.real(self.residual))

    @property
    def relative_imag(self) -> float:
        return self._rel(np.imag(self.residual))

    def passed(self, tol: float) -> bool:
        return self.relative_real < tol and self.relative_imag < tol

    def to_dict(self, include_points: bool = False) -> dict:
        out = {
            "tag": self.tag, "path": self.path, "points": int(self.residual.size),
            "max_norm": self.max_norm, "rms": self.rms, "normalization": self.normalization,
            "relative": self.relative, "relative_real": self.relative_real,
            "relative_imag": self.relative_imag, "grid": self.grid, "steps": self.steps,
            "excluded": [list(p) for p in self.excluded],
        }
        if self.extra:
            out["extra"] = self.extra
        if self.fd is not None:
            out["fd"] = self.fd.to_dict(include_points)
        if include_points:
            out["residual"] = [[float(r.real), float(r.imag)] for r in self.residual.ravel()]
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("x", "y", "re", "im", "abs"))
        for x, y, r in zip(self.x.ravel(), self.y.ravel(), self.residual.ravel()):
            w.writerow(tuple(format(float(v), ".17g") for v in (x, y, r.real, r.imag, abs(r))))
        return buf.getvalue()


def _grid_points(sol, grid: Grid):
    """Grid points split into usable ones and excluded (x, y) pairs."""
    X, Y = grid.mesh()
    keep = np.ones(X.shape, dtype=bool)
    supported = getattr(sol, "supported", None)
    if supported is not None:
        keep[:, ~supported(grid.x)] = False
    excluded = [(float(a), float(b)) for a, b in zip(X[~keep], Y[~keep])]
    return X[keep], Y[keep], excluded


def _term_scale(terms):
    return float(max(np.max(np.abs(t)) if np.size(t) else 0.0 for t in terms))


def _psi_eval(sol):
    return lambda X, Y: sol.psi(X, Y)


def _drop_unsupported_stencils(sol, x, y, reach):
    """For families with a restricted x-region, drop points whose stencil leaves it."""
    supported = getattr(sol, "supported", None)
    if supported is None:
        return np.ones(x.shape, dtype=bool)
    ok = np.ones(x.shape, dtype=bool)
    for xv in np.unique(x):
        if not np.all(supported(np.array([xv - reach, xv + reach]))):
            ok &= x != xv
    return ok


def compatibility_residual(sol: FlowSolution, grid: Grid, steps: FDSteps = DEFAULT_STEPS,
                           finite_difference: bool = True) -> ResidualReport:
    """Compatibility residual on ``grid``, analytic path with an optional FD companion."""
    x, y, excluded = _grid_points(sol, grid)
    rho, mu, a1, hd = _coeffs(sol)
    d = analytic_derivatives(sol, x, y)
    terms = compatibility_terms(d, rho, mu, a1, hd)
    rep = ResidualReport("compatibility", "analytic", x, y, sum(terms), _term_scale(terms),
                         grid=grid.to_dict(), excluded=excluded)
    if finite_difference:
        scale = sol.length_scale
        reach = 4 * max(steps.low * 3, steps.high * (4 + steps.high_accuracy // 2)) * scale
        ok = _drop_unsupported_stencils(sol, x, y, reach)
        fx, fy = x[ok], y[ok]
        dd = fd_derivatives(_psi_eval(sol), fx, fy, scale, steps)
        fterms = compatibility_terms(dd, rho, mu, a1, hd)
        fd_steps = dict(steps.to_dict(), length_scale=scale,
                        h_low=steps.low * scale, h_high=steps.high * scale)
        rep.fd = ResidualReport("compatibility", "finite-difference", fx, fy, sum(fterms),
                                _term_scale(fterms), grid=grid.to_dict(), steps=fd_steps,
                                excluded=excluded + [(float(a), float(b)) for a, b in zip(x[~ok], y[~ok])])
    return rep


def continuity_residual(sol: FlowSolution, grid: Grid) -> ResidualReport:
    """u_x + v_y on the analytic path; identically zero since u, v come from psi."""
    x, y, excluded = _grid_points(sol, grid)
    psi_xy = sol.derivative(1, 1, x, y)
    ux, vy = psi_xy, -psi_xy
    return ResidualReport("continuity", "analytic", x, y, ux + vy,
                          _term_scale([ux, vy]), grid=grid.to_dict(), excluded=excluded)


def kinematic_check(sol: FlowSolution, x, y, h: float = 1e-4):
    """Max relative mismatch between FD velocity from psi and the analytic velocity."""
    d = differential_operators(_psi_eval(sol), x, y, h, accuracy=4, orders=[(1, 0), (0, 1)])
    u, v = sol.velocity(x, y)
    scale = max(np.max(np.abs(u)), np.max(np.abs(v)), np.finfo(float).tiny)
    return float(max(np.max(np.abs(d[(0, 1)] - u)), np.max(np.abs(-d[(1, 0)] - v))) / scale)


# ---------------------------------------------------------------------------
# pressure reconstruction

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_GL_S = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


def _segment_integral(fn, a, b, rtol=1e-15, max_panels=4096):
    """Integrate fn(t) along the straight segments a -> b (arrays of points).

    ``fn`` takes an array of shape (..., 2) of points and returns values with
    shape (...). Composite 16-point Gauss-Legendre in the segment parameter; the
    panel count doubles until two successive estimates agree.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    delta = b - a

    def estimate(n):
        edges = np.arange(n)[:, None] / n
        s = (edges + _GL_S[None, :] / n).ravel()
        w = np.tile(_GL_W / n, n)
        pts = a[..., None, :] + s[:, None] * delta[..., None, :]
        vals = fn(pts)
        return vals @ w, np.abs(vals) @ w

    n = 1
    prev, _ = estimate(n)
    while True:
        n *= 2
        cur, mag = estimate(n)
        # compare against the integral of |f| so exact cancellation still converges
        err = float(np.max(np.abs(cur - prev) / np.maximum(mag, 1e-300)))
        if err <= 100 * rtol:
            return cur
        if n >= max_panels:
            if err > 1e-10:
                raise ConvergenceError(f"pressure path integral did not converge (rel change {err:.1e})")
            return cur
        prev = cur


@dataclass
class PressureField:
    """Reconstructed pressure; p(anchor) = p_ref by construction."""

    sol: FlowSolution
    anchor: tuple
    p_ref: complex
    phat_anchor: complex
    integrability: float
    loop_residuals: list = field(default_factory=list)

    def _grad(self, pts, axis):
        rho, mu, a1, hd = _coeffs(self.sol)
        d = analytic_derivatives(self.sol, pts[..., 0], pts[..., 1], max_order=4)
        gx, gy = momentum_rhs(d, rho, mu, a1, hd)
        return sum(gx) if axis == 0 else sum(gy)

    def _dot_grad(self, pts, direction):
        out = 0
        if direction[0] != 0:
            out = out + direction[0] * self._grad(pts, 0)
        if direction[1] != 0:
            out = out + direction[1] * self._grad(pts, 1)
        return out

    def phat(self, x, y):
        """p-hat by integrating along x at the anchor's y, then along y."""
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        x0, y0 = self.anchor
        flat_x, flat_y = x.ravel(), y.ravel()
        # x-leg depends only on x; integrate unique values once
        ux, inv = np.unique(flat_x, return_inverse=True)
        a = np.column_stack((np.full(ux.shape, x0), np.full(ux.shape, y0)))
        b = np.column_stack((ux, np.full(ux.shape, y0)))
        leg_x = _segment_integral(lambda p: self._grad(p, 0), a, b) * (ux - x0)
        a2 = np.column_stack((flat_x, np.full(flat_x.shape, y0)))
        b2 = np.column_stack((flat_x, flat_y))
        leg_y = _segment_integral(lambda p: self._grad(p, 1), a2, b2) * (flat_y - y0)
        return (self.phat_anchor + leg_x[inv] + leg_y).reshape(x.shape)

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        rho, a1 = self.sol.params.rho, self.sol.params.alpha1
        d = analytic_derivatives(self.sol, x, y, max_order=3)
        return self.phat(x, y) - pressure_correction(d, rho, a1)

    def loop_integral(self, x0, x1, y0, y1):
        """Circulation of grad p-hat around a rectangle, relative to perimeter * max |grad|."""
        corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]
        total = 0j
        gmax = 0.0
        for (ax, ay), (bx, by) in zip(corners[:-1], corners[1:]):
            direction = (bx - ax, by - ay)
            a = np.array([[ax, ay]])
            b = np.array([[bx, by]])
            total += complex(_segment_integral(lambda p: self._dot_grad(p, direction), a, b)[0])
            pts = a + np.linspace(0, 1, 9)[:, None] * (b - a)
            gmax = max(gmax, float(np.max(np.abs(self._grad(pts, 0)))),
                       float(np.max(np.abs(self._grad(pts, 1)))))
        perimeter = 2 * (abs(x1 - x0) + abs(y1 - y0))
        denom = perimeter * gmax
        return abs(total) / denom if denom > 0 else abs(total)


def integrability_check(sol: FlowSolution, grid: Grid) -> float:
    """Relative analytic compatibility residual: zero iff grad p-hat is curl-free."""
    return compatibility_residual(sol, grid, finite_difference=False).relative


def reconstruct_pressure(sol: FlowSolution, anchor=(0.0, 0.0), grid: Grid | None = None,
                         p_ref: complex = 0.0, tol: float = DEFAULT_TOL["integrability"],
                         loops: int = 3) -> PressureField:
    """Integrate the momentum equations for p-hat and recover p.

    Integrability is checked first on ``grid`` (a coarse 21 x 21 sample of it),
    then ``loops`` nested rectangles inside the grid window are integrated to
    confirm path independence.
    """
    grid = grid or Grid()
    coarse = Grid(grid.x_range, grid.y_range, 21, 21, grid.projection)
    rel = integrability_check(sol, coarse)
    if not rel < tol:
        raise InconsistentFieldError(
            f"momentum equations are not integrable for this field: relative "
            f"compatibility residual {rel:.3e} exceeds {tol:.1e}")
    anchor = (float(anchor[0]), float(anchor[1]))
    rho, a1 = sol.params.rho, sol.params.alpha1
    d0 = analytic_derivatives(sol, np.array([anchor[0]]), np.array([anchor[1]]), max_order=3)
    phat0 = complex(p_ref) + complex(pressure_correction(d0, rho, a1)[0])
    field_ = PressureField(sol, anchor, complex(p_ref), phat0, rel)
    x0, x1 = grid.x_range
    y0, y1 = grid.y_range
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    for k in range(1, loops + 1):
        f = k / loops
        field_.loop_residuals.append(field_.loop_integral(
            cx - 0.5 * f * (x1 - x0), cx + 0.5 * f * (x1 - x0),
            cy - 0.5 * f * (y1 - y0), cy + 0.5 * f * (y1 - y0)))
    return field_


def momentum_residual(sol: FlowSolution, grid: Grid, pressure="reconstructed",
                      h: float = 1e-3, anchor=(0.0, 0.0)):
    """Both momentum components with p-hat assembled from a pressure field.

    ``pressure`` is ``"reconstructed"``, ``"printed"`` or a callable p(x, y).
    grad p-hat is taken by 4th-order centred differences of p-hat, so the check
    is independent of how the pressure was obtained. Returns (x report, y report).
    """
    if isinstance(pressure, str):
        if pressure == "reconstructed":
            pfun = reconstruct_pressure(sol, anchor=anchor, grid=grid)
        elif pressure == "printed":
            if not sol.has_printed_pressure:
                raise InconsistentFieldError(f"family {sol.family} has no printed pressure")
            pfun = sol.printed_pressure
        else:
            raise ValueError(f"unknown pressure source {pressure!r}")
    else:
        pfun = pressure
    rho, mu, a1, hd = _coeffs(sol)
    x, y, excluded = _grid_points(sol, grid)
    step = h * sol.length_scale

    def phat(X, Y):
        d = analytic_derivatives(sol, X, Y, max_order=3)
        return pfun(X, Y) + pressure_correction(d, rho, a1)

    dp = differential_operators(phat, x, y, step, accuracy=4, orders=[(1, 0), (0, 1)])
    d = analytic_derivatives(sol, x, y, max_order=4)
    gx, gy = momentum_rhs(d, rho, mu, a1, hd)
    steps = {"h": step, "accuracy": 4}
    reports = []
    for tag, dph, g in (("momentum-x", dp[(1, 0)], gx), ("momentum-y", dp[(0, 1)], gy)):
        terms = [dph, *g]
        reports.append(ResidualReport(tag, "finite-difference", x, y, dph - sum(g),
                                      _term_scale(terms), grid=grid.to_dict(), steps=steps,
                                      excluded=excluded))
    return tuple(reports)


def pressure_concordance(sol: FlowSolution, grid: Grid, field_: PressureField | None = None,
                         tol: float = DEFAULT_TOL["concordance"]):
    """Compare reconstructed and printed pressure up to an additive constant.

    Returns (flag, spread) where spread is max - min of the real and imaginary
    parts of p_rec - p_printed over the grid, relative to max(1, max |p_rec|).
    """
    if not sol.has_printed_pressure:
        return None, math.nan
    field_ = field_ or reconstruct_pressure(sol, grid=grid)
    x, y, _ = _grid_points(sol, grid)
    prec = field_(x, y)
    diff = prec - sol.printed_pressure(x, y)
    if not np.all(np.isfinite(diff)):
        return False, math.inf
    spread = max(float(np.ptp(diff.real)), float(np.ptp(diff.imag)))
    rel = spread / max(1.0, float(np.max(np.abs(prec))))
    return bool(rel < tol), rel
