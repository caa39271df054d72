"""Arbitrary stream functions given as expressions, for counterexamples and null cases."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .base import FlowSolution


@lru_cache(maxsize=None)
def _compiled(expr: str, i: int, j: int):
    import sympy

    x, y = sympy.symbols("x y", real=True)
    f = sympy.sympify(expr, locals={"x": x, "y": y})
    d = sympy.diff(f, x, i, y, j) if (i or j) else f
    return sympy.lambdify((x, y), d, modules="numpy")


@dataclass(frozen=True)
class ExpressionFlow(FlowSolution):
    """psi given as a sympy-parsable expression in x and y; derivatives are symbolic.

    Not an exact solution in general: used to check that the residual engine
    rejects non-solutions and accepts trivial ones.
    """

    family = "expression"

    psi_expr: str = "0"
    pressure_expr: str | None = None

    def derivative(self, i, j, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        val = _compiled(self.psi_expr, i, j)(x, y)
        return np.broadcast_to(np.asarray(val, dtype=complex), x.shape).copy()

    @property
    def has_printed_pressure(self):
        return self.pressure_expr is not None

    def printed_pressure(self, x, y):
        if self.pressure_expr is None:
            return super().printed_pressure(x, y)
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        val = _compiled(self.pressure_expr, 0, 0)(x, y)
        return np.broadcast_to(np.asarray(val, dtype=complex), x.shape).copy()

    def shape_constants(self):
        out = {"psi": self.psi_expr}
        if self.pressure_expr is not None:
            out["pressure"] = self.pressure_expr
        return out
