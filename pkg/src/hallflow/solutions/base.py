"""Shared machinery for the exact solution families.

A solution exposes ``derivative(i, j, x, y)``, the analytic partial derivative
d^(i+j) psi / dx^i dy^j evaluated (complex) on broadcast arrays. Everything
else (velocity, vorticity, residuals) is assembled from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, NamedTuple

import numpy as np

from ..core import DerivedParams, FluidParams, derive
from ..errors import NoClosedFormError

PROJECTIONS = ("real", "imag", "mod")


def project(values, mode: str = "real"):
    """Map complex field values to reals: real part, imaginary part or modulus."""
    if mode == "real":
        return np.real(values)
    if mode == "imag":
        return np.imag(values)
    if mode in ("mod", "modulus"):
        return np.abs(values)
    raise ValueError(f"unknown projection {mode!r}; expected one of {PROJECTIONS}")


class ExpTerm(NamedTuple):
    """coef * x**px * y**py * exp(kx*x + ky*y), with px, py in {0, 1}."""

    coef: complex
    kx: complex = 0.0
    ky: complex = 0.0
    px: int = 0
    py: int = 0


def _axis_factor(k, p, n, s):
    # d^n/ds^n [s**p * exp(k s)] / exp(k s) for p in {0, 1}
    if p == 0:
        return k ** n
    if n == 0:
        return s
    return k ** n * s + n * k ** (n - 1)


def exp_poly_derivative(terms, i, j, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for t in terms:
        if t.coef == 0:
            continue
        fx = _axis_factor(t.kx, t.px, i, x)
        fy = _axis_factor(t.ky, t.py, j, y)
        if np.all(np.asarray(fx) == 0) or np.all(np.asarray(fy) == 0):
            continue
        e = np.exp(t.kx * x + t.ky * y) if (t.kx != 0 or t.ky != 0) else 1.0
        out = out + t.coef * fx * fy * e
    return out


@dataclass(frozen=True)
class FieldSample:
    """Complex stream function, velocity, pressure and vorticity at points."""

    psi: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray
    omega: np.ndarray

    def project(self, mode: str = "real") -> "FieldSample":
        return FieldSample(*(project(getattr(self, f), mode) for f in ("psi", "u", "v", "p", "omega")))

    @property
    def real(self) -> "FieldSample":
        return self.project("real")


@dataclass(frozen=True)
class FlowSolution:
    """Base class for a solution family; subclasses set ``family``."""

    params: FluidParams
    family: ClassVar[str] = ""
    derived: DerivedParams = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "derived", derive(self.params))

    @property
    def hd(self) -> complex:
        """Combined magnetic and Darcy damping H + mu/K."""
        return self.derived.h_factor + self.params.drag

    # evaluation ----------------------------------------------------------------
    def derivative(self, i: int, j: int, x, y):
        raise NotImplementedError

    def psi(self, x, y):
        return self.derivative(0, 0, x, y)

    def velocity(self, x, y):
        return self.derivative(0, 1, x, y), -self.derivative(1, 0, x, y)

    def vorticity(self, x, y):
        return -(self.derivative(2, 0, x, y) + self.derivative(0, 2, x, y))

    def printed_pressure(self, x, y):
        """Pressure from the family's closed-form expression, or NaN if none exists."""
        shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
        return np.full(shape, np.nan + 0j)

    @property
    def has_printed_pressure(self) -> bool:
        return False

    def streamline_y(self, level, x):
        raise NoClosedFormError(f"family {self.family} has no closed-form streamline")

    @property
    def length_scale(self) -> float:
        """Shortest e-folding length among the exponentials in psi."""
        return 1.0

    @property
    def exact(self) -> bool:
        """False when built with a constraint knowingly relaxed."""
        return True

    def shape_constants(self) -> dict:
        raise NotImplementedError


def length_from_rates(rates) -> float:
    k = max((abs(r) for r in rates), default=0.0)
    return 1.0 / k if k > 1.0 else 1.0


def eval_field(sol: FlowSolution, x, y) -> FieldSample:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    psi = sol.psi(x, y)
    u, v = sol.velocity(x, y)
    return FieldSample(psi=psi, u=u, v=v, p=sol.printed_pressure(x, y), omega=sol.vorticity(x, y))


def is_real(value, tol: float = 0.0) -> bool:
    return abs(complex(value).imag) <= tol * max(1.0, abs(complex(value)))


def as_number(value):
    """Collapse a complex with zero imaginary part to float, for serialisation."""
    value = complex(value)
    return value.real if value.imag == 0 else value


def encode_number(value):
    value = complex(value)
    if value.imag == 0:
        re = value.real
        return "inf" if math.isinf(re) else re
    return [value.real, value.imag]


def decode_number(value):
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "+inf", "infinity"):
            return math.inf
        return as_number(complex(value.replace(" ", "")))
    return value
