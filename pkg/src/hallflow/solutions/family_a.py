"""Additively separable flows psi = xi(x) + eta(y).

With xi = A x + B exp(a x) and eta = C y + D exp(b y) the compatibility
equation splits into one relation fixing A, one fixing C, and the cross-term
condition (b**2 - a**2) * (rho - alpha1 (a**2 + b**2)) = 0, which selects the
three cases: b = a, b = -a, or the density constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import FluidParams, derive
from ..errors import (ConstraintViolationError, FamilyInapplicableError, NoClosedFormError,
                      ParameterError, ResonanceError)
from ..special import lambert_w0
from .base import ExpTerm, FlowSolution, exp_poly_derivative, is_real, length_from_rates

CONSTRAINT_RTOL = 1e-12


def _wave_coefficient(params: FluidParams, h: complex, k: complex) -> complex:
    """[mu k - H/k - mu/(K k)] / (rho - alpha1 k**2), shared by A and C."""
    denom = params.rho - params.alpha1 * k * k
    if denom == 0:
        raise ResonanceError(
            f"rho = alpha1*k**2 for wave number k={k!r}: coefficient denominator vanishes"
        )
    return (params.mu * k - h / k - params.drag / k) / denom


@dataclass(frozen=True)
class FamilyA(FlowSolution):
    case: int = 1
    a: complex = 1.0
    b: complex = 1.0
    B_amp: float = 1.0
    D_amp: float = 1.0
    p0: float = 0.0
    A: complex = 0j
    C: complex = 0j
    constraint_residual: float = 0.0

    @property
    def family(self):
        return f"A{self.case}"

    @property
    def abar(self) -> complex:
        return self.C

    @property
    def bbar(self) -> complex:
        return -self.A

    def terms(self):
        return (
            ExpTerm(self.A, px=1),
            ExpTerm(self.C, py=1),
            ExpTerm(self.B_amp, kx=self.a),
            ExpTerm(self.D_amp, ky=self.b),
        )

    def derivative(self, i, j, x, y):
        return exp_poly_derivative(self.terms(), i, j, x, y)

    @property
    def length_scale(self):
        return length_from_rates((self.a, self.b))

    @property
    def exact(self):
        return self.case != 3 or self.constraint_residual <= CONSTRAINT_RTOL

    # printed closed forms ---------------------------------------------------
    @property
    def has_printed_pressure(self):
        return True

    def printed_pressure(self, x, y):
        """Pressure exactly as printed for each case, reference value ``p0``."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        rho, alpha1, mu = self.params.rho, self.params.alpha1, self.params.mu
        a, b, B, D = self.a, self.b, self.B_amp, self.D_amp
        eax = np.exp(a * x)
        common = self.p0 - mu * B * a ** 3 * y * eax
        if self.case == 1:
            cross = np.exp(a * (x + y))
            return (common - rho * self.abar ** 2
                    + (rho - alpha1 * a * a) * (a * a * B * y * eax + a * a * D * B * cross)
                    + alpha1 * (B * B * a ** 4 * np.exp(2 * a * x) + D * D * a ** 4 * np.exp(2 * a * y)
                                - D * B * a ** 4 * cross))
        if self.case == 2:
            cross = np.exp(a * (x - y))
            return (common - rho * self.abar ** 2
                    + (rho - alpha1 * a * a) * (a * a * B * y * eax + a * a * D * B * cross)
                    + alpha1 * (B * B * a ** 4 * np.exp(2 * a * x) + D * D * a ** 4 * np.exp(-2 * a * y)
                                - D * B * a ** 4 * cross))
        cross = np.exp(a * x + b * y)
        return (common - 0.5 * rho * (self.abar ** 2 + self.bbar ** 2)
                + (rho - alpha1 * a * a) * (a * a * B * y * eax + a * a * D * B * cross)
                + alpha1 * (B * B * a ** 4 * np.exp(2 * a * x) + D * D * a ** 4 * np.exp(2 * b * y)
                            - D * B * a ** 4 * b * b * cross))

    def psi_alternate(self, x, y, form: int):
        """Case-3 stream function with one denominator rewritten via the constraint.

        ``form=1`` replaces rho - alpha1 a**2 by alpha1 b**2 in the y-coefficient,
        ``form=2`` replaces rho - alpha1 b**2 by alpha1 a**2 in the x-coefficient.
        """
        if self.case != 3:
            raise FamilyInapplicableError("alternate forms exist only for case 3")
        p, a, b = self.params, self.a, self.b
        h = self.derived.h_factor
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        num_a = p.mu * a - h / a - p.drag / a
        num_b = p.mu * b - h / b - p.drag / b
        if form == 1:
            lin = -x / (p.rho - p.alpha1 * b * b) * num_b + y / (p.alpha1 * b * b) * num_a
        elif form == 2:
            lin = -x / (p.alpha1 * a * a) * num_b + y / (p.rho - p.alpha1 * a * a) * num_a
        else:
            raise ValueError("form must be 1 or 2")
        return lin + self.B_amp * np.exp(a * x) + self.D_amp * np.exp(b * y)

    def streamline_y(self, level, x):
        """Solve Re(psi(x, y)) = level for y with the principal Lambert W.

        Writing Re(psi) = f(x) + c y + D exp(b y), the solution is
        y = T - W0(D b / c * exp(b T)) / b with T = (level - f(x)) / c.
        Points where the W argument drops below -1/e come back as NaN.
        """
        if not (is_real(self.b) and is_real(self.D_amp)):
            raise NoClosedFormError("closed-form streamline needs real b and D in the real projection")
        b = complex(self.b).real
        D = complex(self.D_amp).real
        c = complex(self.C).real
        if c == 0:
            raise NoClosedFormError("real part of the y-coefficient vanishes")
        x = np.asarray(x, dtype=float)
        f = np.real(self.A * x + self.B_amp * np.exp(self.a * x))
        T = (level - f) / c
        if D == 0:
            return T
        with np.errstate(over="ignore", invalid="ignore"):
            arg = D * b / c * np.exp(b * T)
        ok = np.isfinite(arg) & (arg >= -np.exp(-1.0))
        y = np.full(arg.shape, np.nan)
        if np.any(ok):
            y[ok] = T[ok] - lambert_w0(arg[ok]) / b
        return y if y.ndim else float(y)

    def shape_constants(self):
        return {"case": self.case, "a": self.a, "b": self.b, "B": self.B_amp,
                "D": self.D_amp, "p0": self.p0}


def build_family_a(params: FluidParams, case: int, a, b=None, B_amp=1.0, D_amp=1.0,
                   p0=0.0, strict: bool = True) -> FamilyA:
    """Construct one of the three xi(x) + eta(y) solutions.

    ``b`` defaults to ``a`` (case 1) or ``-a`` (case 2). For case 3 the density
    constraint is enforced unless ``strict=False``, in which case the solution is
    still built but reports ``exact == False``.
    """
    if case not in (1, 2, 3):
        raise ParameterError(f"case must be 1, 2 or 3, got {case!r}")
    a = complex(a)
    if b is None:
        if case == 3:
            raise ParameterError("case 3 needs an explicit b")
        b = a if case == 1 else -a
    b = complex(b)
    if a == 0 or b == 0:
        raise ParameterError("wave numbers a and b must be nonzero")
    if case == 1 and b != a:
        raise ParameterError(f"case 1 requires b = a, got a={a}, b={b}")
    if case == 2 and b != -a:
        raise ParameterError(f"case 2 requires b = -a, got a={a}, b={b}")

    residual = 0.0
    if case == 3:
        if params.alpha1 == 0:
            raise FamilyInapplicableError("case 3 needs alpha1 != 0")
        if b * b == a * a:
            raise ParameterError("case 3 requires b**2 != a**2")
        residual = abs(params.rho - params.alpha1 * (a * a + b * b)) / params.rho
        if strict and residual > CONSTRAINT_RTOL:
            raise ConstraintViolationError(
                f"case 3 requires rho = alpha1*(a**2 + b**2): rho={params.rho}, "
                f"alpha1*(a**2+b**2)={params.alpha1 * (a * a + b * b)}"
            )

    h = derive(params).h_factor
    C = _wave_coefficient(params, h, a)
    A = -_wave_coefficient(params, h, b)
    return FamilyA(params=params, case=case, a=_num(a), b=_num(b), B_amp=_num(B_amp),
                   D_amp=_num(D_amp), p0=p0, A=A, C=C, constraint_residual=residual)


def _num(v):
    v = complex(v)
    return v.real if v.imag == 0 else v
