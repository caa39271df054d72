"""Riabouchinsky flow psi = y * delta * (1 + lambda exp(sigma x))."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import FluidParams, derive
from ..errors import NoClosedFormError, ParameterError, ResonanceError
from .base import ExpTerm, FlowSolution, exp_poly_derivative, is_real, length_from_rates


@dataclass(frozen=True)
class FamilyB(FlowSolution):
    family = "B"

    sigma_exp: float = 1.0
    lambda_shape: float = 1.0
    delta_amp: complex = 0j
    p1: float = 0.0

    def terms(self):
        return (
            ExpTerm(self.delta_amp, py=1),
            ExpTerm(self.delta_amp * self.lambda_shape, kx=self.sigma_exp, py=1),
        )

    def derivative(self, i, j, x, y):
        return exp_poly_derivative(self.terms(), i, j, x, y)

    @property
    def length_scale(self):
        return length_from_rates((self.sigma_exp,))

    @property
    def has_printed_pressure(self):
        return True

    def printed_pressure(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        rho, alpha1, mu = self.params.rho, self.params.alpha1, self.params.mu
        s, lam, ab = self.sigma_exp, self.lambda_shape, self.delta_amp
        e1 = np.exp(s * x)
        e2 = np.exp(2 * s * x)
        return (self.p1 + mu * s * ab * (1 - s * s * y * y / 2) * lam * e1
                - 0.5 * rho * (ab * ab * (1 - lam * lam * e2))
                + alpha1 * (ab * ab * s * s * lam * e1 + ab * ab * s * s * lam * lam * (3 + s * s * y * y / 2) * e2))

    def streamline_y(self, level, x):
        if not (is_real(self.sigma_exp) and is_real(self.lambda_shape)):
            raise NoClosedFormError("closed-form streamline needs real sigma and lambda")
        eps = complex(self.delta_amp).real
        if eps == 0:
            raise NoClosedFormError("real part of delta vanishes")
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            y = level / ((1.0 + self.lambda_shape * np.exp(self.sigma_exp * x)) * eps)
        return y if np.ndim(y) else float(y)

    def shape_constants(self):
        return {"sigma_exp": self.sigma_exp, "lambda_shape": self.lambda_shape, "p1": self.p1}


def family_b_delta(params: FluidParams, sigma_exp) -> complex:
    """Amplitude [mu s - (H + mu/K)/s] / (rho - alpha1 s**2)."""
    if sigma_exp == 0:
        raise ParameterError("sigma_exp must be nonzero")
    denom = params.rho - params.alpha1 * sigma_exp ** 2
    if denom == 0:
        raise ResonanceError(f"rho = alpha1*sigma**2 for sigma={sigma_exp!r}")
    hd = derive(params).h_factor + params.drag
    return (params.mu * sigma_exp - hd / sigma_exp) / denom


def build_family_b(params: FluidParams, sigma_exp=1.0, lambda_shape=1.0, p1=0.0) -> FamilyB:
    delta = family_b_delta(params, sigma_exp)
    return FamilyB(params=params, sigma_exp=sigma_exp, lambda_shape=lambda_shape,
                   delta_amp=delta, p1=p1)
