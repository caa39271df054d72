"""Flows psi = y xi(x) + eta(x) with xi = A1 (1 + lambda exp(x)).

For lambda = 0 the eta equation has constant coefficients and eta is a sum of
exponentials whose rates come from a quadratic (subcases ``C1`` and ``C2s1``;
the two differ only in how the quadratic's coefficients are written). For
lambda != 0 the reduced equation is hypergeometric in theta = exp(x)
(``C2s2``) and eta is recovered by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
from scipy.integrate import quad_vec

from ..core import FluidParams, derive
from ..errors import (ConvergenceError, DegenerateRootError, FamilyInapplicableError,
                      NoClosedFormError, ParameterError, RegionError, ResonanceError)
from ..special import DEFAULT_SERIES, SeriesConfig, hyp2f1, hyp2f1_deriv
from .base import ExpTerm, FlowSolution, exp_poly_derivative, length_from_rates

# Stirling numbers of the second kind, S(n, k) for n <= 4
_STIRLING2 = {
    0: {0: 1},
    1: {1: 1},
    2: {1: 1, 2: 1},
    3: {1: 1, 2: 3, 3: 1},
    4: {1: 1, 2: 7, 3: 6, 4: 1},
}


def c_coefficient_a1(params: FluidParams) -> complex:
    """A1 = [mu (1 - 1/K) - H] / (rho - alpha1), the xi amplitude at sigma = 1."""
    if params.rho == params.alpha1:
        raise ResonanceError("rho = alpha1: the sigma = 1 amplitude is singular")
    h = derive(params).h_factor
    return (params.mu - params.drag - h) / (params.rho - params.alpha1)


def _check_alpha1(params):
    if params.alpha1 == 0:
        raise FamilyInapplicableError("family C requires alpha1 != 0")


def quadratic_roots(p, q):
    """Roots (-p -+ sqrt(p**2 - 4q)) / 2 of m**2 + p m + q, principal complex sqrt."""
    sq = np.sqrt(complex(p * p - 4 * q))
    return (-p - sq) / 2, (-p + sq) / 2


@dataclass(frozen=True)
class FamilyCSeparable(FlowSolution):
    """lambda = 0: psi = A1 y + sum_i k_i exp((1 + m_i) x) + amp_e exp(x) + amp_0."""

    subcase: str = "C1"
    A1: complex = 0j
    coef_p: complex = 0j  # c (C1) or X1 (C2s1)
    coef_q: complex = 0j  # d (C1) or X2 (C2s1)
    m1: complex = 0j
    m2: complex = 0j
    amp1: complex = 1.0  # A3 or C1
    amp2: complex = 1.0  # A4 or C2
    amp_e: complex = 1.0  # A5 or C3
    amp_0: complex = 1.0  # A6 or C4
    p_ref: float = 0.0  # p2 or p3

    @property
    def family(self):
        return self.subcase

    def eta_terms(self):
        return (
            ExpTerm(self.amp1 / (self.m1 * (1 + self.m1)), kx=1 + self.m1),
            ExpTerm(self.amp2 / (self.m2 * (1 + self.m2)), kx=1 + self.m2),
            ExpTerm(self.amp_e, kx=1.0),
            ExpTerm(self.amp_0),
        )

    def terms(self):
        return (ExpTerm(self.A1, py=1),) + self.eta_terms()

    def derivative(self, i, j, x, y):
        return exp_poly_derivative(self.terms(), i, j, x, y)

    def eta(self, x, n: int = 0):
        x = np.asarray(x, dtype=float)
        return exp_poly_derivative(self.eta_terms(), n, 0, x, np.zeros_like(x))

    @property
    def length_scale(self):
        return length_from_rates((1 + self.m1, 1 + self.m2, 1.0))

    @property
    def has_printed_pressure(self):
        return True

    def printed_pressure(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        rho, alpha1 = self.params.rho, self.params.alpha1
        m1, m2 = self.m1, self.m2
        c1, c2, c3 = self.amp1, self.amp2, self.amp_e
        bracket = (c1 * c1 / (m1 * m1) * np.exp(2 * (1 + m1) * x)
                   + 2 * c1 * c2 / (m1 * m2) * np.exp((2 + m1 + m2) * x)
                   + c2 * c2 / (m2 * m2) * np.exp(2 * (1 + m2) * x)
                   + c3 * c3 * np.exp(2 * x)
                   + 2 * c1 * c3 * (2 + 3 * m1 + m1 * m1) / ((2 + m1) * m1) * np.exp((2 + m1) * x)
                   + 2 * c2 * c3 * (2 + 3 * m2 + m2 * m2) / ((2 + m2) * m2) * np.exp((2 + m2) * x))
        return self.p_ref - 0.5 * rho * self.A1 ** 2 + alpha1 * bracket + 0 * y

    def streamline_y(self, level, x):
        """y = (level - Re eta(x)) / Re A1, the level set of Re(psi)."""
        eps1 = complex(self.A1).real
        if eps1 == 0:
            raise NoClosedFormError("real part of A1 vanishes")
        x = np.asarray(x, dtype=float)
        y = (level - np.real(self.eta(x))) / eps1
        return y if np.ndim(y) else float(y)

    def shape_constants(self):
        if self.subcase == "C1":
            names = ("A3", "A4", "A5", "A6", "p2")
        else:
            names = ("C1", "C2", "C3", "C4", "p3")
        return dict(zip(names, (self.amp1, self.amp2, self.amp_e, self.amp_0, self.p_ref)))


def _separable(params, subcase, p, q, amps, p_ref):
    m1, m2 = quadratic_roots(p, q)
    for m, amp in ((m1, amps[0]), (m2, amps[1])):
        if amp != 0 and m * (1 + m) == 0:
            raise DegenerateRootError(f"root m={m} makes m(1+m) vanish")
    return FamilyCSeparable(params=params, subcase=subcase, A1=c_coefficient_a1(params),
                            coef_p=p, coef_q=q, m1=m1, m2=m2, amp1=amps[0], amp2=amps[1],
                            amp_e=amps[2], amp_0=amps[3], p_ref=p_ref)


def c1_coefficients(params: FluidParams):
    """(A1, c, d) for lambda = 0 written through A1."""
    _check_alpha1(params)
    A1 = c_coefficient_a1(params)
    if A1 == 0:
        raise DegenerateRootError("A1 = 0: the quadratic coefficients are undefined")
    a1, rho, mu = params.alpha1, params.rho, params.mu
    c = (3 * a1 * A1 + mu) / (a1 * A1)
    d = ((3 * a1 - rho) * A1 + 2 * mu) / (a1 * A1)
    return A1, c, d


def c2_coefficients(params: FluidParams):
    """(X1, X2, X3) written through K, mu and H."""
    _check_alpha1(params)
    a1, rho, mu, K = params.alpha1, params.rho, params.mu, params.permeability
    h = derive(params).h_factor
    if math.isinf(K):
        # K -> inf limit of K mu (rho - alpha1) / (K (mu - H) - mu)
        if mu - h == 0:
            raise ParameterError("K(mu - H) = mu: reduced equation is singular")
        g = mu * (rho - a1) / (mu - h)
    else:
        den = K * (mu - h) - mu
        if den == 0:
            raise ParameterError("K(mu - H) = mu: reduced equation is singular")
        g = K * mu * (rho - a1) / den
    X1 = g / a1 + 3
    X2 = 2 * g / a1 + (3 * a1 - rho) / a1
    X3 = (2 * a1 - rho) / a1
    return X1, X2, X3


def build_family_c(params: FluidParams, subcase: str = "C1", lambda_shape=0.0,
                   consts: dict | None = None, cfg: SeriesConfig = DEFAULT_SERIES):
    """Build a ``C1``, ``C2s1`` or ``C2s2`` solution.

    ``consts`` holds the integration constants: A3..A6 and p2 for C1, C1..C4 and
    p3 for C2s1, C1, C5 and p3 for C2s2. Missing ones default to 1 (pressures 0).
    For C2s2, ``x0`` (default 0) is the lower limit of the eta quadratures; it
    must lie where the hypergeometric series converge, e.g. x0 < 0 when lambda < 0.
    """
    consts = dict(consts or {})
    if subcase in ("C1", "C2s1"):
        if lambda_shape != 0:
            raise ParameterError(f"{subcase} is the lambda = 0 case")
    if subcase == "C1":
        _, c, d = c1_coefficients(params)
        amps = [complex(consts.get(k, 1.0)) for k in ("A3", "A4", "A5", "A6")]
        return _separable(params, "C1", c, d, amps, float(consts.get("p2", 0.0)))
    if subcase == "C2s1":
        c1_coefficients(params)  # alpha1 and rho checks, A1 != 0
        X1, X2, _ = c2_coefficients(params)
        amps = [complex(consts.get(k, 1.0)) for k in ("C1", "C2", "C3", "C4")]
        return _separable(params, "C2s1", X1, X2, amps, float(consts.get("p3", 0.0)))
    if subcase == "C2s2":
        if lambda_shape == 0:
            raise ParameterError("C2s2 needs lambda != 0")
        c1_coefficients(params)
        X1, X2, X3 = c2_coefficients(params)
        return FamilyCHypergeometric(
            params=params, lambda_shape=float(lambda_shape), A1=c_coefficient_a1(params),
            X1=X1, X2=X2, X3=X3, C1=complex(consts.get("C1", 1.0)),
            C5=complex(consts.get("C5", 1.0)), p3=float(consts.get("p3", 0.0)), cfg=cfg,
            anchor=float(consts.get("x0", 0.0)))
    raise ParameterError(f"unknown family C subcase {subcase!r}")


@dataclass(frozen=True)
class FamilyCHypergeometric(FlowSolution):
    """lambda != 0: the reduced equation solved by Gauss hypergeometric functions.

    With theta = exp(x) and s = sqrt(X1**2 - 4 X2), m1 = (-X1 - s)/2,

        R = theta**m1 [C5 theta**s F(Phi1/2, Phi2/2; 1 + s; -lambda theta)
                       + C1 F(Phi3/2, Phi4/2; 1 - s; -lambda theta)],

    then P = int_x0^x R, eta' = exp(x) P and eta = int_x0^x exp(t) P(t) dt, all
    integration constants zero (x0 is ``anchor``).
    """

    family = "C2s2"

    lambda_shape: float = 1.0
    A1: complex = 0j
    X1: complex = 0j
    X2: complex = 0j
    X3: complex = 0j
    C1: complex = 1.0
    C5: complex = 1.0
    p3: float = 0.0
    cfg: SeriesConfig = DEFAULT_SERIES
    anchor: float = 0.0

    @cached_property
    def sqrt_disc(self) -> complex:
        return complex(np.sqrt(complex(self.X1 * self.X1 - 4 * self.X2)))

    @cached_property
    def m1(self) -> complex:
        return (-self.X1 - self.sqrt_disc) / 2

    @cached_property
    def phis(self):
        s, r = self.sqrt_disc, complex(np.sqrt(complex(1 - self.X3)))
        base = 2 - self.X1
        return (base + s - 2 * r, base + s + 2 * r, base - s - 2 * r, base - s + 2 * r)

    @cached_property
    def branches(self):
        """(amplitude, theta exponent, a, b, c) for each hypergeometric piece."""
        s = self.sqrt_disc
        p1, p2, p3, p4 = self.phis
        return (
            (self.C5, self.m1 + s, p1 / 2, p2 / 2, 1 + s),
            (self.C1, self.m1, p3 / 2, p4 / 2, 1 - s),
        )

    # R as a function of theta ----------------------------------------------
    def R_theta(self, theta, n: int = 0):
        """n-th theta-derivative of R (n <= 3), via the 2F1 derivative formula."""
        theta = np.asarray(theta, dtype=float)
        z = -self.lambda_shape * theta
        out = np.zeros(theta.shape, dtype=complex)
        for amp, ex, a, b, c in self.branches:
            if amp == 0:
                continue
            for k in range(n + 1):
                # d^(n-k) theta**ex
                falling = 1.0 + 0j
                for r in range(n - k):
                    falling *= ex - r
                dF = hyp2f1_deriv(a, b, c, z, k, self.cfg) * (-self.lambda_shape) ** k
                out = out + amp * comb(n, k) * falling * theta ** (ex - (n - k)) * dF
        return out

    def theta_ode_residual(self, theta, bracket_coefficient: float = 3.0):
        """Pointwise residual and term scale of the theta-form reduced equation.

        (1 + l t) t**2 R'' + (1 + X1 + k l t) t R' + (X2 + X3 l t) R, with k the
        ``bracket_coefficient``; k = 3 is what substituting theta = exp(x) yields.
        """
        t = np.asarray(theta, dtype=float)
        lam = self.lambda_shape
        R0, R1, R2 = (self.R_theta(t, n) for n in range(3))
        terms = [
            (1 + lam * t) * t * t * R2,
            (1 + self.X1 + bracket_coefficient * lam * t) * t * R1,
            (self.X2 + self.X3 * lam * t) * R0,
        ]
        return sum(terms), np.max(np.abs(terms))

    def x_ode_residual(self, x):
        """Residual of (1 + l e^x) R'' + (X1 + 2 l e^x) R' + (X2 + X3 l e^x) R in x."""
        x = np.asarray(x, dtype=float)
        le = self.lambda_shape * np.exp(x)
        R0, R1, R2 = (self.R_x(x, n) for n in range(3))
        terms = [(1 + le) * R2, (self.X1 + 2 * le) * R1, (self.X2 + self.X3 * le) * R0]
        return sum(terms), np.max(np.abs(terms))

    # R as a function of x -------------------------------------------------------
    def R_x(self, x, n: int = 0):
        """n-th x-derivative of R(exp(x)) (n <= 4)."""
        x = np.asarray(x, dtype=float)
        z = -self.lambda_shape * np.exp(x)
        out = np.zeros(x.shape, dtype=complex)
        for amp, ex, a, b, c in self.branches:
            if amp == 0:
                continue
            # G(x) = F(z(x)); (z d/dz)^j F = sum_k S(j,k) z^k F^(k)
            G = []
            derivs = [hyp2f1_deriv(a, b, c, z, k, self.cfg) for k in range(n + 1)]
            for j in range(n + 1):
                G.append(sum(s * z ** k * derivs[k] for k, s in _STIRLING2[j].items()))
            e = np.exp(ex * x)
            for j in range(n + 1):
                out = out + amp * comb(n, j) * ex ** (n - j) * e * G[j]
        return out

    def check_region(self, x):
        """Raise RegionError if any x needs 2F1 outside its supported region."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        ends = np.unique(np.concatenate([x, [self.anchor]]))
        try:
            self.R_x(ends)
        except (RegionError, ConvergenceError) as exc:
            raise RegionError(f"C2s2 evaluation outside the supported 2F1 region: {exc}") from exc

    def supported(self, x):
        """Boolean mask of x values whose eta can be evaluated."""
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        ok = np.zeros(flat.shape, dtype=bool)
        for idx, xv in enumerate(flat):
            try:
                self.check_region([xv])
                ok[idx] = True
            except RegionError:
                pass
        return ok.reshape(x.shape)

    def _integrals(self, x):
        """P(x) = int_x0^x R dt and Q(x) = int_x0^x R e^t dt by adaptive Gauss-Kronrod."""
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        uniq, inv = np.unique(flat, return_inverse=True)
        self.check_region(uniq)
        P = np.zeros(uniq.shape, dtype=complex)
        Q = np.zeros(uniq.shape, dtype=complex)
        # both integrals vanish at the anchor, and quad_vec cannot converge on
        # an identically zero integrand with epsabs = 0
        moving = uniq != self.anchor
        if np.any(moving):
            span = uniq[moving] - self.anchor

            def integrand(s):
                t = self.anchor + span * s
                r = self.R_x(t)
                return np.concatenate([span * r, span * r * np.exp(t)])

            vals, _ = quad_vec(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, norm="max")
            P[moving] = vals[: len(span)]
            Q[moving] = vals[len(span):]
        return P[inv].reshape(x.shape), Q[inv].reshape(x.shape)

    def eta(self, x, n: int = 0):
        """eta and its x-derivatives up to order 5."""
        x = np.asarray(x, dtype=float)
        P, Q = self._integrals(x)
        ex = np.exp(x)
        if n == 0:
            return ex * P - Q
        # eta^(n) = e^x sum_k C(n-1, k) P^(k),  P^(k) = R^(k-1)
        total = P.astype(complex)
        for k in range(1, n):
            total = total + comb(n - 1, k) * self.R_x(x, k - 1)
        return ex * total

    def xi(self, x, n: int = 0):
        x = np.asarray(x, dtype=float)
        e = self.A1 * self.lambda_shape * np.exp(x)
        return self.A1 + e if n == 0 else e + 0j

    def derivative(self, i, j, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        if j == 0:
            return y * self.xi(x, i) + self.eta(x, i)
        if j == 1:
            return self.xi(x, i) + 0 * y
        return np.zeros(x.shape, dtype=complex)

    @property
    def length_scale(self):
        return length_from_rates((self.m1 + 1, self.m1 + self.sqrt_disc + 1, 1.0))

    def streamline_y(self, level, x):
        raise NoClosedFormError("the hypergeometric subcase has no closed-form streamline")

    def shape_constants(self):
        return {"lambda_shape": self.lambda_shape, "C1": self.C1, "C5": self.C5, "p3": self.p3,
                "x0": self.anchor}
