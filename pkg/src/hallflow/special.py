"""Principal-branch Lambert W and the Gauss hypergeometric series.

Both are written from scratch: the streamline formulas need W0 on real
arguments near the branch point, and the Riabouchinsky subcase needs 2F1 with
complex parameters on the negative real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError, RegionError

BRANCH_POINT = -math.exp(-1.0)

_HALLEY_MAX_ITER = 64


def _w0_initial(z):
    """Starting guess for Halley iteration on the principal branch."""
    z = np.asarray(z, dtype=complex)
    w = np.empty_like(z)

    near_bp = np.abs(z - BRANCH_POINT) < 0.3
    # series in p = sqrt(2(e z + 1)) about the branch point
    p = np.sqrt(2.0 * (math.e * z[near_bp] + 1.0))
    w[near_bp] = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3

    # wedge around the cut left of the branch point: log asymptotics, whose
    # principal logs put the start on the correct side of the cut
    cut = ~near_bp & (z.real < BRANCH_POINT) & (np.abs(z.imag) < 0.75 * (BRANCH_POINT - z.real))
    l1 = np.log(z[cut])
    l2 = np.log(l1)
    w[cut] = l1 - l2 + l2 / l1

    # elsewhere Winitzki's global approximation
    rest = ~near_bp & ~cut
    lg = np.log1p(z[rest])
    w[rest] = lg * (1.0 - np.log1p(lg) / (2.0 + lg))
    return w


@np.errstate(divide="ignore", invalid="ignore")
def _halley(z, w):
    for _ in range(_HALLEY_MAX_ITER):
        ew = np.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        # exact zero residual (e.g. z = 0) leaves w untouched
        step = np.where((f == 0) | ~np.isfinite(denom), 0.0, f / np.where(denom == 0, 1.0, denom))
        w = w - step
        if np.all(np.abs(step) <= 4e-16 * (1.0 + np.abs(w))):
            break
    return w


def lambert_w0(z):
    """Principal branch W0 of the inverse of w -> w*exp(w).

    Real input must satisfy ``z >= -1/e`` and yields real output; complex input
    is evaluated anywhere off the cut ``(-inf, -1/e)``. Scalars in, scalars out.
    """
    scalar = np.ndim(z) == 0
    arr = np.asarray(z)
    real_input = not np.iscomplexobj(arr)

    if real_input:
        arr = arr.astype(float)
        bad = arr < BRANCH_POINT
        # allow the last-ulp rounding of -1/e itself
        bad &= ~np.isclose(arr, BRANCH_POINT, rtol=0.0, atol=4e-17)
        if np.any(bad):
            first = arr[bad].flat[0]
            raise DomainError(
                f"lambert_w0 argument {first!r} is below the branch point -1/e = {BRANCH_POINT!r}"
            )
        arr = np.maximum(arr, BRANCH_POINT)

    zc = np.asarray(arr, dtype=complex).ravel()
    w = _halley(zc, _w0_initial(zc))
    # exact branch point
    w[zc == BRANCH_POINT] = -1.0
    w = w.reshape(np.shape(arr))
    if real_input:
        w = w.real
    if scalar:
        return w.item()
    return w


@dataclass(frozen=True)
class SeriesConfig:
    """Termination controls for the hypergeometric series."""

    max_terms: int = 4000
    tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")


DEFAULT_SERIES = SeriesConfig()

CORE_RADIUS = 0.5


def _is_nonpositive_integer(c: complex) -> bool:
    c = complex(c)
    if c.imag != 0:
        return False
    r = round(c.real)
    return r <= 0 and abs(c.real - r) < 1e-14


def _series(a, b, c, z, cfg):
    """Direct partial sums of sum (a)_k (b)_k / (c)_k z^k / k! over an array of z."""
    total = np.ones_like(z)
    term = np.ones_like(z)
    done = np.zeros(z.shape, dtype=bool)
    quiet = np.zeros(z.shape, dtype=int)
    for k in range(cfg.max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * z
        total = total + term
        small = np.abs(term) <= cfg.tol * np.abs(total)
        # two consecutive small terms guard against an accidental near-zero term
        quiet = np.where(small, quiet + 1, 0)
        done |= (quiet >= 2) | (term == 0)
        if done.all():
            return total
    bad = z[~done]
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; z) did not converge in {cfg.max_terms} terms for z={complex(bad.flat[0])!r}"
    )


def _regions(z):
    mag = np.abs(z)
    direct = mag <= CORE_RADIUS
    with np.errstate(divide="ignore", invalid="ignore"):
        wmag = np.abs(z / (z - 1.0))
    pfaff = ~direct & (z != 1) & (wmag < mag) & (wmag < 1.0)
    return direct, pfaff


def hyp2f1_region(z):
    """Classify one argument: 'direct', 'pfaff', or None (unsupported)."""
    direct, pfaff = _regions(np.asarray([z], dtype=complex))
    if direct[0]:
        return "direct"
    return "pfaff" if pfaff[0] else None


def hyp2f1(a, b, c, z, cfg: SeriesConfig = DEFAULT_SERIES):
    """Gauss hypergeometric function by its power series.

    Arguments with ``|z| <= 0.5`` are summed directly. Beyond that one Pfaff
    transformation ``z -> z/(z-1)`` is applied when it shrinks the argument;
    anything else, including the cut ``[1, inf)``, raises :class:`RegionError`.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"2F1 has a pole: c={c!r} is a non-positive integer")
    scalar = np.ndim(z) == 0
    zc = np.asarray(z, dtype=complex).ravel()
    a, b, c = complex(a), complex(b), complex(c)
    out = np.empty_like(zc)

    direct, pfaff = _regions(zc)
    unsupported = ~(direct | pfaff)
    if unsupported.any():
        raise RegionError(
            f"2F1 argument z={complex(zc[unsupported][0])!r} lies outside the supported region "
            f"(|z| <= {CORE_RADIUS} or a Pfaff-reducible point off the cut [1, inf))"
        )
    if direct.any():
        out[direct] = _series(a, b, c, zc[direct], cfg)
    if pfaff.any():
        zp = zc[pfaff]
        w = zp / (zp - 1.0)
        out[pfaff] = (1.0 - zp) ** (-a) * _series(a, c - b, c, w, cfg)

    if np.isrealobj(z) and a.imag == b.imag == c.imag == 0:
        out = out.real
    if scalar:
        return out[0].item()
    return out.reshape(np.shape(z))


def pochhammer(x, n: int):
    """Rising factorial (x)_n as a running product."""
    result = 1.0 + 0j if isinstance(x, complex) else 1.0
    for k in range(n):
        result *= x + k
    return result


def hyp2f1_deriv(a, b, c, z, n: int = 1, cfg: SeriesConfig = DEFAULT_SERIES):
    """n-th derivative in z: (a)_n (b)_n / (c)_n * 2F1(a+n, b+n; c+n; z)."""
    if n == 0:
        return hyp2f1(a, b, c, z, cfg)
    a, b, c = complex(a), complex(b), complex(c)
    coef = pochhammer(a, n) * pochhammer(b, n) / pochhammer(c, n)
    return coef * np.asarray(hyp2f1(a + n, b + n, c + n, z, cfg), dtype=complex)
