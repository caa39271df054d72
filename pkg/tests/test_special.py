import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import lambertw

from hallflow.errors import DomainError, PoleError, RegionError
from hallflow.special import (BRANCH_POINT, SeriesConfig, hyp2f1, hyp2f1_deriv, hyp2f1_region,
                              lambert_w0)


def test_lambert_known_values(oracle):
    lam = oracle["lambert"]
    assert lambert_w0(1.0) == pytest.approx(lam["W0(1)"], rel=1e-15)
    assert lambert_w0(10.0) == pytest.approx(lam["W0(10)"], rel=1e-15)
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(BRANCH_POINT) == pytest.approx(-1.0, abs=1e-7)
    w = lambert_w0(1 + 1j)
    assert abs(w - complex(*lam["W0(1+1j)"])) < 1e-15


def test_lambert_below_branch_point_names_it():
    with pytest.raises(DomainError, match="-1/e"):
        lambert_w0(-0.5)


def test_lambert_types():
    assert isinstance(lambert_w0(2.0), float)
    assert lambert_w0(np.array([0.1, 2.0])).dtype == float
    assert np.iscomplexobj(lambert_w0(np.array([-1.0 + 0.1j])))


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-0.36787944117144, max_value=1e12))
def test_lambert_residual_real(z):
    w = lambert_w0(z)
    assert w >= -1.0
    assert abs(w * math.exp(w) - z) <= 1e-13 * max(1.0, abs(z))


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), st.floats(-50, 50))
def test_lambert_matches_reference_complex(re, im):
    z = complex(re, im)
    if im == 0 and re < BRANCH_POINT:
        z = complex(re, 1e-3)
    ref = complex(lambertw(z, 0))
    # W is ill-conditioned right at the branch point
    tol = 1e-12 if abs(z - BRANCH_POINT) > 1e-6 else 1e-8
    assert abs(lambert_w0(np.array([z]))[0] - ref) <= tol * max(1.0, abs(ref))


@pytest.mark.parametrize("im", [1e-300, 1e-38, 1e-10, 0.1])
def test_lambert_either_side_of_cut(im):
    re = np.linspace(-60, -0.37, 2001)
    for sign in (1, -1):
        z = re + 1j * sign * im
        ref = lambertw(z, 0)
        assert np.max(np.abs(lambert_w0(z) - ref) / np.maximum(1, np.abs(ref))) < 1e-14


def test_near_branch_point_series():
    eps = np.array([1e-12, 1e-8, 1e-4, 1e-2])
    z = BRANCH_POINT + eps
    w = lambert_w0(z)
    assert np.all(np.abs(w * np.exp(w) - z) < 1e-15)


def test_hyp2f1_log_identity_and_origin():
    z = np.linspace(-0.5, 0.5, 41)
    z = z[z != 0]
    assert np.allclose(hyp2f1(1, 1, 2, z), -np.log1p(-z) / z, rtol=1e-14)
    assert hyp2f1(2.5, -1.3j, 0.7, 0.0) == 1


@pytest.mark.parametrize("a,b,c,z", [
    (0.5, 1.5, 2.0, -3.0),
    (1 + 2j, -0.5 + 1j, 3.3, -0.9),
    (-1.1 + 0.4j, 2.2 - 3j, 1.7 - 6j, -12.0),
    (0.3, 0.7, 1.1, 0.45 + 0.1j),
])
def test_hyp2f1_against_mpmath(a, b, c, z):
    ref = complex(mpmath.hyp2f1(a, b, c, z))
    assert abs(hyp2f1(a, b, c, z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_hyp2f1_polynomial_terminates():
    # F(-2, b; c; z) = 1 - 2 b z / c + b (b + 1) z^2 / (c (c + 1))
    b, c, z = 0.7, 1.9, 0.4
    ref = 1 - 2 * b * z / c + b * (b + 1) * z * z / (c * (c + 1))
    assert hyp2f1(-2, b, c, z) == pytest.approx(ref, rel=1e-15)


def test_hyp2f1_errors():
    with pytest.raises(PoleError):
        hyp2f1(1, 1, -2, 0.1)
    with pytest.raises(RegionError):
        hyp2f1(1, 1, 2, 3.0)
    with pytest.raises(RegionError):
        hyp2f1(1, 1, 2, 1.0)
    assert [hyp2f1_region(z) for z in (0.2, -4.0, 3.0)] == ["direct", "pfaff", None]


def test_hyp2f1_derivative():
    a, b, c, z = 0.4 + 1j, -1.2, 2.5 - 0.5j, -0.7
    for n in (1, 2, 3):
        ref = complex(mpmath.diff(lambda t: mpmath.hyp2f1(a, b, c, t), z, n))
        assert abs(hyp2f1_deriv(a, b, c, z, n) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_series_config_validation():
    with pytest.raises(ValueError):
        SeriesConfig(max_terms=0)
