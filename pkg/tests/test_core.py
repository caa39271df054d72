import math

import pytest

from hallflow.core import INF, FluidParams, ThermoClass, derive, validate_thermodynamic
from hallflow.errors import InvalidDensityError, ParameterError


def test_derived_constants_match_definitions():
    p = FluidParams(rho=2.0, mu=1.0, alpha1=0.4, alpha2=-0.4, permeability=0.5,
                    conductivity=3.0, b0=0.5, hall=1.0)
    d = derive(p)
    assert d.nu == 0.5 and d.lambda_sg == 0.2
    assert d.n_mhd == pytest.approx(3.0 * 0.25 / 2.0)
    h = 3.0 * 0.25 * (1 + 1j) / 2
    assert d.h_factor == pytest.approx(h)
    assert d.chi * p.rho == pytest.approx(h)
    assert p.drag == 2.0


def test_infinite_permeability_has_exact_zero_drag():
    p = FluidParams.from_ratios(0.5, 0.1, permeability=INF)
    assert p.drag == 0.0
    assert FluidParams.from_dict({"mu": 0.5, "K": "inf"}).permeability == math.inf


@pytest.mark.parametrize("kw,err", [
    ({"rho": 0.0}, InvalidDensityError),
    ({"rho": -1.0}, InvalidDensityError),
    ({"mu": -0.1}, ParameterError),
    ({"permeability": 0.0}, ParameterError),
    ({"hall": -1.0}, ParameterError),
])
def test_invalid_parameters_rejected(kw, err):
    base = dict(rho=1.0, mu=0.5, alpha1=0.1, alpha2=-0.1)
    base.update(kw)
    with pytest.raises(err):
        FluidParams(**base)


def test_only_ratios_matter():
    a = derive(FluidParams.from_ratios(0.5, 0.1, n_mhd=0.5, hall=1.0, permeability=2.0, rho=1.0))
    b = derive(FluidParams.from_ratios(0.5, 0.1, n_mhd=0.5, hall=1.0, permeability=2.0, rho=3.0))
    assert a.nu == pytest.approx(b.nu) and a.lambda_sg == pytest.approx(b.lambda_sg)
    assert a.chi == pytest.approx(b.chi)


def test_thermodynamic_classification():
    assert validate_thermodynamic(FluidParams.from_ratios(0.5, 0.1)) is ThermoClass.COMPATIBLE
    assert validate_thermodynamic(FluidParams.from_ratios(0.5, -0.5)) is ThermoClass.EXPERIMENTAL_SIGN
    p = FluidParams(rho=1.0, mu=0.5, alpha1=0.1, alpha2=0.3)
    assert validate_thermodynamic(p) is ThermoClass.CROSS_VISCOSITY_VIOLATION


def test_dict_round_trip_and_unknown_keys():
    p = FluidParams.from_ratios(0.5, 0.1, n_mhd=0.5, hall=1.0, permeability=2.1)
    assert FluidParams.from_dict(p.to_dict()) == p
    with pytest.raises(ParameterError):
        FluidParams.from_dict({"mu": 1.0, "viscosity": 2.0})
