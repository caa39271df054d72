"""Material and field constants for a second-grade MHD fluid in a porous channel.

Every quantity is a nondimensional number. Derived constants that can pick up
an imaginary part from the Hall factor are always stored as ``complex``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidDensityError, ParameterError

INF = math.inf


class ThermoClass(str, enum.Enum):
    COMPATIBLE = "compatible"
    EXPERIMENTAL_SIGN = "experimental-sign"
    CROSS_VISCOSITY_VIOLATION = "cross-viscosity-violation"


def _parse_permeability(value) -> float:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "+inf"):
            return INF
        return float(value)
    return float(value)


@dataclass(frozen=True)
class FluidParams:
    """Primitive constants.

    Parameters
    ----------
    rho : float
        Density, strictly positive.
    mu : float
        Dynamic viscosity.
    alpha1, alpha2 : float
        Elasticity and cross-viscosity. Negative ``alpha1`` is admitted.
    permeability : float
        Porous-medium permeability K. ``math.inf`` switches the Darcy drag off.
    conductivity, b0 : float
        Electrical conductivity and applied field; only ``conductivity * b0**2``
        enters the flow.
    hall : float
        Hall parameter (electron cyclotron frequency times collision time).
    """

    rho: float = 1.0
    mu: float = 0.0
    alpha1: float = 0.0
    alpha2: float = 0.0
    permeability: float = INF
    conductivity: float = 0.0
    b0: float = 1.0
    hall: float = 0.0

    def __post_init__(self):
        if not self.rho > 0:
            raise InvalidDensityError(f"density must be positive, got rho={self.rho!r}")
        if self.mu < 0:
            raise ParameterError(f"viscosity must be non-negative, got mu={self.mu!r}")
        if not self.permeability > 0:
            raise ParameterError(f"permeability must be positive or inf, got K={self.permeability!r}")
        if self.conductivity < 0 or self.b0 < 0:
            raise ParameterError("conductivity and b0 must be non-negative")
        if self.hall < 0:
            raise ParameterError(f"Hall parameter must be non-negative, got phi={self.hall!r}")

    @property
    def sigma_b0_sq(self) -> float:
        return self.conductivity * self.b0 ** 2

    @property
    def drag(self) -> float:
        """Darcy drag coefficient mu/K, exactly 0.0 for infinite permeability."""
        return self.mu / self.permeability

    @property
    def thermo(self) -> ThermoClass:
        return validate_thermodynamic(self)

    def replace(self, **changes) -> "FluidParams":
        fields = self.to_primitive()
        fields.update(changes)
        return FluidParams(**fields)

    def to_primitive(self) -> dict:
        return dict(rho=self.rho, mu=self.mu, alpha1=self.alpha1, alpha2=self.alpha2,
                    permeability=self.permeability, conductivity=self.conductivity,
                    b0=self.b0, hall=self.hall)

    @classmethod
    def from_ratios(cls, nu, lambda_sg, n_mhd=0.0, hall=0.0, permeability=INF,
                    rho=1.0, alpha2=None) -> "FluidParams":
        """Build from the kinematic ratios mu/rho, alpha1/rho and N.

        ``alpha2`` defaults to ``-alpha1`` so the thermodynamic relation holds.
        """
        alpha1 = lambda_sg * rho
        return cls(rho=rho, mu=nu * rho, alpha1=alpha1,
                   alpha2=-alpha1 if alpha2 is None else alpha2,
                   permeability=permeability, conductivity=n_mhd * rho, b0=1.0, hall=hall)

    @classmethod
    def from_dict(cls, data: dict) -> "FluidParams":
        """Parse the JSON parameter object.

        Accepts either ``sigma_b0_sq`` or the pair ``sigma``/``b0``; ``"K": "inf"``
        means infinite permeability.
        """
        known = {"rho", "mu", "alpha1", "alpha2", "K", "sigma_b0_sq", "sigma", "b0", "phi"}
        unknown = set(data) - known
        if unknown:
            raise ParameterError(f"unknown parameter keys: {sorted(unknown)}")
        if "sigma_b0_sq" in data and ("sigma" in data or "b0" in data):
            raise ParameterError("give either sigma_b0_sq or (sigma, b0), not both")
        if "sigma_b0_sq" in data:
            conductivity, b0 = float(data["sigma_b0_sq"]), 1.0
        else:
            conductivity, b0 = float(data.get("sigma", 0.0)), float(data.get("b0", 1.0))
        return cls(
            rho=float(data.get("rho", 1.0)),
            mu=float(data.get("mu", 0.0)),
            alpha1=float(data.get("alpha1", 0.0)),
            alpha2=float(data.get("alpha2", -float(data.get("alpha1", 0.0)))),
            permeability=_parse_permeability(data.get("K", INF)),
            conductivity=conductivity,
            b0=b0,
            hall=float(data.get("phi", 0.0)),
        )

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "mu": self.mu,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "K": "inf" if math.isinf(self.permeability) else self.permeability,
            "sigma": self.conductivity,
            "b0": self.b0,
            "phi": self.hall,
        }


@dataclass(frozen=True)
class DerivedParams:
    nu: float
    lambda_sg: float
    n_mhd: float
    chi: complex
    h_factor: complex


def derive(params: FluidParams) -> DerivedParams:
    """Kinematic viscosity, second-grade parameter, MHD parameter and Hall factors."""
    rho = params.rho
    if not rho > 0:
        raise InvalidDensityError(f"density must be positive, got rho={rho!r}")
    n_mhd = params.sigma_b0_sq / rho
    hall_ratio = complex(1.0, params.hall) / (1.0 + params.hall ** 2)
    chi = n_mhd * hall_ratio
    return DerivedParams(
        nu=params.mu / rho,
        lambda_sg=params.alpha1 / rho,
        n_mhd=n_mhd,
        chi=complex(chi),
        h_factor=complex(rho * chi),
    )


def validate_thermodynamic(params: FluidParams, rtol: float = 1e-12) -> ThermoClass:
    """Classify against mu >= 0, alpha1 >= 0, alpha1 + alpha2 = 0. Never raises."""
    if params.alpha1 < 0:
        return ThermoClass.EXPERIMENTAL_SIGN
    scale = max(abs(params.alpha1), abs(params.alpha2), 1e-300)
    if abs(params.alpha1 + params.alpha2) > rtol * scale:
        return ThermoClass.CROSS_VISCOSITY_VIOLATION
    return ThermoClass.COMPATIBLE
