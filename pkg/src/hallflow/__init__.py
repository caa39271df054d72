"""Exact flows of a second-grade MHD fluid in a porous medium with Hall currents.

Modules: ``core`` (parameters), ``special`` (Lambert W, Gauss 2F1),
``solutions`` (the solution families), ``verify`` (residual certification and
pressure reconstruction), ``fieldio`` (sampling, contours, CSV/SVG) and ``cli``.
"""

from .core import DerivedParams, FluidParams, ThermoClass, derive, validate_thermodynamic
from .errors import HallflowError
from .solutions import (FlowSolution, build_family_a, build_family_b, build_family_c,
                        eval_field, solution_from_dict, solution_to_dict,
                        streamline_closed_form)

__version__ = "0.1.0"

__all__ = [
    "DerivedParams", "FlowSolution", "FluidParams", "HallflowError", "ThermoClass",
    "build_family_a", "build_family_b", "build_family_c", "derive", "eval_field",
    "solution_from_dict", "solution_to_dict", "streamline_closed_form",
    "validate_thermodynamic",
]
