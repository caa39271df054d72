"""JSON documents ``{family, params, shape_constants}`` and the streamline entry point."""

from __future__ import annotations

from ..core import FluidParams
from ..errors import NoClosedFormError, ParameterError
from .base import FlowSolution, decode_number, encode_number
from .family_a import build_family_a
from .family_b import build_family_b
from .family_c import build_family_c
from .manufactured import ExpressionFlow

FAMILIES = ("A1", "A2", "A3", "B", "C1", "C2s1", "C2s2", "expression")


def streamline_closed_form(sol: FlowSolution, level, x, projection: str = "real"):
    """y on the level set Re(psi) = level; NaN marks a terminated Lambert-W branch."""
    if projection != "real":
        raise NoClosedFormError("closed-form streamlines are defined for the real projection only")
    return sol.streamline_y(level, x)


def solution_from_dict(doc: dict, strict: bool = True) -> FlowSolution:
    try:
        family = doc["family"]
    except KeyError:
        raise ParameterError("solution document needs a 'family' key") from None
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    params = FluidParams.from_dict(doc.get("params", {}))
    raw = doc.get("shape_constants", {})
    if family == "expression":
        return ExpressionFlow(params=params, psi_expr=str(raw.get("psi", "0")),
                              pressure_expr=raw.get("pressure"))
    try:
        sc = {k: decode_number(v) for k, v in raw.items()}
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"malformed shape constant: {exc}") from None

    if family in ("A1", "A2", "A3"):
        case = int(family[1])
        return build_family_a(params, case, sc.get("a", 1.0), sc.get("b"),
                              B_amp=sc.get("B", 1.0), D_amp=sc.get("D", 1.0),
                              p0=float(sc.get("p0", 0.0)), strict=strict)
    if family == "B":
        return build_family_b(params, sigma_exp=float(sc.get("sigma_exp", 1.0)),
                              lambda_shape=float(sc.get("lambda_shape", 1.0)),
                              p1=float(sc.get("p1", 0.0)))
    if family in ("C1", "C2s1", "C2s2"):
        lam = float(sc.pop("lambda_shape", 0.0))
        return build_family_c(params, family, lambda_shape=lam, consts=sc)


def solution_to_dict(sol: FlowSolution) -> dict:
    sc = {}
    for k, v in sol.shape_constants().items():
        sc[k] = v if isinstance(v, (str, int)) else encode_number(v)
    return {"family": sol.family, "params": sol.params.to_dict(), "shape_constants": sc}
