"""Exact solution families and their evaluation."""

from .base import FieldSample, FlowSolution, eval_field, project
from .family_a import FamilyA, build_family_a
from .family_b import FamilyB, build_family_b
from .family_c import FamilyCHypergeometric, FamilyCSeparable, build_family_c
from .manufactured import ExpressionFlow
from .io import solution_from_dict, solution_to_dict, streamline_closed_form

__all__ = [
    "ExpressionFlow", "FamilyA", "FamilyB", "FamilyCHypergeometric", "FamilyCSeparable",
    "FieldSample", "FlowSolution", "build_family_a", "build_family_b", "build_family_c",
    "eval_field", "project", "solution_from_dict", "solution_to_dict",
    "streamline_closed_form",
]
