"""Certify that a stream function solves the compatibility equation.

The residual is assembled directly from psi derivatives, once with the
solution's analytic derivatives and once with finite differences, so it does
not trust the algebra that produced the solution. A field that is not a
solution is rejected by both paths.
"""

from hallflow import FluidParams
from hallflow.fieldio import Grid
from hallflow.presets import all_presets
from hallflow.solutions import ExpressionFlow
from hallflow.verify import compatibility_residual

print("figure  family  analytic   finite-difference")
for preset in all_presets():
    rep = compatibility_residual(preset.solution(), preset.grid(21, 21))
    print(f"{preset.figure:6d}  {preset.family:6s}  {rep.relative:.2e}   {rep.fd.relative:.2e}")

# psi = x^2 y^2 is not a solution for any parameters
bad = ExpressionFlow(params=FluidParams.from_ratios(0.5, 0.1), psi_expr="x**2*y**2")
rep = compatibility_residual(bad, Grid((-1, 1), (-1, 1), 21, 21))
print(f"\nx^2 y^2: analytic {rep.relative:.2e}, finite-difference {rep.fd.relative:.2e}")
print("finite-difference steps used:", rep.fd.steps)
