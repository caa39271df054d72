"""Recover the pressure by integrating the momentum equations.

Integrability is checked first, then grad p-hat is integrated along an L-shaped
path from an anchor point. Loop integrals around nested rectangles confirm path
independence, and the momentum residual is recomputed by differencing the
reconstructed pressure. The closed-form pressures that accompany each family
are compared against the reconstruction up to an additive constant.
"""

from hallflow.presets import all_presets
from hallflow.verify import momentum_residual, pressure_concordance, reconstruct_pressure

print("figure  max loop   momentum-x  momentum-y  closed form agrees  spread")
for preset in all_presets():
    sol, grid = preset.solution(), preset.grid(21, 21)
    field = reconstruct_pressure(sol, grid=grid)
    mx, my = momentum_residual(sol, grid, pressure=field)
    flag, spread = pressure_concordance(sol, grid, field)
    print(f"{preset.figure:6d}  {max(field.loop_residuals):.2e}  {mx.relative:.2e}    "
          f"{my.relative:.2e}    {str(flag):18s}  {spread:.3f}")

sol = all_presets()[0].solution()
field = reconstruct_pressure(sol, anchor=(0.0, 0.0), p_ref=1.0)
print(f"\np(0, 0) = {complex(field(0.0, 0.0)):.6f}, p(1, 1) = {complex(field(1.0, 1.0)):.6f}")
