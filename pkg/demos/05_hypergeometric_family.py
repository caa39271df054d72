"""The lambda != 0 member of family C, where eta needs Gauss hypergeometric functions.

Writing eta' = e^x P and R = P', the equation for R in theta = e^x is
hypergeometric; its two Frobenius solutions are summed as 2F1 series and eta
is recovered by quadrature. The residual of the reduced equation is printed in
both its theta and x forms. For lambda < 0 the series only converge for small
enough e^x, and points beyond that are reported as unsupported.
"""

import numpy as np

from hallflow.core import FluidParams
from hallflow.errors import RegionError
from hallflow.presets import load_document
from hallflow.solutions import build_family_c

params = FluidParams.from_dict(load_document(8)["params"])
for lam in (0.5, 1.0, 2.0):
    sol = build_family_c(params, "C2s2", lambda_shape=lam)
    theta = np.linspace(0.1, 0.9, 17) / lam
    res, scale = sol.theta_ode_residual(theta)
    xres, xscale = sol.x_ode_residual(np.log(theta))
    print(f"lambda = {lam}: theta-form residual {np.max(np.abs(res)) / scale:.1e}, "
          f"x-form {np.max(np.abs(xres)) / xscale:.1e}")

sol = build_family_c(params, "C2s2", lambda_shape=1.0)
x = np.array([-1.0, 0.0, 1.0])
print("\neta(x) at", x, "=", np.round(sol.eta(x), 6))

neg = build_family_c(params, "C2s2", lambda_shape=-1.0, consts={"x0": -1.0})
xs = np.array([-2.0, -1.0, -0.5, 0.5])
print("\nlambda = -1, supported:", dict(zip(xs.tolist(), neg.supported(xs).tolist())))
try:
    neg.psi(0.5, 0.0)
except RegionError as exc:
    print("evaluating at x = 0.5:", exc)
