"""Build each family of exact solutions and look at the fields they produce.

Run with ``python demos/01_exact_families.py``.
"""

import numpy as np

from hallflow import FluidParams
from hallflow.solutions import build_family_a, build_family_b, build_family_c, eval_field

# nu = mu/rho = 0.5, Lambda = alpha1/rho = 0.1, Hall parameter 1, magnetic number 0.2, K = 4
params = FluidParams.from_ratios(0.5, 0.1, n_mhd=0.2, hall=1.0, permeability=4.0)

# separable flow psi = A x + B e^{ax} + C y + D e^{by}; case 1 ties b to a
sep = build_family_a(params, case=1, a=1.0)
print(f"damping H + mu/K = {sep.hd:.4f}")
print(f"\ncase 1, a = 1: A = {sep.A:.6f}, C = {sep.C:.6f}")

# the velocity is complex because the Hall term makes the damping complex
pts = np.array([0.0, 0.5, 1.0])
f = eval_field(sep, pts, -pts)
for x, u, v in zip(pts, f.u, f.v):
    print(f"  ({x:+.1f}, {-x:+.1f})  u = {u:.4f}  v = {v:.4f}")

# Riabouchinsky-type flow psi = y delta (1 + lambda e^{sigma x})
riab = build_family_b(params, sigma_exp=1.0, lambda_shape=1.0)
print(f"\nRiabouchinsky flow: delta = {riab.delta_amp:.6f}")

# psi = y xi(x) + eta(x) with lambda = 0: eta is a sum of exponentials
sep_c = build_family_c(params, "C1")
print(f"\nfamily C, lambda = 0: A1 = {sep_c.A1:.6f}")
print(f"  exponent roots m1 = {sep_c.m1:.6f}, m2 = {sep_c.m2:.6f}")
