"""Sweep the second-grade parameter and watch the velocity at one point.

Each value rebuilds the solution; constraint violations are allowed here (the
solution is then flagged inexact and the residual column shows by how much),
and values where construction fails leave an error marker in their row.
"""

import numpy as np

from hallflow import cli
from hallflow.presets import load_document

doc = {"family": "A3", "params": load_document(3)["params"], "shape_constants": {"a": 1.0, "b": -0.5}}
rows = cli.sweep_rows(doc, "alpha1", list(np.linspace(-0.5, 0.5, 5)) + [0.8])
print(f"{'alpha1':>7}  {'u':>22}  {'|(Re u, Re v)|':>14}  {'residual':>9}  error")
for value, ur, ui, vr, vi, sp_re, sp_mod, res, err in rows:
    print(f"{value:7.3f}  {complex(ur, ui):22.4f}  {sp_re:14.4f}  {res:9.2e}  {err}")
