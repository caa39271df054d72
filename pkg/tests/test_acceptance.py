"""The ten acceptance criteria, one test each, at their stated tolerances.

A summary line per criterion is printed at the end of the pytest run.
"""

import time

import numpy as np
import pytest

from hallflow import cli
from hallflow.core import INF, FluidParams
from hallflow.errors import ConstraintViolationError
from hallflow.fieldio import closed_form_streamlines, contour, max_vertical_deviation, sample
from hallflow.presets import CLOSED_FORM_FIGURES, FIGURES, all_presets, load_document, load_preset
from hallflow.solutions import ExpressionFlow, build_family_a, build_family_c
from hallflow.special import hyp2f1, lambert_w0
from hallflow.verify import (compatibility_operator, compatibility_residual, momentum_residual,
                             pressure_concordance, reconstruct_pressure, second_grade_operator)


@pytest.mark.criterion(1, "exactness certification of the 8 presets (analytic < 1e-10, FD < 1e-6, < 10 s)")
def test_criterion_01_exactness():
    t0 = time.perf_counter()
    lines = []
    for preset in all_presets():
        rep = compatibility_residual(preset.solution(), preset.grid(21, 21))
        lines.append((preset.figure, rep.relative_real, rep.relative_imag,
                      rep.fd.relative_real, rep.fd.relative_imag))
    elapsed = time.perf_counter() - t0
    for fig, ar, ai, fr, fi in lines:
        assert ar < 1e-10 and ai < 1e-10, f"figure {fig}: analytic residual {ar:.2e}/{ai:.2e}"
        assert fr < 1e-6 and fi < 1e-6, f"figure {fig}: FD residual {fr:.2e}/{fi:.2e}"
    assert elapsed < 10.0, f"suite took {elapsed:.1f} s"


@pytest.mark.criterion(2, "counterexample psi = x^2 y^2 is rejected (relative residual > 1e-2)")
def test_criterion_02_counterexample():
    preset = load_preset(1)
    bad = ExpressionFlow(params=preset.solution().params, psi_expr="x**2*y**2")
    rep = compatibility_residual(bad, preset.grid(21, 21))
    assert rep.relative > 1e-2
    assert rep.fd.relative > 1e-2


@pytest.mark.criterion(3, "Lambert W and 2F1 identities")
def test_criterion_03_special_functions():
    z = np.logspace(-8, 8, 1000)
    w = lambert_w0(z)
    assert np.all(np.abs(w * np.exp(w) - z) < 1e-13 * np.maximum(1.0, np.abs(z)))

    rng = np.random.default_rng(3)
    r = 0.5 * np.sqrt(rng.uniform(0, 1, 100))
    zz = r * np.exp(1j * rng.uniform(-np.pi, np.pi, 100))
    zz[zz == 0] = 0.25
    ref = -np.log(1 - zz) / zz
    assert np.max(np.abs(hyp2f1(1, 1, 2, zz) - ref)) < 1e-10

    for a, b, c in [(1, 1, 2), (0.3 + 1j, -2.5, 4.2), (-3, 2j, 0.5)]:
        assert hyp2f1(a, b, c, 0.0) == 1


@pytest.mark.criterion(4, "closed-form streamlines within 2 grid cells of contours (figs 1, 2, 6, 7, 8)")
def test_criterion_04_streamlines_vs_contours():
    assert CLOSED_FORM_FIGURES == (1, 2, 6, 7, 8)
    for n in CLOSED_FORM_FIGURES:
        preset = load_preset(n)
        assert preset.levels == (15.0, 20.0, 25.0, 30.0, 40.0)
        sol, grid = preset.solution(), preset.grid(201, 201)
        traced = contour(sample(sol, grid), preset.levels)
        closed = closed_form_streamlines(sol, grid, preset.levels)
        for level in preset.levels:
            assert closed.for_level(level), f"figure {n}: no closed-form curve at {level}"
            assert traced.for_level(level), f"figure {n}: no contour at {level}"
        dev, compared = max_vertical_deviation(closed, traced, grid.x)
        assert compared > 0
        assert dev <= 2 * grid.dy, f"figure {n}: deviation {dev / grid.dy:.2f} cells"


@pytest.mark.criterion(5, "limit recovery: viscous, second-grade and Brinkman specialisations")
def test_criterion_05_limits():
    nu = 0.5
    for a in (0.3, 1.0, 2.0, -1.7):
        p = FluidParams.from_ratios(nu, 0.0)
        for case in (1, 2):
            sol = build_family_a(p, case, a)
            assert abs(sol.C - nu * a) <= 1e-14 * abs(nu * a)
            assert abs(sol.A - (-nu * sol.b.real)) <= 1e-14 * abs(nu * a)
        for lam in (0.1, -0.4, 0.7):
            p2 = FluidParams.from_ratios(nu, lam)
            sol = build_family_a(p2, 1, a)
            # second-grade amplitude written independently
            assert sol.C == nu * a / (1 - lam * a * a)
            assert sol.A == -sol.C

    rng = np.random.default_rng(5)
    keys = [(i, k - i) for k in range(6) for i in range(k + 1)]
    for _ in range(20):
        d = {k: complex(*rng.normal(size=2)) for k in keys}
        d["lap"] = d[(2, 0)] + d[(0, 2)]
        d["bih"] = d[(4, 0)] + 2 * d[(2, 2)] + d[(0, 4)]
        rho, mu, lam = 1.3, 0.65, 0.2
        # K = inf and H = 0: operator / rho is the second-grade operator
        full = compatibility_operator(d, rho, mu, lam * rho, 0.0)
        ref = second_grade_operator(d, mu / rho, lam)
        assert abs(full / rho - ref) < 1e-13 * max(1.0, abs(ref))
        # Brinkman: alpha1 = 0, phi = 0, finite K adds only (H + mu/K) lap psi
        K, n = 0.8, 0.4
        brink = FluidParams(rho=rho, mu=mu, alpha1=0.0, alpha2=0.0, permeability=K,
                            conductivity=n * rho, b0=1.0, hall=0.0)
        hd = n * rho + mu / K
        assert brink.drag == mu / K
        diff = compatibility_operator(d, rho, mu, 0.0, hd) - compatibility_operator(d, rho, mu, 0.0, 0.0)
        assert abs(diff - hd * d["lap"]) < 1e-13 * max(1.0, abs(hd * d["lap"]))
    assert FluidParams.from_ratios(nu, 0.1, permeability=INF).drag == 0.0


@pytest.mark.criterion(6, "case-3 constraint gate rho = alpha1 (a^2 + b^2)")
def test_criterion_06_constraint_gate():
    bad = FluidParams(rho=1.0, mu=0.5, alpha1=0.5, alpha2=-0.5)
    with pytest.raises(ConstraintViolationError):
        build_family_a(bad, 3, 1.0, -0.5)
    good = bad.replace(rho=0.625)
    sol = build_family_a(good, 3, 1.0, -0.5)
    assert sol.exact and sol.constraint_residual == 0.0


@pytest.mark.criterion(7, "pressure reconstruction: loops < 1e-8, momentum < 1e-8, frozen concordance flags")
def test_criterion_07_pressure(oracle):
    frozen = oracle["concordance"]["flags"]
    for preset in all_presets():
        sol, grid = preset.solution(), preset.grid(21, 21)
        pf = reconstruct_pressure(sol, grid=grid)
        assert max(pf.loop_residuals) < 1e-8, preset.figure
        mx, my = momentum_residual(sol, grid, pressure=pf)
        assert mx.passed(1e-8) and my.passed(1e-8), (preset.figure, mx.relative, my.relative)
        flags = [pressure_concordance(sol, grid, pf)[0] for _ in range(2)]
        assert flags[0] == flags[1] == frozen[str(preset.figure)], preset.figure


@pytest.mark.criterion(8, "hypergeometric R(theta) solves the reduced equation (< 1e-7 on [0.1, 0.9]/lambda)")
def test_criterion_08_hypergeometric():
    params = FluidParams.from_dict(load_document(8)["params"])
    for lam in (1.0, 2.0, 0.5):
        sol = build_family_c(params, "C2s2", lambda_shape=lam)
        assert sol.X3 == (2 * params.alpha1 - params.rho) / params.alpha1
        theta = np.linspace(0.1, 0.9, 17) / lam
        res, scale = sol.theta_ode_residual(theta)
        assert np.max(np.abs(res)) / scale < 1e-7
        xres, xscale = sol.x_ode_residual(np.log(theta))
        assert np.max(np.abs(xres)) / xscale < 1e-7


@pytest.mark.criterion(9, "alpha1 sweep reproduces the oracle velocity ordering")
def test_criterion_09_trend(oracle):
    fixture = oracle["trend"]
    doc = {"family": "A3", "params": load_document(3)["params"],
           "shape_constants": {"a": 1.0, "b": -0.5}}
    rows = cli.sweep_rows(doc, "alpha1", fixture["lambda_values"])
    by = {r[0]: r for r in rows}
    lo, hi = by[-0.5], by[0.5]
    for lam, r in ((-0.5, lo), (0.5, hi)):
        ref = fixture["points"][str(lam)]
        assert r[-1] == ""
        assert np.allclose(r[1:5], ref["u"] + ref["v"], rtol=0, atol=1e-14)
    assert (hi[5] < lo[5]) == fixture["speed_real_decreases_with_alpha1"]
    assert (hi[6] < lo[6]) == fixture["speed_mod_decreases_with_alpha1"]


@pytest.mark.criterion(10, "repeated figure runs are byte-identical")
def test_criterion_10_determinism(tmp_path, capsys):
    for n in FIGURES:
        outs = []
        for run in ("a", "b"):
            d = tmp_path / run / str(n)
            assert cli.main(["figure", "--figure", str(n), "--out", str(d)]) == 0
            outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
        assert outs[0].keys() == outs[1].keys()
        assert any(k.endswith(".svg") for k in outs[0]) and any(k.endswith(".csv") for k in outs[0])
        for k in outs[0]:
            assert outs[0][k] == outs[1][k], f"figure {n}: {k} differs"
    capsys.readouterr()
