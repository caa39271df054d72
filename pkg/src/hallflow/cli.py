"""Command-line front end: ``hallflow {eval,verify,contour,figure,sweep}``.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fieldio, verify
from .errors import HallflowError, InconsistentFieldError, ParameterError
from .fieldio import Grid
from .presets import CLOSED_FORM_FIGURES, load_document
from .solutions import eval_field, solution_from_dict, solution_to_dict
from .solutions.base import PROJECTIONS, decode_number, encode_number

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("eval", "verify", "contour", "figure", "sweep")
DEFAULT_LEVELS = (15.0, 20.0, 25.0, 30.0, 40.0)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    doc: dict
    out: Path | None = None
    nx: int = fieldio.DEFAULT_N
    ny: int = fieldio.DEFAULT_N
    window: tuple = fieldio.DEFAULT_WINDOW
    projection: str = "real"
    tolerances: dict = field(default_factory=lambda: dict(verify.DEFAULT_TOL))
    levels: tuple = DEFAULT_LEVELS
    figure: int | None = None
    as_json: bool = False

    def grid(self, nx=None, ny=None) -> Grid:
        return Grid.from_window(self.window, nx or self.nx, ny or self.ny, self.projection)


def _floats(text, n, name):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{name} expects {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{name} expects {n} comma-separated numbers, got {text!r}")
    return vals


def build_config(args) -> RunConfig:
    if args.config and args.figure is not None:
        raise UsageError("give either --config or --figure, not both")
    if args.figure is not None:
        try:
            doc = load_document(args.figure)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
    elif args.config:
        path = Path(args.config)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    elif args.command == "figure":
        raise UsageError("figure needs --figure N")
    else:
        raise UsageError(f"{args.command} needs --config PATH or --figure N")
    if not isinstance(doc, dict):
        raise UsageError("config must be a JSON object")

    cfg = RunConfig(command=args.command, doc=doc, figure=doc.get("figure"),
                    as_json=bool(args.json))
    cfg.out = Path(args.out) if args.out else None
    if "window" in doc:
        cfg.window = tuple(float(v) for v in doc["window"])
    if "grid" in doc:
        cfg.nx, cfg.ny = (int(v) for v in doc["grid"])
    if "levels" in doc:
        cfg.levels = tuple(float(v) for v in doc["levels"])
    if "projection" in doc:
        cfg.projection = doc["projection"]
    for k, v in doc.get("tolerances", {}).items():
        cfg.tolerances[k] = float(v)

    if args.window:
        cfg.window = tuple(_floats(args.window, 4, "--window"))
    if args.grid:
        nx, ny = _floats(args.grid, 2, "--grid")
        if nx != int(nx) or ny != int(ny):
            raise UsageError("--grid expects integers")
        cfg.nx, cfg.ny = int(nx), int(ny)
    if args.projection:
        cfg.projection = args.projection
    if args.tol is not None:
        cfg.tolerances["analytic"] = args.tol
    if getattr(args, "levels", None):
        cfg.levels = tuple(float(v) for v in args.levels.split(","))

    if any(not t > 0 for t in cfg.tolerances.values()):
        raise UsageError("tolerances must be positive")
    if cfg.projection not in PROJECTIONS:
        raise UsageError(f"projection must be one of {PROJECTIONS}")
    try:
        cfg.grid()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


# ---------------------------------------------------------------------------
# commands

def _write(path: Path, text: str):
    try:
        path.write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise HallflowError(f"cannot write {path}: {exc}") from exc


def _outdir(cfg: RunConfig) -> Path | None:
    if cfg.out is None:
        return None
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise HallflowError(f"cannot create output directory {cfg.out}: {exc}") from exc
    return cfg.out


def _num(v):
    return encode_number(v)


def cmd_eval(cfg: RunConfig):
    sol = solution_from_dict(cfg.doc)
    pts = cfg.doc.get("points", [[0.0, 0.0]])
    xs = np.array([float(p[0]) for p in pts])
    ys = np.array([float(p[1]) for p in pts])
    fs = eval_field(sol, xs, ys)
    values = []
    for k in range(len(xs)):
        values.append({"x": float(xs[k]), "y": float(ys[k]),
                       **{f: _num(getattr(fs, f)[k]) for f in ("psi", "u", "v", "p", "omega")}})
    result = {"solution": solution_to_dict(sol), "derived": {"H": _num(sol.derived.h_factor),
              "nu": sol.derived.nu, "lambda_sg": sol.derived.lambda_sg},
              "thermo": sol.params.thermo.value, "exact": sol.exact, "values": values}
    out = _outdir(cfg)
    if out is not None:
        arrays = fieldio.sample(sol, cfg.grid())
        X, Y = cfg.grid().mesh()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("x", "y", "psi", "u", "v", "p", "masked"))
        for idx in np.ndindex(X.shape):
            w.writerow([format(float(a), ".17g") for a in
                        (X[idx], Y[idx], arrays.psi[idx], arrays.u[idx], arrays.v[idx], arrays.p[idx])]
                       + [int(arrays.mask[idx])])
        _write(out / "field.csv", buf.getvalue())
        result["field_csv"] = str(out / "field.csv")
    return EXIT_OK, result, _eval_summary(result)


def _eval_summary(r):
    lines = [f"family {r['solution']['family']}  H = {r['derived']['H']}  thermo = {r['thermo']}"]
    for v in r["values"]:
        lines.append(f"  ({v['x']:g}, {v['y']:g}): psi={v['psi']} u={v['u']} v={v['v']}")
    return "\n".join(lines)


def run_verification(sol, grid: Grid, tol: dict, pressure: bool = True) -> dict:
    """Compatibility (both paths), continuity and, if integrable, momentum and concordance."""
    comp = verify.compatibility_residual(sol, grid)
    cont = verify.continuity_residual(sol, grid)
    checks = {
        "compatibility-analytic": (comp.passed(tol["analytic"]), comp.relative, tol["analytic"]),
        "compatibility-fd": (comp.fd.passed(tol["fd"]), comp.fd.relative, tol["fd"]),
        "continuity": (cont.max_norm == 0.0, cont.max_norm, 0.0),
    }
    report = {"family": sol.family, "exact": sol.exact, "compatibility": comp.to_dict(),
              "continuity": cont.to_dict()}
    if pressure:
        try:
            pf = verify.reconstruct_pressure(sol, grid=grid, tol=tol["integrability"])
        except InconsistentFieldError as exc:
            checks["integrability"] = (False, comp.relative, tol["integrability"])
            report["pressure"] = {"error": str(exc)}
        else:
            mx, my = verify.momentum_residual(sol, grid, pressure=pf)
            loop = max(pf.loop_residuals)
            checks["integrability"] = (True, pf.integrability, tol["integrability"])
            checks["loop"] = (loop < tol["loop"], loop, tol["loop"])
            checks["momentum-x"] = (mx.passed(tol["momentum"]), mx.relative, tol["momentum"])
            checks["momentum-y"] = (my.passed(tol["momentum"]), my.relative, tol["momentum"])
            flag, spread = verify.pressure_concordance(sol, grid, pf, tol["concordance"])
            report["pressure"] = {"loop_residuals": pf.loop_residuals, "momentum_x": mx.to_dict(),
                                  "momentum_y": my.to_dict(), "concordance": flag,
                                  "concordance_spread": spread}
    report["checks"] = {k: {"passed": bool(p), "value": float(v), "tolerance": t}
                        for k, (p, v, t) in checks.items()}
    report["passed"] = all(p for p, _, _ in checks.values())
    return report


def _verify_summary(report):
    lines = [f"family {report['family']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for k, c in report["checks"].items():
        lines.append(f"  {k:24s} {'ok  ' if c['passed'] else 'FAIL'} {c['value']:.3e} (tol {c['tolerance']:.0e})")
    if "pressure" in report and "concordance" in report["pressure"]:
        lines.append(f"  printed-pressure concordance: {report['pressure']['concordance']}")
    return "\n".join(lines)


def cmd_verify(cfg: RunConfig):
    sol = solution_from_dict(cfg.doc)
    grid = cfg.grid(21, 21) if "grid" not in cfg.doc and cfg.nx == fieldio.DEFAULT_N else cfg.grid()
    report = run_verification(sol, grid, cfg.tolerances)
    out = _outdir(cfg)
    if out is not None:
        _write(out / "report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    return (EXIT_OK if report["passed"] else EXIT_FAIL), report, _verify_summary(report)


def _trace(sol, cfg: RunConfig):
    arrays = fieldio.sample(sol, cfg.grid())
    return fieldio.contour(arrays, cfg.levels)


def _emit_pair(sset, cfg, out, stem):
    fieldio.emit(sset, "csv", out / f"{stem}.csv")
    fieldio.emit(sset, "svg", out / f"{stem}.svg", window=cfg.window)
    return [f"{stem}.csv", f"{stem}.svg"]


def cmd_contour(cfg: RunConfig):
    sol = solution_from_dict(cfg.doc)
    sset = _trace(sol, cfg)
    result = {"family": sol.family, "levels": list(cfg.levels),
              "polylines": len(sset.lines), "files": []}
    out = _outdir(cfg)
    if out is not None:
        result["files"] = [str(out / f) for f in _emit_pair(sset, cfg, out, "streamlines")]
    summary = f"{len(sset.lines)} polylines over {len(cfg.levels)} levels"
    return EXIT_OK, result, summary


def cmd_figure(cfg: RunConfig):
    n = cfg.figure
    sol = solution_from_dict(cfg.doc)
    coarse = cfg.grid(21, 21)
    comp = verify.compatibility_residual(sol, coarse)
    passed = comp.passed(cfg.tolerances["analytic"]) and comp.fd.passed(cfg.tolerances["fd"])
    sset = _trace(sol, cfg)
    report = {"figure": n, "family": sol.family, "window": list(cfg.window),
              "grid": cfg.grid().to_dict(), "levels": list(cfg.levels),
              "notes": cfg.doc.get("notes", ""), "projection": cfg.projection,
              "compatibility": comp.to_dict(), "passed": passed,
              "polylines": len(sset.lines),
              "levels_traced": sorted({lev for lev, _ in sset.lines})}
    out = _outdir(cfg) or Path(".")
    files = _emit_pair(sset, cfg, out, f"figure{n}")
    if n in CLOSED_FORM_FIGURES and cfg.projection == "real":
        closed = fieldio.closed_form_streamlines(sol, cfg.grid(), cfg.levels)
        files += _emit_pair(closed, cfg, out, f"figure{n}_closed")
    report["files"] = files
    _write(out / f"figure{n}_report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    summary = (f"figure {n} ({sol.family}): residual analytic {comp.relative:.2e}, "
               f"fd {comp.fd.relative:.2e} -> {'PASS' if passed else 'FAIL'}; "
               f"{len(sset.lines)} polylines written to {out}")
    return (EXIT_OK if passed else EXIT_FAIL), report, summary


SWEEP_COLUMNS = ("value", "u_re", "u_im", "v_re", "v_im", "speed_real", "speed_mod",
                 "residual", "error")


def sweep_rows(doc: dict, param: str, values, point=(0.0, 0.0), window=None, strict=False):
    """Evaluate u, v, speed and the compatibility residual at ``point`` per value.

    ``param`` names a params key or ``shape:<name>`` for a shape constant.
    Construction is relaxed (constraint violations give inexact solutions) and
    any per-value failure becomes an error marker in that row.
    """
    grid = Grid.from_window(window or doc.get("window", fieldio.DEFAULT_WINDOW), 21, 21)
    rows = []
    for value in values:
        d = copy.deepcopy(doc)
        if param.startswith("shape:"):
            d.setdefault("shape_constants", {})[param[6:]] = value
        else:
            d.setdefault("params", {})[param] = value
            if param == "alpha1" and "alpha2" in d["params"]:
                d["params"]["alpha2"] = -decode_number(value)
        try:
            sol = solution_from_dict(d, strict=strict)
            u, v = sol.velocity(np.array([point[0]]), np.array([point[1]]))
            u, v = complex(u[0]), complex(v[0])
            res = verify.compatibility_residual(sol, grid, finite_difference=False).relative
            rows.append((value, u.real, u.imag, v.real, v.imag, math.hypot(u.real, v.real),
                         math.sqrt(abs(u) ** 2 + abs(v) ** 2), res, ""))
        except (HallflowError, ValueError, ZeroDivisionError) as exc:
            nan = math.nan
            rows.append((value, nan, nan, nan, nan, nan, nan, nan, type(exc).__name__))
    return rows


def _fmt_value(value) -> str:
    v = decode_number(value)
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return format(float(v), ".17g")


def _sweep_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([_fmt_value(r[0])] + [format(float(v), ".17g") for v in r[1:8]] + [r[8]])
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig):
    sweep = cfg.doc.get("sweep")
    if not isinstance(sweep, dict) or "param" not in sweep:
        raise UsageError("sweep config needs a 'sweep' object with 'param' and 'values'")
    values = sweep.get("values", [])
    if isinstance(values, dict):
        lo, hi, num = float(values["start"]), float(values["stop"]), int(values["num"])
        values = list(np.linspace(lo, hi, num)) if num > 0 else []
    if len(values) == 0:
        raise UsageError("sweep range is empty")
    base = {k: cfg.doc[k] for k in ("family", "params", "shape_constants") if k in cfg.doc}
    rows = sweep_rows(base, sweep["param"], values, tuple(sweep.get("point", (0.0, 0.0))),
                      cfg.window, strict=bool(sweep.get("strict", False)))
    text = _sweep_csv(rows)
    out = _outdir(cfg)
    if out is not None:
        _write(out / "sweep.csv", text)
    result = {"param": sweep["param"], "columns": list(SWEEP_COLUMNS),
              "rows": [[encode_number(decode_number(r[0]))]
                       + [None if math.isnan(v) else v for v in r[1:8]] + [r[8]] for r in rows]}
    return EXIT_OK, result, text.rstrip("\n")


HANDLERS = {"eval": cmd_eval, "verify": cmd_verify, "contour": cmd_contour,
            "figure": cmd_figure, "sweep": cmd_sweep}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallflow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", metavar="PATH")
        s.add_argument("--figure", type=int, metavar="N")
        s.add_argument("--out", metavar="DIR")
        s.add_argument("--grid", metavar="NX,NY")
        s.add_argument("--window", metavar="X0,X1,Y0,Y1")
        s.add_argument("--projection", choices=PROJECTIONS)
        s.add_argument("--tol", type=float, metavar="FLOAT")
        s.add_argument("--json", action="store_true", help="print the JSON report on stdout")
        if name in ("contour", "figure"):
            s.add_argument("--levels", metavar="L1,L2,...")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        code, result, summary = HANDLERS[args.command](cfg)
    except UsageError as exc:
        print(f"hallflow {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"hallflow {args.command}: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HallflowError as exc:
        print(f"hallflow {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.as_json:
        print(json.dumps(result, indent=2, sort_keys=True, default=str))
    else:
        print(summary)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
