"""Command-line driver: table reproduction, error grids, profiles and fronts.

Every command writes CSV (default) or JSON to ``--out`` or stdout.  Numbers
are printed with 9 significant digits so repeated runs diff cleanly.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .analytic import ModelParams, exact_profile, solve_p_transcendental
from .p_iter import PIterConfig, estimate_p_from_grid, find_p, resolve_phi
from .phi_net import DEFAULT_WEIGHTS, calibrate_phi, predict_phi, training_set
from .scheme import DEFAULT_TAU0_FACTOR, build_mesh, march, recover
from .special import wright

TABLE_LAMBDAS = (("1/3", 1.0 / 3.0), ("2/3", 2.0 / 3.0), ("1", 1.0))
TABLE_ALPHAS = (0.25, 0.5, 0.75, 1.0)

DEFAULTS = {
    "alpha": 0.5,
    "lam": 1.0 / 3.0,
    "m": 80,
    "n": 240,
    "tau0_factor": DEFAULT_TAU0_FACTOR,
    "phi": "network",
    "epsilon": 1e-3,
    "tau": None,
    "format": "csv",
    "out": None,
    "z": None,
    "gamma": None,
    "delta": None,
    "verbose": False,
}


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.9g}"


def render(rows, columns, fmt_name, extra=None):
    """Rows (list of dicts) to CSV or JSON text."""
    if fmt_name == "json":
        doc = {"columns": list(columns), "rows": rows}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def parse_phi(value):
    if value in ("network", "calibrate"):
        return value
    return float(value)


# -- commands -------------------------------------------------------------------
# each returns (rows, columns, extra_json, ok)


def cmd_table1(cfg):
    rows, ok = [], True
    for lam_label, lam in TABLE_LAMBDAS:
        for alpha in TABLE_ALPHAS:
            row = {"lambda": lam_label, "alpha": alpha}
            try:
                res = solve_p_transcendental(ModelParams(alpha=alpha, lam=lam))
                row.update(p=res.p, residual=res.residual, iterations=res.iterations)
            except Exception as exc:  # per-cell failures are reported, not fatal
                row["error"] = str(exc)
                ok = False
            rows.append(row)
    return rows, ["lambda", "alpha", "p", "residual", "iterations", "error"], None, ok


def _phi_for(params, m, n, phi_mode, tau0_factor):
    if phi_mode == "calibrate":
        p = solve_p_transcendental(params).p
        return calibrate_phi(params, build_mesh(m, n, p, params.alpha, tau0_factor), p)
    return resolve_phi(phi_mode, m, params)


def cmd_tables23(cfg, phi_mode):
    rows, ok = [], True
    pcfg = PIterConfig(epsilon=cfg["epsilon"], tau0_factor=cfg["tau0_factor"])
    for lam_label, lam in TABLE_LAMBDAS:
        for alpha in TABLE_ALPHAS:
            row = {"lambda": lam_label, "alpha": alpha}
            try:
                params = ModelParams(alpha=alpha, lam=lam)
                phi = _phi_for(params, cfg["m"], cfg["n"], phi_mode, cfg["tau0_factor"])
                res = find_p(params, cfg["m"], cfg["n"], phi, pcfg)
                row.update(phi=phi, p=res.p, residual=res.residual, iterations=res.iterations)
            except Exception as exc:
                row["error"] = str(exc)
                ok = False
            rows.append(row)
    return rows, ["lambda", "alpha", "phi", "p", "residual", "iterations", "error"], None, ok


def _exact_run(cfg):
    """March on the mesh of the analytical front coefficient."""
    params = ModelParams(alpha=cfg["alpha"], lam=cfg["lam"])
    p = solve_p_transcendental(params).p
    mesh = build_mesh(cfg["m"], cfg["n"], p, params.alpha, cfg["tau0_factor"])
    phi = _phi_for(params, cfg["m"], cfg["n"], cfg["phi"], cfg["tau0_factor"])
    phys = recover(march(params, mesh, phi))
    ref = exact_profile(mesh.u, p, params.alpha)
    return params, mesh, phi, phys, ref


def cmd_error_grid(cfg):
    """Absolute error on every computed node (layers ``j >= 1``)."""
    params, mesh, phi, phys, ref = _exact_run(cfg)
    rows = []
    err = np.abs(phys.c - ref[:, None])
    for j in range(1, mesh.n + 1):
        for i in range(mesh.m + 1):
            rows.append(
                {
                    "kind": "node",
                    "u": phys.u[i],
                    "tau": phys.tau[j],
                    "x": phys.x[i, j],
                    "c_num": phys.c[i, j],
                    "c_exact": ref[i],
                    "abs_err": err[i, j],
                }
            )
    body = err[:, 1:]
    summary = {
        "max_abs_err": float(body.max()),
        "mean_abs_err": float(body.mean()),
        "argmax_layer": int(np.unravel_index(body.argmax(), body.shape)[1]) + 1,
        "phi": phi,
        "p": mesh.p,
    }
    rows.append({"kind": "max", "abs_err": summary["max_abs_err"]})
    rows.append({"kind": "mean", "abs_err": summary["mean_abs_err"]})
    columns = ["kind", "u", "tau", "x", "c_num", "c_exact", "abs_err"]
    return rows, columns, {"summary": summary}, bool(np.isfinite(body).all())


def cmd_profile(cfg):
    params, mesh, phi, phys, ref = _exact_run(cfg)
    tau = mesh.tau_star if cfg["tau"] is None else float(cfg["tau"])
    if not 0 <= tau <= mesh.tau_star * (1 + 1e-12):
        raise ValueError(f"tau={tau} outside [0, tau*={mesh.tau_star:.9g}]")
    j = int(np.argmin(np.abs(phys.tau - tau)))
    rows = [
        {"tau": phys.tau[j], "u": phys.u[i], "x": phys.x[i, j], "c_num": phys.c[i, j], "c_exact": ref[i]}
        for i in range(mesh.m + 1)
    ]
    return rows, ["tau", "u", "x", "c_num", "c_exact"], {"phi": phi, "p": mesh.p}, True


def cmd_front(cfg):
    """Numerical vs analytical front on the analytical time grid ``[0, tau*]``."""
    params = ModelParams(alpha=cfg["alpha"], lam=cfg["lam"])
    p_exact = solve_p_transcendental(params).p
    phi = _phi_for(params, cfg["m"], cfg["n"], cfg["phi"], cfg["tau0_factor"])
    res = find_p(params, cfg["m"], cfg["n"], phi, PIterConfig(epsilon=cfg["epsilon"], tau0_factor=cfg["tau0_factor"]))
    tau_star = p_exact ** (-2.0 / params.alpha)
    taus = np.linspace(0.0, tau_star, cfg["n"] + 1)
    h = 0.5 * params.alpha
    rows = [{"tau": t, "s_num": res.p * t**h, "s_exact": p_exact * t**h} for t in taus]
    extra = {"p_found": res.p, "p_exact": p_exact, "phi": phi}
    return rows, ["tau", "s_num", "s_exact"], extra, True


def cmd_find_p(cfg):
    params = ModelParams(alpha=cfg["alpha"], lam=cfg["lam"])
    phi = _phi_for(params, cfg["m"], cfg["n"], cfg["phi"], cfg["tau0_factor"])
    res = find_p(params, cfg["m"], cfg["n"], phi, PIterConfig(epsilon=cfg["epsilon"], tau0_factor=cfg["tau0_factor"]))
    extra = {"result": res.to_dict(), "phi": phi}
    if cfg["verbose"]:
        mesh = build_mesh(cfg["m"], cfg["n"], res.p, params.alpha, cfg["tau0_factor"])
        grid = march(params, mesh, phi)
        with_j0 = estimate_p_from_grid(grid, params.lam)
        without_j0 = estimate_p_from_grid(grid, params.lam, include_initial=False)
        extra["estimator_sensitivity"] = {"with_initial_layer": with_j0, "without_initial_layer": without_j0}
        print(
            f"estimator at p={res.p:.9g}: with j=0 {with_j0:.9g}, without j=0 {without_j0:.9g}",
            file=sys.stderr,
        )
    return res.trace, ["p", "phi_of_p", "residual"], extra, True


def cmd_solve_p(cfg):
    res = solve_p_transcendental(ModelParams(alpha=cfg["alpha"], lam=cfg["lam"]))
    row = {"alpha": cfg["alpha"], "lambda": cfg["lam"], "p": res.p, "residual": res.residual, "iterations": res.iterations}
    return [row], ["alpha", "lambda", "p", "residual", "iterations"], None, True


def cmd_predict_phi(cfg):
    du = 1.0 / cfg["m"]
    phi = predict_phi(du, cfg["lam"], cfg["alpha"])
    return [{"delta_u": du, "lambda": cfg["lam"], "alpha": cfg["alpha"], "phi": phi}], ["delta_u", "lambda", "alpha", "phi"], None, True


def cmd_calibrate_phi(cfg):
    params = ModelParams(alpha=cfg["alpha"], lam=cfg["lam"])
    p = solve_p_transcendental(params).p
    mesh = build_mesh(cfg["m"], cfg["n"], p, params.alpha, cfg["tau0_factor"])
    phi = calibrate_phi(params, mesh, p)
    row = {"m": cfg["m"], "n": cfg["n"], "lambda": cfg["lam"], "alpha": cfg["alpha"], "phi": phi}
    return [row], ["m", "n", "lambda", "alpha", "phi"], None, True


def cmd_wright(cfg):
    for key in ("z", "gamma", "delta"):
        if cfg[key] is None:
            raise ValueError(f"wright needs --{key}")
    val = wright(cfg["z"], cfg["gamma"], cfg["delta"])
    return [{"z": cfg["z"], "gamma": cfg["gamma"], "delta": cfg["delta"], "value": val}], ["z", "gamma", "delta", "value"], None, True


def cmd_weights(cfg):
    rows = []
    for name in ("W1", "W2", "W3"):
        mat = getattr(DEFAULT_WEIGHTS, name)
        for r in range(mat.shape[0]):
            for c in range(mat.shape[1]):
                rows.append({"matrix": name, "row": r, "col": c, "value": mat[r, c]})
    return rows, ["matrix", "row", "col", "value"], None, True


def cmd_training_set(cfg):
    rows = [{"delta_u": du, "lambda": lam, "alpha": a, "phi": phi} for du, lam, a, phi in training_set()]
    return rows, ["delta_u", "lambda", "alpha", "phi"], None, True


COMMANDS = {
    "table1": cmd_table1,
    "table2": lambda cfg: cmd_tables23(cfg, 1.0),
    "table3": lambda cfg: cmd_tables23(cfg, "network"),
    "error-grid": cmd_error_grid,
    "profile": cmd_profile,
    "front": cmd_front,
    "find-p": cmd_find_p,
    "solve-p": cmd_solve_p,
    "predict-phi": cmd_predict_phi,
    "calibrate-phi": cmd_calibrate_phi,
    "wright": cmd_wright,
    "weights": cmd_weights,
    "training-set": cmd_training_set,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--tau0-factor", dest="tau0_factor", type=float)
    common.add_argument("--phi", type=parse_phi, help="network, calibrate, or a number in [0, 1]")
    common.add_argument("--epsilon", type=float)
    common.add_argument("--tau", type=float)
    common.add_argument("--z", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--config", help="JSON file with any of the above keys; flags win")
    common.add_argument("-v", "--verbose", action="store_true", default=None)

    parser = argparse.ArgumentParser(prog="fracstefan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args):
    cfg = dict(DEFAULTS)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            doc = json.load(fh)
        aliases = {"lambda": "lam", "tau0-factor": "tau0_factor"}
        for key, value in doc.items():
            key = aliases.get(key, key)
            if key not in DEFAULTS:
                raise ValueError(f"unknown config key {key!r}")
            cfg[key] = parse_phi(str(value)) if key == "phi" else value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        rows, columns, extra, ok = COMMANDS[args.command](cfg)
    except Exception as exc:
        print(f"fracstefan {args.command}: {exc}", file=sys.stderr)
        return 1
    text = render(rows, columns, cfg["format"], extra)
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
