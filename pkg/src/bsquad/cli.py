"""Command-line front end.

Usage::

    bsquad rule --config cfg.json [--format csv] [--out rule.csv]
    bsquad nodes --config cfg.json
    bsquad verify --config cfg.json
    bsquad integrate --config cfg.json --f-coeffs 0.5,0,0.5
    bsquad charpoly --config cfg.json [--mesh 50]
    bsquad jacobi --config cfg.json

The config file is JSON::

    {"family": {"eps_plus": 1, "eps_minus": 1, "alpha": [0.3, [0.1, 0.2], [0.1, -0.2]]},
     "family_tilde": {"eps_plus": 1, "eps_minus": 1, "alpha": []},
     "m": 6, "tol": 1e-13, "format": "json"}

Complex alphas are ``[re, im]`` pairs; angles are in radians.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .basis import build_basis, cd_closed_form, cd_sum, gluing_residual, gram_residuals
from .jacobi import (build_J, build_L, charpoly_cosine_coeffs, charpoly_eval, charpoly_expansion_check,
                     eig_check, similarity_transform)
from .nodes import DEFAULT_TOL, ConvergenceError, check_bounds, node_bounds, solve_grid, verify_phase_condition
from .oracle import tridiag_charpoly, tridiag_eig
from .params import CompositeConfig, ParameterError, validate_family, validate_pair
from .quadrature import RationalIntegrand, build_rule, integrate_rational, is_exact

COMMANDS = ("rule", "nodes", "verify", "integrate", "charpoly", "jacobi")

# pass thresholds for `verify`
GRAM_TOL = 1e-10
EIGEN_TOL = 1e-9
SPECTRUM_TOL = 1e-10
CD_TOL = 1e-10
PHASE_TOL = 1e-10
GLUING_TOL = 1e-10
CHARPOLY_NODE_TOL = 1e-8
CHARPOLY_DET_TOL = 1e-8
EXPANSION_TOL = 1e-8


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    config: CompositeConfig
    tol: float = DEFAULT_TOL
    format: str = "json"
    f_coeffs: list[float] | None = None
    mesh: int | None = None
    extra: dict[str, Any] = field(default_factory=dict)


def _parse_family(data: Any, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object with eps_plus, eps_minus, alpha")
    for key in ("eps_plus", "eps_minus"):
        if key not in data:
            raise ConfigError(f"{where}.{key}: missing")
    alpha = data.get("alpha", [])
    if not isinstance(alpha, list):
        raise ConfigError(f"{where}.alpha: expected a list")
    for r, a in enumerate(alpha):
        ok = isinstance(a, (int, float)) and not isinstance(a, bool)
        ok = ok or (isinstance(a, list) and len(a) == 2 and all(isinstance(v, (int, float)) for v in a))
        if not ok:
            raise ConfigError(f"{where}.alpha[{r}]: expected a number or [re, im] pair, got {a!r}")
    try:
        return validate_family(data["eps_plus"], data["eps_minus"], alpha)
    except ParameterError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_run_config(data: Any) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    fam = _parse_family(data.get("family"), "family")
    fam_t = _parse_family(data.get("family_tilde"), "family_tilde")
    if "m" not in data:
        raise ConfigError("m: missing")
    try:
        config = validate_pair(fam, fam_t, data["m"])
    except ParameterError as exc:
        raise ConfigError(f"m: {exc}") from None
    tol = data.get("tol", DEFAULT_TOL)
    if not isinstance(tol, (int, float)) or not tol > 0:
        raise ConfigError(f"tol: expected a positive number, got {tol!r}")
    fmt = data.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError(f"format: expected 'json' or 'csv', got {fmt!r}")
    known = {"family", "family_tilde", "m", "tol", "format", "f_coeffs", "mesh"}
    return RunConfig(config, float(tol), fmt, data.get("f_coeffs"), data.get("mesh"),
                     {k: v for k, v in data.items() if k not in known})


def load_run_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_run_config(data)


# -- serialisation -----------------------------------------------------------

def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_, int, float, np.integer, np.floating)):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(header: list[str], columns: list) -> str:
    rows = [",".join(header)]
    for row in zip(*columns):
        rows.append(",".join(format_number(v) for v in row))
    return "\n".join(rows)


# -- commands ----------------------------------------------------------------

def cmd_rule(run: RunConfig):
    rule = build_rule(run.config, run.tol)
    if run.format == "csv":
        return to_csv(["node", "weight", "rho"], [rule.nodes, rule.weights, rule.rho_at_nodes]), 0
    return {
        "m": run.config.m,
        "nodes": rule.nodes,
        "dual_weights": rule.weights,
        "rho_at_nodes": rule.rho_at_nodes,
        "exactness_degree": rule.exactness_degree,
        "kind": rule.kind.value,
    }, 0


def cmd_nodes(run: RunConfig):
    config = run.config
    grid = solve_grid(config, run.tol)
    bounds = node_bounds(config)
    if run.format == "csv":
        cols = [grid.xi, grid.residual, bounds.lo, bounds.hi]
        return to_csv(["node", "residual", "lo", "hi"], cols), 0
    return {
        "m": config.m,
        "nodes": grid.xi,
        "residuals": grid.residual,
        "brackets": grid.brackets,
        "kappa_plus": bounds.kappa_plus,
        "kappa_minus": bounds.kappa_minus,
        "phase_residuals": verify_phase_condition(config, grid.xi),
        "bounds_ok": check_bounds(grid, bounds),
    }, 0


def verify_report(config: CompositeConfig, tol: float = DEFAULT_TOL) -> dict:
    """All residual checks for one configuration, with pass flags."""
    basis = build_basis(config, tol)
    xi = basis.grid.xi
    m = config.m
    row, col = gram_residuals(basis)
    L = build_L(config, basis.fam_p, basis.fam_p_t)
    J = build_J(config, basis.fam_p, basis.fam_p_t)
    eig = eig_check(config, basis, L)
    spectrum = float(np.max(np.abs(np.sort(tridiag_eig(J)[0]) - np.sort(2.0 * np.cos(xi)))))
    similarity = float(np.max(np.abs(similarity_transform(L, basis.primal).dense() - J.dense())))
    cd = float(np.max(np.abs(cd_sum(config, basis.fam_p, basis.fam_p_t, xi) / cd_closed_form(config, xi) - 1.0)))
    phase_res = float(np.max(verify_phase_condition(config, xi)))
    interior = xi[(xi > 0) & (xi < np.pi)]
    q_nodes = float(np.max(np.abs(charpoly_eval(config, interior)))) if len(interior) else 0.0
    probe = np.pi * (np.arange(20) + 0.37) / 20.0
    q_probe, det_probe = charpoly_eval(config, probe), tridiag_charpoly(J, 2.0 * np.cos(probe))
    q_det = float(np.max(np.abs(q_probe - det_probe) / np.maximum(np.abs(q_probe), np.abs(det_probe))))
    lead = float(abs(charpoly_cosine_coeffs(config)[-1] * 2.0 ** m / 2.0 ** (m + 1) - 1.0))
    expansion = charpoly_expansion_check(config)
    checks = {
        "gram_row": (row, row < GRAM_TOL),
        "gram_col": (col, col < GRAM_TOL),
        "eigen": (eig, eig < EIGEN_TOL),
        "spectrum": (spectrum, spectrum < SPECTRUM_TOL),
        "similarity": (similarity, similarity < 1e-12),
        "cd_sum": (cd, cd < CD_TOL),
        "phase_condition": (phase_res, phase_res < PHASE_TOL),
        "gluing": (gluing_residual(config, xi), gluing_residual(config, xi) < GLUING_TOL),
        "charpoly_nodes": (q_nodes, q_nodes < CHARPOLY_NODE_TOL * 2.0 ** (m + 1)),
        "charpoly_det": (q_det, q_det < CHARPOLY_DET_TOL),
        "charpoly_leading": (lead, lead < 1e-8),
    }
    if expansion is not None:
        checks["charpoly_expansion"] = (expansion[0], expansion[0] < EXPANSION_TOL)
    report = {name: {"residual": val, "ok": ok} for name, (val, ok) in checks.items()}
    report["bounds"] = {"ok": check_bounds(basis.grid)}
    if expansion is None:
        report["charpoly_expansion"] = {"skipped": "2 d~_eps~ > m - 1 - d_eps"}
    passed = all(v.get("ok", True) for v in report.values())
    return {"m": m, "checks": report, "status": "ok" if passed else "fail"}


def cmd_verify(run: RunConfig):
    report = verify_report(run.config, run.tol)
    if run.format == "csv":
        names = [k for k, v in report["checks"].items() if "ok" in v]
        resid = [report["checks"][k].get("residual", float("nan")) for k in names]
        ok = [report["checks"][k]["ok"] for k in names]
        lines = ["check,residual,ok"] + [f"{n},{format_number(r)},{format_number(o)}" for n, r, o in zip(names, resid, ok)]
        return "\n".join(lines), 0 if report["status"] == "ok" else 1
    return report, 0 if report["status"] == "ok" else 1


def cmd_integrate(run: RunConfig):
    if run.f_coeffs is None:
        raise ConfigError("integrate needs --f-coeffs (Chebyshev-T coefficients of the numerator)")
    rule = build_rule(run.config, run.tol)
    integrand = RationalIntegrand(np.asarray(run.f_coeffs, dtype=float), run.config.fam)
    value = integrate_rational(rule, integrand)
    out = {
        "value": value,
        "exact": is_exact(rule, integrand),
        "degree": integrand.degree,
        "exactness_degree": rule.exactness_degree,
    }
    if run.format == "csv":
        return to_csv(["value", "exact"], [[value], [out["exact"]]]), 0
    return out, 0


def cmd_charpoly(run: RunConfig):
    config = run.config
    if run.mesh:
        xi = np.pi * (np.arange(run.mesh) + 0.5) / run.mesh
        q = charpoly_eval(config, xi)
        if run.format == "csv":
            return to_csv(["xi", "Q"], [xi, q]), 0
        return {"m": config.m, "xi": xi, "Q": q}, 0
    coeffs = charpoly_cosine_coeffs(config)
    if run.format == "csv":
        return to_csv(["k", "coefficient"], [range(len(coeffs)), coeffs]), 0
    return {"m": config.m, "cosine_coeffs": coeffs}, 0


def cmd_jacobi(run: RunConfig):
    config = run.config
    basis = build_basis(config, run.tol)
    J = build_J(config, basis.fam_p, basis.fam_p_t)
    if run.format == "csv":
        sub = np.append(J.sub, np.nan)
        return to_csv(["diag", "offdiag"], [J.diag, sub]), 0
    return {"m": config.m, "sub": J.sub, "diag": J.diag, "sup": J.sup}, 0


HANDLERS = {
    "rule": cmd_rule,
    "nodes": cmd_nodes,
    "verify": cmd_verify,
    "integrate": cmd_integrate,
    "charpoly": cmd_charpoly,
    "jacobi": cmd_jacobi,
}


def _parse_list(text: str) -> list[float]:
    text = text.strip()
    if text.startswith("["):
        return [float(v) for v in json.loads(text)]
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsquad", description="Composite Bernstein-Szegő quadrature rules")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--tol", type=float, help="node solver tolerance (default 1e-13)")
    parser.add_argument("--f-coeffs", help="numerator Chebyshev-T coefficients, e.g. 0.5,0,0.5")
    parser.add_argument("--mesh", type=int, help="sample Q_{m+1} on this many interior points")
    parser.add_argument("--out", help="write output here instead of stdout")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run_config(args.config)
        if args.format:
            cfg.format = args.format
        if args.tol is not None:
            if not args.tol > 0:
                raise ConfigError("--tol must be positive")
            cfg.tol = args.tol
        if args.f_coeffs is not None:
            try:
                cfg.f_coeffs = _parse_list(args.f_coeffs)
            except ValueError:
                raise ConfigError(f"--f-coeffs: cannot parse {args.f_coeffs!r}") from None
        if args.mesh is not None:
            if args.mesh < 1:
                raise ConfigError("--mesh must be a positive integer")
            cfg.mesh = args.mesh
        doc, status = HANDLERS[args.command](cfg)
    except (ConfigError, ParameterError, ConvergenceError, ValueError, ArithmeticError) as exc:
        _emit(dumps({"error": str(exc)}), None)
        return 2
    _emit(doc if isinstance(doc, str) else dumps(doc), args.out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
