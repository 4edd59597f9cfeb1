"""Command-line interface.

Every flag may also come from a flat ``key = value`` config file passed with
``--config``; flags given on the command line win. Exit codes: 0 success,
2 parameter error, 3 quadrature convergence failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, ParameterError
from .experiments import (
    estimate_order,
    format_rows,
    jacobi_profile,
    log_adjusted_order,
    log_profile,
    power_profile,
    reproduce_table,
    theoretical_order,
    truncation_study,
)
from .fode import ManufacturedPower, global_error, manufactured_problem, measured_truncation, solve_fode
from .grids import make_grid
from .profiles import PowerProfile
from .weights import ConstantOne, JacobiWeight, LogInverseWeight, PowerWeight, ap_characteristic

EXIT_PARAMETER = 2
EXIT_CONVERGENCE = 3


def _flag(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ParameterError(f"expected a boolean, got {value!r}")


# name -> (type, default, choices); default ... marks a required option
_REQUIRED = ...
_OPTIONS = {
    "table": {
        "id": (int, _REQUIRED, (1, 2, 3, 4)),
        "base-n": (int, 1024, None),
        "format": (str, "csv", ("csv", "text")),
        "out": (str, None, None),
        "compare": (_flag, False, None),
    },
    "order": {
        "alpha": (float, _REQUIRED, None),
        "profile": (str, _REQUIRED, ("power", "jacobi", "log")),
        "p": (float, _REQUIRED, None),
        "mu": (float, _REQUIRED, None),
        "gamma": (float, None, None),
        "T": (float, 1.0, None),
        "base-n": (int, 1024, None),
        "offset": (float, 0.001, None),
        "log-adjusted": (_flag, False, None),
    },
    "truncation": {
        "alpha": (float, _REQUIRED, None),
        "profile": (str, _REQUIRED, ("power", "jacobi", "log")),
        "weight": (str, _REQUIRED, ("one", "power", "jacobi", "loginv")),
        "p": (float, _REQUIRED, None),
        "mu": (float, 0.0, None),
        "gamma": (float, 0.0, None),
        "kappa": (float, None, None),
        "T": (float, 1.0, None),
        "offset": (float, 0.001, None),
        "grids": (str, "64,128,256,512", None),
        "format": (str, "text", ("csv", "text")),
    },
    "solve-fode": {
        "alpha": (float, _REQUIRED, None),
        "lambda": (float, _REQUIRED, None),
        "y0": (float, 0.0, None),
        "manufactured": (str, _REQUIRED, None),
        "n": (int, _REQUIRED, None),
        "T": (float, 1.0, None),
    },
    "ap-char": {
        "weight": (str, _REQUIRED, ("one", "power", "jacobi", "loginv")),
        "p": (float, _REQUIRED, None),
        "mu": (float, 0.0, None),
        "gamma": (float, 0.0, None),
        "T": (float, 1.0, None),
        "depth": (int, 10, None),
    },
}

_HELP = {
    "table": "reproduce one of the published convergence tables",
    "order": "extrapolated convergence order for one test profile",
    "truncation": "measured truncation error versus the weighted bound",
    "solve-fode": "solve D^a y + lambda y = f for a manufactured solution",
    "ap-char": "dyadic estimate of the A_p characteristic of a weight",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l1caputo", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="flat key = value file mirroring the flags")
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, opts in _OPTIONS.items():
        sp = sub.add_parser(name, help=_HELP[name])
        for opt, (_, default, choices) in opts.items():
            if opt in ("log-adjusted", "compare"):
                sp.add_argument(f"--{opt}", action="store_const", const=True, default=None)
                continue
            extra = {"choices": [str(c) for c in choices]} if choices else {}
            hint = "required" if default is _REQUIRED else f"default {default}"
            sp.add_argument(f"--{opt}", default=None, help=hint, **extra)
    return parser


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise ParameterError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split(sep, 1))
        values[key.lstrip("-").replace("_", "-")] = value
    return values


def resolve(command: str, given: dict, config: dict) -> dict:
    """Merge command-line values over config values and apply types and defaults."""
    opts = _OPTIONS[command]
    unknown = set(config) - set(opts)
    if unknown:
        raise ParameterError(f"unknown config keys for '{command}': {', '.join(sorted(unknown))}")
    out = {}
    for opt, (kind, default, choices) in opts.items():
        raw = given.get(opt)
        if raw is None:
            raw = config.get(opt)
        if raw is None:
            if default is _REQUIRED:
                raise ParameterError(f"--{opt} is required")
            out[opt] = default
            continue
        try:
            value = kind(raw)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"--{opt}: cannot parse {raw!r}") from exc
        if choices and value not in choices:
            raise ParameterError(f"--{opt} must be one of {', '.join(map(str, choices))}")
        out[opt] = value
    return out


def _weight(kind: str, mu: float, gamma: float, T: float):
    if kind == "one":
        return ConstantOne()
    if kind == "power":
        return PowerWeight(mu)
    if kind == "jacobi":
        return JacobiWeight(mu, gamma, T)
    return LogInverseWeight(mu, T)


def _profile(args):
    p, mu, T, offset = args["p"], args["mu"], args["T"], args["offset"]
    if args["profile"] == "power":
        if args.get("kappa") is not None:
            return PowerProfile(args["kappa"]), PowerWeight(mu)
        return power_profile(p, mu, offset), PowerWeight(mu)
    if args["profile"] == "jacobi":
        gamma = args["gamma"] if args["gamma"] is not None else 0.0
        return jacobi_profile(p, mu, gamma, T, offset), JacobiWeight(mu, gamma, T)
    return log_profile(p, mu, T, offset), LogInverseWeight(mu, T)


def _emit(lines: dict, out=None) -> None:
    stream = out or sys.stdout
    for key, value in lines.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        stream.write(f"{key}: {value}\n")


def cmd_table(args) -> None:
    rows = reproduce_table(args["id"], args["base-n"])
    text = format_rows(rows, args["format"], compare=args["compare"])
    if args["out"]:
        with open(args["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_order(args) -> None:
    if not 1.0 < args["p"]:
        raise ParameterError("p must satisfy p > 1")
    prof, weight = _profile(args)
    theory = theoretical_order(weight, args["p"], args["alpha"])
    if args["log-adjusted"]:
        est = log_adjusted_order(args["alpha"], prof, args["T"], args["base-n"], args["mu"], args["p"])
        order = est.log_adjusted
    else:
        est = estimate_order(args["alpha"], prof, args["T"], args["base-n"])
        order = est.order
    _emit({
        "profile": repr(prof),
        "base_tau": est.base_tau,
        "d1": est.d1,
        "d2": est.d2,
        "estimated_order": "exact" if order is None else f"{order:.3f}",
        "theoretical_order": f"{theory:.3f}",
    } | ({"adjust_tau": repr(est.base_tau)} if args["log-adjusted"] else {}))


def cmd_truncation(args) -> None:
    prof, _ = _profile(args)
    weight = _weight(args["weight"], args["mu"], args["gamma"], args["T"])
    try:
        grids = [int(x) for x in args["grids"].split(",") if x.strip()]
    except ValueError as exc:
        raise ParameterError("--grids must be a comma-separated list of integers") from exc
    if len(grids) < 2:
        raise ParameterError("--grids needs at least two grids for a slope")
    study = truncation_study(args["alpha"], prof, weight, args["p"], grids, args["T"])
    header = ["N", "tau", "max_R", "Lambda", "bound"]
    rows = [[str(b.N), f"{b.tau:.6g}", f"{b.max_R:.6e}", f"{b.Lambda:.6g}", f"{b.bound:.6e}"] for b in study.breakdowns]
    sep = "," if args["format"] == "csv" else "  "
    sys.stdout.write(sep.join(header) + "\n")
    for r in rows:
        sys.stdout.write(sep.join(r) + "\n")
    if args["format"] == "text":
        sys.stdout.write(f"# fitted slope: {study.slope:.4f}\n")
        if study.bound_slope is not None:
            sys.stdout.write(f"# bound slope: {study.bound_slope:.4f}\n")


def cmd_solve_fode(args) -> None:
    spec = args["manufactured"].strip().lower()
    if spec == "quadratic":
        kappa = 2.0
    elif spec.startswith("power:"):
        try:
            kappa = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ParameterError("--manufactured power:K needs a numeric K") from exc
    else:
        raise ParameterError("--manufactured must be 'power:K' or 'quadratic'")
    exact = ManufacturedPower(kappa, args["y0"])
    problem = manufactured_problem(args["alpha"], args["lambda"], exact, args["T"])
    grid = make_grid(args["T"], args["n"])
    sol = solve_fode(problem, grid)
    R = measured_truncation(args["alpha"], exact, grid, caputo=lambda t: exact.caputo(args["alpha"], t))
    report = global_error(sol, exact, R, args["alpha"])
    _emit({
        "N": grid.N,
        "tau": grid.tau,
        "Y_N": float(sol.Y[-1]),
        "y_T": float(exact(grid.T)),
        "max_error": report.max_error,
        "max_truncation": float(np.max(np.abs(R))),
        "gronwall_bound": report.gronwall_bound,
    })


def cmd_ap_char(args) -> None:
    if not 1.0 < args["p"]:
        raise ParameterError("p must satisfy p > 1")
    weight = _weight(args["weight"], args["mu"], args["gamma"], args["T"])
    value = ap_characteristic(weight, args["p"], args["T"], args["depth"])
    _emit({
        "weight": repr(weight),
        "depth": args["depth"],
        "ap_characteristic": "inf (not in A_p)" if math.isinf(value) else value,
    })


_COMMANDS = {
    "table": cmd_table,
    "order": cmd_order,
    "truncation": cmd_truncation,
    "solve-fode": cmd_solve_fode,
    "ap-char": cmd_ap_char,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    given = {k.replace("_", "-"): v for k, v in vars(ns).items() if k not in ("command", "config")}
    try:
        config = read_config(ns.config) if ns.config else {}
        args = resolve(ns.command, given, config)
        _COMMANDS[ns.command](args)
    except (ParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except ConvergenceError as exc:
        print(f"error: {exc} (best estimate {exc.estimate:.6g}, bound {exc.bound:.3g})", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    return 0


if __name__ == "__main__":
    sys.exit(main())
