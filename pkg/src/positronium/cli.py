"""Command-line surface: scans, minimization, tuning, flux solving,
variational bounds, and the reproduction suite.

Verbs: scan, minimize, tune, flux-solve, variational, reproduce.
Exit codes: 0 success, 1 reproduction failure, 2 usage/validation,
3 numerical failure.

Output is CSV for curve scans (columns ``r,V``, 17 significant digits,
UTF-8, LF line endings) and a JSON envelope for everything else:

    {
      "command":  <verb>,
      "version":  <package version>,
      "params":   { fully resolved parameters, defaults included },
      "results":  { verb-specific payload },
      "meta":     { "elapsed_seconds": ... }
    }

The params block is complete: re-running the same verb with exactly those
values reproduces the results payload bit for bit at the same version.
Only ``meta`` varies between runs and is excluded from comparisons.

An optional ``--config FILE`` supplies ``key = value`` defaults (keys are
flag names without the leading dashes); explicit flags override the file,
and the merged result is what the envelope echoes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from typing import Any, Callable

from . import __version__, acceptance, flux, models, variational
from .models import (
    ALPHA_FS,
    BIOT_SAVART_WINDOW,
    COULOMB_WINDOW,
    PhysicalConfig,
    PotentialModel,
    RingParams,
)
from .optimize import OptimizeError, find_local_minima
from .quadrature import QuadratureError

__all__ = ["RunConfig", "ResultEnvelope", "main"]

_MODEL_CHOICES = ("coulomb", "coulomb-dipole", "ring-ml", "ring-bltp", "scaling")
_TUNE_CHOICES = ("ring-ml", "ring-bltp", "scaling")


class UsageError(ValueError):
    """Parameter validation failure; message names the offending flag."""


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved invocation: verb plus validated parameters."""

    verb: str
    params: dict[str, Any]
    fmt: str = "json"
    output: str | None = None


@dataclass(frozen=True)
class ResultEnvelope:
    command: str
    version: str
    params: dict[str, Any]
    results: Any
    meta: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "version": self.version,
            "params": self.params,
            "results": self.results,
            "meta": self.meta,
        }


def _fail_usage(flag: str, message: str) -> None:
    raise UsageError(f"{flag}: {message}")


def _truncate_sig(value: float, digits: int) -> float:
    """Truncate (toward zero) to ``digits`` significant decimal digits."""
    if value == 0.0 or not math.isfinite(value):
        return value
    d = Decimal(repr(value))
    exponent = d.adjusted() - (digits - 1)
    return float(d.quantize(Decimal(1).scaleb(exponent), rounding=ROUND_DOWN))


def _sanitize(obj: Any) -> Any:
    """Replace non-finite floats with None so the JSON stays strict."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


# per-verb parameter tables: name -> (converter, built-in default, required)
# argparse stores None for unset flags so the config file can fill them in
_PARAM_SPECS: dict[str, dict[str, tuple[Callable[[str], Any], Any, bool]]] = {
    "scan": {
        "model": (str, None, True),
        "alpha": (float, ALPHA_FS, False),
        "n": (int, 1, False),
        "R": (float, None, False),
        "R_over_alpha2": (float, None, False),
        "R_coeff": (float, None, False),
        "kappa": (float, None, False),
        "k": (int, None, False),
        "rmin": (float, None, False),
        "rmax": (float, None, False),
        "points": (int, 400, False),
        "spacing": (str, "log", False),
        "quantity": (str, "potential", False),
    },
    "minimize": {
        "model": (str, None, True),
        "alpha": (float, ALPHA_FS, False),
        "n": (int, 1, False),
        "R": (float, None, False),
        "R_over_alpha2": (float, None, False),
        "R_coeff": (float, None, False),
        "kappa": (float, None, False),
        "k": (int, None, False),
        "rmin": (float, None, False),
        "rmax": (float, None, False),
        "points_per_decade": (int, 40, False),
    },
    "tune": {
        "model": (str, None, True),
        "alpha": (float, ALPHA_FS, False),
        "n": (int, 1, False),
        "k": (int, 1, False),
        "target": (float, 0.0, False),
    },
    "flux-solve": {
        "kappa": (float, None, True),
        "alpha": (float, ALPHA_FS, False),
    },
    "variational": {
        "R": (float, None, True),
        "alpha": (float, ALPHA_FS, False),
        "n": (int, 1, False),
        "a": (float, None, False),
        "a_min": (float, 1e-7, False),
        "a_max": (float, 1e4, False),
        "points_per_decade": (int, 40, False),
    },
    "reproduce": {},
}


def _read_config_file(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    _fail_usage("--config", f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                entries[key.strip().replace("-", "_")] = value.strip()
    except OSError as err:
        _fail_usage("--config", f"cannot read {path}: {err}")
    return entries


def _resolve_params(verb: str, args: argparse.Namespace) -> dict[str, Any]:
    spec = _PARAM_SPECS[verb]
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in file_values:
        if key not in spec:
            _fail_usage("--config", f"unknown key {key!r} for verb {verb!r}")
    resolved: dict[str, Any] = {}
    for key, (convert, default, required) in spec.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            resolved[key] = flag_value
        elif key in file_values:
            try:
                resolved[key] = convert(file_values[key])
            except ValueError:
                _fail_usage("--config", f"key {key!r}: cannot parse {file_values[key]!r}")
        else:
            resolved[key] = default
        if required and resolved[key] is None:
            _fail_usage(f"--{key.replace('_', '-')}", "is required")
    return resolved


def _positive(params: dict[str, Any], key: str) -> None:
    value = params.get(key)
    if value is not None and not value > 0.0:
        _fail_usage(f"--{key.replace('_', '-')}", f"must be positive; got {value!r}")


def _build_model(params: dict[str, Any]) -> PotentialModel:
    """Construct the requested PotentialModel, naming flags on failure."""
    family = params["model"]
    if family not in _MODEL_CHOICES:
        _fail_usage("--model", f"must be one of {_MODEL_CHOICES}; got {family!r}")
    for key in ("alpha", "R", "R_over_alpha2", "R_coeff", "kappa"):
        _positive(params, key)
    if not params["alpha"] < 1.0:
        _fail_usage("--alpha", f"must lie in (0, 1); got {params['alpha']!r}")
    if params["n"] < 1:
        _fail_usage("--n", f"must be a positive integer; got {params['n']!r}")
    cfg = PhysicalConfig(alpha=params["alpha"], n=params["n"])

    k = params.get("k")
    if family == "scaling":
        if k is None:
            k = 1
        if k not in (0, 1, 2, 3):
            _fail_usage("--k", f"must be in {{0,1,2,3}}; got {k!r}")
    elif k is not None:
        _fail_usage("--k", f"only the scaling family takes an exponent; model is {family!r}")

    given = [name for name in ("R", "R_over_alpha2", "R_coeff") if params.get(name) is not None]
    if len(given) > 1:
        _fail_usage("--R", "give only one of --R, --R-over-alpha2, --R-coeff")
    R: float | None = None
    if params.get("R") is not None:
        R = params["R"]
    elif params.get("R_over_alpha2") is not None:
        R = params["R_over_alpha2"] * cfg.alpha**2
    elif params.get("R_coeff") is not None:
        R = params["R_coeff"] * cfg.alpha ** (1 + (k if k is not None else 1))

    if family in ("coulomb", "coulomb-dipole"):
        if R is not None:
            _fail_usage("--R", f"the {family} model has no ring radius")
        if params.get("kappa") is not None:
            _fail_usage("--kappa", f"the {family} model has no regulator scale")
        return PotentialModel(family, cfg)
    if R is None:
        _fail_usage("--R", f"the {family} model needs a ring radius")
    if family == "ring-bltp":
        if params.get("kappa") is None:
            _fail_usage("--kappa", "the ring-bltp model needs the regulator scale")
        return PotentialModel(family, cfg, RingParams(R, params["kappa"]))
    if params.get("kappa") is not None:
        _fail_usage("--kappa", f"the {family} model has no regulator scale")
    if family == "ring-ml":
        return PotentialModel(family, cfg, RingParams(R))
    return PotentialModel(family, cfg, RingParams(R), scaling_k=k)


def _default_window(family: str) -> tuple[float, float]:
    if family == "coulomb":
        return COULOMB_WINDOW
    return BIOT_SAVART_WINDOW


def _echo_model_params(model: PotentialModel) -> dict[str, Any]:
    echo: dict[str, Any] = {
        "model": model.family,
        "alpha": model.cfg.alpha,
        "n": model.cfg.n,
    }
    if model.params is not None:
        echo["R"] = model.params.R
        if model.params.kappa is not None:
            echo["kappa"] = model.params.kappa
    if model.scaling_k is not None:
        echo["k"] = model.scaling_k
    return echo


def _cmd_scan(params: dict[str, Any]) -> tuple[dict[str, Any], Any]:
    model = _build_model(params)
    lo, hi = _default_window(model.family)
    rmin = params["rmin"] if params["rmin"] is not None else lo
    rmax = params["rmax"] if params["rmax"] is not None else hi
    if not rmin > 0.0:
        _fail_usage("--rmin", f"must be positive; got {rmin!r}")
    if not rmin < rmax:
        _fail_usage("--rmax", f"must exceed --rmin; got rmin={rmin!r}, rmax={rmax!r}")
    if params["points"] < 2:
        _fail_usage("--points", f"need at least 2; got {params['points']!r}")
    if params["spacing"] not in ("log", "linear"):
        _fail_usage("--spacing", f"must be 'log' or 'linear'; got {params['spacing']!r}")
    if params["quantity"] not in ("potential", "binding"):
        _fail_usage("--quantity", f"must be 'potential' or 'binding'; got {params['quantity']!r}")

    curve = models.sample_curve(model, rmin, rmax, params["points"], params["spacing"])
    if params["quantity"] == "binding":
        values = tuple(model.binding(r) for r in curve.grid)
    else:
        values = curve.values
    echo = _echo_model_params(model)
    echo.update(
        rmin=rmin,
        rmax=rmax,
        points=params["points"],
        spacing=params["spacing"],
        quantity=params["quantity"],
    )
    results = {"r": list(curve.grid), "V": list(values)}
    return echo, results


def _curve_csv(results: dict[str, Any]) -> str:
    lines = ["r,V"]
    for r, v in zip(results["r"], results["V"]):
        lines.append(f"{r:.17g},{v:.17g}")
    return "\n".join(lines) + "\n"


def _cmd_minimize(params: dict[str, Any]) -> tuple[dict[str, Any], Any]:
    model = _build_model(params)
    lo, hi = _default_window(model.family)
    rmin = params["rmin"] if params["rmin"] is not None else lo
    rmax = params["rmax"] if params["rmax"] is not None else hi
    if not rmin > 0.0:
        _fail_usage("--rmin", f"must be positive; got {rmin!r}")
    if not rmin < rmax:
        _fail_usage("--rmax", f"must exceed --rmin; got rmin={rmin!r}, rmax={rmax!r}")
    ppd = params["points_per_decade"]
    if ppd < 10:
        _fail_usage("--points-per-decade", f"need at least 10; got {ppd!r}")

    # minimize the rest-subtracted form (same minimizers, far better
    # conditioned); report both the raw value and the binding value
    minima = find_local_minima(model.binding, rmin, rmax, points_per_decade=ppd)
    payload = [
        {
            "r_star": p.r_star,
            "V": 2.0 + p.v_star,
            "binding": p.v_star,
            "kind": p.kind,
            "bracket": [p.bracket.lo, p.bracket.mid, p.bracket.hi],
        }
        for p in minima
    ]
    echo = _echo_model_params(model)
    echo.update(rmin=rmin, rmax=rmax, points_per_decade=ppd)
    return echo, {"minima": payload, "count": len(payload)}


def _cmd_tune(params: dict[str, Any]) -> tuple[dict[str, Any], Any]:
    family = params["model"]
    if family not in _TUNE_CHOICES:
        _fail_usage("--model", f"tuning supports {_TUNE_CHOICES}; got {family!r}")
    _positive(params, "alpha")
    if not params["alpha"] < 1.0:
        _fail_usage("--alpha", f"must lie in (0, 1); got {params['alpha']!r}")
    if params["n"] < 1:
        _fail_usage("--n", f"must be a positive integer; got {params['n']!r}")
    k = params["k"]
    if family == "scaling" and k not in (0, 1, 2, 3):
        _fail_usage("--k", f"must be in {{0,1,2,3}}; got {k!r}")
    cfg = PhysicalConfig(alpha=params["alpha"], n=params["n"])
    target = params["target"]
    echo = {
        "model": family,
        "alpha": cfg.alpha,
        "n": cfg.n,
        "target": target,
    }

    if family == "ring-bltp":
        solution, point = flux.tune_bltp(cfg.alpha, target, cfg.n)
        probe_R = _truncate_sig(solution.R, 10)
        probe = flux._tight_minimum_bltp(probe_R, solution.kappa, cfg)
        results = {
            "kappa": solution.kappa,
            "R": solution.R,
            "residual": solution.residual,
            "R_over_alpha2": solution.R / cfg.alpha**2,
            "minimum": {"r_star": point.r_star, "energy": point.v_star},
            "sensitivity": {
                "probe_R": probe_R,
                "probe_energy": probe.v_star,
                "sign_vs_target": "negative" if probe.v_star < target else "positive",
            },
        }
        return echo, results

    k_eff = 1 if family == "ring-ml" else k
    echo["k"] = k_eff
    R = models.tune_ring_radius(family, cfg, target, scaling_k=k_eff)
    coeff = R / cfg.alpha ** (1 + k_eff)
    point = models._tight_minimum(k_eff, coeff, cfg)
    probe_coeff = _truncate_sig(coeff, 10)
    probe = models._tight_minimum(k_eff, probe_coeff, cfg)
    results = {
        "R": R,
        "coefficient": coeff,
        "coefficient_parameterization": f"R / alpha^{1 + k_eff}",
        "minimum": {"r_star": point.r_star, "energy": point.v_star},
        "sensitivity": {
            "probe_coefficient": probe_coeff,
            "probe_energy": probe.v_star,
            "sign_vs_target": "negative" if probe.v_star < target else "positive",
        },
    }
    return echo, results


def _cmd_flux_solve(params: dict[str, Any]) -> tuple[dict[str, Any], Any]:
    _positive(params, "kappa")
    _positive(params, "alpha")
    if not params["alpha"] < 1.0:
        _fail_usage("--alpha", f"must lie in (0, 1); got {params['alpha']!r}")
    solution = flux.solve_R_given_kappa(params["kappa"], params["alpha"])
    echo = {"kappa": params["kappa"], "alpha": params["alpha"]}
    results = {
        "kappa": solution.kappa,
        "R": solution.R,
        "residual": solution.residual,
        "kappa_R": solution.kappa * solution.R,
    }
    return echo, results


def _cmd_variational(params: dict[str, Any]) -> tuple[dict[str, Any], Any]:
    for key in ("R", "alpha", "a", "a_min", "a_max"):
        _positive(params, key)
    if not params["alpha"] < 1.0:
        _fail_usage("--alpha", f"must lie in (0, 1); got {params['alpha']!r}")
    if params["n"] < 1:
        _fail_usage("--n", f"must be a positive integer; got {params['n']!r}")
    cfg = PhysicalConfig(alpha=params["alpha"], n=params["n"])
    R = params["R"]
    echo: dict[str, Any] = {"R": R, "alpha": cfg.alpha, "n": cfg.n}

    if params["a"] is not None:
        a = params["a"]
        kin = variational.kinetic_expectation(a)
        pot = variational.potential_expectation(a, R, cfg)
        echo["a"] = a
        return echo, {"a": a, "kinetic": kin, "potential": pot, "energy": kin + pot}

    if not params["a_min"] < params["a_max"]:
        _fail_usage("--a-max", f"must exceed --a-min; got ({params['a_min']!r}, {params['a_max']!r})")
    if params["points_per_decade"] < 10:
        _fail_usage("--points-per-decade", f"need at least 10; got {params['points_per_decade']!r}")
    echo.update(
        a_min=params["a_min"],
        a_max=params["a_max"],
        points_per_decade=params["points_per_decade"],
    )
    results = variational.minimize_over_a(
        R, params["a_min"], params["a_max"], cfg, params["points_per_decade"]
    )
    payload = [
        {
            "a_star": v.a_star,
            "kinetic": v.kinetic,
            "potential": v.potential,
            "energy": v.energy,
            "R": v.R,
        }
        for v in results
    ]
    return echo, {"minima": payload, "count": len(payload), "bound": payload[0]["energy"]}


def _cmd_reproduce(fmt: str) -> tuple[dict[str, Any], Any, int]:
    results = acceptance.run_all()
    report = acceptance.as_report_dict(results)
    code = 0 if report["all_passed"] else 1
    if fmt == "json":
        return {}, report, code
    return {}, acceptance.as_table(results), code


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=_MODEL_CHOICES, default=None)
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--R", type=float, default=None, dest="R")
    parser.add_argument(
        "--R-over-alpha2",
        type=float,
        default=None,
        dest="R_over_alpha2",
        help="ring radius in units of alpha^2",
    )
    parser.add_argument(
        "--R-coeff",
        type=float,
        default=None,
        dest="R_coeff",
        help="ring radius in units of alpha^(1+k)",
    )
    parser.add_argument("--kappa", type=float, default=None)
    parser.add_argument("--k", type=int, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="positronium",
        description="Semiclassical and variational binding-energy models "
        "for an electron-positron pair.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    scan = sub.add_parser("scan", help="sample a potential curve to CSV or JSON")
    _add_model_flags(scan)
    scan.add_argument("--rmin", type=float, default=None)
    scan.add_argument("--rmax", type=float, default=None)
    scan.add_argument("--points", type=int, default=None)
    scan.add_argument("--log", dest="spacing", action="store_const", const="log", default=None)
    scan.add_argument("--linear", dest="spacing", action="store_const", const="linear")
    scan.add_argument(
        "--quantity", choices=("potential", "binding"), default=None,
        help="emit the raw potential (default) or the rest-subtracted binding energy",
    )
    minimize = sub.add_parser("minimize", help="locate all local minima of a potential")
    _add_model_flags(minimize)
    minimize.add_argument("--rmin", type=float, default=None)
    minimize.add_argument("--rmax", type=float, default=None)
    minimize.add_argument("--points-per-decade", type=int, default=None, dest="points_per_decade")

    tune = sub.add_parser("tune", help="tune ring parameters to a target tight-state energy")
    tune.add_argument("--model", choices=_TUNE_CHOICES, default=None)
    tune.add_argument("--alpha", type=float, default=None)
    tune.add_argument("--n", type=int, default=None)
    tune.add_argument("--k", type=int, default=None)
    tune.add_argument("--target", type=float, default=None)

    flux_solve = sub.add_parser("flux-solve", help="solve the flux constraint for R at given kappa")
    flux_solve.add_argument("--kappa", type=float, default=None)
    flux_solve.add_argument("--alpha", type=float, default=None)

    var = sub.add_parser("variational", help="variational upper bound over the trial scale")
    var.add_argument("--R", type=float, default=None, dest="R")
    var.add_argument("--alpha", type=float, default=None)
    var.add_argument("--n", type=int, default=None)
    var.add_argument("--a", type=float, default=None, help="single-point mode: evaluate E(a) only")
    var.add_argument("--a-min", type=float, default=None, dest="a_min")
    var.add_argument("--a-max", type=float, default=None, dest="a_max")
    var.add_argument("--points-per-decade", type=int, default=None, dest="points_per_decade")

    reproduce = sub.add_parser("reproduce", help="run the full reproduction suite")

    for p in (scan, minimize, tune, flux_solve, var, reproduce):
        p.add_argument("--json", dest="as_json", action="store_true", default=False)
        p.add_argument("--output", type=str, default=None)
        p.add_argument("--config", type=str, default=None)
    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def run(config: RunConfig) -> tuple[str, int]:
    """Execute one resolved invocation; returns (output text, exit code)."""
    started = time.perf_counter()
    code = 0
    if config.verb == "scan":
        echo, results = _cmd_scan(config.params)
        if config.fmt == "csv":
            return _curve_csv(results), 0
    elif config.verb == "minimize":
        echo, results = _cmd_minimize(config.params)
    elif config.verb == "tune":
        echo, results = _cmd_tune(config.params)
    elif config.verb == "flux-solve":
        echo, results = _cmd_flux_solve(config.params)
    elif config.verb == "variational":
        echo, results = _cmd_variational(config.params)
    elif config.verb == "reproduce":
        echo, results, code = _cmd_reproduce(config.fmt)
        if config.fmt != "json":
            return results, code
    else:  # pragma: no cover - argparse restricts the verb set
        raise UsageError(f"unknown verb {config.verb!r}")

    envelope = ResultEnvelope(
        command=config.verb,
        version=__version__,
        params=_sanitize(echo),
        results=_sanitize(results),
        meta={"elapsed_seconds": time.perf_counter() - started},
    )
    return json.dumps(envelope.to_dict(), indent=2), code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    verb = args.verb
    try:
        params = _resolve_params(verb, args)
        if verb == "scan":
            fmt = "json" if args.as_json else "csv"
        elif verb == "reproduce":
            fmt = "json" if args.as_json else "table"
        else:
            fmt = "json"
        config = RunConfig(verb=verb, params=params, fmt=fmt, output=args.output)
        text, code = run(config)
        _emit(text, config.output)
        return code
    except UsageError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except ValueError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except (QuadratureError, OptimizeError, flux.FluxError) as err:
        sys.stderr.write(f"numerical failure: {err}\n")
        return 3
    except RuntimeError as err:
        sys.stderr.write(f"numerical failure: {err}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
