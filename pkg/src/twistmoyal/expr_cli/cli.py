"""Command-line front end.

Exit codes: 0 when every asserted identity holds, 1 when one fails, 2 for
usage, configuration or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from ..coeff_algebra import TruncationOrders
from ..report import emit
from ..twist_geometry import Flavor, FlavorError, TwistConfig
from .checks import CHECK_NAMES, CHECKS, CheckOptions, run_check
from .evaluator import AlgebraMixingError, evaluate
from .parser import ParseError, parse

__all__ = ["main", "load_config", "ConfigError"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_CONFIG_KEYS = {"flavor", "theta_order", "omega_order", "kappa", "omega_nonzero",
                "constraint_eps_omega"}


class ConfigError(ValueError):
    pass


def load_config(data: dict) -> tuple[TwistConfig, bool]:
    """Build a config from the flat JSON document; returns (config, constraint flag)."""
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    try:
        flavor = Flavor(data.get("flavor", Flavor.ANTISYMMETRIC.value))
        orders = TruncationOrders(int(data.get("theta_order", 2)), int(data.get("omega_order", 1)))
        kappa = Fraction(str(data.get("kappa", 1)))
        slots = data.get("omega_nonzero")
        if slots is not None:
            slots = frozenset(tuple(int(i) for i in t) for t in slots)
        config = TwistConfig(flavor=flavor, orders=orders, kappa=kappa, admissible_omega=slots)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    constraint = data.get("constraint_eps_omega", True)
    if not isinstance(constraint, bool):
        raise ConfigError("constraint_eps_omega must be a boolean")
    return config, constraint


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    # Flags may appear before or after the verb; the subparser copies use
    # SUPPRESS so they do not overwrite values given before the verb.
    d = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    p.add_argument("--config", type=Path, default=d(None), help="JSON configuration file")
    p.add_argument("--theta-order", type=int, default=d(None))
    p.add_argument("--omega-order", type=int, default=d(None))
    p.add_argument("--method", choices=("series", "closed"), default=d(None))
    p.add_argument("--trials", type=int, default=d(None))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--format", choices=("text", "json"), default=d("text"))


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    parser = argparse.ArgumentParser(
        prog="twistmoyal", description="Exact twisted Moyal algebra and identity checks.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("star", parents=[common], help="star product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")
    p = sub.add_parser("check", parents=[common], help="run a named check")
    p.add_argument("name", nargs="?", choices=CHECK_NAMES, metavar="NAME")
    p.add_argument("--all", action="store_true", help="run every check")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for --all")
    sub.add_parser("report", parents=[common], help="one-line summary of every check")
    return parser


def _options(args, config: TwistConfig, constraint: bool) -> CheckOptions:
    return CheckOptions(config=config, theta_order=args.theta_order,
                        omega_order=args.omega_order, method=args.method,
                        trials=args.trials, seed=args.seed, constraint=constraint)


def _run_one(name: str, options: CheckOptions):
    return run_check(name, options)


def run_all(options: CheckOptions, jobs: int | None = None) -> list:
    """Run every check in worker processes; results come back in canonical order."""
    if jobs == 1:
        return [run_check(n, options) for n in CHECK_NAMES]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_one, n, options) for n in CHECK_NAMES]
        return [f.result() for f in futures]


def _eval_config(args, config: TwistConfig) -> TwistConfig:
    changes = {}
    if args.theta_order is not None or args.omega_order is not None:
        changes["orders"] = TruncationOrders(
            config.orders.theta_order if args.theta_order is None else args.theta_order,
            config.orders.omega_order if args.omega_order is None else args.omega_order)
    if args.method:
        changes["star_method"] = args.method
    return config.replace(**changes) if changes else config


def _print_value(value, fmt: str) -> None:
    text = value.render()
    print(json.dumps({"value": text}) if fmt == "json" else text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        data = json.loads(args.config.read_text()) if args.config else {}
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        config, constraint = load_config(data)
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.verb in ("star", "eval"):
            cfg = _eval_config(args, config)
            if args.verb == "star":
                source = f"star({args.left}, {args.right})"
                for piece in (args.left, args.right):
                    parse(piece)
            else:
                source = args.expr
            _print_value(evaluate(parse(source), cfg, args.method), args.format)
            return EXIT_OK

        options = _options(args, config, constraint)
        if args.verb == "check":
            if args.all == bool(args.name):
                print("error: give a check name or --all", file=sys.stderr)
                return EXIT_USAGE
            reports = run_all(options, args.jobs) if args.all else [run_check(args.name, options)]
            if args.format == "json" and args.all:
                print(json.dumps([r.to_dict() for r in reports], indent=2))
            else:
                print("\n\n".join(emit(r, args.format) for r in reports))
            return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL

        reports = run_all(options)
        if args.format == "json":
            print(json.dumps([{"check": r.check_id, "passed": r.passed,
                               "residual_zero": r.residual_zero,
                               "elapsed_ms": round(r.elapsed_ms, 3)} for r in reports], indent=2))
        else:
            for r in reports:
                status = "PASS" if r.passed else "FAIL"
                print(f"{r.check_id:<20} {status}  residual_zero={str(r.residual_zero).lower():<5}"
                      f"  {r.elapsed_ms:9.1f} ms  {CHECKS[r.check_id].description}")
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraMixingError, FlavorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
