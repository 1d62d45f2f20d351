"""Command line entry point: simulate, tune, compare, sweep.

Exit codes: 0 success, 2 configuration error, 3 simulation diverged.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, SimulationError
from .harness import compare, run, sweep
from .io import write_json, write_run
from .scenario import Scenario, load_document
from .tuning import PsoConfig, pso_minimize

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGED = 0, 2, 3


def _scenario(doc: dict, seed: int | None, extra=()) -> Scenario:
    doc = {k: v for k, v in doc.items() if k not in extra}
    if seed is not None:
        doc["seed"] = seed
    return Scenario.from_dict(doc)


def _parse_values(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"--values must be a comma-separated list of numbers: {exc}") from exc


def cmd_simulate(args) -> int:
    sc = _scenario(load_document(args.config), args.seed)
    record = run(sc)
    write_run(record, args.out, "run", args.format)
    return EXIT_OK


def cmd_tune(args) -> int:
    doc = load_document(args.config)
    sc = _scenario(doc, args.seed, extra=("tuning",))
    overrides = dict(doc.get("tuning", {}))
    if args.seed is not None:
        overrides["seed"] = args.seed
    else:
        overrides.setdefault("seed", sc.seed)
    try:
        config = PsoConfig.for_controller(sc.controller.kind, **overrides)
    except TypeError as exc:
        raise ConfigError(f"bad tuning section: {exc}") from exc
    result = pso_minimize(config, sc)
    tuned = sc.replace(controller={**sc.to_dict()["controller"], "gains": list(map(float, result.best_gains))})
    record = run(tuned)
    write_run(record, args.out, "tuned", args.format)
    write_json({**result.as_dict(), "controller": sc.controller.kind,
                "pso": {**config.__dict__, "bounds": [list(b) for b in config.bounds]},
                "metrics_at_best": record.metrics.as_dict()},
               Path(args.out) / "tuning.json")
    return EXIT_OK


def cmd_compare(args) -> int:
    doc = load_document(args.config)
    unknown = set(doc) - {"schema_version", "base", "scenarios"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}")
    entries = doc.get("scenarios", [])
    base = doc.get("base", {})
    scenarios = []
    for entry in entries:
        merged = _deep_update(base, entry)
        scenarios.append(_scenario(merged, args.seed))
    report = compare(scenarios)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, (label, record) in enumerate(zip(report.labels, report.records)):
        write_run(record, out, f"{i:02d}_{label}", args.format)
    write_json(report.as_dict(), out / "comparison.json")
    (out / "comparison.txt").write_text(report.format() + "\n", encoding="utf-8")
    print(report.format())
    return EXIT_OK


def cmd_sweep(args) -> int:
    sc = _scenario(load_document(args.config), args.seed)
    results = sweep(sc, args.param, _parse_values(args.values))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, (_, record) in enumerate(results):
        write_run(record, out, f"sweep_{i:02d}", args.format)
    write_json({"parameter": args.param,
                "points": [{"value": v, "metrics": r.metrics.as_dict()} for v, r in results]},
               out / "sweep.json")
    return EXIT_OK


def _deep_update(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_update(out[key], value)
        else:
            out[key] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # flags are accepted before or after the subcommand; the subcommand
        # copy must not overwrite values given before it
        p = argparse.ArgumentParser(add_help=False)
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        p.add_argument("--out", help="output directory (default: ./out)", **(kw or {"default": "out"}))
        p.add_argument("--seed", type=int, help="override the scenario/tuning seed", **(kw or {"default": None}))
        p.add_argument("--format", choices=("csv", "json"), help="time-series format",
                       **(kw or {"default": "csv"}))
        return p

    common = global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="wristsmc", description=__doc__.splitlines()[0],
                                     parents=[global_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_ in (
        ("simulate", cmd_simulate, "run one scenario"),
        ("tune", cmd_tune, "PSO-tune the scenario's controller gains"),
        ("compare", cmd_compare, "run several scenarios side by side"),
        ("sweep", cmd_sweep, "run a scenario over values of one parameter"),
    ):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("config", help="JSON scenario document")
        p.set_defaults(func=func)
        if name == "sweep":
            p.add_argument("--param", required=True, help="dotted field, e.g. perturbation.inertia")
            p.add_argument("--values", required=True, help="comma-separated numbers")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as exc:
        print(f"simulation diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
