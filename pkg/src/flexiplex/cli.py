"""Command-line front end: families, sweeps, dual verification, search, and
the named check bundles, as reproducible runs with JSON/CSV artifacts.

Exit codes: 0 success, 2 invalid configuration, 3 verification failure,
4 I/O error. The environment variable FLEXIPLEX_SEED overrides any --seed.
Outputs are byte-identical for identical configurations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import checks, families, search
from .dual import family_dual_report
from .exactmat import frac_str

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFICATION = 3
EXIT_IO = 4


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 1
    output_path: Optional[str] = None
    format: str = "json"


class ConfigError(ValueError):
    pass


def _parse_rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise ConfigError(f"could not parse rational list {text!r}: {err}") from err


def _parse_grid(text: Optional[str]) -> tuple[Fraction, ...]:
    if not text:
        return families.DEFAULT_GRID
    grid = _parse_rationals(text)
    if any(t <= 0 for t in grid):
        raise ConfigError("grid values must be positive")
    return grid


def _build_family(config: RunConfig) -> families.DeformationFamily:
    params = config.params
    kind = params.get("kind")
    if kind in ("n4", "n5"):
        if not params.get("a") or not params.get("b"):
            raise ConfigError(f"kind {kind} needs --a and --b")
        builder = families.family_n4 if kind == "n4" else families.family_n5
        return builder(_parse_rationals(params["a"]), _parse_rationals(params["b"]))
    if kind in ("odd", "even"):
        n = params.get("n")
        if n is None:
            raise ConfigError(f"kind {kind} needs --n")
        n = int(n)
        if kind == "odd" and n % 2 == 0:
            raise ConfigError("kind odd needs an odd n")
        if kind == "even" and n % 2 == 1:
            raise ConfigError("kind even needs an even n")
        return families.build_family(n, seed=config.seed)
    raise ConfigError(f"unknown family kind {kind!r}")


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        Path(config.output_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_family(config: RunConfig) -> int:
    fam = _build_family(config)
    _emit(config, families.family_to_json(fam))
    return EXIT_OK


def _run_sweep(config: RunConfig) -> int:
    fam = _build_family(config)
    grid = _parse_grid(config.params.get("grid"))
    report = families.sweep(fam, grid)
    if config.format == "csv":
        _emit(config, families.sweep_to_csv(report))
    else:
        payload = {
            "kind": report.kind,
            "order": report.order,
            "t_grid": [frac_str(t) for t in report.t_grid],
            "verdicts": {
                "minors_constant": report.verdicts["minors_constant"],
                "det_constant": report.verdicts["det_constant"],
                "signature_trace": [
                    list(s) for s in report.verdicts["signature_trace"]
                ],
                **(
                    {"face_vols_constant": report.verdicts["face_vols_constant"]}
                    if "face_vols_constant" in report.verdicts
                    else {}
                ),
            },
            "per_t": [
                {
                    "t": frac_str(p.t),
                    "det": frac_str(p.det),
                    "signature": list(p.signature),
                    "minors": [frac_str(v) for v in p.minors],
                }
                for p in report.per_t
            ],
        }
        _emit(config, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _run_dual(config: RunConfig) -> int:
    n = config.params.get("n")
    if n is None:
        raise ConfigError("dual needs --n")
    fam = families.build_family(int(n), seed=config.seed)
    grid = _parse_grid(config.params.get("grid"))
    report = family_dual_report(fam, grid)
    _emit(config, json.dumps(report, indent=2, sort_keys=True) + "\n")
    verdicts = report["verdicts"]
    ok = verdicts["codim2_constant"] and verdicts["euclidean_angles"]
    return EXIT_OK if ok else EXIT_VERIFICATION


def _run_search(config: RunConfig) -> int:
    params = config.params
    n = int(params.get("n", 4))
    samples = int(params.get("samples", 1000))
    log_path = params.get("log")
    start = 0
    if params.get("resume") and log_path:
        cursor = search.SearchLog(log_path).last_cursor()
        if cursor and cursor.get("n") == n and cursor.get("seed") == config.seed:
            start = int(cursor["next_sample_index"])
    hits = search.sample_and_test(n, samples, seed=config.seed, start=start)
    counts = {search.IN_F0: 0, search.NEAR_MISS: 0, search.REJECT: 0}
    for hit in hits:
        counts[hit.classification] += 1
    if log_path:
        search.SearchLog(log_path).append_run(n, config.seed, hits, start=start)
    summary = {
        "n": n,
        "seed": config.seed,
        "start": start,
        "samples": samples,
        "counts": counts,
    }
    _emit(config, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _run_lemma_check(config: RunConfig) -> int:
    name = config.params.get("name")
    names = sorted(checks.BUNDLES) if name == "all" else [name]
    for unknown in set(names) - set(checks.BUNDLES):
        raise ConfigError(f"unknown bundle {unknown!r}; known: {sorted(checks.BUNDLES)}")
    n = config.params.get("n")
    count = config.params.get("count")
    failures = 0
    lines = []
    for bundle in names:
        result = checks.run_bundle(
            bundle,
            n=int(n) if n is not None else None,
            seed=config.seed,
            count=int(count) if count is not None else None,
        )
        lines.append(
            f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.details}\n"
        )
        failures += 0 if result.passed else 1
    _emit(config, "".join(lines))
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


_RUNNERS = {
    "family": _run_family,
    "sweep": _run_sweep,
    "dual": _run_dual,
    "search": _run_search,
    "lemma-check": _run_lemma_check,
}


def run(config: RunConfig) -> int:
    """Execute a fully-specified run; every output is determined by the
    configuration (seeds included)."""
    env_seed = os.environ.get("FLEXIPLEX_SEED")
    if env_seed is not None:
        try:
            config.seed = int(env_seed)
        except ValueError as err:
            raise ConfigError(f"FLEXIPLEX_SEED must be an integer: {err}") from err
    runner = _RUNNERS.get(config.command)
    if runner is None:
        raise ConfigError(f"unknown command {config.command!r}")
    return runner(config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexiplex",
        description=(
            "Construct, sweep, dualize, and verify flexible simplex families "
            "with exact rational arithmetic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--out", dest="output_path")

    p_family = sub.add_parser("family", help="emit a family descriptor")
    p_family.add_argument("--kind", required=True, choices=["n4", "n5", "odd", "even"])
    p_family.add_argument("--a", help="comma-separated rationals, e.g. 1,1,-2")
    p_family.add_argument("--b", help="comma-separated rationals, e.g. 2,-3,1")
    p_family.add_argument("--n", type=int)
    add_common(p_family)

    p_sweep = sub.add_parser("sweep", help="evaluate a family on a t grid")
    p_sweep.add_argument("--family", dest="kind", required=True,
                         choices=["n4", "n5", "odd", "even"])
    p_sweep.add_argument("--a")
    p_sweep.add_argument("--b")
    p_sweep.add_argument("--n", type=int)
    p_sweep.add_argument("--grid", help="comma-separated positive rationals")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    add_common(p_sweep)

    p_dual = sub.add_parser("dual", help="dual-transfer verification report")
    p_dual.add_argument("--n", type=int, required=True)
    p_dual.add_argument("--grid")
    add_common(p_dual)

    p_search = sub.add_parser("search", help="sample degenerate pairs and classify")
    p_search.add_argument("--n", type=int, default=4)
    p_search.add_argument("--samples", type=int, default=1000)
    p_search.add_argument("--log", help="JSON-lines result log to append to")
    p_search.add_argument("--resume", action="store_true",
                          help="continue from the log's cursor")
    add_common(p_search)

    p_check = sub.add_parser("lemma-check", help="run a named verification bundle")
    p_check.add_argument("name", help="bundle name or 'all'")
    p_check.add_argument("--n", type=int)
    p_check.add_argument("--count", type=int)
    add_common(p_check)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "seed", "output_path", "format"} and value is not None
    }
    return RunConfig(
        command=args.command,
        params=params,
        seed=args.seed,
        output_path=args.output_path,
        format=getattr(args, "format", "json"),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    try:
        return run(config)
    except (
        ConfigError,
        families.ZeroParameter,
        families.ConstraintViolated,
        families.DegenerateParameters,
        families.MTooSmall,
        families.NonPositiveT,
        families.ExcludedT,
        search.TooLarge,
        KeyError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
