"""Command-line front end.

Two verbs: ``compute`` evaluates a single coordinate object from a JSON
input file, ``verify`` runs identity suites over seeded random instances
and emits a JSON report.  All rationals travel as strings; identical
invocations produce byte-identical output.

Exit codes: 0 verified/computed, 1 counterexample found, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .grassmann import (
    NotInBigCellError,
    NotIsotropicError,
    cartan_big_cell,
    cartan_coordinates,
    frame_from_json,
    plucker_coordinates,
)
from .identities import SUITES, run_suite
from .indexsets import IndexSet, delta_bracket
from .linalg import SkewMatrix, format_scalar, matrix_from_json, pfaffian
from .partitions import Partition, partition_from_json

THREADS_ENV = "SPINOR_GRASS_THREADS"


class CliError(Exception):
    pass


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read JSON from {path}: {exc}") from exc


def _dump(obj: object, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args: argparse.Namespace) -> int:
    kind = args.kind
    try:
        if kind == "pfaffian":
            mat = matrix_from_json(_load_json(args.input))
            _dump(format_scalar(pfaffian(SkewMatrix(mat))), args.output)
        elif kind == "delta":
            obj = _load_json(args.input)
            ambient = int(obj["ambient"])
            sets = [IndexSet.of(obj[key], ambient) for key in ("i", "j", "k", "l")]
            value = delta_bracket(*sets, mode=obj.get("mode", "closed"))
            _dump(format_scalar(value), args.output)
        elif kind == "plucker":
            frame = frame_from_json(_load_json(args.frame))
            coords = plucker_coordinates(frame)
            if args.partition is not None:
                lam = _parse_partition(args.partition)
                _dump({"label": list(lam.parts), "value": format_scalar(coords.value(lam))},
                      args.output)
            else:
                _dump(coords.to_json(), args.output)
        elif kind == "cartan":
            if bool(args.affine) == bool(args.frame):
                raise CliError("cartan needs exactly one of --affine or --frame")
            if args.affine:
                coords = cartan_big_cell(SkewMatrix(matrix_from_json(_load_json(args.affine))))
            else:
                coords = cartan_coordinates(frame_from_json(_load_json(args.frame)))
            _dump(coords.to_json(), args.output)
        else:
            raise CliError(f"unknown compute kind {kind!r}")
    except (CliError, NotIsotropicError, NotInBigCellError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition(())
    return partition_from_json([int(x) for x in text.split(",")])


def _worker_count(tasks: int) -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return max(1, min(cap, tasks))


def _run_one(task: tuple[str, int, int, int, int]) -> list[dict]:
    which, n, trials, seed, bound = task
    return [r.to_json() for r in run_suite(which, n, trials, seed, bound)]


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 1 or args.trials < 1:
        print("error: --n and --trials must be >= 1", file=sys.stderr)
        return 2
    if args.which != "all" and args.which not in SUITES:
        print(f"error: unknown suite {args.which!r}", file=sys.stderr)
        return 2
    names = list(SUITES) if args.which == "all" else [args.which]
    tasks = [(name, args.n, args.trials, args.seed, args.bound) for name in names]
    workers = _worker_count(len(tasks))
    if workers > 1:
        # one task per suite; merge order is the fixed suite order, so the
        # report is byte-identical to a sequential run
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, tasks))
    else:
        chunks = [_run_one(task) for task in tasks]
    suites_out = []
    all_passed = True
    for name, reports in zip(names, chunks):
        failures = [r for r in reports if not r["passed"]]
        suites_out.append(_suite_summary(name, args, reports, failures))
        all_passed = all_passed and not failures
    _dump({"config": {"which": args.which, "n": args.n, "trials": args.trials,
                      "seed": args.seed, "bound": args.bound},
           "suites": suites_out, "all_passed": all_passed}, args.output)
    return 0 if all_passed else 1


def _suite_summary(name: str, args: argparse.Namespace,
                   reports: list[dict], failures: list[dict]) -> dict:
    return {
        "which": name,
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "total": len(reports),
        "passed": len(reports) - len(failures),
        "first_failure": failures[0] if failures else None,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinor-grass",
        description="Exact Pfaffian/Plucker/Cartan coordinates and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="evaluate one coordinate object from JSON input")
    comp.add_argument("kind", choices=["pfaffian", "plucker", "cartan", "delta"])
    comp.add_argument("--input", help="input JSON file (pfaffian, delta)")
    comp.add_argument("--frame", help="frame JSON file (plucker, cartan)")
    comp.add_argument("--affine", help="skew affine-chart JSON file (cartan)")
    comp.add_argument("--partition", help="comma-separated partition label (plucker)")
    comp.add_argument("--output", help="write result to this file instead of stdout")
    comp.set_defaults(func=_cmd_compute)

    ver = sub.add_parser("verify", help="run identity suites over seeded instances")
    ver.add_argument("--which", default="all",
                     choices=sorted(SUITES) + ["all"], help="suite selector")
    ver.add_argument("--n", type=int, default=4, help="ambient dimension")
    ver.add_argument("--trials", type=int, default=10, help="seeded instances per suite")
    ver.add_argument("--seed", type=int, default=0, help="base seed")
    ver.add_argument("--bound", type=int, default=9, help="entry bound for random instances")
    ver.add_argument("--output", help="write the JSON report to this file")
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    missing = []
    if args.command == "compute":
        if args.kind in ("pfaffian", "delta") and not args.input:
            missing.append("--input")
        if args.kind == "plucker" and not args.frame:
            missing.append("--frame")
    if missing:
        print(f"error: {args.kind} requires {', '.join(missing)}", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
