"""Command-line driver: instance generation, exact censuses, randomized
bound verification with a CSV experiment log, and combinatorics queries.

Exit codes: 0 all checks hold, 1 usage error, 2 input validation error,
3 a verified assertion failed (reproducer seeds are printed to stderr).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import census, combinatorics, model

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_ASSERTION = 3

JOBS_ENV_VAR = "ENVY_CENSUS_JOBS"

CSV_COLUMNS = (
    "m",
    "seed",
    "ef1_count",
    "efx_count",
    "bound",
    "ef1_ok",
    "efx_ok",
    "separation_ok",
    "elapsed_ms",
)

GEN_KINDS = ("tight-ef1", "tight-efx", "additive", "random-monotone")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this tool reserves 2 for
    validation errors, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _item_count(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if not 1 <= m <= model.MAX_ITEMS:
        raise argparse.ArgumentTypeError(f"m must be in 1..{model.MAX_ITEMS}, got {m}")
    return m


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonnegative_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _m_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if not 1 <= lo <= hi <= model.MAX_ITEMS:
        raise argparse.ArgumentTypeError(
            f"need 1 <= A <= B <= {model.MAX_ITEMS}, got {text!r}"
        )
    return lo, hi


def _value_list(text: str) -> list:
    try:
        return [model.as_fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args) -> int:
    if args.kind == "tight-ef1":
        inst = model.tight_ef1_instance(args.m)
    elif args.kind == "tight-efx":
        inst = model.tight_efx_instance(args.m)
    elif args.kind == "additive":
        if args.values is None:
            print("gen: error: --values is required for kind 'additive'", file=sys.stderr)
            return EXIT_USAGE
        values_2 = args.values2 if args.values2 is not None else args.values
        if len(args.values) != args.m or len(values_2) != args.m:
            print(f"gen: error: expected {args.m} values per agent", file=sys.stderr)
            return EXIT_USAGE
        try:
            inst = model.Instance(model.make_additive(args.values), model.make_additive(values_2))
        except ValueError as exc:
            print(f"gen: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        inst = model.random_instance(args.m, args.seed)
    payload = model.dumps_instance(inst)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# count


def _cmd_count(args) -> int:
    try:
        inst = model.load_instance(args.instance)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"count: invalid instance: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.list is not None:
        v = inst.v1 if args.agent == 1 else inst.v2
        if args.list == "ef1-partitions":
            bundles = census.list_ef1_partitions(v)
        else:
            systems = census.extract_set_systems(v)
            bundles = {
                "good": systems.good,
                "too-small": systems.too_small,
                "too-large": systems.too_large,
            }[args.list]
        for b in sorted(bundles):
            print(b)
        return EXIT_OK
    report = census.census_report(inst, args.fairness)
    print(json.dumps(report.to_json_dict(), indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class ExperimentRow:
    """One verification row: counts for a seeded random instance and whether
    they meet the guaranteed bounds."""

    m: int
    seed: int
    ef1_count: int
    efx_count: int
    bound: int
    ef1_ok: bool
    efx_ok: bool
    separation_ok: bool
    elapsed_ms: int

    def as_csv(self) -> list[str]:
        return [
            str(self.m),
            str(self.seed),
            str(self.ef1_count),
            str(self.efx_count),
            str(self.bound),
            _fmt_bool(self.ef1_ok),
            _fmt_bool(self.efx_ok),
            _fmt_bool(self.separation_ok),
            str(self.elapsed_ms),
        ]

    @property
    def ok(self) -> bool:
        return self.ef1_ok and self.efx_ok and self.separation_ok


def _verify_row(task: tuple[int, int]) -> ExperimentRow:
    m, row_seed = task
    start = time.perf_counter()
    inst = model.random_instance(m, row_seed)
    ef1 = census.count_ef1_allocations(inst)
    efx = census.count_efx_allocations(inst)
    separation = census.verify_separation(inst.v1) and census.verify_separation(inst.v2)
    bound = census.f_ef1(m)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return ExperimentRow(
        m=m,
        seed=row_seed,
        ef1_count=ef1,
        efx_count=efx,
        bound=bound,
        ef1_ok=ef1 >= bound,
        efx_ok=efx >= 2,
        separation_ok=separation,
        elapsed_ms=elapsed_ms,
    )


def _resolve_jobs(cli_jobs) -> int:
    if cli_jobs is not None:
        return max(1, cli_jobs)
    env = os.environ.get(JOBS_ENV_VAR, "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _cmd_verify(args) -> int:
    lo, hi = args.m_range
    # Row seeds depend only on (master seed, m, trial index), so adding
    # trials or widening the range never reshuffles earlier rows.
    tasks = [
        (m, model.derive_seed(args.seed, m, trial))
        for m in range(lo, hi + 1)
        for trial in range(args.trials)
    ]
    jobs = _resolve_jobs(args.jobs)
    if jobs > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_verify_row, tasks, chunksize=chunk))
    else:
        rows = [_verify_row(task) for task in tasks]
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())
    finally:
        if args.out:
            out.close()
    failures = [row for row in rows if not row.ok]
    if failures:
        seeds = ", ".join(f"m={row.m} seed={row.seed}" for row in failures)
        print(
            f"verify: {len(failures)} of {len(rows)} rows failed; reproducers: {seeds}",
            file=sys.stderr,
        )
        return EXIT_ASSERTION
    print(f"verify: {len(rows)} rows, all assertions hold", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# combinatorics queries


def _cmd_shadow(args) -> int:
    print(combinatorics.shadow(args.n, args.k))
    return EXIT_OK


def _cmd_cascade(args) -> int:
    print(combinatorics.cascade_decompose(args.n, args.k))
    return EXIT_OK


def _cmd_harper(args) -> int:
    size_cap = 1 << args.m
    failures = []
    for trial in range(args.trials):
        rng = np.random.default_rng(model.derive_seed(args.seed, args.m, trial))
        system_a = set(map(int, rng.choice(size_cap, size=int(rng.integers(1, size_cap + 1)), replace=False)))
        system_b = set(map(int, rng.choice(size_cap, size=int(rng.integers(1, size_cap + 1)), replace=False)))
        report = combinatorics.verify_harper(system_a, system_b, args.m)
        if not report.ok:
            failures.append({"trial": trial, **report.to_json_dict()})
    print(
        json.dumps(
            {
                "m": args.m,
                "trials": args.trials,
                "seed": args.seed,
                "all_ok": not failures,
                "failures": failures,
            },
            indent=2,
        )
    )
    return EXIT_ASSERTION if failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _harper_m(text: str) -> int:
    m = _item_count(text)
    if m > 12:
        raise argparse.ArgumentTypeError(f"harper is capped at m <= 12, got {m}")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="envy-census",
        description="Exact EF1/EFX allocation censuses for two agents, and the "
        "combinatorics toolkit behind their tight bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an instance file")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--m", type=_item_count, required=True, help="number of items")
    p.add_argument("--seed", type=int, default=0, help="seed for random-monotone")
    p.add_argument("--values", type=_value_list, help="agent 1 item values (additive)")
    p.add_argument("--values2", type=_value_list, help="agent 2 item values (defaults to --values)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("count", help="exact census of an instance file")
    p.add_argument("instance", help="instance JSON path")
    p.add_argument("--fairness", choices=("ef1", "efx", "both"), default="both")
    p.add_argument(
        "--list",
        choices=("good", "too-small", "too-large", "ef1-partitions"),
        help="emit the chosen bundle list as newline-delimited integers instead of the JSON report",
    )
    p.add_argument("--agent", type=int, choices=(1, 2), default=1, help="agent for --list")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="check guaranteed bounds on random instances")
    p.add_argument("--m-range", type=_m_range, required=True, metavar="A..B")
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive_int, default=None,
                   help=f"parallel row workers (default: ${JOBS_ENV_VAR} or 1)")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("shadow", help="level-dropping shadow bound")
    p.add_argument("--n", type=_nonnegative_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_shadow)

    p = sub.add_parser("cascade", help="strictly-decreasing binomial decomposition")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_cascade)

    p = sub.add_parser("harper", help="ball-replacement distance check on random system pairs")
    p.add_argument("--m", type=_harper_m, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_harper)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
