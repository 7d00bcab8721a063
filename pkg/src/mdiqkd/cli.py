"""Command-line front end: threshold tables, rate curves, simulation runs.

Commands emit the exact data tables behind the package's sweep figures,
as CSV (single header row, 9 significant digits) or JSON (with a ``meta``
object echoing parameters and seed).  Exit codes: 0 success, 1 argument or
domain error, 2 numerical failure.
"""

import argparse
import datetime
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, mcsim, thresholds
from .attack import local_weight_nparty
from .errors import ConvergenceError, DomainError, InsufficientDataError
from .keyrate import dw_rate, dw_rate_werner
from .noise import DetectorParams, accuracy_from_detector

SEED_ENV_VAR = "MDIQKD_SEED"


@dataclass
class OutputRecord:
    """A named table of rows plus run metadata."""

    schema: str
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_csv_cell(value) for value in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        document = {
            "schema": self.schema,
            "meta": self.meta,
            "columns": self.columns,
            "rows": [[_json_cell(v) for v in row] for row in self.rows],
        }
        return json.dumps(document, indent=2) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _json_cell(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def _meta(args, parameters: dict, seed=None) -> dict:
    meta = {
        "tool": "mdiqkd",
        "version": __version__,
        "parameters": parameters,
    }
    if seed is not None:
        meta["seed"] = seed
    if not args.no_timestamp:
        meta["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return meta


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through our own
    # error handling so argument problems map to exit code 1 instead
    def error(self, message):
        raise _ArgumentError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mdiqkd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add_common(sub, default_format="csv"):
        sub.add_argument("--format", choices=("csv", "json"), default=default_format)
        sub.add_argument("--output", help="write to this path instead of stdout")
        sub.add_argument("--no-timestamp", action="store_true",
                         help="omit the timestamp from JSON metadata")

    sub = commands.add_parser("thresholds",
                              help="critical and key-rate accuracy thresholds per party count")
    sub.add_argument("--n-min", type=int, default=3)
    sub.add_argument("--n-max", type=int, default=10)
    sub.add_argument("--max-n", type=int, default=10,
                     help="largest party count the sweep may request")
    add_common(sub)
    sub.set_defaults(handler=cmd_thresholds)

    sub = commands.add_parser("keyrate-curve",
                              help="key-rate bound and attack diagnostics on an accuracy grid")
    sub.add_argument("--n", type=int, default=3)
    sub.add_argument("--p-start", type=float, default=0.5)
    sub.add_argument("--p-end", type=float, default=1.0)
    sub.add_argument("--steps", type=int, default=101)
    add_common(sub)
    sub.set_defaults(handler=cmd_keyrate_curve)

    sub = commands.add_parser("werner-grid",
                              help="key-rate bound over the visibility-accuracy plane")
    sub.add_argument("--v-steps", type=int, default=51)
    sub.add_argument("--p-steps", type=int, default=51)
    sub.add_argument("--v-min", type=float, default=0.0)
    sub.add_argument("--v-max", type=float, default=1.0)
    sub.add_argument("--p-min", type=float, default=0.5)
    sub.add_argument("--p-max", type=float, default=1.0)
    add_common(sub)
    sub.set_defaults(handler=cmd_werner_grid)

    sub = commands.add_parser("simulate",
                              help="Monte Carlo protocol run checked against the closed forms")
    sub.add_argument("--n", type=int, default=3)
    sub.add_argument("--p", type=float, default=1.0)
    sub.add_argument("--rounds", type=int, default=100000)
    sub.add_argument("--seed", type=int, default=None,
                     help=f"defaults to ${SEED_ENV_VAR} or 0")
    sub.add_argument("--source", choices=mcsim.SOURCES, default=mcsim.SOURCE_GHZ)
    sub.add_argument("--v", type=float, default=None, help="visibility (werner source)")
    sub.add_argument("--workers", type=int, default=1)
    add_common(sub, default_format="json")
    sub.set_defaults(handler=cmd_simulate)

    sub = commands.add_parser("detector",
                              help="accuracy implied by detector figures, with threshold verdicts")
    sub.add_argument("--q1", type=float, required=True,
                     help="accurate state-reflection rate")
    sub.add_argument("--q2", type=float, default=1.0, help="detection efficiency")
    sub.add_argument("--policy", choices=("fair-sampling", "bind-undetected"),
                     default="bind-undetected")
    sub.add_argument("--n", type=int, default=3,
                     help="party count for the threshold comparison")
    add_common(sub)
    sub.set_defaults(handler=cmd_detector)

    return parser


def cmd_thresholds(args) -> int:
    if not 3 <= args.n_min <= args.n_max <= args.max_n:
        raise DomainError(
            f"need 3 <= n-min <= n-max <= {args.max_n}, "
            f"got {args.n_min}..{args.n_max}"
        )
    table = thresholds.thresholds_table(args.n_min, args.n_max)
    record = OutputRecord(
        schema="thresholds",
        columns=["n", "p_cr", "p_th"],
        rows=[[entry.n, entry.p_cr, entry.p_th] for entry in table],
        meta=_meta(args, {"n_min": args.n_min, "n_max": args.n_max}),
    )
    _emit(args, record.to_csv() if args.format == "csv" else record.to_json())
    return 0


def cmd_keyrate_curve(args) -> int:
    if not (0.5 <= args.p_start < args.p_end <= 1.0) or args.steps < 2:
        raise DomainError(
            "need 0.5 <= p-start < p-end <= 1 and at least 2 steps, got "
            f"p={args.p_start}..{args.p_end} steps={args.steps}"
        )
    rows = []
    for p in np.linspace(args.p_start, args.p_end, args.steps):
        p = float(p)
        attack = local_weight_nparty(p, args.n)
        report = dw_rate(p, args.n)
        rows.append([
            p, attack.q_l_raw, attack.q_l,
            report.h_a_given_e, report.h_a_given_rest, report.r_dw,
            int(report.aborts),
        ])
    record = OutputRecord(
        schema="keyrate_curve",
        columns=["p", "q_L_raw", "q_L", "H_A_given_E", "H_A_given_rest",
                 "r_dw", "abort_flag"],
        rows=rows,
        meta=_meta(args, {
            "n": args.n, "p_start": args.p_start,
            "p_end": args.p_end, "steps": args.steps,
        }),
    )
    _emit(args, record.to_csv() if args.format == "csv" else record.to_json())
    return 0


def cmd_werner_grid(args) -> int:
    if args.v_steps < 2 or args.p_steps < 2:
        raise DomainError("grid sizes must be at least 2")
    if not (0.0 <= args.v_min < args.v_max <= 1.0):
        raise DomainError("need 0 <= v-min < v-max <= 1")
    if not (0.5 <= args.p_min < args.p_max <= 1.0):
        raise DomainError("need 0.5 <= p-min < p-max <= 1")
    v_values = [float(v) for v in np.linspace(args.v_min, args.v_max, args.v_steps)]
    p_values = [float(p) for p in np.linspace(args.p_min, args.p_max, args.p_steps)]
    grid_rows = [
        [v, p, dw_rate_werner(p, v).r_dw] for v in v_values for p in p_values
    ]
    boundary_rows = [
        [p, v_th]
        for p, v_th in thresholds.werner_boundary([p for p in p_values if p > 0.5])
        if v_th is not None
    ]
    parameters = {
        "v_steps": args.v_steps, "p_steps": args.p_steps,
        "v_min": args.v_min, "v_max": args.v_max,
        "p_min": args.p_min, "p_max": args.p_max,
    }
    grid = OutputRecord(schema="werner_grid", columns=["v", "p", "r_dw"],
                        rows=grid_rows, meta=_meta(args, parameters))
    boundary = OutputRecord(schema="werner_boundary",
                            columns=["p", "v_threshold"], rows=boundary_rows,
                            meta=_meta(args, parameters))
    if args.format == "csv":
        # two sections, each a complete CSV with its own header
        _emit(args, grid.to_csv() + "\n" + boundary.to_csv())
    else:
        document = {
            "meta": grid.meta,
            "grid": {"columns": grid.columns, "rows": grid.rows},
            "boundary": {"columns": boundary.columns, "rows": boundary.rows},
        }
        _emit(args, json.dumps(document, indent=2) + "\n")
    return 0


def cmd_simulate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV_VAR, "0"))
    cfg = mcsim.SimConfig(
        n=args.n,
        rounds=args.rounds,
        p=args.p,
        source=args.source,
        visibility=args.v,
        seed=seed,
    )
    report = mcsim.simulate(cfg, workers=args.workers)
    si_expected = mcsim.predicted_si(cfg)
    key_expected = mcsim.predicted_key_consistency(cfg)

    entries = []
    for bits, estimate in report.key_consistency.items():
        entries.append({
            "setting": "".join(str(b) for b in bits),
            "estimate": estimate.value,
            "std_error": estimate.std_error,
            "expected": key_expected,
            "z": _finite_z(mcsim.z_score(estimate, key_expected)),
        })
    parameters = {
        "n": cfg.n, "p": cfg.p, "rounds": cfg.rounds,
        "source": cfg.source, "v": cfg.visibility, "workers": args.workers,
    }
    if args.format == "json":
        document = {
            "meta": _meta(args, parameters, seed=cfg.seed),
            "si": {
                "estimate": report.si.value,
                "std_error": report.si.std_error,
                "expected": si_expected,
                "z": _finite_z(mcsim.z_score(report.si, si_expected)),
            },
            "key_consistency": entries,
            "rounds": {
                "total": cfg.rounds,
                "test": report.test_rounds,
                "key": report.key_rounds,
                "discarded": report.discarded_rounds,
            },
        }
        _emit(args, json.dumps(document, indent=2) + "\n")
    else:
        rows = [["si", "", report.si.value, report.si.std_error, si_expected,
                 _finite_z(mcsim.z_score(report.si, si_expected))]]
        for entry in entries:
            rows.append(["key_consistency", entry["setting"], entry["estimate"],
                         entry["std_error"], entry["expected"], entry["z"]])
        record = OutputRecord(
            schema="simulate",
            columns=["metric", "setting", "estimate", "std_error", "expected", "z"],
            rows=rows,
            meta=_meta(args, parameters, seed=cfg.seed),
        )
        _emit(args, record.to_csv())
    return 0


def _finite_z(z: float) -> float:
    # an exact match with zero spread is a perfect agreement, and infinities
    # do not survive JSON round-trips
    if math.isinf(z):
        return 1e308
    return z


def cmd_detector(args) -> int:
    detector = DetectorParams(q1=args.q1, q2=args.q2, policy=args.policy)
    accuracy = accuracy_from_detector(detector)
    p_cr = thresholds.critical_accuracy(args.n)
    p_th = thresholds.threshold_accuracy(args.n)
    record = OutputRecord(
        schema="detector",
        columns=["q1", "q2", "policy", "p", "n", "p_cr", "p_th",
                 "violates_si", "positive_key"],
        rows=[[detector.q1, detector.q2, detector.policy, accuracy.p, args.n,
               p_cr, p_th, int(accuracy.p > p_cr), int(accuracy.p > p_th)]],
        meta=_meta(args, {"q1": args.q1, "q2": args.q2,
                          "policy": args.policy, "n": args.n}),
    )
    _emit(args, record.to_csv() if args.format == "csv" else record.to_json())
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, InsufficientDataError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
