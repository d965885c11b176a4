"""Command line entry point: ``divschur run|list-kinds|describe|selftest``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from ..errors import ConfigInvalid, DivSchurError
from .config import KINDS, ExperimentConfig, describe
from .report import emit
from .runner import run
from .selftest import run_selftest

EXIT_PASS, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


def _cmd_run(args) -> int:
    try:
        cfg = ExperimentConfig.load(args.config)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = run(cfg)
    try:
        path = emit(report, "json", cfg.resolved_output(".json"))
        if args.csv:
            emit(report, "csv", cfg.resolved_output(".csv"))
    except DivSchurError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    summary = report.summary()
    status = "PASS" if report.passed else ("ERROR" if report.error else "FAIL")
    print(f"{status} {cfg.kind} {cfg.name}: {summary['cases']} cases, "
          f"{summary['violations']} violations -> {path}")
    if report.error is not None:
        print(f"  {report.error['type']}: {report.error['message']}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_PASS if report.passed else EXIT_VIOLATION


def _cmd_list(args) -> int:
    for k in KINDS:
        print(k)
    return EXIT_PASS


def _cmd_describe(args) -> int:
    try:
        print(json.dumps(describe(args.kind), indent=2))
    except ConfigInvalid as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    return EXIT_PASS


def _cmd_selftest(args) -> int:
    results = run_selftest()
    for name, ok, msg in results:
        print(f"{'ok  ' if ok else 'FAIL'} {name}{'' if ok else ': ' + msg}")
    return EXIT_PASS if all(ok for _, ok, _ in results) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divschur",
                                 description="Divided-difference Schur multiplier experiments")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("config")
    p.add_argument("--csv", action="store_true", help="also write the CSV series")
    p.set_defaults(func=_cmd_run)
    sub.add_parser("list-kinds", help="list experiment kinds").set_defaults(func=_cmd_list)
    p = sub.add_parser("describe", help="print the parameter schema of a kind")
    p.add_argument("kind")
    p.set_defaults(func=_cmd_describe)
    sub.add_parser("selftest", help="run the quick example corpus").set_defaults(
        func=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
