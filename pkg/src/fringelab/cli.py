"""Command-line front end.

Subcommands:
  fringe       interference-pattern values for one topology on a point/grid
  sensitivity  phase uncertainties, optimal phases and Fisher information
  sweep        named figure scenarios or custom grids, CSV/JSON emission
  verify       seeded oracle-equivalence and closed-form cross-checks

Every subcommand reads a JSON configuration (--config) whose keys mirror the
sweep-config fields in lower snake case; --scenario, --out, --format and
--seed override the document.  Exit codes: 0 success, 1 validation error,
2 verification failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .errors import ConfigError, DomainError, FringelabError
from .sweep import (
    COLUMNS,
    SCENARIOS,
    SweepConfig,
    parse_config,
    records_to_csv,
    records_to_json,
    run_sweep,
)
from .verify import run_verify

_INPUT_COLUMNS = {"scenario", "n", "v_a", "v_b", "t_s", "t_i", "rho", "phi", "sentinel"}
_FRINGE_FIELDS = {"n_s", "n_plus", "n_minus", "contrast"}
_SENSITIVITY_FIELDS = {"variance", "sigma2", "phi_min", "sigma2_min", "fisher", "fisher_norm"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fringelab",
        description="Nonlinear-interferometer fringes, phase uncertainties and sweeps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("fringe", "evaluate interference patterns for one topology"),
        ("sensitivity", "evaluate phase uncertainties and Fisher information"),
        ("sweep", "run a named scenario or custom grid sweep"),
        ("verify", "run the seeded self-verification suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON configuration document")
        p.add_argument("--scenario", choices=SCENARIOS, help="override the config scenario")
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--seed", type=int, help="override the config seed")
    return parser


def _load_document(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: configuration must be a JSON object")
    return doc


def _apply_overrides(doc: dict, args: argparse.Namespace) -> dict:
    doc = dict(doc)
    for key in ("scenario", "out", "format", "seed"):
        value = getattr(args, key)
        if value is not None:
            doc[key] = value
    return doc


def _mask_records(records: list[dict], keep: set[str]) -> list[dict]:
    masked = []
    for row in records:
        masked.append({c: (row[c] if c in _INPUT_COLUMNS or c in keep else None)
                       for c in COLUMNS})
    return masked


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _write_records(records: list[dict], config: SweepConfig) -> None:
    if config.format == "json":
        _emit(records_to_json(records, config), config.out)
    else:
        _emit(records_to_csv(records), config.out)


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    doc = _apply_overrides(_load_document(args.config), args)

    if args.command == "verify":
        config = parse_config(doc, "verify")
        report = run_verify(config.seed, config.count)
        _emit(report.to_json(), config.out)
        return 0 if report.ok else 2

    config = parse_config(doc, args.command)
    if args.command == "fringe" and "phi" not in config.axes and "phi" not in config.fixed:
        raise ConfigError("fringe evaluation requires phi (axis or fixed)")
    records = run_sweep(config)
    if args.command == "fringe":
        records = _mask_records(records, _FRINGE_FIELDS)
    elif args.command == "sensitivity":
        records = _mask_records(records, _SENSITIVITY_FIELDS)
    _write_records(records, config)
    return 0


def entry() -> None:
    try:
        code = main()
    except (ConfigError, DomainError) as exc:
        print(f"fringelab: error: {exc}", file=sys.stderr)
        code = 1
    except OSError as exc:
        print(f"fringelab: i/o error: {exc}", file=sys.stderr)
        code = 3
    except FringelabError as exc:
        print(f"fringelab: error: {exc}", file=sys.stderr)
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    entry()
