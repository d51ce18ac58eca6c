#!/usr/bin/env python3
"""WaringLab command-line interface.

Exit codes: 0 on success or agreement, 1 on usage or IO errors, 2 when a
recomputed value disagrees with a stated one.
"""

import argparse
import asyncio
import logging
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from src.algebra.fields import Field, PrimeField, RationalField
from src.config.golden import load_golden_tables
from src.config.settings import Settings, setup_logging
from src.errors import ConfigError, WaringError
from src.models.specs import SpecializedSpec, SystemSpec
from src.models.sweep import Mode, SweepRecord
from src.services import numerology
from src.services.interpolation import (
    kernel_members,
    random_member,
    sample_config,
    specialized_dim,
    system_dim,
)
from src.services.probes.map_degree import map_rank_and_degree
from src.services.probes.secant import veronese_secant_dim
from src.services.probes.singularity import singularity_report
from src.services.sweep import l_scan_range, load_run_config, read_records, run_sweep, summarize
from src.services.waring_binary import BinaryForm, sylvester_certificate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2


class WaringArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fields(args: argparse.Namespace, settings: Settings) -> list[Field]:
    primes = [args.prime] if args.prime else list(settings.primes)
    mode = Mode(args.mode)
    fields: list[Field] = []
    if mode is not Mode.RATIONAL:
        fields.extend(PrimeField(p) for p in primes)
    if mode is not Mode.PRIME:
        fields.append(RationalField())
    return fields


def _trials(args: argparse.Namespace, settings: Settings) -> int:
    return args.trials if args.trials is not None else settings.trials


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    return args.seed if args.seed is not None else settings.seed


def _append(path: Path | None, record: SweepRecord) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as sink:
        sink.write(record.model_dump_json() + "\n")


def _flat(values: Sequence[Any]) -> str:
    return ",".join(str(v) for v in values)


def cmd_dims(args: argparse.Namespace, settings: Settings) -> int:
    """Measured against expected dimension of G or its specialization."""
    start = time.perf_counter()
    fields = _fields(args, settings)
    trials, seed = _trials(args, settings), _seed(args, settings)
    if args.h:
        report = specialized_dim(SpecializedSpec.of(args.d, args.n, args.l, args.h), fields, trials, seed)
    else:
        report = system_dim(SystemSpec(d=args.d, n=args.n, l=args.l), fields, trials, seed)
    print(f"System {report.spec}")
    print(f"  expected:  {report.expected}")
    print(f"  actual:    {report.actual}  (over {report.field}, ranks {report.ranks})")
    print(f"  predicted: {report.predicted}  [{report.prediction_tag}]")
    print(f"  {'✓ agreement' if report.agreement else '✗ disagreement'}")
    _append(
        args.out,
        SweepRecord(
            command="dims",
            d=args.d,
            n=args.n,
            l=args.l,
            h=args.h,
            field=report.field,
            seed=seed,
            outcome={
                "expected": report.expected,
                "actual": report.actual,
                "predicted": report.predicted,
                "agreement": report.agreement,
                "ranks": _flat(report.ranks),
            },
            wall_ms=(time.perf_counter() - start) * 1000,
        ),
    )
    return EXIT_OK if report.agreement else EXIT_DISAGREE


def _scan_values(text: str) -> range:
    """Inclusive ``lo..hi`` or a single value; lo > hi gives an empty scan."""
    lo, _, hi = text.partition("..")
    return range(int(lo), int(hi or lo) + 1)


def cmd_ah_verify(args: argparse.Namespace, settings: Settings) -> int:
    """Scan a (d, n) range and compare the flagged triples with the exceptional list."""
    d_values, n_values = _scan_values(args.d), _scan_values(args.n)
    fields = _fields(args, settings)[:3]
    trials, seed = _trials(args, settings), _seed(args, settings)
    flagged: set[tuple[int, int, int]] = set()
    print("Double-point interpolation scan")
    print("=" * 40)
    for d in d_values:
        for n in n_values:
            for l in l_scan_range(d, n):  # noqa: E741
                if l == 0:
                    continue
                report = system_dim(SystemSpec(d=d, n=n, l=l), fields, trials, seed)
                if report.actual != max(report.expected, -1):
                    flagged.add((d, n, l))
                    print(f"  ({d},{n},{l}): expected {report.expected}, actual {report.actual}")
    listed = {
        t for t in load_golden_tables().ah_exception_set() if t[0] in d_values and t[1] in n_values
    }
    if flagged == listed:
        print(f"✓ {len(flagged)} flagged triples match the exceptional list")
        return EXIT_OK
    print(f"✗ flagged {sorted(flagged)}, listed {sorted(listed)}")
    return EXIT_DISAGREE


def cmd_win(args: argparse.Namespace, settings: Settings) -> int:
    """Degeneration conditions of H_{H,d,n,l,h}."""
    spec = SpecializedSpec.of(args.d, args.n, args.l, args.h or 0)
    if args.n >= 3 and args.d >= 3 and args.l > spec.h:
        verdict = numerology.win_check(spec)
    else:
        verdict = numerology.dimbase_check(spec)
    print(f"System {spec}, rule set {verdict.rule_set.value}")
    for name, value in verdict.conditions.items():
        number = verdict.values.get(name)
        mark = "?" if value is None else ("✓" if value else "✗")
        print(f"  {mark} {name}" + (f"  ({number})" if number is not None else ""))
    if verdict.indeterminate:
        print("  indeterminate: needs measured dimensions")
    print("wIn" if verdict.win else "not wIn")
    return EXIT_OK if verdict.win else EXIT_DISAGREE


def cmd_delta_table(args: argparse.Namespace, settings: Settings) -> int:
    """Recompute the stored delta table."""
    golden = load_golden_tables().delta_table
    mismatches = 0
    print(f"{'(d,n)':>8} {'l-h':>5} {'h':>5} {'delta':>6}")
    for row in golden:
        l, h = numerology.lh_params(row.d, row.n)  # noqa: E741
        delta = numerology.delta(row.d, row.n)
        ok = (l - h, h, delta) == (row.l_minus_h, row.h, row.delta)
        mismatches += not ok
        print(f"{f'({row.d},{row.n})':>8} {l - h:>5} {h:>5} {delta:>6}  {'✓' if ok else '✗'}")
    if mismatches:
        print(f"✗ {mismatches} columns differ from the stored table")
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_secant(args: argparse.Namespace, settings: Settings) -> int:
    """Terracini dimension of sec_k of the Veronese."""
    report = veronese_secant_dim(args.d, args.n, args.k, _fields(args, settings), _trials(args, settings), _seed(args, settings))
    print(f"sec_{report.k} of the degree-{report.d} Veronese of P^{report.n} in P^{report.N}")
    print(f"  measured:  {report.measured_dim}")
    print(f"  expected:  {report.expected_dim}")
    print(f"  defect:    {report.defect}")
    print(f"  duality with dim G_{{{report.d},{report.n},{report.k + 1}}} = {report.interpolation_dim}: "
          f"{'✓' if report.duality_holds else '✗'}")
    return EXIT_OK if report.duality_holds else EXIT_DISAGREE


def cmd_sing_probe(args: argparse.Namespace, settings: Settings) -> int:
    """Singularities of a random member of G_{d,n,l}."""
    field = _fields(args, settings)[0]
    seed = _seed(args, settings)
    spec = SystemSpec(d=args.d, n=args.n, l=args.l)
    config = sample_config(spec, field, seed)
    member = random_member(spec, config, seed)
    report = singularity_report(member, config.points, seed=seed)
    print(f"Random member of G_{spec}")
    print(f"  Hessian ranks at imposed points: {report.hessian_ranks}")
    print(f"  all ordinary double points: {report.all_nodes}")
    print(f"  singular locus: {report.locus.value}  {report.witness}")
    return EXIT_OK


def cmd_uniqueness(args: argparse.Namespace, settings: Settings) -> int:
    """Uniqueness verdict with evidence where it can be computed."""
    verdict = numerology.waring_verdict(args.d, args.n)
    print(f"(d,n) = ({args.d},{args.n}): {verdict.tag.value}")
    print(f"  {verdict.citation}")
    if verdict.s is not None:
        print(f"  s = {verdict.s}")
    seed = _seed(args, settings)
    field = _fields(args, settings)[0]
    if (args.d, args.n) == (5, 2):
        spec = SystemSpec(d=5, n=2, l=6)
        config = sample_config(spec, field, seed)
        report = map_rank_and_degree(kernel_members(spec, config), config.points, seed)
        print(f"  evidence: map given by G_(5,2,6) is {report.verdict.value}, fiber {report.fiber_count}")
    elif args.n == 1 and args.d % 2:
        form = BinaryForm.random(RationalField(), args.d, np.random.default_rng(seed))
        certificate = sylvester_certificate(form)
        print(f"  evidence: random form has kernel {certificate.kernel_dim}, unique {certificate.unique}")
    return EXIT_OK


def cmd_sylvester(args: argparse.Namespace, settings: Settings) -> int:
    """Sylvester certificate for a random rational binary form."""
    if args.d % 2 == 0:
        print(f"Sylvester certificates need odd degree, got {args.d}", file=sys.stderr)
        return EXIT_USAGE
    form = BinaryForm.random(RationalField(), args.d, np.random.default_rng(_seed(args, settings)))
    certificate = sylvester_certificate(form)
    print(f"Binary form of degree {form.d}: c = {[str(c) for c in form.c]}")
    print(f"  s = {certificate.s}, kernel {certificate.kernel_dim}")
    print(f"  generator {certificate.generator}")
    print(f"  squarefree {certificate.squarefree}, apolar {certificate.apolar}, unique {certificate.unique}")
    return EXIT_OK if certificate.unique and certificate.apolar else EXIT_DISAGREE


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    """Run a configured grid, skipping cells already recorded."""
    config = load_run_config(args.config, settings)
    if args.out is not None:
        config = config.model_copy(update={"output": args.out})
    try:
        counts = asyncio.run(run_sweep(config))
    except OSError as e:
        print(f"Cannot write {config.output}: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(f"Sweep {config.command}: {counts['new']} new, {counts['skipped']} skipped, {counts['errors']} errors")
    return EXIT_OK


def cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    """Aggregate a JSON-lines file per command."""
    if args.out is None or not args.out.exists():
        print(f"No records at {args.out}", file=sys.stderr)
        return EXIT_USAGE
    summary = summarize(read_records(args.out))
    print(f"{'command':<12} {'records':>8} {'agree':>6} {'differ':>7} {'errors':>7}")
    for command, counts in summary.items():
        print(
            f"{command:<12} {counts['records']:>8} {counts['agreements']:>6} "
            f"{counts['disagreements']:>7} {counts['errors']:>7}"
        )
    return EXIT_OK


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace, Settings], int], str]] = {
    "dims": (cmd_dims, "Measured dimension of G_{d,n,l} or H_{H,d,n,l,h}"),
    "ah-verify": (cmd_ah_verify, "Scan ranges for disagreements with the expected dimension"),
    "win": (cmd_win, "Degeneration conditions of a specialized system"),
    "delta-table": (cmd_delta_table, "Recompute the delta table"),
    "secant": (cmd_secant, "Terracini dimension of a Veronese secant variety"),
    "sing-probe": (cmd_sing_probe, "Singularities of a random member"),
    "uniqueness": (cmd_uniqueness, "Uniqueness of the minimal Waring decomposition"),
    "sylvester": (cmd_sylvester, "Catalecticant certificate for a random binary form"),
    "sweep": (cmd_sweep, "Run a sweep configuration"),
    "report": (cmd_report, "Summarize a JSON-lines results file"),
}

RANGE_COMMANDS = {"ah-verify"}


def build_parser() -> argparse.ArgumentParser:
    common = WaringArgumentParser(add_help=False)
    common.add_argument("--help", action="help", help="Show this message and exit")
    common.add_argument("--prime", type=int, help="Single prime modulus (default: configured list)")
    common.add_argument("--trials", type=int, help="Independent trials per measurement")
    common.add_argument("--seed", type=int, help="Base random seed")
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PRIME.value)
    common.add_argument("--out", type=Path, help="JSON-lines file to append to or read from")
    common.add_argument("--config", type=Path, help="Sweep configuration file")
    common.add_argument("--verbose", action="store_true", help="Log progress at INFO level")

    parser = WaringArgumentParser(
        prog="waringlab", description="WaringLab: double-point interpolation and Waring uniqueness", add_help=False
    )
    parser.add_argument("--help", action="help", help="Show this message and exit")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=WaringArgumentParser)
    for name, (_, summary) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=summary, description=summary, parents=[common], add_help=False)
        value_type: type = str if name in RANGE_COMMANDS else int
        sub.add_argument("-d", type=value_type, help="Degree (or lo..hi range)")
        sub.add_argument("-n", type=value_type, help="Projective dimension (or lo..hi range)")
        sub.add_argument("-l", type=int, default=0, help="Number of double points")
        sub.add_argument("-h", type=int, default=0, help="Points specialized to the hyperplane")
        sub.add_argument("-k", type=int, default=0, help="Secant index")
    return parser


REQUIRED = {
    "dims": ("d", "n"),
    "ah-verify": ("d", "n"),
    "win": ("d", "n"),
    "secant": ("d", "n"),
    "sing-probe": ("d", "n"),
    "uniqueness": ("d", "n"),
    "sylvester": ("d",),
    "sweep": ("config",),
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings.from_env()
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging("INFO" if args.verbose else settings.log_level)
    missing = [name for name in REQUIRED.get(args.command, ()) if getattr(args, name) is None]
    if missing:
        print(f"{args.command}: missing {', '.join('--' + m if m == 'config' else '-' + m for m in missing)}", file=sys.stderr)
        return EXIT_USAGE
    handler, _ = COMMANDS[args.command]
    try:
        return handler(args, settings)
    except (WaringError, ValidationError, ValueError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"{args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
