"""Command-line front end.

Subcommands: mine-itemsets, mine-seq, mine-stream, analyze-results, bench.
Exit codes: 0 ok, 2 input parse error, 3 usage/flag error, 4 internal
invariant failure. Every failure prints one line starting with ``error:``
to stderr. Outputs are byte-deterministic for fixed inputs and flags; the
SEQMINE_THREADS environment variable caps worker threads (0 = auto) without
changing any output.
"""

from __future__ import annotations

import argparse
import sys
import time
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterator, Optional

from seqmine import bench as bench_mod
from seqmine import charts, dataset, textfmt
from seqmine.errors import (
    EmptyDatabaseError,
    InvalidConstraintsError,
    InvalidStreamConfigError,
    InvalidThresholdError,
    ParseError,
    SeqmineError,
)
from seqmine.itemsets import generate_rules, mine_frequent_itemsets
from seqmine.model import Alphabet, Constraints
from seqmine.sequences import filter_closed, gsp_mine, prefixspan_mine, resolve_threads
from seqmine.stream import StreamConfig, replay


class UsageError(Exception):
    """A flag combination the parser cannot catch; maps to exit 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(3, f"error: {message}\n")


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _write_out(path: Optional[str], lines: list[str]) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _check_fraction(value: float, flag: str) -> None:
    if not 0 < value <= 1:
        raise UsageError(f"{flag} must be in (0, 1], got {value}")


def _load_lines(path: str) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def _cmd_mine_itemsets(args) -> int:
    _check_fraction(args.min_support, "--min-support")
    if args.min_confidence is not None:
        _check_fraction(args.min_confidence, "--min-confidence")
    transactions, alphabet = dataset.load_transactions(_load_lines(args.input))
    frequent = mine_frequent_itemsets(transactions, args.min_support)
    lines = textfmt.frequent_itemset_lines(frequent, alphabet)
    if args.min_confidence is not None:
        rules = generate_rules(frequent, args.min_confidence)
        lines.extend(textfmt.rule_lines(rules, alphabet))
    _write_out(args.out, lines)
    return 0


def _build_constraints(args) -> Constraints:
    constraints = Constraints(
        min_support=args.min_support,
        min_gap=args.min_gap,
        max_gap=args.max_gap,
        max_index_gap=args.max_index_gap,
        max_length=args.max_length,
    )
    try:
        constraints.validate()
    except InvalidConstraintsError as exc:
        raise UsageError(str(exc))
    return constraints


def _cmd_mine_seq(args) -> int:
    constraints = _build_constraints(args)
    threads = resolve_threads()
    db = dataset.load_sequence_db(_load_lines(args.input))
    if args.max_length is None and len(db.alphabet) > 26:
        raise UsageError(
            f"--max-length is required for alphabets larger than 26 items "
            f"(this input has {len(db.alphabet)})"
        )
    if args.algo == "gsp":
        result = gsp_mine(db, constraints, threads=threads)
    else:
        result = prefixspan_mine(db, constraints)
    if args.closed:
        result = filter_closed(result)
    _write_out(args.out, textfmt.supported_pattern_lines(result.patterns, db.alphabet))
    return 0


def _stream_lines(path: str, watch: bool, idle_timeout: float) -> Iterator[str]:
    """Yield lines from a file; with watch, keep polling for appended lines
    until none arrive for idle_timeout seconds."""
    with open(path, "r", encoding="utf-8") as handle:
        idle = 0.0
        poll = 0.05
        while True:
            line = handle.readline()
            if line:
                idle = 0.0
                yield line
                continue
            if not watch or idle >= idle_timeout:
                break
            time.sleep(poll)
            idle += poll


def _cmd_mine_stream(args) -> int:
    config = StreamConfig(
        sigma=args.sigma,
        epsilon=args.epsilon,
        batch_size=args.batch_size,
        max_length=args.max_length,
    )
    try:
        config.validate()
    except InvalidStreamConfigError as exc:
        raise UsageError(str(exc))
    if args.report_every < 1:
        raise UsageError(f"--report-every must be >= 1, got {args.report_every}")
    alphabet = Alphabet()
    lines = _stream_lines(args.input, args.watch, args.idle_timeout)
    sequences = dataset.iter_sequence_db(lines, alphabet)
    for report in replay(sequences, config, report_every=args.report_every):
        tag = "final" if report.final else "report"
        print(
            f"# {tag} batches={report.batches} sequences={report.sequences} "
            f"tree_nodes={report.tree_nodes}"
        )
        for line in textfmt.supported_pattern_lines(report.patterns, alphabet):
            print(line)
    return 0


def _parse_anomaly_threshold(text: str) -> Decimal:
    try:
        return Decimal(text)
    except InvalidOperation:
        raise UsageError(f"--anomaly-threshold must be a decimal, got {text!r}")


def _cmd_analyze_results(args) -> int:
    try:
        bands = dataset.parse_band_spec(args.bands) if args.bands else dataset.DEFAULT_BANDS
    except ValueError as exc:
        raise UsageError(f"--bands: {exc}")
    threshold = _parse_anomaly_threshold(args.anomaly_threshold)
    if args.input is None:
        records = dataset.bundled_results()
    else:
        records = dataset.load_results(_load_lines(args.input))
    summary = dataset.trend(records, anomaly_threshold=threshold)

    print(f"{'subject':<10} {'year':<6} {'pass_pct':>8} {'delta':>8} {'direction':<9} band")
    for subject, rows in summary.per_subject.items():
        for row in rows:
            delta = "-" if row.delta is None else f"{row.delta:+.2f}"
            direction = row.direction or "-"
            band = bands.label(row.pass_pct)
            print(
                f"{subject:<10} {row.year:<6} {row.pass_pct:>8.2f} {delta:>8} {direction:<9} {band}"
            )
    print("anomalies:")
    if not summary.anomalies:
        print("  none")
    for subject, year, delta in summary.anomalies:
        print(f"  {subject} {year} delta={delta:+.2f}")

    by_subject: dict[str, list[tuple[int, Decimal]]] = {}
    for record in records:
        by_subject.setdefault(record.subject_code, []).append((record.year, record.pass_pct))
    for subject in sorted(by_subject):
        rows = sorted(by_subject[subject])
        print()
        for line in charts.ascii_chart(subject, rows):
            print(line)
        if args.plot_dir is not None:
            plot_dir = Path(args.plot_dir)
            plot_dir.mkdir(parents=True, exist_ok=True)
            svg = charts.svg_line_chart(subject, rows)
            (plot_dir / f"{subject}.svg").write_text(svg, encoding="utf-8", newline="\n")
    return 0


def _cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise UsageError(f"--sizes must be positive integers, got {args.sizes!r}")
    algos = [a for a in args.algos.split(",") if a]
    for algo in algos:
        if algo not in bench_mod.BENCH_ALGOS:
            raise UsageError(
                f"--algos: unknown algorithm {algo!r}; choose from {', '.join(bench_mod.BENCH_ALGOS)}"
            )
    _check_fraction(args.min_support, "--min-support")
    threads = resolve_threads()
    rows, fit = bench_mod.run_bench(
        sizes, algos, seed=args.seed, min_support=args.min_support,
        max_length=args.max_length, threads=threads,
    )
    header = (
        f"{'algorithm':<11} {'sequences':>9} {'avg_txns':>8} {'patterns':>8} "
        f"{'elapsed_s':>10} {'store_bytes':>11}"
    )
    print(header)
    for row in rows:
        print(
            f"{row.algorithm:<11} {row.n_sequences:>9} {row.avg_transactions:>8.2f} "
            f"{row.patterns_emitted:>8} {row.elapsed_s:>10.4f} {row.store_bytes:>11}"
        )
    if fit is not None:
        slope, _, r2 = fit
        print(f"stream linearity: slope={slope:.3e} s/sequence r2={r2:.4f}")
    if args.out is not None:
        _write_out(args.out, [row.to_json() for row in rows])
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="seqmine", description="Pattern mining toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine-itemsets", help="frequent itemsets (and rules) from transactions-CSV")
    p.add_argument("input")
    p.add_argument("--min-support", type=float, required=True)
    p.add_argument("--min-confidence", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_mine_itemsets)

    p = sub.add_parser("mine-seq", help="sequential patterns from sequence-CSV")
    p.add_argument("input")
    p.add_argument("--min-support", type=float, required=True)
    p.add_argument("--min-gap", type=int, default=0)
    p.add_argument("--max-gap", type=int, default=None)
    p.add_argument("--max-index-gap", type=int, default=None)
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--algo", choices=("gsp", "prefixspan"), default="prefixspan")
    p.add_argument("--closed", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_mine_seq)

    p = sub.add_parser("mine-stream", help="one-pass batched mining over a sequence-CSV stream")
    p.add_argument("input")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--batch-size", type=int, required=True)
    p.add_argument("--max-length", type=int, default=5)
    p.add_argument("--report-every", type=int, default=1)
    p.add_argument("--watch", action="store_true", help="keep tailing the file for appended lines")
    p.add_argument("--idle-timeout", type=float, default=5.0,
                   help="with --watch, stop after this many idle seconds")
    p.set_defaults(func=_cmd_mine_stream)

    p = sub.add_parser("analyze-results", help="trend analysis and charts for results-CSV")
    p.add_argument("input", nargs="?", default=None, help="defaults to the bundled dataset")
    p.add_argument("--bands", default=None, help="e.g. 50:F,70:C,85:B,100:A")
    p.add_argument("--anomaly-threshold", default="20.0")
    p.add_argument("--plot-dir", default=None)
    p.set_defaults(func=_cmd_analyze_results)

    p = sub.add_parser("bench", help="benchmark miners on synthetic databases")
    p.add_argument("--sizes", required=True, help="comma-separated sequence counts")
    p.add_argument("--algos", default="gsp,prefixspan,stream")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-support", type=float, default=0.2)
    p.add_argument("--max-length", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return 3
    except (InvalidThresholdError, InvalidConstraintsError, InvalidStreamConfigError) as exc:
        _err(str(exc))
        return 3
    except ValueError as exc:
        _err(str(exc))
        return 3
    except ParseError as exc:
        _err(str(exc))
        return 2
    except EmptyDatabaseError as exc:
        _err(str(exc))
        return 2
    except OSError as exc:
        _err(str(exc))
        return 2
    except SeqmineError as exc:
        _err(f"internal invariant failure: {exc}")
        return 4


if __name__ == "__main__":
    sys.exit(main())
