"""Command line entry point: ``nlq query|explain|repl|demo``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TextIO

from .errors import ConfigError
from .pipeline import FORMATS, Session, run_query

PROMPT = "nlq> "


def _options(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the options with suppressed defaults so a flag given
    # before the subcommand is not reset by it
    def default(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schema", default=default(None),
                        help="schema map file (default: $NLQ_SCHEMA, else the bundled demo)")
    common.add_argument("--data-dir", default=default(None), help="directory holding the TSV data files")
    common.add_argument("--format", choices=FORMATS, default=default("table"), help="result format")
    common.add_argument("--lexicon", default=default(None), help="extra word lists to add to the dictionary")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _options(suppress=True)
    parser = argparse.ArgumentParser(
        prog="nlq", parents=[_options(suppress=False)],
        description="Search a product-data catalog with plain-English queries or SQL.")
    sub = parser.add_subparsers(dest="command", required=True)
    q = sub.add_parser("query", parents=[common], help="run one query")
    q.add_argument("text", nargs="+")
    e = sub.add_parser("explain", parents=[common], help="run one query and show each pipeline step")
    e.add_argument("text", nargs="+")
    sub.add_parser("repl", parents=[common], help="interactive prompt")
    d = sub.add_parser("demo", parents=[common], help="replay the golden query corpus")
    d.add_argument("--report-dir", help="also write demo_report.tsv and figures here")
    return parser


def repl(session: Session, stdin: TextIO, stdout: TextIO, prompt: bool = False) -> int:
    """Read queries line by line until EOF or ``.quit``; errors never end the loop."""
    while True:
        if prompt:
            stdout.write(PROMPT)
            stdout.flush()
        line = stdin.readline()
        if not line:
            return 0
        text = line.rstrip("\r\n")
        if not text.strip():
            continue
        if text.strip() in (".quit", ".exit"):
            return 0
        if text.strip().startswith(".format"):
            fmt = text.split()[-1]
            if fmt in FORMATS:
                session.format = fmt
            else:
                stdout.write(f"formats: {', '.join(FORMATS)}\n")
            continue
        outcome = run_query(text, session)
        stdout.write(outcome.text + "\n")
        stdout.flush()


def _demo(session: Session, report_dir: str | None, out: TextIO) -> int:
    from .demo import format_report, run_demo, write_report_tsv

    report = run_demo(session)
    out.write(format_report(report) + "\n")
    if report_dir:
        from .plotting import plot_row_counts, plot_step_timings

        target = Path(report_dir)
        target.mkdir(parents=True, exist_ok=True)
        written = [
            write_report_tsv(report, target / "demo_report.tsv"),
            plot_row_counts(report, target / "demo_rows.png"),
            plot_step_timings(report, target / "demo_timing.png"),
        ]
        for path in written:
            out.write(f"wrote {path}\n")
    return 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        session = Session.load(args.schema, args.data_dir, args.lexicon, args.format)
        if args.command == "demo":
            return _demo(session, args.report_dir, sys.stdout)
    except ConfigError as exc:
        print(f"error[{exc.kind}]: {exc.message}", file=sys.stderr)
        return 2
    if args.command == "repl":
        return repl(session, sys.stdin, sys.stdout, prompt=sys.stdin.isatty())
    outcome = run_query(" ".join(args.text), session, explain=args.command == "explain")
    print(outcome.text)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
