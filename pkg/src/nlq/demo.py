"""Replay the bundled golden query corpus against a session."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .pipeline import Session, bundled_data_dir, run_query

# The NL query and the hand-written SQL a database user would type for it.
CROSS_CHECKS = (
    (
        "I am looking for PDM where Document Type is doc",
        'select * from document where Document_Type = "doc" and Document_Name = "PDM"',
    ),
)


@dataclass(frozen=True)
class GoldenQuery:
    query: str
    kind: str
    rule: str
    rows: int


@dataclass
class DemoResult:
    golden: GoldenQuery
    kind: str | None = None
    rule: str | None = None
    sql: list[str] = field(default_factory=list)
    rows: int | None = None
    error: str | None = None
    timings: list[tuple[str, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        g = self.golden
        return self.error is None and (self.kind, self.rule, self.rows) == (g.kind, g.rule, g.rows)


@dataclass
class CrossCheck:
    query: str
    sql: str
    nl_rows: int
    sql_rows: int
    ok: bool


@dataclass
class DemoReport:
    results: list[DemoResult]
    cross_checks: list[CrossCheck]
    elapsed: float

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results) and all(c.ok for c in self.cross_checks)

    @property
    def failures(self) -> int:
        return sum(not r.ok for r in self.results) + sum(not c.ok for c in self.cross_checks)


def load_corpus(path: str | Path | None = None) -> list[GoldenQuery]:
    path = Path(path) if path is not None else bundled_data_dir() / "demo_corpus.tsv"
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read demo corpus: {exc}") from None
    reader = csv.DictReader(io.StringIO(text), delimiter="\t")
    return [GoldenQuery(r["query"], r["kind"], r["rule"], int(r["rows"])) for r in reader]


def run_demo(session: Session, corpus: list[GoldenQuery] | None = None) -> DemoReport:
    corpus = corpus if corpus is not None else load_corpus()
    start = time.perf_counter()
    results = []
    for golden in corpus:
        outcome = run_query(golden.query, session)
        res = DemoResult(golden)
        if outcome.error is not None:
            res.error = f"{outcome.error.kind}: {outcome.error.message}"
        trace = outcome.trace
        if trace is not None:
            res.timings = list(trace.timings)
            if trace.statement is not None:
                res.kind = trace.statement.kind.value
                res.rule = trace.statement.matched_rule.value
            res.sql = [q.sql_text for q in trace.sql]
        if outcome.ok:
            res.rows = outcome.row_count
        results.append(res)

    checks = []
    for query, sql in CROSS_CHECKS:
        nl = run_query(query, session)
        raw = run_query(sql, session)
        nl_rows = {row for _, rs in nl.results for row in rs.rows}
        sql_rows = {row for _, rs in raw.results for row in rs.rows}
        checks.append(CrossCheck(query, sql, len(nl_rows), len(sql_rows),
                                 nl.ok and raw.ok and nl_rows == sql_rows))
    return DemoReport(results, checks, time.perf_counter() - start)


def format_report(report: DemoReport) -> str:
    lines = []
    for r in report.results:
        g = r.golden
        status = "ok  " if r.ok else "FAIL"
        lines.append(f"{status} {g.query}")
        lines.append(f"     kind={r.kind} rule={r.rule} rows={r.rows}"
                     + ("" if r.ok else f"  (expected kind={g.kind} rule={g.rule} rows={g.rows})"))
        if r.error:
            lines.append(f"     error: {r.error}")
        for sql in r.sql:
            lines.append(f"     {sql}")
    for c in report.cross_checks:
        status = "ok  " if c.ok else "FAIL"
        lines.append(f"{status} cross-check: {c.query!r} ({c.nl_rows} rows) vs {c.sql!r} ({c.sql_rows} rows)")
    passed = len(report.results) + len(report.cross_checks) - report.failures
    total = len(report.results) + len(report.cross_checks)
    lines.append(f"{passed}/{total} checks passed in {report.elapsed * 1000:.1f} ms")
    return "\n".join(lines)


def write_report_tsv(report: DemoReport, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["query", "expected_kind", "kind", "expected_rule", "rule",
                    "expected_rows", "rows", "status", "elapsed_ms", "sql"])
        for r in report.results:
            g = r.golden
            elapsed = sum(s for _, s in r.timings) * 1000
            w.writerow([g.query, g.kind, r.kind or "", g.rule, r.rule or "", g.rows,
                        "" if r.rows is None else r.rows, "ok" if r.ok else "FAIL",
                        f"{elapsed:.3f}", " ; ".join(r.sql)])
    return path
