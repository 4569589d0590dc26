"""Acceptance criteria, one test each; every test reports a PASS/FAIL line."""

import io
import random
import string
import time

import pytest

from nlq.cli import repl
from nlq.demo import load_corpus
from nlq.lexicon import builtin_lexicon
from nlq.parser import parse
from nlq.lexer import tokenize
from nlq.pipeline import Session, run_query
from nlq.sqlgen import to_sql
from nlq.store import execute_intent, execute_sql, parse_sql

from conftest import ACCEPTANCE_LINES
from golden import GOLDEN
from randgen import random_case, scan


def report(number, title, ok, detail):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def rows(outcome):
    assert outcome.ok, outcome.text
    return {(name, row) for name, rs in outcome.results for row in rs.rows}


def test_multi_condition_result_grid(grid_session):
    start = time.perf_counter()
    out = run_query("I need PDF with Document Type doc and pdf", grid_session)
    elapsed = time.perf_counter() - start
    names = set()
    for _, rs in out.results:
        i = rs.columns.index("Document_Name")
        names |= {r[i] for r in rs.rows}
    ok = out.ok and out.row_count == 2 and names == {"PDF", "PDF Document"} and elapsed < 1.0
    report(1, "two-row multi-condition query", ok, f"names={sorted(names)}, {elapsed * 1000:.1f} ms")


def test_nl_matches_hand_written_sql(demo_session):
    nl = rows(run_query("I am looking for PDM where Document Type is doc", demo_session))
    sql = rows(run_query(
        "select * from document where LOWER(Document_Type) = 'doc' and LOWER(Document_Name) = 'pdm'",
        demo_session))
    ok = sql <= nl and sql == nl and len(sql) > 0
    report(2, "NL query vs passthrough SQL", ok, f"nl={len(nl)} rows, sql={len(sql)} rows")


def test_golden_statement_classes():
    lex = builtin_lexicon()
    failures = []
    for query, kind, rule in GOLDEN:
        try:
            stmt = parse(tokenize(query, lex))
            got = (stmt.kind.value, stmt.matched_rule.value)
        except Exception as exc:  # a parse error is a failure too
            got = (type(exc).__name__, "")
        if got != (kind, rule):
            failures.append(f"{query!r}: {got}")
    report(3, "statement-class golden table", not failures,
           f"{len(GOLDEN) - len(failures)}/{len(GOLDEN)} match" + (f"; {failures}" if failures else ""))


def test_case_insensitivity(demo_session):
    queries = [g.query for g in load_corpus()]
    mismatches = [q for q in queries
                  if not (rows(run_query(q.lower(), demo_session))
                          == rows(run_query(q.upper(), demo_session))
                          == rows(run_query(q, demo_session)))]
    report(4, "lower/upper case variants agree", not mismatches,
           f"{len(queries) - len(mismatches)}/{len(queries)} queries" + (f"; {mismatches}" if mismatches else ""))


def test_oracle_equivalence():
    start = time.perf_counter()
    cases = 1000
    bad = []
    for seed in range(cases):
        schema, table, intent = random_case(seed)
        tables = {table.name: table}
        (query,) = to_sql(intent)
        via_sql = execute_sql(query.sql_text, tables)
        ((_, direct),) = execute_intent(intent, tables)
        scanned = scan(parse_sql(query.sql_text), table)
        if via_sql != direct or list(via_sql.rows) != scanned:
            bad.append(seed)
    elapsed = time.perf_counter() - start
    report(5, "generated SQL vs direct evaluation vs naive scan", not bad and elapsed < 60,
           f"{cases} cases, {len(bad)} disagreements, {elapsed:.1f} s")


def _fuzz_inputs(n, seed=20261016):
    rng = random.Random(seed)
    words = sorted(builtin_lexicon().entries) + [
        "select", "*", "from", "document", "where", "(", ")", "'", '"', "Document_Type", "=",
        "LIKE", "between", "01-09-08", "123", "-", "%", "\\", "»", "ß", "\x00", "\t", ";"]
    alphabet = string.printable + "äöüßÄ€»«​﻿"
    for i in range(n):
        style = i % 3
        if style == 0:
            text = " ".join(rng.choice(words) for _ in range(rng.randint(0, 12)))
        elif style == 1:
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        else:
            text = bytes(rng.randrange(256) for _ in range(rng.randint(0, 40))).decode("utf-8", "replace")
        yield text.replace("\n", " ").replace("\r", " ")


def test_fuzz_robustness(demo_session):
    inputs = list(_fuzz_inputs(10_000))
    slowest = 0.0
    problems = []
    for text in inputs:
        start = time.perf_counter()
        try:
            out = run_query(text, demo_session)
        except Exception as exc:
            problems.append(f"{text!r}: crashed with {exc!r}")
            continue
        slowest = max(slowest, time.perf_counter() - start)
        if not (out.ok and out.results) and not out.text.startswith("error["):
            problems.append(f"{text!r}: neither result nor diagnostic")
    # and once through the interactive loop itself
    session = Session(demo_session.schema, demo_session.lexicon, demo_session.tables, "tsv")
    try:
        code = repl(session, io.StringIO("\n".join(inputs) + "\n"), io.StringIO())
    except Exception as exc:
        problems.append(f"repl crashed: {exc!r}")
        code = None
    ok = not problems and slowest < 2.0 and code == 0
    report(6, "fuzzed input never crashes or hangs", ok,
           f"{len(inputs)} inputs, slowest {slowest * 1000:.1f} ms, {len(problems)} problems"
           + (f"; first: {problems[0]}" if problems else ""))


@pytest.mark.parametrize("which,keyword", [("demo", "PDM"), ("demo", "CAD"), ("result_grid", "PDM"), ("result_grid", "PDF")])
def test_statement_class_equivalence(which, keyword, demo_session, grid_session):
    session = demo_session if which == "demo" else grid_session
    queries = (keyword, f"want {keyword}", f"I am looking for {keyword}")
    sets = [rows(run_query(q, session)) for q in queries]
    ok = sets[0] == sets[1] == sets[2]
    report(7, f"keyword/short/simple statements agree on {which} data for {keyword!r}", ok,
           f"row counts {[len(s) for s in sets]}")
