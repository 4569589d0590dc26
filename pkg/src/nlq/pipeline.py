"""Session state and the read / tokenize / parse / model / generate pipeline."""

from __future__ import annotations

import enum
import json
import os
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigError, EmptyInput, NlqError
from .lexer import TokenStream, tokenize
from .lexicon import Lexicon, builtin_lexicon, load_lexicon
from .parser import Statement, parse
from .semantics import QueryIntent, SchemaMap, analyze, load_schema
from .sqlgen import SqlQuery, to_sql
from .store import ResultSet, TableData, execute_sql, find_table, load_tables, parse_sql
from .values import format_value

FORMATS = ("table", "tsv", "json")
STEPS = ("read", "tokenize", "parse", "model", "generate", "execute")


class InputKind(enum.Enum):
    NATURAL_LANGUAGE = "NaturalLanguage"
    SQL = "Sql"


_SELECT = re.compile(r"\s*select\b", re.IGNORECASE)


def detect_input_kind(text: str) -> InputKind:
    if not text.strip():
        raise EmptyInput("empty input", (0, len(text)))
    return InputKind.SQL if _SELECT.match(text) else InputKind.NATURAL_LANGUAGE


def bundled_data_dir() -> Path:
    return Path(str(resources.files("nlq") / "data"))


def bundled_schema_path() -> Path:
    return bundled_data_dir() / "demo.schema"


@dataclass
class Session:
    schema: SchemaMap
    lexicon: Lexicon
    tables: dict[str, TableData]
    format: str = "table"

    @classmethod
    def load(cls, schema_path=None, data_dir=None, lexicon_path=None, format="table") -> "Session":
        """Build a session; with no schema given, NLQ_SCHEMA or the bundled demo catalog is used."""
        if format not in FORMATS:
            raise ConfigError(f"unknown output format {format!r}")
        schema_path = schema_path or os.environ.get("NLQ_SCHEMA") or bundled_schema_path()
        schema_path = Path(schema_path)
        try:
            schema = load_schema(schema_path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read schema: {exc}") from None
        if lexicon_path is not None:
            try:
                lexicon = load_lexicon(Path(lexicon_path).read_text(encoding="utf-8"))
            except OSError as exc:
                raise ConfigError(f"cannot read lexicon: {exc}") from None
        else:
            lexicon = builtin_lexicon()
        tables = load_tables(schema, data_dir or schema_path.parent)
        return cls(schema, schema.extend_lexicon(lexicon), tables, format)


@dataclass
class PipelineTrace:
    input: str
    tokens: TokenStream | None = None
    statement: Statement | None = None
    intent: QueryIntent | None = None
    sql: list[SqlQuery] = field(default_factory=list)
    row_counts: dict[str, int] = field(default_factory=dict)
    timings: list[tuple[str, float]] = field(default_factory=list)

    @property
    def matched_rule(self):
        return self.statement.matched_rule if self.statement is not None else None


@dataclass
class QueryOutcome:
    input: str
    kind: InputKind | None = None
    results: list[tuple[str, ResultSet]] = field(default_factory=list)
    error: NlqError | None = None
    trace: PipelineTrace | None = None
    text: str = ""

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def exit_code(self) -> int:
        if self.error is None:
            return 0
        return 2 if isinstance(self.error, ConfigError) else 1

    @property
    def row_count(self) -> int:
        return sum(len(rs) for _, rs in self.results)


class _Clock:
    def __init__(self, trace: PipelineTrace):
        self.trace = trace
        self.last = time.perf_counter()

    def lap(self, step: str):
        now = time.perf_counter()
        self.trace.timings.append((step, now - self.last))
        self.last = now


def compile_query(text: str, session: Session, trace: PipelineTrace | None = None) -> list[SqlQuery]:
    """Natural-language text to SQL, recording each step in ``trace``."""
    trace = trace if trace is not None else PipelineTrace(text)
    clock = _Clock(trace)
    source = text.strip("\r\n")
    clock.lap("read")
    trace.tokens = tokenize(source, session.lexicon)
    clock.lap("tokenize")
    trace.statement = parse(trace.tokens)
    clock.lap("parse")
    trace.intent = analyze(trace.statement, session.schema)
    clock.lap("model")
    trace.sql = to_sql(trace.intent)
    clock.lap("generate")
    return trace.sql


def run_query(text: str, session: Session, explain: bool = False) -> QueryOutcome:
    outcome = QueryOutcome(text)
    try:
        outcome.kind = detect_input_kind(text)
        if outcome.kind is InputKind.SQL:
            stmt = parse_sql(text)
            rs = execute_sql(stmt, session.tables)
            outcome.results = [(find_table(session.tables, stmt.table).name, rs)]
        else:
            trace = outcome.trace = PipelineTrace(text)
            queries = compile_query(text, session, trace)
            start = time.perf_counter()
            for q in queries:
                rs = execute_sql(q.sql_text, session.tables)
                outcome.results.append((q.table, rs))
                trace.row_counts[q.table] = len(rs)
            trace.timings.append(("execute", time.perf_counter() - start))
    except NlqError as exc:
        outcome.error = exc
    outcome.text = render(outcome, session.format, explain)
    return outcome


# rendering

def render_error(text: str, error: NlqError) -> str:
    line = f"error[{error.kind}]: {error.message}"
    shown = text.replace("\r", " ").replace("\n", " ")
    if error.span is not None and shown.strip():
        start, end = error.span
        start = max(0, min(start, len(shown)))
        end = max(start, min(end, len(shown)))
        if end == start:
            marked = shown[:start] + "»«" + shown[start:]
        else:
            marked = shown[:start] + "»" + shown[start:end] + "«" + shown[end:]
        line += f" | {marked}"
    return line


def _text_cell(value) -> str:
    return "NULL" if value is None else format_value(value)


def render_table(name: str, rs: ResultSet) -> str:
    header = list(rs.columns)
    body = [[_text_cell(v) for v in row] for row in rs.rows]
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
    noun = "row" if len(body) == 1 else "rows"
    lines = [f"# {name}: {len(body)} {noun}"]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def render_tsv(results: list[tuple[str, ResultSet]]) -> str:
    blocks = []
    for name, rs in results:
        lines = [f"# {name}"] if len(results) > 1 else []
        lines.append("\t".join(rs.columns))
        lines.extend("\t".join(format_value(v) for v in row) for row in rs.rows)
        blocks.append("\n".join(lines))
    return "\n".join(blocks)


def _json_cell(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return format_value(value)


def render_json(results: list[tuple[str, ResultSet]]) -> str:
    rows = []
    for name, rs in results:
        for row in rs.rows:
            obj = {"_table": name} if len(results) > 1 else {}
            obj.update({c: _json_cell(v) for c, v in zip(rs.columns, row)})
            rows.append(obj)
    return json.dumps(rows, ensure_ascii=False, indent=2)


def render_trace(trace: PipelineTrace) -> str:
    detail = {}
    if trace.tokens is not None:
        detail["tokenize"] = " ".join(repr(t) for t in trace.tokens)
    if trace.statement is not None:
        s = trace.statement
        detail["parse"] = f"{s.kind.value} via {s.matched_rule.value}"
        if s.conditions:
            detail["parse"] += "; " + "; ".join(
                f"{c.kind.value}({c.attribute_name or '-'}: {', '.join(c.value_texts())})"
                for c in s.conditions)
    if trace.intent is not None:
        i = trace.intent
        conds = "; ".join(f"{t}: {list(c)}" for t, c in i.conditions.items())
        detail["model"] = (f"targets={list(i.targets)} keyword_terms={list(i.keyword_terms)}"
                           f" conditions={{{conds}}}")
    if trace.sql:
        detail["generate"] = " ; ".join(q.sql_text for q in trace.sql)
    if trace.row_counts:
        detail["execute"] = ", ".join(f"{t}: {n}" for t, n in trace.row_counts.items())
    lines = [f"read      {trace.timings[0][1] * 1000:8.3f} ms  {trace.input!r}"] if trace.timings else []
    for step, seconds in trace.timings[1:]:
        lines.append(f"{step:<9} {seconds * 1000:8.3f} ms  {detail.get(step, '')}".rstrip())
    return "\n".join(lines)


def render(outcome: QueryOutcome, fmt: str = "table", explain: bool = False) -> str:
    parts = []
    if explain and outcome.trace is not None:
        parts.append(render_trace(outcome.trace))
    if outcome.error is not None:
        parts.append(render_error(outcome.input, outcome.error))
    elif fmt == "json":
        parts.append(render_json(outcome.results))
    elif fmt == "tsv":
        parts.append(render_tsv(outcome.results))
    else:
        parts.append("\n\n".join(render_table(n, rs) for n, rs in outcome.results))
    return "\n".join(parts)
