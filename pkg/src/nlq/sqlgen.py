"""Render query intents as SQL text, one SELECT per target table."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .semantics import Condition, Operator, QueryIntent

_COMPARE = {Operator.GT: ">", Operator.LT: "<", Operator.GE: ">=", Operator.LE: "<="}


@dataclass(frozen=True)
class SqlQuery:
    table: str
    sql_text: str

    def __str__(self):
        return self.sql_text


def quote(text: str) -> str:
    return "'" + text.replace("'", "''") + "'"


def like_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("%", "\\%").replace("_", "\\_")


def literal(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, datetime):
        return quote(value.isoformat(sep=" "))
    return quote(str(value))


def _equality(column: str, value) -> str:
    if isinstance(value, str):
        return f"LOWER({column}) = {quote(value.casefold())}"
    return f"{column} = {literal(value)}"


def _contains(column: str, term: str) -> str:
    return f"LOWER({column}) LIKE {quote('%' + like_escape(term.casefold()) + '%')}"


def render_condition(cond: Condition) -> str:
    col, op, values = cond.column, cond.operator, cond.values
    if op is Operator.EQ:
        parts = [_equality(col, v) for v in values]
    elif op is Operator.CONTAINS:
        parts = [_contains(col, str(v)) for v in values]
    elif op is Operator.BETWEEN:
        return f"{col} BETWEEN {literal(values[0])} AND {literal(values[1])}"
    else:
        return f"{col} {_COMPARE[op]} {literal(values[0])}"
    if len(parts) == 1:
        return parts[0]
    return "(" + " OR ".join(parts) + ")"


def render_keyword(term: str, columns) -> str:
    if not columns:
        return "(1 = 0)"
    return "(" + " OR ".join(_contains(c, term) for c in columns) + ")"


def to_sql(intent: QueryIntent) -> list[SqlQuery]:
    out = []
    for table in intent.targets:
        clauses = [render_condition(c) for c in intent.conditions_for(table)]
        columns = intent.columns_for(table)
        clauses += [render_keyword(term, columns) for term in intent.keyword_terms]
        sql = f"SELECT * FROM {table}"
        if clauses:
            sql += " WHERE " + " AND ".join(clauses)
        out.append(SqlQuery(table, sql))
    return out
