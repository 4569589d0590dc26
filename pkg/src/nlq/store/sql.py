"""A small SQL subset: single-table SELECT with a WHERE predicate.

    select    := SELECT ('*' | ident (',' ident)*) FROM ident [WHERE or] [';']
    or        := and (OR and)*
    and       := pred (AND pred)*
    pred      := '(' or ')'
               | operand (cmp operand | BETWEEN operand AND operand | LIKE string)
    operand   := ident | LOWER '(' ident ')' | string | ['-'] number
    cmp       := '=' | '<' | '>' | '<=' | '>='

Strings take single or double quotes, with the quote doubled inside.
LIKE understands ``%`` and ``_``; a backslash escapes the next character.
LOWER case-folds. Null cells satisfy no predicate.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from ..errors import SqlSyntax, TypeMismatch, UnknownColumn, UnknownTable, ValueCoercion
from ..values import ValueType, coerce_value
from .tables import ResultSet, TableData, find_table

MAX_NESTING = 64
KEYWORDS = frozenset({"SELECT", "FROM", "WHERE", "AND", "OR", "BETWEEN", "LIKE", "LOWER"})

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | `(?P<quoted>[^`]+)`
  | (?P<number>[0-9]+)
  | (?P<string>'(?:[^']|'')*'|"(?:[^"]|"")*")
  | (?P<op><=|>=|[=<>(),*;-])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, number, string, op, kw, eof
    text: str
    pos: int
    value: object = None


def _lex(sql: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(sql):
        m = _TOKEN.match(sql, pos)
        if m is None:
            ch = sql[pos]
            if ch in "'\"":
                raise SqlSyntax("unterminated string", pos)
            raise SqlSyntax(f"unexpected character {ch!r}", pos)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident":
            if text.upper() in KEYWORDS:
                out.append(_Tok("kw", text.upper(), pos))
            else:
                out.append(_Tok("ident", text, pos))
        elif kind == "quoted":
            out.append(_Tok("ident", m.group("quoted"), pos))
        elif kind == "number":
            out.append(_Tok("number", text, pos, int(text)))
        elif kind == "string":
            q = text[0]
            out.append(_Tok("string", text, pos, text[1:-1].replace(q + q, q)))
        elif kind == "op":
            out.append(_Tok("op", text, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(sql)))
    return out


# AST

@dataclass(frozen=True)
class Column:
    name: str
    pos: int


@dataclass(frozen=True)
class Lower:
    column: Column


@dataclass(frozen=True)
class Literal:
    value: Union[str, int]
    pos: int


Operand = Union[Column, Lower, Literal]


@dataclass(frozen=True)
class Compare:
    op: str
    left: Operand
    right: Operand


@dataclass(frozen=True)
class Between:
    operand: Operand
    low: Operand
    high: Operand


@dataclass(frozen=True)
class Like:
    operand: Operand
    pattern: str


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Select:
    columns: tuple[Column, ...] | None
    table: str
    table_pos: int
    where: object = None

    def predicate_count(self) -> int:
        def count(node):
            if isinstance(node, (And, Or)):
                return sum(count(i) for i in node.items)
            return 0 if node is None else 1
        return count(self.where)


class _Parser:
    def __init__(self, sql: str):
        self.toks = _lex(sql)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise SqlSyntax(f"unexpected {found}", t.pos, expected)

    def kw(self, word: str) -> bool:
        if self.tok.kind == "kw" and self.tok.text == word:
            self.i += 1
            return True
        return False

    def expect_kw(self, word: str):
        if not self.kw(word):
            self.error(word)

    def op(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def ident(self) -> Column:
        if self.tok.kind != "ident":
            self.error("a name")
        t = self.take()
        return Column(t.text, t.pos)

    def select(self) -> Select:
        self.expect_kw("SELECT")
        if self.op("*"):
            columns = None
        else:
            columns = [self.ident()]
            while self.op(","):
                columns.append(self.ident())
            columns = tuple(columns)
        self.expect_kw("FROM")
        table = self.ident()
        where = None
        if self.kw("WHERE"):
            where = self.disjunction()
        self.op(";")
        if self.tok.kind != "eof":
            self.error("end of statement")
        return Select(columns, table.name, table.pos, where)

    def disjunction(self):
        items = [self.conjunction()]
        while self.kw("OR"):
            items.append(self.conjunction())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conjunction(self):
        items = [self.predicate()]
        while self.kw("AND"):
            items.append(self.predicate())
        return items[0] if len(items) == 1 else And(tuple(items))

    def predicate(self):
        if self.tok.kind == "op" and self.tok.text == "(":
            if self.depth >= MAX_NESTING:
                raise SqlSyntax("parentheses nested too deeply", self.tok.pos)
            self.i += 1
            self.depth += 1
            inner = self.disjunction()
            if not self.op(")"):
                self.error("')'")
            self.depth -= 1
            return inner
        left = self.operand()
        if self.kw("BETWEEN"):
            low = self.operand()
            self.expect_kw("AND")
            return Between(left, low, self.operand())
        if self.kw("LIKE"):
            if self.tok.kind != "string":
                self.error("a quoted pattern")
            return Like(left, self.take().value)
        t = self.tok
        if t.kind == "op" and t.text in ("=", "<", ">", "<=", ">="):
            self.i += 1
            return Compare(t.text, left, self.operand())
        self.error("a comparison, BETWEEN or LIKE")

    def operand(self) -> Operand:
        t = self.tok
        if t.kind == "ident":
            return self.ident()
        if self.kw("LOWER"):
            if not self.op("("):
                self.error("'('")
            col = self.ident()
            if not self.op(")"):
                self.error("')'")
            return Lower(col)
        if t.kind == "string":
            self.i += 1
            return Literal(t.value, t.pos)
        if t.kind == "number":
            self.i += 1
            return Literal(t.value, t.pos)
        if t.kind == "op" and t.text == "-" and self.toks[self.i + 1].kind == "number":
            self.i += 2
            return Literal(-self.toks[self.i - 1].value, t.pos)
        self.error("a column, LOWER(column) or literal")


def parse_sql(sql: str) -> Select:
    return _Parser(sql).select()


# evaluation

_CMP: dict[str, Callable] = {
    "=": operator.eq, "<": operator.lt, ">": operator.gt, "<=": operator.le, ">=": operator.ge,
}
_LITERAL = "literal"


def _span(node) -> tuple[int, int] | None:
    if isinstance(node, Lower):
        node = node.column
    pos = getattr(node, "pos", None)
    return None if pos is None else (pos, pos + 1)


class _Binder:
    def __init__(self, table: TableData):
        self.table = table

    def column(self, col: Column) -> tuple[int, ValueType]:
        try:
            i = self.table.index_of(col.name)
        except UnknownColumn as exc:
            exc.span = (col.pos, col.pos + len(col.name))
            raise
        return i, self.table.columns[i][1]

    def operand(self, node: Operand):
        """Return (getter, static type); literals report type ``literal``."""
        if isinstance(node, Column):
            i, vtype = self.column(node)
            return (lambda row, i=i: row[i]), vtype
        if isinstance(node, Lower):
            i, vtype = self.column(node.column)
            if vtype is not ValueType.TEXT:
                raise TypeMismatch(f"LOWER needs a text column, {node.column.name} is {vtype.value}",
                                   _span(node))
            return (lambda row, i=i: None if row[i] is None else row[i].casefold()), ValueType.TEXT
        return (lambda row, v=node.value: v), _LITERAL

    def literal_as(self, node: Literal, vtype: ValueType):
        value = node.value
        where = _span(node)
        if vtype is ValueType.TEXT:
            if isinstance(value, str):
                return value
        elif vtype is ValueType.INTEGER:
            if isinstance(value, int):
                return value
            try:
                return coerce_value(value, vtype)
            except ValueCoercion:
                pass
        elif vtype is ValueType.BOOLEAN:
            if isinstance(value, int) and value in (0, 1):
                return bool(value)
            if isinstance(value, str):
                try:
                    return coerce_value(value, vtype)
                except ValueCoercion:
                    pass
        elif vtype is ValueType.DATETIME:
            if isinstance(value, str):
                try:
                    return coerce_value(value, vtype)
                except ValueCoercion:
                    pass
        raise TypeMismatch(f"{value!r} cannot be compared with a {vtype.value} value", where)

    def pair(self, left: Operand, right: Operand):
        """Bind two operands that will be compared with each other."""
        lget, ltype = self.operand(left)
        rget, rtype = self.operand(right)
        if ltype == _LITERAL and rtype == _LITERAL:
            if type(left.value) is not type(right.value):
                raise TypeMismatch("cannot compare a string with a number", _span(right))
            return lget, rget
        if ltype == _LITERAL:
            v = self.literal_as(left, rtype)
            return (lambda row: v), rget
        if rtype == _LITERAL:
            v = self.literal_as(right, ltype)
            return lget, (lambda row: v)
        if ltype is not rtype:
            raise TypeMismatch(f"cannot compare {ltype.value} with {rtype.value}", _span(right))
        return lget, rget

    def predicate(self, node) -> Callable[[tuple], bool]:
        if isinstance(node, And):
            parts = [self.predicate(i) for i in node.items]
            return lambda row: all(p(row) for p in parts)
        if isinstance(node, Or):
            parts = [self.predicate(i) for i in node.items]
            return lambda row: any(p(row) for p in parts)
        if isinstance(node, Compare):
            lget, rget = self.pair(node.left, node.right)
            fn = _CMP[node.op]

            def compare(row):
                a, b = lget(row), rget(row)
                return a is not None and b is not None and fn(a, b)
            return compare
        if isinstance(node, Between):
            get, low = self.pair(node.operand, node.low)
            get2, high = self.pair(node.operand, node.high)

            def between(row):
                v, lo, hi = get(row), low(row), high(row)
                return v is not None and lo is not None and hi is not None and lo <= v <= hi
            return between
        if isinstance(node, Like):
            get, vtype = self.operand(node.operand)
            if vtype not in (ValueType.TEXT, _LITERAL) or (
                    vtype == _LITERAL and not isinstance(node.operand.value, str)):
                raise TypeMismatch("LIKE needs a text operand", _span(node.operand))
            rx = like_regex(node.pattern)

            def like(row):
                v = get(row)
                return v is not None and rx.fullmatch(v) is not None
            return like
        raise TypeError(node)


def like_regex(pattern: str) -> re.Pattern:
    out = []
    chars = iter(pattern)
    for ch in chars:
        if ch == "\\":
            nxt = next(chars, "\\")
            out.append(re.escape(nxt))
        elif ch == "%":
            out.append(".*")
        elif ch == "_":
            out.append(".")
        else:
            out.append(re.escape(ch))
    return re.compile("".join(out), re.DOTALL)


def execute_sql(sql: str | Select, tables: Mapping[str, TableData]) -> ResultSet:
    stmt = parse_sql(sql) if isinstance(sql, str) else sql
    try:
        table = find_table(tables, stmt.table)
    except UnknownTable as exc:
        exc.span = (stmt.table_pos, stmt.table_pos + len(stmt.table))
        raise
    binder = _Binder(table)
    if stmt.columns is None:
        indices = list(range(len(table.columns)))
    else:
        indices = [binder.column(c)[0] for c in stmt.columns]
    names = tuple(table.columns[i][0] for i in indices)
    keep = binder.predicate(stmt.where) if stmt.where is not None else (lambda row: True)
    rows = tuple(tuple(row[i] for i in indices) for row in table.rows if keep(row))
    return ResultSet(names, rows)
