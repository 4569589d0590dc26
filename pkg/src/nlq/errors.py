"""Exception hierarchy.

Two families matter to callers: :class:`QueryError` (bad user input, the
session carries on) and :class:`ConfigError` (bad schema, lexicon or data
files, nothing can run).
"""

from __future__ import annotations


class NlqError(Exception):
    """Base class. ``span`` is a (start, end) character range into the input, if known."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    @property
    def kind(self) -> str:
        return type(self).__name__


class QueryError(NlqError):
    pass


class ConfigError(NlqError):
    pass


# lexicon / schema / data files

class LexiconSyntaxError(ConfigError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaError(ConfigError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class DataError(ConfigError):
    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.column = column


class HeaderMismatch(DataError):
    pass


class RowArity(DataError):
    pass


class CellCoercion(DataError):
    pass


# natural-language path

class EmptyInput(QueryError):
    pass


class EmptyQuery(QueryError):
    pass


class NoRuleMatched(QueryError):
    pass


class SemanticError(QueryError):
    pass


class UnknownAttribute(SemanticError):
    pass


class AmbiguousAttribute(SemanticError):
    pass


class ValueCoercion(SemanticError):
    def __init__(self, raw: str, expected: str, span: tuple[int, int] | None = None):
        super().__init__(f"cannot read {raw!r} as {expected}", span)
        self.raw = raw
        self.expected = expected


# SQL path

class SqlError(QueryError):
    pass


class SqlSyntax(SqlError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        text = f"at position {position}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text, (position, position + 1))
        self.position = position
        self.expected = expected


class UnknownTable(SqlError):
    pass


class UnknownColumn(SqlError):
    pass


class TypeMismatch(SqlError):
    pass
