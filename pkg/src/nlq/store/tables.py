"""Typed tables loaded from tab-separated files, and the direct intent evaluator."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..errors import (
    CellCoercion, ConfigError, HeaderMismatch, RowArity, UnknownColumn, UnknownTable,
    ValueCoercion,
)
from ..semantics import Condition, Operator, QueryIntent, SchemaMap, TableBinding
from ..values import ValueType, coerce_value

# MySQL writes unset datetimes as all zeros
_ZERO_DATES = ("0000-00-00 00:00:00", "0000-00-00")


@dataclass(frozen=True)
class TableData:
    name: str
    columns: tuple[tuple[str, ValueType], ...]
    rows: tuple[tuple, ...] = ()

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.columns)

    def index_of(self, column: str) -> int:
        folded = column.casefold()
        for i, (name, _) in enumerate(self.columns):
            if name.casefold() == folded:
                return i
        raise UnknownColumn(f"table {self.name!r} has no column {column!r}")


@dataclass(frozen=True)
class ResultSet:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.rows)


def _cell(raw: str, vtype: ValueType, lineno: int, column: str):
    if raw == "":
        return None
    if vtype is ValueType.DATETIME and raw.strip() in _ZERO_DATES:
        return None
    try:
        return coerce_value(raw, vtype)
    except ValueCoercion as exc:
        raise CellCoercion(exc.message, lineno, column) from None


def load_table(data: str, binding: TableBinding) -> TableData:
    lines = data.splitlines()
    if not lines:
        raise HeaderMismatch(f"{binding.table_name}: missing header row", 1)
    header = lines[0].split("\t")
    folded = [h.strip().casefold() for h in header]
    if len(set(folded)) != len(folded):
        raise HeaderMismatch(f"{binding.table_name}: duplicate column in header", 1)
    declared = {c.column_name.casefold(): c for c in binding.columns}
    missing = [c.column_name for c in binding.columns if c.column_name.casefold() not in folded]
    extra = [h for h, f in zip(header, folded) if f not in declared]
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(missing))
        if extra:
            parts.append("undeclared " + ", ".join(extra))
        raise HeaderMismatch(f"{binding.table_name}: " + "; ".join(parts), 1)
    columns = tuple((declared[f].column_name, declared[f].value_type) for f in folded)

    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        cells = line.split("\t")
        if len(cells) != len(columns):
            raise RowArity(f"expected {len(columns)} cells, found {len(cells)}", lineno)
        rows.append(tuple(_cell(raw, vtype, lineno, name)
                          for raw, (name, vtype) in zip(cells, columns)))
    return TableData(binding.table_name, columns, tuple(rows))


def load_tables(schema: SchemaMap, data_dir: str | Path) -> dict[str, TableData]:
    """Load every table of ``schema`` from its ``source`` file under ``data_dir``."""
    out = {}
    base = Path(data_dir)
    for binding in schema.tables:
        path = base / (binding.source or f"{binding.table_name}.tsv")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read data for table {binding.table_name!r}: {exc}") from None
        out[binding.table_name] = load_table(text, binding)
    return out


def find_table(tables: Mapping[str, TableData], name: str) -> TableData:
    if name in tables:
        return tables[name]
    folded = name.casefold()
    for key, table in tables.items():
        if key.casefold() == folded:
            return table
    raise UnknownTable(f"no table named {name!r}")


def _holds(cond: Condition, cell, vtype: ValueType) -> bool:
    if cell is None:
        return False
    op, values = cond.operator, cond.values
    if op is Operator.EQ:
        if vtype is ValueType.TEXT:
            folded = cell.casefold()
            return any(folded == str(v).casefold() for v in values)
        return any(cell == v for v in values)
    if op is Operator.CONTAINS:
        folded = str(cell).casefold()
        return any(str(v).casefold() in folded for v in values)
    if op is Operator.BETWEEN:
        return values[0] <= cell <= values[1]
    if op is Operator.GT:
        return cell > values[0]
    if op is Operator.LT:
        return cell < values[0]
    if op is Operator.GE:
        return cell >= values[0]
    if op is Operator.LE:
        return cell <= values[0]
    raise ValueError(op)


def execute_intent(intent: QueryIntent, tables: Mapping[str, TableData]) -> list[tuple[str, ResultSet]]:
    """Evaluate ``intent`` row by row, without going through SQL."""
    results = []
    for target in intent.targets:
        table = find_table(tables, target)
        checks = [(table.index_of(c.column), c) for c in intent.conditions_for(target)]
        kw_idx = [table.index_of(c) for c in intent.columns_for(target)]
        terms = [t.casefold() for t in intent.keyword_terms]
        types = [vtype for _, vtype in table.columns]
        matched = []
        for row in table.rows:
            if not all(_holds(c, row[i], types[i]) for i, c in checks):
                continue
            haystacks = [row[i].casefold() for i in kw_idx if row[i] is not None]
            if all(any(t in h for h in haystacks) for t in terms):
                matched.append(row)
        results.append((table.name, ResultSet(table.column_names, tuple(matched))))
    return results
