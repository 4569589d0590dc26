"""Resolve parsed statements against a schema map into query intents."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import AmbiguousAttribute, SchemaError, UnknownAttribute, ValueCoercion
from .lexicon import ConditionKind, Lexicon, TokenClass
from .parser import ConditionClause, Statement, phrase_text
from .values import ValueType, coerce_value


@dataclass(frozen=True)
class ColumnBinding:
    column_name: str
    value_type: ValueType = ValueType.TEXT
    attribute_nouns: tuple[str, ...] = ()


@dataclass(frozen=True)
class TableBinding:
    table_name: str
    entity_nouns: tuple[str, ...] = ()
    keyword_columns: tuple[str, ...] = ()
    columns: tuple[ColumnBinding, ...] = ()
    source: str | None = None

    def column(self, name: str) -> ColumnBinding | None:
        folded = name.casefold()
        for c in self.columns:
            if c.column_name.casefold() == folded:
                return c
        return None

    def column_for_noun(self, noun: str) -> ColumnBinding | None:
        folded = noun.casefold()
        for c in self.columns:
            if folded in c.attribute_nouns:
                return c
        return None


@dataclass(frozen=True)
class SchemaMap:
    tables: tuple[TableBinding, ...]

    def __post_init__(self):
        seen: dict[str, str] = {}
        names = set()
        for t in self.tables:
            if t.table_name.casefold() in names:
                raise SchemaError(f"table {t.table_name!r} declared twice")
            names.add(t.table_name.casefold())
            for noun in t.entity_nouns:
                if noun in seen:
                    raise SchemaError(
                        f"entity noun {noun!r} used by both {seen[noun]!r} and {t.table_name!r}")
                seen[noun] = t.table_name
            col_names = set()
            attr_nouns = set()
            for c in t.columns:
                if c.column_name.casefold() in col_names:
                    raise SchemaError(f"{t.table_name}: column {c.column_name!r} declared twice")
                col_names.add(c.column_name.casefold())
                for noun in c.attribute_nouns:
                    if noun in attr_nouns:
                        raise SchemaError(f"{t.table_name}: attribute noun {noun!r} used twice")
                    attr_nouns.add(noun)
            for k in t.keyword_columns:
                col = t.column(k)
                if col is None:
                    raise SchemaError(f"{t.table_name}: keyword column {k!r} is not declared")
                if col.value_type is not ValueType.TEXT:
                    raise SchemaError(f"{t.table_name}: keyword column {k!r} must be text")

    def table(self, name: str) -> TableBinding:
        folded = name.casefold()
        for t in self.tables:
            if t.table_name.casefold() == folded:
                return t
        raise KeyError(name)

    def table_for_entity(self, noun: str) -> TableBinding | None:
        folded = noun.casefold()
        for t in self.tables:
            if folded in t.entity_nouns:
                return t
        return None

    def extend_lexicon(self, lexicon: Lexicon) -> Lexicon:
        """Teach ``lexicon`` every entity and attribute noun this schema uses."""
        entities = [(n, TokenClass.OBJECT) for t in self.tables for n in t.entity_nouns]
        attributes = [n for t in self.tables for c in t.columns for n in c.attribute_nouns]
        return lexicon.extended(entities, attributes)


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in value.split(",") if v.strip())


_SECTION = re.compile(r"\[\s*(table|column)\s+([^\]\s]+)\s*\]", re.IGNORECASE)


def load_schema(source: str) -> SchemaMap:
    """Read the INI-style schema map format.

    ``[table <name>]`` opens a table (keys ``source``, ``nouns``,
    ``keyword-columns``); ``[column <name>]`` adds a column to the current
    table (keys ``nouns``, ``type``).
    """
    tables: list[dict] = []
    current: dict | None = None
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _SECTION.fullmatch(line)
            if not m:
                raise SchemaError(f"bad section header {line!r}", lineno)
            what, name = m.group(1).lower(), m.group(2)
            if what == "table":
                tables.append({"name": name, "source": None, "nouns": (), "keywords": (), "columns": []})
                current = {"table": tables[-1]}
            else:
                if not tables:
                    raise SchemaError(f"column {name!r} outside a table", lineno)
                col = {"name": name, "type": ValueType.TEXT, "nouns": ()}
                tables[-1]["columns"].append(col)
                current = {"column": col}
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SchemaError(f"expected 'key = value', got {line!r}", lineno)
        key = key.strip().lower()
        value = value.strip()
        if current is None:
            raise SchemaError(f"key {key!r} outside a section", lineno)
        if "table" in current:
            t = current["table"]
            if key == "source":
                t["source"] = value
            elif key == "nouns":
                t["nouns"] = tuple(n.casefold() for n in _split_list(value))
            elif key == "keyword-columns":
                t["keywords"] = _split_list(value)
            else:
                raise SchemaError(f"unknown table key {key!r}", lineno)
        else:
            c = current["column"]
            if key == "nouns":
                c["nouns"] = tuple(n.casefold() for n in _split_list(value))
            elif key == "type":
                try:
                    c["type"] = ValueType.parse(value)
                except ValueError:
                    raise SchemaError(f"unknown column type {value!r}", lineno) from None
            else:
                raise SchemaError(f"unknown column key {key!r}", lineno)
    if not tables:
        raise SchemaError("schema declares no tables")
    return SchemaMap(tuple(
        TableBinding(
            table_name=t["name"],
            entity_nouns=t["nouns"],
            keyword_columns=t["keywords"],
            columns=tuple(ColumnBinding(c["name"], c["type"], c["nouns"]) for c in t["columns"]),
            source=t["source"],
        )
        for t in tables
    ))


class Operator(enum.Enum):
    EQ = "Eq"
    CONTAINS = "Contains"
    BETWEEN = "Between"
    GT = "Gt"
    LT = "Lt"
    GE = "Ge"
    LE = "Le"

    def __repr__(self):
        return self.value


ORDERING_OPERATORS = frozenset({Operator.BETWEEN, Operator.GT, Operator.LT, Operator.GE, Operator.LE})


@dataclass(frozen=True)
class Condition:
    column: str
    operator: Operator
    values: tuple

    def __repr__(self):
        return f"{self.operator.value}({self.column}, {list(self.values)!r})"


@dataclass(frozen=True)
class QueryIntent:
    targets: tuple[str, ...]
    keyword_terms: tuple[str, ...] = ()
    conditions: Mapping[str, tuple[Condition, ...]] = field(default_factory=dict)
    keyword_columns: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def conditions_for(self, table: str) -> tuple[Condition, ...]:
        return tuple(self.conditions.get(table, ()))

    def columns_for(self, table: str) -> tuple[str, ...]:
        return tuple(self.keyword_columns.get(table, ()))


_OPERATOR_OF = {
    ConditionKind.EQUAL: Operator.EQ,
    ConditionKind.WITH: Operator.EQ,
    ConditionKind.BETWEEN: Operator.BETWEEN,
    ConditionKind.GREATER: Operator.GT,
    ConditionKind.GREATER_THAN: Operator.GT,
    ConditionKind.LESS: Operator.LT,
    ConditionKind.LESS_THAN: Operator.LT,
}


def resolve_attribute(noun: str, candidates: Sequence[TableBinding]) -> tuple[str, str]:
    """Find the single (table, column) among ``candidates`` whose nouns include ``noun``."""
    hits = [(t.table_name, c.column_name) for t in candidates
            if (c := t.column_for_noun(noun)) is not None]
    if not hits:
        names = ", ".join(t.table_name for t in candidates) or "no tables"
        raise UnknownAttribute(f"no column called {noun!r} in {names}")
    if len(hits) > 1:
        names = ", ".join(t for t, _ in hits)
        raise AmbiguousAttribute(f"{noun!r} could mean a column of any of: {names}")
    return hits[0]


def _coerce(clause: ConditionClause, text: str, vtype: ValueType):
    try:
        return coerce_value(text, vtype)
    except ValueCoercion as exc:
        span = clause.attribute.span if clause.attribute is not None else None
        raise ValueCoercion(exc.raw, exc.expected, span) from None


def _condition(clause: ConditionClause, column: ColumnBinding) -> Condition:
    op = _OPERATOR_OF[clause.kind]
    vtype = column.value_type
    if op in ORDERING_OPERATORS and vtype not in (ValueType.INTEGER, ValueType.DATETIME):
        raise ValueCoercion(" ".join(clause.value_texts()), f"a value of an ordered column "
                            f"({column.column_name} is {vtype.value})", clause.attribute.span)
    values = tuple(_coerce(clause, text, vtype) for text in clause.value_texts())
    if op is Operator.EQ:
        seen = []
        for v in values:
            if v not in seen:
                seen.append(v)
        values = tuple(seen)
    if op is Operator.BETWEEN and values[0] > values[1]:
        values = (values[1], values[0])
    return Condition(column.column_name, op, values)


def _unique(seq):
    out = []
    for item in seq:
        if item not in out:
            out.append(item)
    return out


def analyze(stmt: Statement, schema: SchemaMap) -> QueryIntent:
    explicit: list[TableBinding] = []
    terms: list[str] = []
    for tok in stmt.objects:
        table = schema.table_for_entity(tok.normalized)
        if table is not None:
            explicit.append(table)
        else:
            terms.append(tok.normalized)
    explicit = _unique(explicit)

    hinted: list[TableBinding] = []
    attributed: list[ConditionClause] = []
    for clause in stmt.conditions:
        for tok in clause.qualifiers:
            table = schema.table_for_entity(tok.normalized)
            if table is not None:
                hinted.append(table)
            else:
                terms.append(tok.normalized)
        if clause.attribute is not None:
            attributed.append(clause)
        elif clause.kind in (ConditionKind.EQUAL, ConditionKind.WITH):
            terms.extend(clause.value_texts())
        else:
            raise UnknownAttribute(
                f"{clause.kind.value.lower()} condition needs an attribute such as 'date' or 'number'",
                clause.values[0][0].span)
    hinted = _unique(hinted)

    conditions: dict[str, tuple[Condition, ...]] = {}
    if attributed:
        candidates = explicit or hinted or list(schema.tables)
        homes = None
        for clause in attributed:
            noun = clause.attribute_name
            defining = [t for t in candidates if t.column_for_noun(noun) is not None]
            if not defining:
                resolve_attribute(noun, candidates)  # raises UnknownAttribute
            found = {t.table_name for t in defining}
            homes = found if homes is None else homes & found
            if not homes:
                raise UnknownAttribute(
                    f"no single table has all of: "
                    f"{', '.join(c.attribute_name for c in attributed)}", clause.attribute.span)
        if len(homes) > 1:
            for clause in attributed:
                try:
                    resolve_attribute(clause.attribute_name, [t for t in candidates if t.table_name in homes])
                except AmbiguousAttribute as exc:
                    exc.span = clause.attribute.span
                    raise
        home = next(t for t in candidates if t.table_name in homes)
        conds = []
        for clause in attributed:
            _, col_name = resolve_attribute(clause.attribute_name, [home])
            conds.append(_condition(clause, home.column(col_name)))
        conditions[home.table_name] = tuple(conds)
        targets = [home]
    elif explicit or hinted:
        targets = explicit or hinted
    else:
        targets = [t for t in schema.tables if t.keyword_columns]
        if not targets:
            raise UnknownAttribute("no table has keyword columns to search")

    return QueryIntent(
        targets=tuple(t.table_name for t in targets),
        keyword_terms=tuple(_unique(terms)),
        conditions=conditions,
        keyword_columns={t.table_name: t.keyword_columns for t in targets},
    )
