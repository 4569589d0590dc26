"""Plain-English search over a product-data catalog, compiled to SQL."""

from .errors import ConfigError, NlqError, QueryError
from .lexer import Token, TokenStream, tokenize
from .lexicon import ConditionKind, Lexicon, TokenClass, builtin_lexicon, classify, load_lexicon
from .parser import ConditionClause, RuleId, Statement, StatementKind, match_rule, parse
from .pipeline import InputKind, Session, detect_input_kind, run_query
from .semantics import (
    ColumnBinding, Condition, Operator, QueryIntent, SchemaMap, TableBinding,
    analyze, load_schema, resolve_attribute,
)
from .sqlgen import SqlQuery, to_sql
from .store import ResultSet, TableData, execute_intent, execute_sql, load_table
from .values import ValueType, coerce_value

__all__ = [
    "ConfigError", "NlqError", "QueryError",
    "Token", "TokenStream", "tokenize",
    "ConditionKind", "Lexicon", "TokenClass", "builtin_lexicon", "classify", "load_lexicon",
    "ConditionClause", "RuleId", "Statement", "StatementKind", "match_rule", "parse",
    "InputKind", "Session", "detect_input_kind", "run_query",
    "ColumnBinding", "Condition", "Operator", "QueryIntent", "SchemaMap", "TableBinding",
    "analyze", "load_schema", "resolve_attribute",
    "SqlQuery", "to_sql",
    "ResultSet", "TableData", "execute_intent", "execute_sql", "load_table",
    "ValueType", "coerce_value",
]
