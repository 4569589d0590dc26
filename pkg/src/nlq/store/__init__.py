"""Embedded table store: TSV loading, direct intent evaluation, SQL subset."""

from .tables import ResultSet, TableData, execute_intent, find_table, load_table, load_tables
from .sql import Select, execute_sql, parse_sql

__all__ = [
    "ResultSet", "TableData", "Select",
    "load_table", "load_tables", "find_table",
    "execute_intent", "execute_sql", "parse_sql",
]
