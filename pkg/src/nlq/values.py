"""Column value types and text-to-value coercion."""

from __future__ import annotations

import enum
import re
from datetime import datetime

from .errors import ValueCoercion


class ValueType(enum.Enum):
    TEXT = "text"
    INTEGER = "integer"
    DATETIME = "datetime"
    BOOLEAN = "boolean"

    @classmethod
    def parse(cls, name: str) -> "ValueType":
        return cls(name.strip().lower())


_INT_RE = re.compile(r"[+-]?[0-9]+")
_ISO_RE = re.compile(r"([0-9]{4})-([0-9]{2})-([0-9]{2})(?:[ T]([0-9]{2}):([0-9]{2}):([0-9]{2}))?")
_DMY_RE = re.compile(r"([0-9]{1,2})-([0-9]{1,2})-([0-9]{2}|[0-9]{4})")
_YEAR_RE = re.compile(r"[0-9]{4}")

_BOOLEANS = {"1": True, "true": True, "0": False, "false": False}


def parse_datetime(raw: str) -> datetime:
    text = raw.strip()
    try:
        m = _ISO_RE.fullmatch(text)
        if m:
            parts = [int(g) if g is not None else 0 for g in m.groups()]
            return datetime(*parts)
        m = _DMY_RE.fullmatch(text)
        if m:
            day, month, year = m.groups()
            y = int(year)
            if len(year) == 2:
                y += 2000
            return datetime(y, int(month), int(day))
        if _YEAR_RE.fullmatch(text):
            return datetime(int(text), 1, 1)
    except ValueError:
        pass
    raise ValueCoercion(raw, ValueType.DATETIME.value)


def coerce_value(raw: str, value_type: ValueType):
    """Read ``raw`` as a value of ``value_type``.

    Datetimes accept ``YYYY-MM-DD HH:MM:SS``, ``YYYY-MM-DD``, day-first
    ``DD-MM-YY`` / ``DD-MM-YYYY`` (two-digit years land in 2000-2099) and a
    bare ``YYYY`` meaning January 1st of that year.
    """
    if value_type is ValueType.TEXT:
        return raw
    if value_type is ValueType.INTEGER:
        text = raw.strip()
        if _INT_RE.fullmatch(text):
            return int(text)
        raise ValueCoercion(raw, value_type.value)
    if value_type is ValueType.DATETIME:
        return parse_datetime(raw)
    if value_type is ValueType.BOOLEAN:
        try:
            return _BOOLEANS[raw.strip().lower()]
        except KeyError:
            raise ValueCoercion(raw, value_type.value) from None
    raise TypeError(value_type)


def format_value(value) -> str:
    """Render a cell the way data files write it; null becomes the empty string."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, datetime):
        return value.isoformat(sep=" ")
    return str(value)
