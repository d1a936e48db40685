"""Enumeration caps, overridable through ``QFALAB_BUDGET``.

The variable holds ``WORDS`` or ``WORDS:MAXLEN``: the largest number of
words an exhaustive search may visit, and optionally the MMPCP solver's
length cap.
"""

from __future__ import annotations

import os

from .exactnum import SchemaError

DEFAULT_WORD_BUDGET = 10**6
DEFAULT_SOLVER_MAX_LEN = 8


def _parts() -> list[str]:
    raw = os.environ.get("QFALAB_BUDGET", "").strip()
    return raw.split(":") if raw else []


def _field(index: int, default: int) -> int:
    parts = _parts()
    if len(parts) > 2:
        raise SchemaError("QFALAB_BUDGET must be WORDS or WORDS:MAXLEN")
    if len(parts) <= index or not parts[index]:
        return default
    try:
        value = int(parts[index])
    except ValueError:
        raise SchemaError(f"QFALAB_BUDGET field {parts[index]!r} is not an integer") from None
    if value < 1:
        raise SchemaError("QFALAB_BUDGET fields must be positive")
    return value


def word_budget() -> int:
    return _field(0, DEFAULT_WORD_BUDGET)


def solver_max_len() -> int:
    return _field(1, DEFAULT_SOLVER_MAX_LEN)
