"""Deterministic text formatting for data and summary files."""

from __future__ import annotations

import math
from typing import Iterable, List, Mapping, Sequence, Union

from catsim.config import settings

Value = Union[float, int, bool, str]


def format_number(value: float) -> str:
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    # Adding 0.0 turns -0.0 into 0.0.
    return f"{value + 0.0:.{settings.SIGNIFICANT_DIGITS}g}"


def format_value(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return format_number(value)


def format_row(values: Sequence[Value]) -> str:
    return ",".join(format_value(value) for value in values)


def build_csv_text(header: Sequence[str], rows: Iterable[Sequence[Value]]) -> str:
    lines: List[str] = [",".join(header)]
    lines.extend(format_row(row) for row in rows)
    return "\n".join(lines) + "\n"


def build_summary_text(entries: Mapping[str, Value]) -> str:
    return "".join(f"{key} = {format_value(value)}\n" for key, value in entries.items())


def format_assignments(assignments: Sequence[tuple]) -> str:
    """File-name fragment such as `__g=0.005` for a sweep point."""
    return "".join(f"__{name}={format_number(value)}" for name, value in assignments)
