"""Tiny text-output helpers shared by the CLI, serializers, and scripts.

Every number the package emits goes through fmt() so CSV output is
deterministic byte for byte: 12 significant digits, no exponent surprises
from locale, booleans as lowercase words.
"""

from __future__ import annotations

import math
from typing import Iterable


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    x = float(value)
    if math.isnan(x):
        return "nan"
    return "%.12g" % x


def csv_line(values: Iterable) -> str:
    return ",".join(fmt(v) for v in values)


def write_lines(path: str | None, lines: list[str]) -> None:
    """Write lines to a file with trailing newline, or to stdout when path is None."""
    text = "\n".join(lines) + "\n"
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
