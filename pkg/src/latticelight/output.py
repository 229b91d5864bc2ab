"""Deterministic run artifacts: CSV tables with a JSON header block.

Every output file starts with the run configuration as '#'-prefixed JSON
lines (sorted keys, no timestamps), followed by a CSV body with '.'-decimal
floats at 17 significant digits.  Identical configurations therefore yield
byte-identical files.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "LATTICELIGHT_THREADS"


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (int, str)):
        return str(value)
    return format(float(value), ".17g")


def header_lines(header: dict) -> list:
    text = json.dumps(header, indent=2, sort_keys=True)
    return ["# " + line for line in text.splitlines()]


def write_table(path: str, header: dict, columns, rows):
    """Write a self-describing CSV artifact (JSON header + rows)."""
    lines = header_lines(header)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_table(path: str):
    """Parse an artifact back into (header dict, column names, string rows)."""
    header_text = []
    body = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                header_text.append(line[1:].lstrip(" "))
            elif line:
                body.append(line)
    header = json.loads("\n".join(header_text)) if header_text else {}
    columns = body[0].split(",") if body else []
    rows = [line.split(",") for line in body[1:]]
    return header, columns, rows


def resolve_threads(cli_value) -> int:
    """Thread count: explicit flag wins, then the environment, then 1."""
    if cli_value is not None:
        return max(1, int(cli_value))
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def thread_map(fn, items, threads: int) -> list:
    """Map with an optional thread pool; results keep submission order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
