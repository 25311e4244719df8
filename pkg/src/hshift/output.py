"""Tabular output: CSV with a mandatory header, or key=value records."""

import csv
import io
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Table:
    columns: tuple
    rows: list = field(default_factory=list)
    name: str = ""


def format_cell(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.9g}"
    return str(x)


def emit_table(table, fmt="csv"):
    """Serialize ``table`` to UTF-8 bytes with LF line endings.

    Floats carry 9 significant digits. In ``kv`` format each row becomes one
    ``column=value`` line per column, rows separated by an empty line.
    """
    width = len(table.columns)
    for i, row in enumerate(table.rows):
        if len(row) != width:
            raise ValueError(f"row {i} has {len(row)} cells, header has {width}")

    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([format_cell(x) for x in row])
    elif fmt == "kv":
        blocks = []
        for row in table.rows:
            blocks.append("".join(f"{k}={format_cell(v)}\n" for k, v in zip(table.columns, row)))
        buf.write("\n".join(blocks))
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return buf.getvalue().encode("utf-8")


def read_csv(data):
    """Parse bytes produced by ``emit_table(..., 'csv')`` back into (columns, rows of str)."""
    reader = csv.reader(io.StringIO(data.decode("utf-8")))
    rows = list(reader)
    return tuple(rows[0]), rows[1:]
