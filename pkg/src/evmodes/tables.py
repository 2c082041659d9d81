"""Deterministic tabular output.

Every run of the same request must produce byte-identical files, so no
timestamps or environment details enter the payloads.  CSV cells are
formatted with 17 significant digits, which round-trips doubles
exactly, matching the repr-based values in the JSON form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def fmt17(v) -> str:
    """Format a float with 17 significant digits (lossless round-trip)."""
    return f"{float(v):.17g}"


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


def table_to_csv(table: Table) -> str:
    """Render with a header row, comma separators, '.' decimals, LF endings."""
    lines = [",".join(str(c) for c in table.columns)]
    for row in table.rows:
        lines.append(",".join(v if isinstance(v, str) else fmt17(v) for v in row))
    return "\n".join(lines) + "\n"


def to_canonical_json(payload) -> str:
    """Stable JSON rendering: sorted keys, fixed separators, LF terminated."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
