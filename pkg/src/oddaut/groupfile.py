"""Line-oriented group files and the tab-separated scan records.

Group file layout::

    cay 1
    name <text>
    order <n>
    <n rows of n whitespace-separated indices>

The identity must be element 0; files round-trip byte-exactly through
``write_group_text`` / ``parse_group_text``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import ParseError
from .groups import Group, from_cayley_table

FORMAT_VERSION = 1


def write_group_text(group):
    lines = [f"cay {FORMAT_VERSION}", f"name {group.name}", f"order {group.order}"]
    for row in group.table:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_group_text(text):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("cay "):
        raise ParseError(1, "missing 'cay <version>' header")
    try:
        version = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ParseError(1, "malformed version header")
    if version != FORMAT_VERSION:
        raise ParseError(1, f"unsupported format version {version}")
    if len(lines) < 3:
        raise ParseError(len(lines), "truncated header")
    if not lines[1].startswith("name "):
        raise ParseError(2, "missing 'name' line")
    name = lines[1][5:]
    if not lines[2].startswith("order "):
        raise ParseError(3, "missing 'order' line")
    try:
        order = int(lines[2].split()[1])
    except (IndexError, ValueError):
        raise ParseError(3, "malformed order line")
    if order < 1:
        raise ParseError(3, "order must be positive")
    rows = []
    for i in range(order):
        lineno = 4 + i
        if 3 + i >= len(lines):
            raise ParseError(lineno, "missing table row")
        try:
            row = [int(x) for x in lines[3 + i].split()]
        except ValueError:
            raise ParseError(lineno, "non-integer table entry")
        if len(row) != order:
            raise ParseError(lineno, f"row has {len(row)} entries, expected {order}")
        rows.append(row)
    return from_cayley_table(rows, name)


def write_group_file(group, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_group_text(group))


def parse_group_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read())


# -- scan records ---------------------------------------------------------


SCAN_COLUMNS = (
    "name",
    "order",
    "z_order",
    "derived_order",
    "aut_order",
    "aut_parity",
    "ni_status",
    "construction",
    "wall_time_ms",
)


@dataclass(frozen=True)
class ScanRecord:
    name: str
    order: int
    z_order: int
    derived_order: int
    aut_order: int
    aut_parity: str
    ni_status: str
    construction: str
    wall_time_ms: int

    def __post_init__(self):
        if (self.aut_order % 2 == 1) != (self.aut_parity == "odd"):
            raise ValueError("parity flag inconsistent with the order")
        if self.ni_status not in ("ni", "not-ni", "trivial"):
            raise ValueError(f"bad ni status {self.ni_status!r}")

    def to_line(self):
        return "\t".join(
            str(getattr(self, col)) for col in SCAN_COLUMNS
        )

    @classmethod
    def from_line(cls, line):
        parts = line.rstrip("\n").split("\t")
        if len(parts) != len(SCAN_COLUMNS):
            raise ValueError(f"bad record: {line!r}")
        return cls(
            name=parts[0],
            order=int(parts[1]),
            z_order=int(parts[2]),
            derived_order=int(parts[3]),
            aut_order=int(parts[4]),
            aut_parity=parts[5],
            ni_status=parts[6],
            construction=parts[7],
            wall_time_ms=int(parts[8]),
        )


def scan_header():
    return "#" + "\t".join(SCAN_COLUMNS)


def content_digest(text, budget):
    h = hashlib.sha256()
    h.update(text.encode("utf-8"))
    h.update(f"|budget={budget}".encode("ascii"))
    return h.hexdigest()
