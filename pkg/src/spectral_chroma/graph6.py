"""graph6 reading and writing (short form, up to 62 vertices).

Layout: one byte ``63 + n``, then the upper triangle of the adjacency matrix
read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits
per byte, most significant bit first, zero padded, each byte offset by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import Graph

MAX_N = 62
HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


def _n_bytes(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(text: str | bytes, name: str | None = None) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    base = 0
    if text.startswith(HEADER):
        text = text[len(HEADER):]
        base = len(HEADER)
    if not text:
        raise Graph6Error("empty graph6 string", base)
    data = [ord(c) for c in text]
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte value {b} outside 63..126", base + i)
    n = data[0] - 63
    if n == 63:
        raise Graph6Error("long-form size header (n > 62) is not supported", base)
    if n == 0:
        raise Graph6Error("graph6 header encodes zero vertices", base)
    need = _n_bytes(n)
    if len(data) - 1 < need:
        raise Graph6Error(
            f"truncated payload: {n} vertices need {need} data bytes, got {len(data) - 1}",
            base + len(data),
        )
    if len(data) - 1 > need:
        raise Graph6Error(f"trailing data after {need} payload bytes", base + 1 + need)

    edges = []
    bit = 0
    for v in range(1, n):
        for u in range(v):
            byte = data[1 + bit // 6] - 63
            if byte >> (5 - bit % 6) & 1:
                edges.append((u, v))
            bit += 1
    return Graph(n, frozenset(edges), name)


def write_graph6(g: Graph) -> str:
    if g.n > MAX_N:
        raise Graph6Error(f"graph6 short form supports n <= {MAX_N}, got n={g.n}")
    bits = [1 if (u, v) in g.edges else 0 for v in range(1, g.n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def iter_graph6_lines(lines) -> Iterator[tuple[int, Graph]]:
    """Parse graph6 lines, skipping blanks and ``#`` comments.

    Yields ``(line_number, graph)`` with 1-based line numbers.
    """
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            yield lineno, parse_graph6(s)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from exc


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return [g for _, g in iter_graph6_lines(fh)]


def write_graph6_file(path: str | Path, graphs) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
