"""graph6 encoding (printable ASCII, 6 bits per character, upper triangle by column)."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from oddgirth.errors import Graph6Error
from oddgirth.graph import Graph

HEADER = ">>graph6<<"
_BIAS = 63


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 62:
        return chr(n + _BIAS)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + _BIAS) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + _BIAS) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"n={n} too large for graph6")


def _upper_triangle_bits(adj: np.ndarray) -> np.ndarray:
    # column-major order over i < j: (0,1), (0,2), (1,2), (0,3), ...
    n = adj.shape[0]
    cols, rows = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((rows, cols))
    return adj[rows[order], cols[order]]


def write_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    bits = _upper_triangle_bits(g.adjacency).astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ (1 << np.arange(5, -1, -1))
    body = "".join(chr(int(v) + _BIAS) for v in values)
    return (HEADER if header else "") + _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; surrounding whitespace and a leading header are ignored.

    Raises :class:`Graph6Error` with the byte offset of the first problem.
    """
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126", base + i)
    codes = [ord(ch) - _BIAS for ch in s]

    if codes[0] < 63:
        n, pos = codes[0], 1
    elif len(codes) >= 2 and codes[1] == 63:
        if len(codes) < 8:
            raise Graph6Error("truncated 8-byte vertex count", base + len(codes))
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        pos = 8
    else:
        if len(codes) < 4:
            raise Graph6Error("truncated 4-byte vertex count", base + len(codes))
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        pos = 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(codes) - pos
    if have < need:
        raise Graph6Error(
            f"truncated bit stream: n={n} needs {need} data bytes, found {have}",
            base + len(codes),
        )
    if have > need:
        raise Graph6Error(f"{have - need} trailing bytes after graph data", base + pos + need)

    data = np.array(codes[pos:], dtype=np.uint8)
    bits = ((data[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)[:nbits].astype(bool)
    cols, rows = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((rows, cols))
    adj = np.zeros((n, n), dtype=bool)
    adj[rows[order], cols[order]] = bits
    return Graph(adj | adj.T)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, graph6_text)`` for non-blank lines (1-based numbering)."""
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if s.startswith(HEADER):
            s = s[len(HEADER):].strip()
        if s:
            yield lineno, s
