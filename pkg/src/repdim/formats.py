"""Text encodings of graphs: graph6 and a plain edge list."""

from __future__ import annotations

import numpy as np

from .errors import GraphParseError
from .graph import Graph

__all__ = ["parse_graph6", "encode_graph6", "parse_edge_list", "parse_graph"]

_HEADER = ">>graph6<<"


def _upper_pairs(n):
    # column-major order of the strict upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    cols = np.concatenate([np.full(j, j) for j in range(1, n)]) if n > 1 else np.empty(0, int)
    rows = np.concatenate([np.arange(j) for j in range(1, n)]) if n > 1 else np.empty(0, int)
    return rows.astype(int), cols.astype(int)


def _sixes(text, start, count):
    """Decode ``count`` graph6 characters starting at ``start`` into 6-bit values."""
    vals = []
    for i in range(start, start + count):
        c = ord(text[i])
        if not 63 <= c <= 126:
            raise GraphParseError(f"character {text[i]!r} outside graph6 range", offset=i)
        vals.append(c - 63)
    return vals


def _read_size(s, base=0):
    """Vertex count and the index where adjacency data starts."""
    if s[0] != "~":
        return ord(s[0]) - 63, 1
    if len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise GraphParseError("truncated 8-byte length prefix", offset=base + len(s))
        width, start = 6, 2
    else:
        if len(s) < 4:
            raise GraphParseError("truncated 4-byte length prefix", offset=base + len(s))
        width, start = 3, 1
    n = 0
    for v in _sixes(s, start, width):
        n = (n << 6) | v
    return n, start + width


def _size_prefix(n):
    if n <= 62:
        head = [n]
    elif n <= 258047:
        head = [63] + [(n >> (6 * k)) & 63 for k in (2, 1, 0)]
    else:
        head = [63, 63] + [(n >> (6 * k)) & 63 for k in range(5, -1, -1)]
    return "".join(chr(v + 63) for v in head)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (surrounding whitespace and an optional header ignored)."""
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
        base += len(_HEADER)
    if not s:
        raise GraphParseError("empty graph6 string", offset=base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"character {ch!r} outside graph6 range", offset=base + i)

    n, pos = _read_size(s, base)

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < nchars:
        raise GraphParseError(
            f"expected {nchars} adjacency characters for n={n}, found {len(body)}",
            offset=base + len(s),
        )
    if len(body) > nchars:
        raise GraphParseError("trailing characters after graph6 data", offset=base + pos + nchars)

    bits = np.zeros(nchars * 6, dtype=bool)
    for i, ch in enumerate(body):
        v = ord(ch) - 63
        for k in range(6):
            bits[6 * i + k] = (v >> (5 - k)) & 1
    if bits[nbits:].any():
        raise GraphParseError("non-zero padding bits", offset=base + len(s) - 1)

    rows, cols = _upper_pairs(n)
    a = np.zeros((n, n), dtype=bool)
    a[rows, cols] = bits[:nbits]
    return Graph(a | a.T)


def encode_graph6(g: Graph) -> str:
    n = g.n
    rows, cols = _upper_pairs(n)
    bits = g.adj[rows, cols]
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=bool)]).reshape(-1, 6)
    body = (bits * (1 << np.arange(5, -1, -1))).sum(axis=1)
    return _size_prefix(n) + "".join(chr(int(v) + 63) for v in body)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line followed by one ``u v`` pair per line.

    Blank lines are ignored and duplicate edges collapse.
    """
    lines = text.splitlines()
    numbered = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not numbered:
        raise GraphParseError("empty edge list", line=1)
    lineno, head = numbered[0]
    if len(head) != 1:
        raise GraphParseError("first line must hold the vertex count only", line=lineno)
    try:
        n = int(head[0])
    except ValueError:
        raise GraphParseError(f"vertex count {head[0]!r} is not an integer", line=lineno) from None
    if n < 0:
        raise GraphParseError("vertex count must be non-negative", line=lineno)

    a = np.zeros((n, n), dtype=bool)
    for lineno, toks in numbered[1:]:
        if len(toks) != 2:
            raise GraphParseError(f"expected 'u v', got {len(toks)} tokens", line=lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphParseError("non-integer vertex", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1}", line=lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line=lineno)
        a[u, v] = a[v, u] = True
    return Graph(a)


def looks_like_edge_list(text: str) -> bool:
    for ln in text.splitlines():
        if ln.strip():
            return ln.strip()[0].isdigit()
    return False


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    if fmt == "auto":
        fmt = "edgelist" if looks_like_edge_list(text) else "graph6"
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")
