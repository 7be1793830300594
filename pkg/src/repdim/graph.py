"""Simple undirected graphs, standard families and structural classifiers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InapplicableError

__all__ = [
    "Graph",
    "CliqueUnionInfo",
    "complement",
    "complete",
    "empty",
    "cycle",
    "path",
    "petersen",
    "complete_multipartite",
    "disjoint_union",
    "line_graph",
    "components",
    "classify_clique_union",
    "regularity",
    "bipartite_component_count",
]


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Adjacency is held as a dense read-only boolean matrix.
    """

    __slots__ = ("_adj",)

    def __init__(self, adj):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("self-loops are not allowed")
        a.setflags(write=False)
        self._adj = a

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adj

    def adjacency_matrix(self) -> np.ndarray:
        """Adjacency as a fresh float array."""
        return self._adj.astype(float)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return [int(u) for u in np.flatnonzero(self._adj[v])]

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def is_empty(self) -> bool:
        return self.num_edges == 0

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class CliqueUnionInfo:
    is_clique_union: bool
    component_sizes: tuple[int, ...]
    r: int


def complement(g: Graph) -> Graph:
    a = ~g.adj
    np.fill_diagonal(a, False)
    return Graph(a)


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    a = np.ones((n, n), dtype=bool)
    np.fill_diagonal(a, False)
    return Graph(a)


def empty(n: int) -> Graph:
    if n < 1:
        raise ValueError("empty graph needs n >= 1")
    return Graph(np.zeros((n, n), dtype=bool))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    # outer 5-cycle, inner pentagram, spokes
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    labels = np.repeat(np.arange(len(sizes)), sizes)
    return Graph(labels[:, None] != labels[None, :])


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    n = sum(g.n for g in graphs)
    a = np.zeros((n, n), dtype=bool)
    start = 0
    for g in graphs:
        a[start:start + g.n, start:start + g.n] = g.adj
        start += g.n
    return Graph(a)


def line_graph(g: Graph) -> Graph:
    """Line graph with vertices labelled by the lexicographically sorted edges of ``g``."""
    edges = g.edges()
    if not edges:
        raise InapplicableError("line graph of an edgeless graph is undefined")
    inc = np.zeros((g.n, len(edges)), dtype=int)
    for j, (u, v) in enumerate(edges):
        inc[u, j] = inc[v, j] = 1
    shared = inc.T @ inc
    np.fill_diagonal(shared, 0)
    return Graph(shared > 0)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def classify_clique_union(g: Graph) -> Optional[CliqueUnionInfo]:
    """Component structure if every component is complete, else ``None``.

    Isolated vertices count as cliques of size one.
    """
    sizes = []
    for comp in components(g):
        block = g.adj[np.ix_(comp, comp)]
        k = len(comp)
        if block.sum() != k * (k - 1):
            return None
        sizes.append(k)
    sizes.sort(reverse=True)
    r = sizes.count(sizes[0]) if sizes else 0
    return CliqueUnionInfo(True, tuple(sizes), r)


def regularity(g: Graph) -> Optional[int]:
    """Common degree if ``g`` is regular, else ``None``."""
    deg = g.degrees()
    if g.n == 0:
        return 0
    if np.all(deg == deg[0]):
        return int(deg[0])
    return None


def bipartite_component_count(g: Graph) -> int:
    """Number of bipartite connected components (isolated vertices included)."""
    color = np.full(g.n, -1)
    count = 0
    for comp in components(g):
        root = comp[0]
        color[root] = 0
        ok = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    ok = False
        count += ok
    return count

