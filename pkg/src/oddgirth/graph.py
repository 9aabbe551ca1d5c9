"""Simple undirected graphs, generators and combinatorial queries.

Vertices are the integers ``0..n-1``.  A :class:`Graph` is immutable once
built; every function here is pure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from oddgirth.errors import CapacityExceeded, InvalidParameter

D2_MAX_N = 24


class Graph:
    """Undirected simple graph stored as a read-only boolean adjacency matrix."""

    __slots__ = ("_adj", "_nbrs")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InvalidParameter(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise InvalidParameter("adjacency must be symmetric")
        if adj.diagonal().any():
            raise InvalidParameter("self-loops are not allowed")
        adj.setflags(write=False)
        self._adj = adj
        self._nbrs = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InvalidParameter(f"vertex count must be non-negative, got {n}")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean view of the adjacency matrix."""
        return self._adj

    def adjacency_matrix(self) -> np.ndarray:
        return self._adj.astype(float)

    @property
    def edge_count(self) -> int:
        return int(self._adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def neighbors(self, u: int) -> tuple[int, ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(np.flatnonzero(row).tolist()) for row in self._adj)
        return self._nbrs[u]

    def is_regular(self) -> bool:
        deg = self.degrees()
        return self.n == 0 or bool((deg == deg[0]).all())

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled in the order given."""
        idx = np.asarray(list(vertices), dtype=int)
        return Graph(self._adj[np.ix_(idx, idx)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    adj = np.zeros((n, n), dtype=bool)
    off = 0
    for g in graphs:
        adj[off : off + g.n, off : off + g.n] = g.adjacency
        off += g.n
    return Graph(adj)


# --- odd girth --------------------------------------------------------------


@functools.total_ordering
@dataclass(frozen=True)
class OddGirth:
    """Length of the shortest odd cycle; ``value is None`` means infinite.

    Only comparison is supported; there is deliberately no arithmetic.
    """

    value: Optional[int]

    def __post_init__(self):
        v = self.value
        if v is not None and (not isinstance(v, int) or v < 3 or v % 2 == 0):
            raise InvalidParameter(f"odd girth must be an odd integer >= 3, got {v!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __lt__(self, other):
        if isinstance(other, int):
            other = OddGirth(other) if other >= 3 and other % 2 else None
            if other is None:
                return NotImplemented
        if not isinstance(other, OddGirth):
            return NotImplemented
        if self.value is None:
            return False
        return other.value is None or self.value < other.value

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def to_json(self):
        return "inf" if self.value is None else self.value

    @classmethod
    def from_json(cls, v) -> "OddGirth":
        return INFINITE if v in ("inf", None) else cls(int(v))


INFINITE = OddGirth(None)


def odd_girth(g: Graph) -> OddGirth:
    """Shortest odd cycle length via per-vertex BFS.

    For every source ``u`` and every edge ``{x, y}`` with
    ``dist(u, x) == dist(u, y)`` there is a closed odd walk of length
    ``2 dist(u, x) + 1`` through ``u``; the minimum over all sources and
    edges is the odd girth.
    """
    if g.n == 0 or g.edge_count == 0:
        return INFINITE
    dist = csgraph.shortest_path(csr_matrix(g.adjacency), method="D", unweighted=True)
    xs, ys = np.nonzero(np.triu(g.adjacency, 1))
    best = np.inf
    # chunk over edges to bound memory at n * chunk
    chunk = max(1, 2_000_000 // max(g.n, 1))
    for start in range(0, len(xs), chunk):
        dx = dist[:, xs[start : start + chunk]]
        dy = dist[:, ys[start : start + chunk]]
        same = (dx == dy) & np.isfinite(dx)
        if same.any():
            best = min(best, 2 * dx[same].min() + 1)
    return INFINITE if best == np.inf else OddGirth(int(best))


def is_bipartite(g: Graph) -> bool:
    return odd_girth(g).is_infinite


def two_coloring(g: Graph) -> Optional[list[int]]:
    """A proper 2-coloring as a 0/1 list, or None if the graph has an odd cycle."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return None
    return color


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distance from ``source``; unreachable vertices get -1."""
    dist = np.full(g.n, -1, dtype=int)
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the components, each sorted, ordered by smallest vertex."""
    if g.n == 0:
        return []
    _, labels = csgraph.connected_components(csr_matrix(g.adjacency), directed=False)
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    idx = sorted(set(s))
    for v in idx:
        if not 0 <= v < g.n:
            raise InvalidParameter(f"vertex {v} out of range for n={g.n}")
    if not idx:
        return True
    return not g.adjacency[np.ix_(idx, idx)].any()


def _max_cut_connected(g: Graph) -> int:
    n = g.n
    edges = np.array(g.edges(), dtype=np.int64)
    if len(edges) == 0:
        return 0
    if two_coloring(g) is not None:
        return len(edges)
    us, vs = edges[:, 0], edges[:, 1]
    best = 0
    # vertex n-1 fixed on side 0 (the cut is symmetric under swapping sides)
    total = 1 << (n - 1)
    step = 1 << 16
    for lo in range(0, total, step):
        masks = np.arange(lo, min(lo + step, total), dtype=np.int64)[:, None]
        cut = (((masks >> us) ^ (masks >> vs)) & 1).sum(axis=1)
        best = max(best, int(cut.max()))
        if best == len(edges):
            break
    return best


def d2_oracle(g: Graph, max_n: int = D2_MAX_N) -> int:
    """Minimum number of edge deletions that make ``g`` bipartite.

    Exhaustive over 2-colorings of each component separately (D2 is additive
    over components).
    """
    if g.n > max_n:
        raise CapacityExceeded(f"d2_oracle is exhaustive; n={g.n} exceeds {max_n}")
    total = 0
    for comp in connected_components(g):
        h = g.subgraph(comp)
        total += h.edge_count - _max_cut_connected(h)
    return total


# --- generators --------------------------------------------------------------


def generate_cycle(k: int) -> Graph:
    if k < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {k}")
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def generate_complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter(f"complete graph needs n >= 1, got {n}")
    return Graph(~np.eye(n, dtype=bool))


def generate_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def generate_star(leaves: int) -> Graph:
    if leaves < 1:
        raise InvalidParameter(f"star needs at least one leaf, got {leaves}")
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def generate_cayley_f2(m: int, generators: Iterable[int]) -> Graph:
    """Cayley graph of the additive group of F_2^m.

    Vectors are encoded as integers whose bit ``i`` is coordinate ``i``, so
    ``x ~ y`` iff ``x ^ y`` is a generator.
    """
    if m < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {m}")
    gens = sorted(set(int(s) for s in generators))
    if not gens:
        raise InvalidParameter("generating set is empty")
    if gens[0] == 0:
        raise InvalidParameter("zero vector in generating set would create loops")
    if gens[-1] >= 1 << m:
        raise InvalidParameter(f"generator {gens[-1]:#x} is not in F_2^{m}")
    size = 1 << m
    x = np.arange(size)
    adj = np.zeros((size, size), dtype=bool)
    for s in gens:
        adj[x, x ^ s] = True
    return Graph(adj)


def unit_vectors(m: int) -> list[int]:
    return [1 << i for i in range(m)]


def generate_hypercube(d: int) -> Graph:
    if d < 1:
        raise InvalidParameter(f"hypercube dimension must be >= 1, got {d}")
    return generate_cayley_f2(d, unit_vectors(d))


def folded_cube_generators(d: int) -> list[int]:
    m = d - 1
    return unit_vectors(m) + [(1 << m) - 1]


def generate_folded_cube(d: int) -> Graph:
    """The d-cube with antipodal vertices identified (d-regular, 2^(d-1) vertices)."""
    if d < 2:
        raise InvalidParameter(f"folded cube dimension must be >= 2, got {d}")
    return generate_cayley_f2(d - 1, folded_cube_generators(d))


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def random_connected_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) with a random spanning tree added so the result is connected."""
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = upper | upper.T
    order = rng.permutation(n)
    for i in range(1, n):
        u, v = order[i], order[rng.integers(i)]
        adj[u, v] = adj[v, u] = True
    return Graph(adj)

