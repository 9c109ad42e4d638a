"""Immutable simple graphs with bitmask neighbourhoods.

Vertex sets travel through the public API as ``frozenset`` of ints; inside,
every neighbourhood is an int bitmask so unions, intersections and
population counts are single big-int operations.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> frozenset:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitmask.
    """

    n: int
    adj: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"neighbour of {v} out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric edge {v}-{u}")
                rest ^= low

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def neighbors(self, v: int) -> frozenset:
        self._check(v)
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return bin(self.adj[v]).count("1")

    def degrees(self) -> list:
        return [bin(m).count("1") for m in self.adj]

    def edges(self) -> list:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable) -> Graph:
    """Build a graph, silently dropping duplicate edges."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint out of range for n={n}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


EMPTY = Graph(0, ())


def closed_neighborhood(G: Graph, v: int) -> frozenset:
    G._check(v)
    return members(G.closed_mask(v))


def _induced(G: Graph, keep: list) -> tuple:
    index = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        nb = 0
        rest = G.adj[old]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if u in index:
                nb |= 1 << index[u]
            rest ^= low
        adj.append(nb)
    return Graph(len(keep), tuple(adj)), index


def delete_vertices(G: Graph, U: Iterable[int]) -> tuple:
    """Induced subgraph on ``V - U`` plus the old-to-new relabelling map."""
    U = set(U)
    for u in U:
        G._check(u)
    keep = [v for v in range(G.n) if v not in U]
    return _induced(G, keep)


def contract_vertex(G: Graph, v: int) -> Graph:
    """``G/v``: remove ``v`` and turn its former neighbourhood into a clique.

    For an isolated ``v`` this is just ``G - v``.
    """
    G._check(v)
    nb = G.adj[v]
    adj = list(G.adj)
    rest = nb
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        adj[u] |= nb & ~low
        rest ^= low
    H = Graph(G.n, tuple(adj))
    return delete_vertices(H, [v])[0]


def delete_closed_neighborhood(G: Graph, v: int) -> Graph:
    G._check(v)
    return delete_vertices(G, members(G.closed_mask(v)))[0]


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(G.degrees())


def is_regular(G: Graph) -> Optional[int]:
    """Common degree if every vertex has it, else ``None``."""
    degs = set(G.degrees())
    return degs.pop() if len(degs) == 1 else None


def find_dominated_pair(G: Graph) -> Optional[tuple]:
    """Lexicographically first ``(u, v)``, ``u != v``, with ``N[u] <= N[v]``."""
    closed = [G.closed_mask(v) for v in range(G.n)]
    for u in range(G.n):
        cu = closed[u]
        # N[u] <= N[v] forces v in N[u]
        rest = G.adj[u]
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if cu & ~closed[v] == 0:
                return (u, v)
            rest ^= low
    return None


def components(G: Graph) -> list:
    """Vertex lists of the connected components, in order of least vertex."""
    seen = 0
    out = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                low = rest & -rest
                nxt |= G.adj[low.bit_length() - 1]
                rest ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(sorted(members(comp)))
    return out


def is_tree(G: Graph) -> bool:
    return G.n >= 1 and G.m == G.n - 1 and len(components(G)) == 1


def graph_digest(G: Graph) -> str:
    body = f"{G.n}:" + ";".join(f"{u},{v}" for u, v in G.edges())
    return f"graph:n={G.n},sha1={hashlib.sha1(body.encode()).hexdigest()[:16]}"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``.

    Blank lines and lines beginning with ``#`` are skipped.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphError("missing header line 'n m'")
    (n, m), edges = rows[0], rows[1:]
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges but {len(edges)} follow")
    return build_graph(n, edges)


def format_edge_list(G: Graph) -> str:
    edges = G.edges()
    return "\n".join([f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"
