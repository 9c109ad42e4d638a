"""Named graph families and the graph operations that build them."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from .graph import EMPTY, Graph, GraphError, build_graph


class FamilyError(ValueError):
    """Parameter outside a family's domain."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def path(n: int) -> Graph:
    if n < 0:
        raise FamilyError("path needs n >= 0")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise FamilyError("complete graph needs n >= 0")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def star(n: int) -> Graph:
    """``K_{1,n-1}`` with centre 0."""
    if n < 1:
        raise FamilyError("star needs n >= 1")
    return build_graph(n, [(0, i) for i in range(1, n)])


def spider(lambdas: Sequence[int]) -> Graph:
    """Centre 0 with legs laid out consecutively; leg ``i`` has ``lambdas[i]`` vertices."""
    edges = []
    nxt = 1
    for lam in lambdas:
        if lam < 1:
            raise FamilyError(f"leg length must be positive, got {lam}")
        prev = 0
        for _ in range(lam):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def append_path(G: Graph, v: int, length: int) -> Graph:
    """Hang a path on ``length`` new vertices off ``v``.

    New vertices get indices ``n..n+length-1`` in order of distance from ``v``.
    """
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for n={G.n}")
    if length < 0:
        raise FamilyError("path length must be non-negative")
    if length == 0:
        return G
    edges = list(G.edges())
    prev = v
    for i in range(G.n, G.n + length):
        edges.append((prev, i))
        prev = i
    return build_graph(G.n + length, edges)


def lollipop(m: int, n: int) -> Graph:
    """``K_m`` on ``0..m-1`` with a path on ``n`` vertices hanging off vertex 0."""
    if m < 1:
        raise FamilyError("lollipop needs m >= 1")
    if n < 0:
        raise FamilyError("lollipop needs n >= 0")
    return append_path(complete(m), 0, n)


def _check_factors(Gs: Sequence[Graph]) -> None:
    if not Gs:
        raise FamilyError("product needs at least one factor")
    for G in Gs:
        if G.n < 1:
            raise FamilyError("product factors must be non-empty")


def _product2(G: Graph, H: Graph, direct: bool) -> Graph:
    nh = H.n
    edges = []
    for g in range(G.n):
        for h in range(nh):
            a = g * nh + h
            if direct:
                for g2 in range(G.n):
                    if G.adj[g] >> g2 & 1:
                        for h2 in range(nh):
                            if H.adj[h] >> h2 & 1:
                                edges.append((a, g2 * nh + h2))
            else:
                for h2 in range(nh):
                    if H.adj[h] >> h2 & 1:
                        edges.append((a, g * nh + h2))
                for g2 in range(G.n):
                    if G.adj[g] >> g2 & 1:
                        edges.append((a, g2 * nh + h))
    return build_graph(G.n * nh, edges)


def direct_product(Gs: Sequence[Graph]) -> Graph:
    """Tensor product; vertex ``(g_1..g_t)`` encoded mixed-radix, last factor fastest."""
    _check_factors(Gs)
    out = Gs[0]
    for H in Gs[1:]:
        out = _product2(out, H, direct=True)
    return out


def cartesian_product(Gs: Sequence[Graph]) -> Graph:
    _check_factors(Gs)
    out = Gs[0]
    for H in Gs[1:]:
        out = _product2(out, H, direct=False)
    return out


def crown(n: int) -> Graph:
    return direct_product([complete(2), complete(n)])


def universal_join(H: Graph, m: int) -> Graph:
    """Add ``m`` vertices adjacent to everything, indexed after ``H``'s."""
    if m < 0:
        raise FamilyError("universal count must be non-negative")
    n = H.n + m
    full = (1 << n) - 1
    adj = [a | (full ^ ((1 << H.n) - 1)) for a in H.adj]
    adj += [full & ~(1 << v) for v in range(H.n, n)]
    return Graph(n, tuple(adj))


def disjoint_union(Gs: Sequence[Graph]) -> Graph:
    adj = []
    offset = 0
    for G in Gs:
        adj.extend(a << offset for a in G.adj)
        offset += G.n
    return Graph(offset, tuple(adj)) if adj else EMPTY


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                           if rng.random() < p])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n < 1:
        raise FamilyError("tree needs n >= 1")
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    edges = []
    for s in seq:
        leaf = min(v for v in range(n) if deg[v] == 1)
        edges.append((leaf, s))
        deg[leaf] -= 1
        deg[s] -= 1
    u, w = [v for v in range(n) if deg[v] == 1]
    edges.append((u, w))
    return build_graph(n, edges)


# ---------------------------------------------------------------- DSL

KINDS = ("path", "cycle", "complete", "star", "spider", "lollipop", "crown",
         "direct-product", "cartesian-product", "universal-join", "disjoint-union")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = field(default_factory=tuple)
    text: str = ""

    def build(self) -> Graph:
        k, p = self.kind, self.params
        if k == "path":
            return path(p[0])
        if k == "cycle":
            return cycle(p[0])
        if k == "complete":
            return complete(p[0])
        if k == "star":
            return star(p[0])
        if k == "spider":
            return spider(p)
        if k == "lollipop":
            return lollipop(*p)
        if k == "crown":
            return crown(p[0])
        if k == "direct-product":
            return direct_product([f.build() for f in p])
        if k == "cartesian-product":
            return cartesian_product([f.build() for f in p])
        if k == "universal-join":
            return universal_join(p[0].build(), p[1])
        if k == "disjoint-union":
            return disjoint_union([f.build() for f in p])
        raise FamilyError(f"unknown family kind {k!r}")

    def __str__(self) -> str:
        return self.text or f"{self.kind}:{self.params}"


_FACTOR = re.compile(r"([KPC])(\d+)")
_KEYWORDS = {
    "path": "path", "cycle": "cycle", "complete": "complete", "star": "star",
    "spider": "spider", "lollipop": "lollipop", "crown": "crown",
    "cart": "cartesian-product", "direct": "direct-product",
    "ujoin": "universal-join", "union": "disjoint-union",
}


def _parse_factor(text: str, token: str, pos: int) -> FamilySpec:
    m = _FACTOR.fullmatch(token)
    if not m:
        raise ParseError(f"expected K<n>, P<n> or C<n>, got {token!r}", text, pos)
    kind = {"K": "complete", "P": "path", "C": "cycle"}[m.group(1)]
    return FamilySpec(kind, (int(m.group(2)),), token)


def _parse_ints(text: str, body: str, start: int) -> tuple:
    if body == "":
        return ()
    out = []
    pos = start
    for tok in body.split(","):
        if not re.fullmatch(r"\d+", tok):
            raise ParseError(f"expected a non-negative integer, got {tok!r}", text, pos)
        out.append(int(tok))
        pos += len(tok) + 1
    return tuple(out)


def _split_tokens(body: str, sep: str, start: int):
    pos = start
    for tok in body.split(sep):
        yield tok, pos
        pos += len(tok) + 1


def parse_family(text: str) -> FamilySpec:
    """Parse the flat family DSL, e.g. ``spider:1,2,2,3`` or ``cart:K3,K4``."""
    s = text.strip()
    if _FACTOR.fullmatch(s) and s[0] == "K":
        return FamilySpec("complete", (int(s[1:]),), s)
    if ":" not in s:
        raise ParseError("expected '<kind>:<params>' or K<n>", text, 0)
    head, body = s.split(":", 1)
    start = len(head) + 1
    kind = _KEYWORDS.get(head)
    if kind is None:
        raise ParseError(f"unknown family {head!r}", text, 0)

    if kind in ("path", "cycle", "complete", "star", "crown"):
        params = _parse_ints(text, body, start)
        if len(params) != 1:
            raise ParseError(f"{head} takes exactly one integer", text, start)
    elif kind == "spider":
        params = _parse_ints(text, body, start)
        if any(p < 1 for p in params):
            raise FamilyError("spider legs must have positive length")
    elif kind == "lollipop":
        params = _parse_ints(text, body, start)
        if len(params) != 2:
            raise ParseError("lollipop takes two integers m,n", text, start)
    elif kind in ("cartesian-product", "direct-product"):
        if not body:
            raise ParseError("product needs at least one factor", text, start)
        params = tuple(_parse_factor(text, t, p) for t, p in _split_tokens(body, ",", start))
    elif kind == "disjoint-union":
        params = tuple(_parse_factor(text, t, p) for t, p in _split_tokens(body, ";", start)
                       ) if body else ()
    else:  # universal-join
        toks = list(_split_tokens(body, ",", start))
        if len(toks) != 2:
            raise ParseError("ujoin takes <F>,<m>", text, start)
        factor = _parse_factor(text, *toks[0])
        (m,) = _parse_ints(text, toks[1][0], toks[1][1])
        params = (factor, m)
    spec = FamilySpec(kind, params, s)
    _validate(spec)
    return spec


def _validate(spec: FamilySpec) -> None:
    k, p = spec.kind, spec.params
    if k == "cycle" and p[0] < 3:
        raise FamilyError(f"cycle needs n >= 3, got {p[0]}")
    if k in ("star", "crown") and p[0] < 1:
        raise FamilyError(f"{k} needs n >= 1")
    if k == "lollipop" and p[0] < 1:
        raise FamilyError("lollipop needs m >= 1")
    if k in ("direct-product", "cartesian-product", "disjoint-union", "universal-join"):
        for f in p:
            if isinstance(f, FamilySpec):
                _validate(f)
                if k.endswith("product") and f.params[0] < 1:
                    raise FamilyError("product factors must have n >= 1")


def family_graph(text: str) -> Graph:
    return parse_family(text).build()
