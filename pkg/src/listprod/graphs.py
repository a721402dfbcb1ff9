"""Small simple graphs with explicit product / partite structure.

Vertices are dense integers ``0..n-1``.  Products are laid out row-major by
(base vertex, second-factor vertex) so that each fiber over a base vertex is
a contiguous range.
"""
from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

MAX_VERTICES = 4096


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class ProductStructure:
    """Coordinates of ``M □ K_{a,b}``.

    ``fiber_index[(i, u)]`` is the product vertex with base vertex ``i`` and
    partite vertex ``u`` (an id of the K_{a,b} factor; X ids come first).
    """

    m_vertices: tuple[int, ...]
    x_vertices: tuple[int, ...]
    y_vertices: tuple[int, ...]
    fiber_index: Mapping[tuple[int, int], int]

    @property
    def n(self) -> int:
        return len(self.m_vertices)

    @property
    def a(self) -> int:
        return len(self.x_vertices)

    @property
    def b(self) -> int:
        return len(self.y_vertices)

    def vertex(self, i: int, u: int) -> int:
        return self.fiber_index[(i, u)]

    def xv(self, i: int, j: int) -> int:
        """Product vertex (v_i, x_j), zero-based."""
        return self.fiber_index[(i, self.x_vertices[j])]

    def yv(self, i: int, l: int) -> int:
        """Product vertex (v_i, y_l), zero-based."""
        return self.fiber_index[(i, self.y_vertices[l])]

    def fiber(self, u: int) -> list[int]:
        """V_u for a partite vertex u: the copy of M over u."""
        return [self.fiber_index[(i, u)] for i in self.m_vertices]

    def y_fiber(self, l: int) -> list[int]:
        return self.fiber(self.y_vertices[l])

    def x_fiber(self, j: int) -> list[int]:
        return self.fiber(self.x_vertices[j])

    @property
    def V_X(self) -> list[int]:
        """Row-major (v_i, x_j) listing of the X side."""
        return [self.xv(i, j) for i in range(self.n) for j in range(self.a)]

    @property
    def V_Y(self) -> list[int]:
        return [self.yv(i, l) for l in range(self.b) for i in range(self.n)]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    labels: tuple | None = None
    product: ProductStructure | None = field(default=None, compare=False)
    parent: tuple[int, ...] | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < v < n):
                raise GraphError(f"edge {(u, v)} not normalized or out of range")
        if self.labels is not None:
            if len(self.labels) != n or len(set(self.labels)) != n:
                raise GraphError("labels must be distinct, one per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} out of range for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm), **kw)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("K(n) needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"K({n})")


def edgeless_graph(n: int) -> Graph:
    return Graph(n, frozenset(), name=f"E({n})")


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; vertices 0..a-1 are labelled ('X', j), the rest ('Y', l)."""
    if a < 1 or b < 0:
        raise GraphError("K(a,b) needs a >= 1, b >= 0")
    edges = [(j, a + l) for j in range(a) for l in range(b)]
    labels = tuple([("X", j) for j in range(a)] + [("Y", l) for l in range(b)])
    return Graph.from_edges(a + b, edges, labels=labels, name=f"K({a},{b})")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("C(n) needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C({n})")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("P(n) needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P({n})")


def join(G: Graph, H: Graph) -> Graph:
    if G.n == 0 or H.n == 0:
        raise GraphError("join of an empty graph")
    off = G.n
    edges = list(G.edges)
    edges += [(u + off, v + off) for u, v in H.edges]
    edges += [(u, v + off) for u in range(G.n) for v in range(H.n)]
    return Graph.from_edges(G.n + H.n, edges, name=f"J({G.name},{H.name})")


def _partite_roles(H: Graph) -> tuple[list[int], list[int]] | None:
    if H.labels is None:
        return None
    if not all(isinstance(lab, tuple) and len(lab) == 2 and lab[0] in ("X", "Y") for lab in H.labels):
        return None
    xs = [v for v in range(H.n) if H.labels[v][0] == "X"]
    ys = [v for v in range(H.n) if H.labels[v][0] == "Y"]
    return xs, ys


def cartesian_product(M: Graph, H: Graph) -> Graph:
    """M □ H with vertex (u, v) at index u*|H| + v.

    (u,v) ~ (u',v') iff u = u' and vv' ∈ E(H), or v = v' and uu' ∈ E(M).
    A ProductStructure is attached when H carries X/Y partite labels.
    """
    if M.n == 0 or H.n == 0:
        raise GraphError("product with an empty graph")
    h = H.n

    def idx(u: int, v: int) -> int:
        return u * h + v

    edges = [(idx(u, v), idx(u, w)) for u in range(M.n) for v, w in H.edges]
    edges += [(idx(u, v), idx(w, v)) for u, w in M.edges for v in range(h)]
    labels = tuple((u, v) for u in range(M.n) for v in range(h))
    product = None
    roles = _partite_roles(H)
    if roles is not None:
        xs, ys = roles
        product = ProductStructure(
            m_vertices=tuple(range(M.n)),
            x_vertices=tuple(xs),
            y_vertices=tuple(ys),
            fiber_index={(u, v): idx(u, v) for u in range(M.n) for v in range(h)},
        )
    return Graph.from_edges(M.n * h, edges, labels=labels, product=product,
                            name=f"CP({M.name},{H.name})")


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """G[S] reindexed in ascending order of S; ``parent`` maps back to G."""
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} not in graph of order {G.n}")
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos]
    labels = tuple(G.labels[v] for v in verts) if G.labels is not None else None
    return Graph.from_edges(len(verts), edges, labels=labels, parent=tuple(verts))


def delete_vertex(G: Graph, v: int) -> Graph:
    return induced_subgraph(G, [u for u in range(G.n) if u != v])


def coloring_number(G: Graph) -> int:
    """col(G): degeneracy + 1 via repeated minimum-degree removal."""
    if G.n == 0:
        raise GraphError("coloring number of an empty graph")
    deg = [G.degree(v) for v in range(G.n)]
    alive = set(range(G.n))
    best = 0
    while alive:
        v = min(alive, key=lambda w: (deg[w], w))
        best = max(best, deg[v])
        alive.remove(v)
        for w in G.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best + 1


def connected_components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_bipartite(G: Graph) -> bool:
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in G.adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


# -- canonical forms ------------------------------------------------------

def _refine(G: Graph) -> list[int]:
    """Stable colour refinement; returns a cell id per vertex."""
    cells = [G.degree(v) for v in range(G.n)]
    while True:
        sig = [(cells[v], tuple(sorted(cells[w] for w in G.adj[v]))) for v in range(G.n)]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if len(set(new)) == len(set(cells)):
            return new
        cells = new


def canonical_form(G: Graph, budget: int = 50_000) -> tuple[int, tuple[tuple[int, int], ...]] | None:
    """Lexicographically least relabelled edge list, or None over budget.

    Only permutations that respect colour refinement are tried, so the
    result is an isomorphism invariant.
    """
    cells = _refine(G)
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(cells[v], []).append(v)
    keys = sorted(groups)
    total = 1
    for key in keys:
        for i in range(2, len(groups[key]) + 1):
            total *= i
        if total > budget:
            return None
    best = None
    for perms in itertools.product(*(itertools.permutations(groups[key]) for key in keys)):
        new_id = {}
        nxt = 0
        for block in perms:
            for v in block:
                new_id[v] = nxt
                nxt += 1
        cand = tuple(sorted((min(new_id[u], new_id[v]), max(new_id[u], new_id[v])) for u, v in G.edges))
        if best is None or cand < best:
            best = cand
    return (G.n, best if best is not None else ())


def graph_hash(G: Graph) -> str:
    """Stable hash: canonical when affordable, labelled edge list otherwise."""
    cf = canonical_form(G)
    if cf is None:
        payload = f"L|{G.n}|{sorted(G.edges)}"
    else:
        payload = f"C|{cf[0]}|{list(cf[1])}"
    return hashlib.sha256(payload.encode()).hexdigest()[:32]


# -- text formats -----------------------------------------------------------

def to_text(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("graph file must start with 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header promises {m} edges, found {len(body)}")
    return Graph.from_edges(n, [(int(u), int(v)) for u, v in body])


_TOKEN = re.compile(r"\s*([A-Za-z]+|\d+|[(),])")


def parse_graph(expr: str) -> Graph:
    """Constructor DSL: K(n), K(a,b), C(n), P(n), J(e,e), CP(e,e)."""
    tokens = []
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        mt = _TOKEN.match(expr, pos)
        if not mt:
            raise GraphError(f"bad character at {pos} in {expr!r}")
        tokens.append(mt.group(1))
        pos = mt.end()
        while pos < len(expr) and expr[pos].isspace():
            pos += 1

    def expect(i: int, tok: str) -> int:
        if i >= len(tokens) or tokens[i] != tok:
            raise GraphError(f"expected {tok!r} in {expr!r}")
        return i + 1

    def args(i: int) -> tuple[list, int]:
        i = expect(i, "(")
        out = []
        while True:
            if i < len(tokens) and tokens[i].isdigit():
                out.append(int(tokens[i]))
                i += 1
            else:
                g, i = node(i)
                out.append(g)
            if i < len(tokens) and tokens[i] == ",":
                i += 1
                continue
            return out, expect(i, ")")

    def node(i: int) -> tuple[Graph, int]:
        if i >= len(tokens):
            raise GraphError(f"unexpected end of {expr!r}")
        head = tokens[i].upper()
        vals, i = args(i + 1)
        ints = all(isinstance(v, int) for v in vals)
        graphs = all(isinstance(v, Graph) for v in vals)
        if head == "K" and ints and len(vals) == 1:
            return complete_graph(vals[0]), i
        if head == "K" and ints and len(vals) == 2:
            return complete_bipartite(vals[0], vals[1]), i
        if head == "C" and ints and len(vals) == 1:
            return cycle(vals[0]), i
        if head == "P" and ints and len(vals) == 1:
            return path(vals[0]), i
        if head == "J" and graphs and len(vals) == 2:
            return join(vals[0], vals[1]), i
        if head == "CP" and graphs and len(vals) == 2:
            return cartesian_product(vals[0], vals[1]), i
        raise GraphError(f"cannot build {head}{tuple(vals)!r}")

    g, i = node(0)
    if i != len(tokens):
        raise GraphError(f"trailing input in {expr!r}")
    return g.__class__(g.vertex_count, g.edges, g.labels, g.product, g.parent, expr)


def product_of_complete(n: int, a: int, b: int) -> Graph:
    """K_n □ K_{a,b}."""
    return cartesian_product(complete_graph(n), complete_bipartite(a, b))


def relabel_is_isomorphism(G: Graph, H: Graph, mapping: Sequence[int]) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    return all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges)
