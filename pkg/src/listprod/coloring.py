"""Proper L-colourings: decision, counting, P(G,k), P_l(G,k), choosability.

Everything funnels into one backtracking kernel over bitmask domains:
minimum remaining values, ties broken by larger degree then lower index,
with forward pruning of neighbour domains.
"""
from __future__ import annotations

import itertools
import sys
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping

from .graphs import (Graph, canonical_form, coloring_number, complete_graph,
                     connected_components, delete_vertex, induced_subgraph,
                     is_bipartite)
from .lists import (ListAssignment, ListError, canonical_k_signatures,
                    signatures_to_lists)

DEFAULT_GUARD = 24

Coloring = dict  # vertex -> colour


class GuardExceeded(RuntimeError):
    """Exhaustive enumeration would exceed its configured size guard."""


@dataclass
class CountReport:
    value: int
    witness: Coloring | None = None
    minimizer: ListAssignment | None = None

    def __post_init__(self):
        assert (self.value == 0) == (self.witness is None), "value = 0 iff no witness"


def _masks(G: Graph, L: ListAssignment) -> list[int]:
    L.check_domain(G)
    lists = L.as_dict()
    return [sum(1 << c for c in lists[v]) for v in range(G.n)]


def _search(G: Graph, domains: list[int], count_all: bool, limit: int | None = None):
    """Backtracking over bitmask domains.

    Returns (count, first_witness).  When ``count_all`` is false the search
    stops at the first proper colouring; with ``limit`` it stops once the
    count reaches ``limit`` (the returned count is then a lower bound).
    """
    n = G.n
    if n == 0:
        return 1, {}
    if any(d == 0 for d in domains):
        return 0, None
    adj = G.adj
    deg = [len(a) for a in adj]
    color = [-1] * n
    unassigned = set(range(n))
    found: list[dict] = []
    total = 0
    if n + 50 > sys.getrecursionlimit():
        sys.setrecursionlimit(n + 200)

    def pick() -> int:
        best, best_key = -1, None
        for v in unassigned:
            key = (domains[v].bit_count(), -deg[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def rec() -> bool:
        nonlocal total
        if not unassigned:
            total += 1
            if not found:
                found.append({v: color[v] for v in range(n)})
            return not count_all or (limit is not None and total >= limit)
        v = pick()
        unassigned.discard(v)
        dom = domains[v]
        while dom:
            bit = dom & -dom
            dom ^= bit
            trail = []
            ok = True
            for w in adj[v]:
                if color[w] < 0 and domains[w] & bit:
                    domains[w] ^= bit
                    trail.append(w)
                    if not domains[w]:
                        ok = False
                        break
            if ok:
                color[v] = bit.bit_length() - 1
                if rec():
                    color[v] = -1
                    for w in trail:
                        domains[w] |= bit
                    unassigned.add(v)
                    return True
                color[v] = -1
            for w in trail:
                domains[w] |= bit
        unassigned.add(v)
        return False

    rec()
    return total, (found[0] if found else None)


def find_proper_coloring(G: Graph, L: ListAssignment) -> Coloring | None:
    _, witness = _search(G, _masks(G, L), count_all=False)
    return witness


def is_colorable(G: Graph, L: ListAssignment) -> bool:
    return find_proper_coloring(G, L) is not None


def count_colorings(G: Graph, L: ListAssignment) -> CountReport:
    value, witness = _search(G, _masks(G, L), count_all=True)
    return CountReport(value, witness)


def is_proper_coloring(G: Graph, L: ListAssignment | None, f: Mapping[int, int]) -> bool:
    if set(f) != set(range(G.n)):
        return False
    if any(f[u] == f[v] for u, v in G.edges):
        return False
    if L is not None:
        lists = L.as_dict()
        return all(f[v] in lists[v] for v in range(G.n))
    return True


def _colorable_masks(G: Graph, masks: list[int]) -> bool:
    return _search(G, list(masks), count_all=False)[0] > 0


def _count_masks(G: Graph, masks: list[int], limit: int | None = None) -> tuple[int, dict | None]:
    return _search(G, list(masks), count_all=True, limit=limit)


def _seq_masks(seq, n: int) -> list[int]:
    masks = [0] * n
    for color, sig in enumerate(seq):
        bit = 1 << color
        for v in range(n):
            if sig >> v & 1:
                masks[v] |= bit
    return masks


# -- chromatic polynomial -----------------------------------------------------

def _falling(k: int, n: int) -> int:
    return prod(k - i for i in range(n))


@lru_cache(maxsize=200_000)
def _chrom_memo(n: int, edges: tuple[tuple[int, int], ...], k: int) -> int:
    if not edges:
        return k ** n
    if len(edges) == n * (n - 1) // 2:
        return _falling(k, n)
    G = Graph(n, frozenset(edges))
    comps = connected_components(G)
    if len(comps) > 1:
        out = 1
        for comp in comps:
            out *= _chrom_value(induced_subgraph(G, comp), k)
            if out == 0:
                return 0
        return out
    # delete / contract the edge at a maximum-degree vertex
    u = max(range(n), key=lambda v: (G.degree(v), -v))
    v = min(G.adj[u])
    deleted = Graph(n, frozenset(e for e in edges if e != (min(u, v), max(u, v))))
    return _chrom_value(deleted, k) - _chrom_value(_contract(G, u, v), k)


def _contract(G: Graph, u: int, v: int) -> Graph:
    keep = [w for w in range(G.n) if w != v]
    pos = {w: i for i, w in enumerate(keep)}
    edges = set()
    for x, y in G.edges:
        x2 = u if x == v else x
        y2 = u if y == v else y
        if x2 != y2:
            a, b = pos[x2], pos[y2]
            edges.add((min(a, b), max(a, b)))
    return Graph(len(keep), frozenset(edges))


def _chrom_value(G: Graph, k: int) -> int:
    key = canonical_form(G, budget=2_000) if G.n <= 10 else None
    if key is None:
        key = (G.n, tuple(sorted(G.edges)))
    return _chrom_memo(key[0], key[1], k)


def chromatic_polynomial_value(G: Graph, k: int) -> int:
    """P(G,k) by deletion-contraction, memoised on canonical small graphs."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _chrom_value(G, k)


def chromatic_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    k = 1
    while True:
        L = ListAssignment.constant(range(G.n), range(k))
        if is_colorable(G, L):
            return k
        k += 1


# -- list colour function -------------------------------------------------------

def _guard(G: Graph, k: int, guard: int | None) -> None:
    limit = DEFAULT_GUARD if guard is None else guard
    if k * G.n > limit:
        raise GuardExceeded(f"k*|V| = {k * G.n} exceeds exhaustive guard {limit}")


def list_color_function(G: Graph, k: int, guard: int | None = None, cache=None) -> CountReport:
    """P_l(G,k): minimum of P(G,L) over the canonical k-assignment stream.

    Colour relabelling preserves P(G,L), so one representative per orbit
    suffices.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _guard(G, k, guard)
    if cache is not None:
        hit = cache.get(G, "lcf", k)
        if hit is not None:
            return hit
    # Seed with the constant assignment; later counts abort once they reach
    # the running minimum, which leaves the minimum itself exact.
    const = ((1 << G.n) - 1,) * k
    value, witness = _count_masks(G, _seq_masks(const, G.n))
    best = (value, witness, const)
    if value > 0:
        for seq in canonical_k_signatures(G, k):
            value, witness = _count_masks(G, _seq_masks(seq, G.n), limit=best[0])
            if value < best[0]:
                best = (value, witness, seq)
                if value == 0:
                    break
    value, witness, seq = best
    lists = signatures_to_lists(seq, G.n)
    report = CountReport(value, witness, ListAssignment.from_sequence(lists))
    if cache is not None:
        cache.put(G, "lcf", k, report)
    return report


# -- list chromatic number ----------------------------------------------------------

@dataclass
class ChoosabilityResult:
    value: int
    hard_assignment: ListAssignment | None  # a (value-1)-assignment with no colouring
    lower_bound: int
    upper_bound_reason: str


def first_hard_assignment(G: Graph, k: int, guard: int | None = None) -> ListAssignment | None:
    """A canonical k-assignment admitting no proper colouring, if one exists."""
    _guard(G, k, guard)
    for seq in canonical_k_signatures(G, k):
        if not _colorable_masks(G, _seq_masks(seq, G.n)):
            return ListAssignment.from_sequence(signatures_to_lists(seq, G.n))
    return None


def list_chromatic_number(G: Graph, guard: int | None = None, cache=None) -> ChoosabilityResult:
    """Ascend k from chi(G); stop at the first k with no hard k-assignment.

    k = col(G) needs no enumeration (greedy along a degeneracy order).
    """
    if G.n == 0:
        raise ValueError("empty graph")
    if cache is not None:
        hit = cache.get(G, "chi-list", 0)
        if hit is not None:
            return hit
    chi = chromatic_number(G)
    col = coloring_number(G)
    hard = None
    if chi > 1:
        hard = ListAssignment.constant(range(G.n), range(chi - 1))
    k = chi
    reason = "exhaustive"
    while True:
        if k >= col:
            reason = "coloring-number" if k == col else "exhaustive"
            if k > col:
                raise AssertionError("exceeded col(G) without success")
            break
        w = first_hard_assignment(G, k, guard)
        if w is None:
            break
        hard = w
        k += 1
    result = ChoosabilityResult(k, hard, chi, reason)
    if cache is not None:
        cache.put(G, "chi-list", 0, result)
    return result


# -- strong chromatic-choosability ------------------------------------------------------

@dataclass
class SCCResult:
    value: bool
    chromatic_number: int
    explanation: str
    counterexample: ListAssignment | None = None
    examined: int = 0


def is_vertex_critical(G: Graph) -> tuple[bool, int | None]:
    chi = chromatic_number(G)
    for v in range(G.n):
        if G.n > 1 and chromatic_number(delete_vertex(G, v)) >= chi:
            return False, v
    return True, None


def is_strongly_chromatic_choosable(G: Graph, guard: int | None = None) -> SCCResult:
    """chi-vertex-critical, and every uncolourable (chi-1)-assignment is constant."""
    chi = chromatic_number(G)
    critical, witness_v = is_vertex_critical(G)
    if not critical:
        return SCCResult(False, chi, f"not {chi}-vertex-critical: deleting vertex {witness_v} keeps chi = {chi}")
    if chi == 1:
        return SCCResult(True, chi, "chi = 1; 0-assignments are empty and constant")
    _guard(G, chi - 1, guard)
    examined = 0
    for seq in canonical_k_signatures(G, chi - 1):
        examined += 1
        if len(seq) == chi - 1:  # constant: every colour on every vertex
            continue
        if not _colorable_masks(G, _seq_masks(seq, G.n)):
            L = ListAssignment.from_sequence(signatures_to_lists(seq, G.n))
            return SCCResult(False, chi, "non-constant uncolourable (chi-1)-assignment", L, examined)
    return SCCResult(True, chi, f"{chi}-vertex-critical; all {examined} canonical "
                                f"{chi - 1}-assignments colourable except the constant one",
                     examined=examined)


# -- certified upper bounds for choosability ----------------------------------------------

def alon_tarsi_coefficient(G: Graph, exponents: list[int], prime: int | None = None) -> int:
    """Coefficient of prod x_v^{e_v} in prod_{uv in E, u<v} (x_u - x_v).

    Frontier dynamic programme over vertices in index order; a vertex is
    retired (and its exponent checked against the target) once all its
    edges are processed.
    """
    if sum(exponents) != G.m:
        return 0
    n = G.n
    last_edge = [-1] * n
    edges = sorted(G.edges, key=lambda e: (e[1], e[0]))
    for idx, (u, v) in enumerate(edges):
        last_edge[u] = idx
        last_edge[v] = idx
    states: dict[tuple, int] = {(): 1}
    active: list[int] = []
    for v in range(n):
        if last_edge[v] < 0 and exponents[v] != 0:
            return 0
    for idx, (u, v) in enumerate(edges):
        for w in (u, v):
            if w not in active:
                active.append(w)
                states = {st + (0,): c for st, c in states.items()}
        iu, iv = active.index(u), active.index(v)
        new: dict[tuple, int] = {}
        for st, c in states.items():
            if st[iu] < exponents[u]:
                s2 = st[:iu] + (st[iu] + 1,) + st[iu + 1:]
                new[s2] = new.get(s2, 0) + c
            if st[iv] < exponents[v]:
                s2 = st[:iv] + (st[iv] + 1,) + st[iv + 1:]
                new[s2] = new.get(s2, 0) - c
        if prime:
            new = {st: c % prime for st, c in new.items() if c % prime}
        else:
            new = {st: c for st, c in new.items() if c}
        states = new
        for w in (u, v):
            if last_edge[w] == idx:
                i = active.index(w)
                target = exponents[w]
                merged: dict[tuple, int] = {}
                for st, c in states.items():
                    if st[i] == target:
                        s2 = st[:i] + st[i + 1:]
                        merged[s2] = merged.get(s2, 0) + c
                states = {st: c for st, c in merged.items() if c}
                active.pop(i)
        if not states:
            return 0
    return states.get((), 0)


def _reverse_path(arcs: dict[int, set[int]], src: int, accept) -> list[int] | None:
    """BFS along arcs from src to a vertex satisfying ``accept``; returns the path."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u != src and accept(u):
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in arcs[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    return None


def _flip(arcs: dict[int, set[int]], path: list[int]) -> None:
    for u, w in zip(path, path[1:]):
        arcs[u].discard(w)
        arcs[w].add(u)


def _orientation_outdegrees(G: Graph, cap: int, limit: int = 200) -> Iterable[list[int]]:
    """Realisable out-degree vectors with every entry <= cap.

    An orientation with bounded out-degree is found by reversing directed
    paths from overloaded vertices; further vectors come from reversing a
    directed path u -> ... -> w, which moves one unit of out-degree from u
    to w and keeps the vector realisable.  Explored breadth-first.
    """
    n = G.n
    arcs: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in sorted(G.edges):
        arcs[u].add(v)
    while True:
        heavy = next((v for v in range(n) if len(arcs[v]) > cap), None)
        if heavy is None:
            break
        path = _reverse_path(arcs, heavy, lambda w: len(arcs[w]) < cap)
        if path is None:
            return  # some subgraph has more than cap * |V'| edges
        _flip(arcs, path)
    start = {v: set(ws) for v, ws in arcs.items()}
    seen = {tuple(len(start[v]) for v in range(n))}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        yield [len(cur[v]) for v in range(n)]
        for u in range(n):
            reach = set()
            probe = {v: set(ws) for v, ws in cur.items()}
            while True:
                path = _reverse_path(probe, u, lambda w: len(cur[w]) < cap and w not in reach)
                if path is None:
                    break
                reach.add(path[-1])
                nxt = {v: set(ws) for v, ws in cur.items()}
                _flip(nxt, path)
                vec = tuple(len(nxt[v]) for v in range(n))
                if vec not in seen and len(seen) < limit:
                    seen.add(vec)
                    queue.append(nxt)


def choosability_upper_bound(G: Graph, target: int) -> tuple[bool, str]:
    """Try to certify chi_l(G) <= target without enumerating list assignments.

    Certificates: col(G) <= target (greedy), or an Alon-Tarsi monomial
    prod x_v^{e_v} with e_v <= target-1 and nonzero coefficient in the
    graph polynomial.
    """
    col = coloring_number(G)
    if col <= target:
        return True, f"col(G) = {col} <= {target}"
    for vec in _orientation_outdegrees(G, target - 1):
        coeff = alon_tarsi_coefficient(G, vec)
        if coeff != 0:
            return True, f"Alon-Tarsi: coefficient {coeff} at out-degrees {vec}"
    return False, "no certificate found"


def hard_constant_assignment(G: Graph) -> ListAssignment:
    chi = chromatic_number(G)
    return ListAssignment.constant(range(G.n), range(max(chi - 1, 0)))


def enumerate_colorings(G: Graph, masks: list[int]):
    """Yield every proper colouring as a tuple indexed by vertex (index order DFS)."""
    n = G.n
    back = [[w for w in G.adj[v] if w < v] for v in range(n)]
    color = [0] * n

    def rec(v: int):
        if v == n:
            yield tuple(color)
            return
        dom = masks[v]
        for w in back[v]:
            dom &= ~(1 << color[w])
        while dom:
            bit = dom & -dom
            dom ^= bit
            color[v] = bit.bit_length() - 1
            yield from rec(v + 1)

    yield from rec(0)
