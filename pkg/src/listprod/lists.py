"""List assignments and canonical enumeration of k-assignments.

A k-assignment is determined up to colour relabelling by the multiset of
colour *signatures* (the vertex set carrying each colour).  The canonical
representative orders signatures by (lowest vertex, bitmask); numbering the
colours in that order gives first-use colour order when lists are read in
vertex order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graphs import Graph, ProductStructure

COLOR_LIMIT = 512

ColorSet = frozenset


class ListError(ValueError):
    pass


def color_set(colors: Iterable[int]) -> frozenset[int]:
    out = frozenset(colors)
    for c in out:
        if not (isinstance(c, int) and 0 <= c < COLOR_LIMIT):
            raise ListError(f"colour {c!r} outside [0, {COLOR_LIMIT})")
    return out


@dataclass(frozen=True)
class ListAssignment:
    """Vertex -> ColorSet; immutable once built."""

    items: tuple[tuple[int, frozenset[int]], ...]

    @classmethod
    def from_mapping(cls, lists: Mapping[int, Iterable[int]]) -> "ListAssignment":
        return cls(tuple(sorted((int(v), color_set(c)) for v, c in lists.items())))

    @classmethod
    def constant(cls, vertices: Iterable[int], colors: Iterable[int]) -> "ListAssignment":
        cs = color_set(colors)
        return cls(tuple((v, cs) for v in sorted(vertices)))

    @classmethod
    def from_sequence(cls, lists: Sequence[Iterable[int]]) -> "ListAssignment":
        return cls.from_mapping(dict(enumerate(lists)))

    def as_dict(self) -> dict[int, frozenset[int]]:
        return dict(self.items)

    def __getitem__(self, v: int) -> frozenset[int]:
        for u, cs in self.items:
            if u == v:
                return cs
        raise KeyError(v)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.items)

    @property
    def uniform_size(self) -> int | None:
        sizes = {len(cs) for _, cs in self.items}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def colors(self) -> frozenset[int]:
        return frozenset().union(*(cs for _, cs in self.items)) if self.items else frozenset()

    def is_constant(self) -> bool:
        return len({cs for _, cs in self.items}) <= 1

    def relabel(self, perm: Mapping[int, int]) -> "ListAssignment":
        return ListAssignment(tuple((v, color_set(perm.get(c, c) for c in cs)) for v, cs in self.items))

    def merged(self, other: "ListAssignment") -> "ListAssignment":
        d = self.as_dict()
        d.update(other.as_dict())
        return ListAssignment.from_mapping(d)

    def check_domain(self, G: Graph) -> None:
        if self.domain != frozenset(range(G.n)):
            raise ListError("list assignment domain differs from the vertex set")

    def to_text(self) -> str:
        return "".join(f"{v}: {' '.join(map(str, sorted(cs)))}\n" for v, cs in self.items)

    @classmethod
    def from_text(cls, text: str) -> "ListAssignment":
        lists: dict[int, list[int]] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, tail = line.partition(":")
            if not sep:
                raise ListError(f"expected 'v: c1 c2 ...', got {raw!r}")
            v = int(head)
            if v in lists:
                raise ListError(f"vertex {v} listed twice")
            lists[v] = [int(t) for t in tail.split()]
        return cls.from_mapping(lists)


def restrict(L: ListAssignment, S: Iterable[int]) -> ListAssignment:
    S = set(S)
    missing = S - L.domain
    if missing:
        raise ListError(f"vertices {sorted(missing)} not in the domain")
    return ListAssignment(tuple((v, cs) for v, cs in L.items if v in S))


def rows_pairwise_disjoint(L: ListAssignment, P: ProductStructure) -> bool:
    lists = L.as_dict()
    for i in range(P.n):
        seen: set[int] = set()
        for j in range(P.a):
            v = P.xv(i, j)
            if v not in lists:
                raise ListError(f"X vertex {v} missing from the list assignment")
            if seen & lists[v]:
                return False
            seen |= lists[v]
    return True


def intersecting_row(L: ListAssignment, P: ProductStructure) -> tuple[int, int, int] | None:
    """(row, j, j') with L(v_row,x_j) ∩ L(v_row,x_j') ≠ ∅, if any."""
    lists = L.as_dict()
    for i in range(P.n):
        for j, jj in itertools.combinations(range(P.a), 2):
            if lists[P.xv(i, j)] & lists[P.xv(i, jj)]:
                return i, j, jj
    return None


# -- canonical signature streams ---------------------------------------------

def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _grouped_masks(n_vertices: int, allowed=None) -> list[list[int]]:
    groups: list[list[int]] = [[] for _ in range(n_vertices)]
    for mask in range(1, 1 << n_vertices):
        if allowed is None or allowed(mask):
            groups[_low(mask)].append(mask)
    return groups


def signature_stream(n_vertices: int, k: int, allowed=None,
                     resume: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Sorted colour-signature multisets in which every vertex lies in k masks.

    Output is lexicographic in (lowest vertex, mask) key order.  ``resume``
    is a previously emitted sequence (the cursor); enumeration restarts
    strictly after it.
    """
    if n_vertices == 0:
        if resume is None:
            yield ()
        return
    groups = _grouped_masks(n_vertices, allowed)
    demand = [k] * n_vertices
    seq: list[int] = []
    cursor = tuple(resume) if resume is not None else None

    def key(mask: int) -> tuple[int, int]:
        return _low(mask), mask

    def rec(on_cursor: bool) -> Iterator[tuple[int, ...]]:
        u = next((v for v in range(n_vertices) if demand[v]), None)
        if u is None:
            if not on_cursor:
                yield tuple(seq)
            return
        depth = len(seq)
        floor = None
        if on_cursor:
            if depth >= len(cursor):
                return
            floor = key(cursor[depth])
        last = seq[-1] if seq and _low(seq[-1]) == u else 0
        for mask in groups[u]:
            if mask < last:
                continue
            if floor is not None and key(mask) < floor:
                continue
            bits = [v for v in range(u, n_vertices) if mask >> v & 1]
            if any(demand[v] == 0 for v in bits):
                continue
            for v in bits:
                demand[v] -= 1
            seq.append(mask)
            yield from rec(on_cursor and floor is not None and mask == cursor[depth])
            seq.pop()
            for v in bits:
                demand[v] += 1

    yield from rec(cursor is not None)


def signatures_to_lists(seq: Sequence[int], n_vertices: int) -> list[frozenset[int]]:
    lists: list[set[int]] = [set() for _ in range(n_vertices)]
    for color, mask in enumerate(seq):
        for v in range(n_vertices):
            if mask >> v & 1:
                lists[v].add(color)
    return [frozenset(s) for s in lists]


def lists_to_signatures(lists: Sequence[Iterable[int]]) -> tuple[int, ...]:
    """Canonical signature sequence of an arbitrary assignment (orbit key)."""
    masks: dict[int, int] = {}
    for v, cs in enumerate(lists):
        for c in cs:
            masks[c] = masks.get(c, 0) | (1 << v)
    return tuple(sorted(masks.values(), key=lambda m: (_low(m), m)))


def canonical_k_assignments(G: Graph, k: int, universe_cap: int = COLOR_LIMIT,
                            resume: Sequence[int] | None = None) -> Iterator[ListAssignment]:
    """One representative per colour-permutation orbit of k-assignments of G."""
    if k < 1:
        raise ListError("k must be positive")
    if universe_cap > COLOR_LIMIT:
        raise ListError(f"universe cap above {COLOR_LIMIT}")
    if k * G.n > universe_cap:
        raise ListError(f"k*|V| = {k * G.n} exceeds universe cap {universe_cap}")
    for seq in signature_stream(G.n, k, resume=resume):
        yield ListAssignment.from_sequence(signatures_to_lists(seq, G.n))


def canonical_k_signatures(G: Graph, k: int, universe_cap: int = COLOR_LIMIT,
                           resume: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Same stream as canonical_k_assignments, as raw signature cursors."""
    if k * G.n > min(universe_cap, COLOR_LIMIT):
        raise ListError(f"k*|V| = {k * G.n} exceeds universe cap {universe_cap}")
    return signature_stream(G.n, k, resume=resume)


def _row_local(n: int, a: int):
    """Local X-side indexing t = i*a + j and the row-disjointness mask filter."""
    row_masks = [sum(1 << (i * a + j) for j in range(a)) for i in range(n)]

    def allowed(mask: int) -> bool:
        return all((mask & rm) & ((mask & rm) - 1) == 0 for rm in row_masks)

    return allowed


def _column_images(seq: Sequence[int], n: int, a: int) -> Iterator[tuple[int, ...]]:
    for perm in itertools.permutations(range(a)):
        out = []
        for mask in seq:
            new = 0
            for i in range(n):
                for j in range(a):
                    if mask >> (i * a + j) & 1:
                        new |= 1 << (i * a + perm[j])
            out.append(new)
        yield tuple(sorted(out, key=lambda m: (_low(m), m)))


def disjoint_row_signatures(n: int, a: int, k: int,
                            resume: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Signatures on the n×a X-grid with disjoint rows, modulo colours and columns."""
    if a * k * n > COLOR_LIMIT:
        raise ListError("a*k*n exceeds the colour universe")
    for seq in signature_stream(n * a, k, _row_local(n, a), resume=resume):
        if a == 1 or all(seq <= img for img in _column_images(seq, n, a)):
            yield seq


def canonical_disjoint_row_assignments(P: ProductStructure, k: int,
                                       resume: Sequence[int] | None = None) -> Iterator[ListAssignment]:
    """X-side k-assignments of M □ K_{a,b} with pairwise-disjoint rows."""
    n, a = P.n, P.a
    for seq in disjoint_row_signatures(n, a, k, resume):
        local = signatures_to_lists(seq, n * a)
        yield ListAssignment.from_mapping({P.xv(i, j): local[i * a + j] for i in range(n) for j in range(a)})


def count_orbits_bruteforce(n_vertices: int, k: int, universe: int) -> int:
    """Orbit count of k-assignments over colours 0..universe-1 by explicit quotient."""
    subsets = list(itertools.combinations(range(universe), k))
    seen: set[tuple] = set()
    perms = list(itertools.permutations(range(universe)))
    orbits = 0
    for combo in itertools.product(subsets, repeat=n_vertices):
        if combo in seen:
            continue
        orbits += 1
        for p in perms:
            seen.add(tuple(tuple(sorted(p[c] for c in lst)) for lst in combo))
    return orbits
