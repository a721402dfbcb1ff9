"""Extremal non-colourable instances and exact f_a for tiny M.

f_a(M) is the least b with chi_l(M □ K_{a,b}) = chi_l(M) + a.  For strongly
chromatic-choosable M a fiber y blocks an X-colouring g exactly when every
residual list L(v_i, y) minus g's row-i colours equals one common
(k-1)-set, so fiber lists worth considering have the form
{f's row-i colours} ∪ K.  The minimum number of fibers is then a set cover
of C_X by these patterns.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coloring import chromatic_number, find_proper_coloring, is_strongly_chromatic_choosable
from .graphs import MAX_VERTICES, Graph, complete_bipartite, cartesian_product, product_of_complete
from .inequalities import threshold_b
from .lists import ListAssignment, canonical_disjoint_row_assignments
from .product import BadnessOracle, FalsificationError, XSide, _bits, _mask

FA_SUPPORTED = {("K1", a) for a in (1, 2, 3)} | {("K2", 1), ("K3", 1)}


class FaGuardExceeded(RuntimeError):
    pass


# -- the witness ------------------------------------------------------------------------

def construct_extremal_assignment(n: int, a: int, max_vertices: int = MAX_VERTICES) -> tuple[Graph, ListAssignment, int]:
    """Non-colourable (n+a-1)-assignment of K_n □ K_{a,b*} with b* = threshold_b(n, a).

    Column j of the X side gets the constant list A_j = {j(n+a-1), ...}; each
    proper X-colouring f gets its own fiber with lists f(row i) ∪ K, where K
    is one shared set of n-1 colours outside every A_j.
    """
    if n < 1 or a < 1:
        raise ValueError("n, a >= 1")
    b = threshold_b(n, a)
    if n * (a + b) > max_vertices:
        raise FaGuardExceeded(f"witness needs {n * (a + b)} vertices, guard is {max_vertices}")
    width = n + a - 1
    H = product_of_complete(n, a, b)
    P = H.product
    lists: dict[int, frozenset[int]] = {}
    palettes = [range(j * width, (j + 1) * width) for j in range(a)]
    for i in range(n):
        for j in range(a):
            lists[P.xv(i, j)] = frozenset(palettes[j])
    K = frozenset(range(a * width, a * width + n - 1))
    # a proper colouring of column j is an injective map rows -> A_j
    column_choices = [list(itertools.permutations(p, n)) for p in palettes]
    fibers = 0
    for combo in itertools.product(*column_choices):
        for i in range(n):
            lists[P.yv(i, fibers)] = frozenset(combo[j][i] for j in range(a)) | K
        fibers += 1
    assert fibers == b
    return H, ListAssignment.from_mapping(lists), b


def delete_fiber(H: Graph, L: ListAssignment, y: int) -> tuple[Graph, ListAssignment]:
    """The same instance with fiber y removed (fibers after y shift down)."""
    P = H.product
    n, a, b = P.n, P.a, P.b
    H2 = product_of_complete(n, a, b - 1)
    P2 = H2.product
    src = L.as_dict()
    lists = {}
    for i in range(n):
        for j in range(a):
            lists[P2.xv(i, j)] = src[P.xv(i, j)]
        for l2, l in enumerate(l for l in range(b) if l != y):
            lists[P2.yv(i, l2)] = src[P.yv(i, l)]
    return H2, ListAssignment.from_mapping(lists)


# -- exact minimum set cover ----------------------------------------------------------------

def _prune_dominated(sets: list[int]) -> list[int]:
    uniq = sorted(set(s for s in sets if s), key=lambda s: -s.bit_count())
    kept: list[int] = []
    for s in uniq:
        if not any(s & t == s for t in kept):
            kept.append(s)
    return kept


def min_set_cover(universe: int, sets: list[int], upper: int | None = None) -> list[int] | None:
    """Smallest family of ``sets`` (bitmasks) covering ``universe``.

    Iterative deepening from the counting bound; returns None if no cover of
    size below ``upper`` exists.
    """
    sets = _prune_dominated([s & universe for s in sets])
    if universe == 0:
        return []
    union = 0
    for s in sets:
        union |= s
    if union & universe != universe:
        return None
    biggest = max(s.bit_count() for s in sets)
    containing: dict[int, list[int]] = {}
    for s in sets:
        for e in _bits(s):
            containing.setdefault(e, []).append(s)

    def feasible(left: int, depth: int, chosen: list[int]) -> bool:
        if left == 0:
            return True
        if depth == 0 or left.bit_count() > depth * biggest:
            return False
        e = min(_bits(left), key=lambda x: len(containing[x]))
        for s in sorted(containing[e], key=lambda s: -(s & left).bit_count()):
            chosen.append(s)
            if feasible(left & ~s, depth - 1, chosen):
                return True
            chosen.pop()
        return False

    start = -(-universe.bit_count() // biggest)
    stop = upper if upper is not None else universe.bit_count() + 1
    for depth in range(start, stop):
        chosen: list[int] = []
        if feasible(universe, depth, chosen):
            return chosen
    return None


# -- f_a -----------------------------------------------------------------------------------

@dataclass
class FaResult:
    value: int
    x_lists: ListAssignment
    fiber_lists: list[list[frozenset[int]]]
    assignments_examined: int


def _tag(M: Graph) -> str | None:
    if M.m == M.n * (M.n - 1) // 2 and M.n <= 3:
        return f"K{M.n}"
    return None


def _patterns(xs: XSide, k: int, universe: list[int]) -> list[tuple[int, tuple[int, ...]]]:
    """(blocked-set mask, fiber row masks) for every pattern f ∪ K."""
    fresh_base = max(universe, default=-1) + 1
    pool = universe + list(range(fresh_base, fresh_base + k - 1))
    colorings = [rows for _, rows in xs]
    out = []
    for rows in colorings:
        used = 0
        for r in rows:
            used |= r
        free = [c for c in pool if not used >> c & 1]
        for K in itertools.combinations(free, k - 1):
            kmask = _mask(K)
            fiber = tuple(r | kmask for r in rows)
            blocked = 0
            for idx, g in enumerate(colorings):
                res = None
                for gi, li in zip(g, fiber):
                    if gi & ~li:
                        break
                    ri = li & ~gi
                    if res is None:
                        res = ri
                    elif ri != res:
                        break
                else:
                    blocked |= 1 << idx
            out.append((blocked, fiber))
    return out


def fa_search(M: Graph, a: int, force: bool = False, verify: bool = True) -> FaResult:
    """Exact f_a(M) by set cover over canonical disjoint-row X-assignments.

    Rows whose lists intersect always colour, so only disjoint-row X sides
    are searched.  The optimum is re-checked: the fiber patterns must block
    exactly their predicted colourings, and the assembled instance must be
    uncolourable by the direct solver.
    """
    if a < 1:
        raise ValueError("a >= 1")
    if not force and (_tag(M), a) not in FA_SUPPORTED:
        raise FaGuardExceeded(f"f_a search is guarded to {sorted(FA_SUPPORTED)}; pass force to override")
    scc = is_strongly_chromatic_choosable(M)
    if not scc.value:
        raise ValueError(f"M is not strongly chromatic-choosable: {scc.explanation}")
    k = chromatic_number(M)
    H0 = cartesian_product(M, complete_bipartite(a, 0))
    best: tuple[list, ListAssignment, XSide] | None = None
    examined = 0
    for X in canonical_disjoint_row_assignments(H0.product, k + a - 1):
        examined += 1
        xs = XSide(H0, X)
        if xs.size == 0:
            raise FalsificationError("X side has no proper colouring; M is not chromatic-choosable", X, H0)
        universe = sorted(X.colors)
        pats = _patterns(xs, k, universe)
        upper = len(best[0]) if best else None
        cover = min_set_cover((1 << xs.size) - 1, [p for p, _ in pats], upper)
        if cover is not None:
            chosen = [next((p, f) for p, f in pats if p == s) for s in cover]
            best = (chosen, X, xs)
    if best is None:
        raise AssertionError("no X-assignment admits a cover")
    chosen, X, xs = best
    fiber_lists = [[frozenset(_bits(r)) for r in f] for _, f in chosen]
    if verify:
        _verify_instance(M, a, X, fiber_lists, [p for p, _ in chosen])
    return FaResult(len(chosen), X, fiber_lists, examined)


def assemble_instance(M: Graph, a: int, X: ListAssignment, fiber_lists) -> tuple[Graph, ListAssignment]:
    H = cartesian_product(M, complete_bipartite(a, len(fiber_lists)))
    P = H.product
    src = X.as_dict()
    H0P = cartesian_product(M, complete_bipartite(a, 0)).product
    lists = {P.xv(i, j): src[H0P.xv(i, j)] for i in range(P.n) for j in range(a)}
    for l, rows in enumerate(fiber_lists):
        for i, cs in enumerate(rows):
            lists[P.yv(i, l)] = cs
    return H, ListAssignment.from_mapping(lists)


def _verify_instance(M: Graph, a: int, X: ListAssignment, fiber_lists, predicted: list[int]) -> None:
    H, L = assemble_instance(M, a, X, fiber_lists)
    xs = XSide(H, L)
    oracle = BadnessOracle(xs)
    for y in range(xs.b):
        actual = sum(1 << idx for idx, (_, rows) in enumerate(xs) if oracle.bad(rows, y))
        if actual != predicted[y]:
            raise FalsificationError(f"fiber {y} blocks a different set than its pattern predicts", L, H)
    if _or(predicted) != (1 << xs.size) - 1:
        raise FalsificationError("optimal fiber patterns do not cover C_X", L, H)
    if find_proper_coloring(H, L) is not None:
        raise FalsificationError("cover found but the solver colours the instance", L, H)


def _or(masks: list[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def compute_fa(M: Graph, a: int, force: bool = False) -> int:
    return fa_search(M, a, force=force).value

