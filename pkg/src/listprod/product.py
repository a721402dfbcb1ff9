"""Bad colourings and the X-side census on H = M □ K_{a,b}.

Local X indexing: the vertex (v_i, x_j) is position ``i*a + j``; an X-side
colouring is built column by column (each column is a copy of M) and
summarised by its per-row colour bitmasks.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

import numpy as np

from .coloring import (_colorable_masks, _search, chromatic_number,
                       enumerate_colorings, find_proper_coloring,
                       is_proper_coloring)
from .graphs import Graph, ProductStructure, induced_subgraph
from .lists import ListAssignment, ListError, intersecting_row, restrict, rows_pairwise_disjoint

CENSUS_GUARD = 10_000_000
TABLE_LIMIT = 40_000_000  # cells of the vectorised X-side table


class FalsificationError(AssertionError):
    """A computed fact contradicts a proved statement; never swallowed."""

    def __init__(self, message: str, counterexample: ListAssignment | None = None, graph: Graph | None = None):
        super().__init__(message)
        self.counterexample = counterexample
        self.graph = graph

    def dump(self) -> str:
        head = f"# falsification: {self}\n"
        if self.graph is not None:
            head += f"# graph: {self.graph.name or 'unnamed'} n={self.graph.n}\n"
        return head + (self.counterexample.to_text() if self.counterexample else "")


class CensusGuardExceeded(RuntimeError):
    pass


def base_graph(H: Graph) -> Graph:
    """The copy of M over x_1, reindexed by base vertex."""
    P = _structure(H)
    return induced_subgraph(H, P.x_fiber(0) if P.a else P.y_fiber(0))


def _structure(H: Graph) -> ProductStructure:
    if H.product is None:
        raise ValueError("graph carries no M □ K_{a,b} structure")
    return H.product


def _is_complete(M: Graph) -> bool:
    return M.m == M.n * (M.n - 1) // 2


def _mask(colors) -> int:
    return sum(1 << c for c in colors)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# -- single-colouring predicates ---------------------------------------------------

def is_n_minus_1_to_1(f: dict[int, int] | Sequence[int], n: int) -> bool:
    """Every colour class of f has at most n-1 members."""
    values = f.values() if isinstance(f, dict) else f
    counts: dict[int, int] = {}
    for c in values:
        counts[c] = counts.get(c, 0) + 1
    return all(v <= n - 1 for v in counts.values())


def _check_x_coloring(H: Graph, L: ListAssignment, f: dict[int, int]) -> None:
    P = _structure(H)
    VX = P.V_X
    if set(f) != set(VX):
        raise ValueError("f must colour exactly V_X")
    sub = induced_subgraph(H, VX)
    local = {t: f[v] for t, v in enumerate(sub.parent)}
    lists = L.as_dict()
    if any(local[u] == local[v] for u, v in sub.edges) or any(f[v] not in lists[v] for v in VX):
        raise ValueError("f is not a proper L_X-colouring of H_X")


def residual_lists(H: Graph, L: ListAssignment, f: dict[int, int], y: int) -> list[frozenset[int]]:
    P = _structure(H)
    lists = L.as_dict()
    out = []
    for i in range(P.n):
        used = {f[P.xv(i, j)] for j in range(P.a)}
        out.append(lists[P.yv(i, y)] - used)
    return out


def is_bad_coloring(H: Graph, L: ListAssignment, f: dict[int, int], y: int) -> bool:
    """No proper colouring of H_y from L(v_j,y) minus the colours f uses on row j."""
    _check_x_coloring(H, L, f)
    M = base_graph(H)
    res = residual_lists(H, L, f, y)
    return not _colorable_masks(M, [_mask(r) for r in res])


# -- the X side -----------------------------------------------------------------------

class XSide:
    """All proper L_X-colourings of H_X, as products of column colourings."""

    def __init__(self, H: Graph, L: ListAssignment, guard: int = CENSUS_GUARD):
        P = _structure(H)
        self.H, self.P, self.L = H, P, L
        self.n, self.a, self.b = P.n, P.a, P.b
        self.M = base_graph(H)
        lists = L.as_dict()
        self.x_masks = [[_mask(lists[P.xv(i, j)]) for i in range(self.n)] for j in range(self.a)]
        self.columns = [list(enumerate_colorings(self.M, self.x_masks[j])) for j in range(self.a)]
        size = prod(len(c) for c in self.columns)
        if size > guard:
            raise CensusGuardExceeded(f"|C_X| = {size} exceeds census guard {guard}")
        self.size = size
        # per column colouring: the colour bit it puts on each row
        self.col_bits = [[tuple(1 << c for c in col) for col in cols] for cols in self.columns]

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Yield (column-colouring indices, per-row colour masks)."""
        n = self.n
        for combo in itertools.product(*(range(len(c)) for c in self.columns)):
            rows = [0] * n
            for j, idx in enumerate(combo):
                bits = self.col_bits[j][idx]
                for i in range(n):
                    rows[i] |= bits[i]
            yield combo, tuple(rows)

    def colors(self, combo: Sequence[int]) -> list[int]:
        """Colours in local order i*a + j."""
        cols = [self.columns[j][idx] for j, idx in enumerate(combo)]
        return [cols[j][i] for i in range(self.n) for j in range(self.a)]

    def coloring(self, combo: Sequence[int]) -> dict[int, int]:
        flat = self.colors(combo)
        return {self.P.xv(i, j): flat[i * self.a + j] for i in range(self.n) for j in range(self.a)}

    def q_of(self, combo: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.columns[j][idx][0] for j, idx in enumerate(combo))

    def y_masks(self, y: int) -> list[int]:
        lists = self.L.as_dict()
        return [_mask(lists[self.P.yv(i, y)]) for i in range(self.n)]

    # vectorised view: row r of ``table`` is the r-th colouring of __iter__
    @property
    def vectorised(self) -> bool:
        top = max((m.bit_length() for col in self.x_masks for m in col), default=0)
        return top <= 63 and self.size * max(self.n, 1) <= TABLE_LIMIT and self.size > 0

    def table(self) -> tuple[np.ndarray, np.ndarray]:
        """(rows, qkey): per-row colour masks (N × n) and a packed q-tuple key."""
        if getattr(self, "_table", None) is None:
            n = self.n
            R = np.zeros((1, n), dtype=np.uint64)
            Qk = np.zeros(1, dtype=np.int64)
            for j, cols in enumerate(self.columns):
                bits = np.array(self.col_bits[j], dtype=np.uint64).reshape(len(cols), n)
                R = (R[:, None, :] | bits[None, :, :]).reshape(-1, n)
                q = np.array([col[0] for col in cols], dtype=np.int64)
                Qk = (Qk[:, None] * 64 + q[None, :]).reshape(-1)
            self._table = (R, Qk)
        return self._table

    def decode(self, index: int) -> tuple[int, ...]:
        return tuple(int(t) for t in np.unravel_index(index, [len(c) for c in self.columns]))

    def unpack_q(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.a):
            key, c = divmod(int(key), 64)
            out.append(c)
        return tuple(reversed(out))


@dataclass
class XSideCensus:
    total_CX: int
    injective_IX: int
    per_tuple: dict[tuple[int, ...], tuple[int, int, int]]  # q -> (|C_X,q|, |I_X,q|, s(q))
    sq_flags: dict[int, int]
    n: int = 0
    a: int = 0

    def to_json(self) -> dict:
        return {
            "total_CX": str(self.total_CX),
            "injective_IX": str(self.injective_IX),
            "sq_flags": {str(c): v for c, v in sorted(self.sq_flags.items())},
            "per_tuple": [
                {"q": list(q), "CXq": str(c), "IXq": str(i), "s": s}
                for q, (c, i, s) in sorted(self.per_tuple.items())
            ],
        }


def census_X(H: Graph, L: ListAssignment, xside: XSide | None = None,
             vectorised: bool | None = None) -> XSideCensus:
    """Exact census of C_X, I_X and the per-tuple split by q = c(v_1, x_*).

    Rows must be pairwise disjoint.  When M is complete, the colour-class
    structure (equal colours lie in distinct rows and columns) and the flag
    exclusion (s_q = 1 keeps q_t out of L(v_i, x_t) for i >= 2) are checked
    on the data and raise FalsificationError if violated.  A colouring is
    (n-1)-to-1 iff no colour lies in every row, i.e. the AND of its row masks
    is empty (rows are disjoint, so no colour repeats within a row).
    """
    P = _structure(H)
    L_X = restrict(L, P.V_X)
    if not rows_pairwise_disjoint(L_X, P):
        raise ListError("census requires pairwise-disjoint rows")
    xs = xside or XSide(H, L)
    n, a = xs.n, xs.a
    complete = _is_complete(xs.M)
    if complete:
        for j, cols in enumerate(xs.columns):
            for col in cols:
                if len(set(col)) != n:
                    raise FalsificationError(f"column {j} colouring {col} repeats a colour", L, H)

    row1 = [xs.x_masks[j][0] for j in range(a)]
    per: dict[tuple[int, ...], list[int]] = {q: [0, 0] for q in itertools.product(*(_bits(m) for m in row1))}
    if vectorised is None:
        vectorised = xs.vectorised
    if vectorised and xs.size:
        total, injective, full_classes = _census_table(xs, per, L, H)
    else:
        total, injective, full_classes = _census_loop(xs, per, L, H)
    flags = {}
    for m in row1:
        for c in _bits(m):
            flags[c] = 1 if full_classes >> c & 1 else 0
    if complete:
        lists = L.as_dict()
        for t in range(a):
            for c in _bits(row1[t]):
                if flags[c] and any(c in lists[P.xv(i, t)] for i in range(1, n)):
                    raise FalsificationError(f"flagged colour {c} reappears in column {t}", L, H)
    per_tuple = {q: (v[0], v[1], sum(flags[c] for c in q)) for q, v in per.items()}
    return XSideCensus(total, injective, per_tuple, flags, n, a)


def _census_loop(xs: XSide, per, L, H) -> tuple[int, int, int]:
    n, a = xs.n, xs.a
    full_classes = 0  # colours used on every row by some colouring
    total = injective = 0
    for combo, rows in xs:
        for r in rows:
            if r.bit_count() != a:
                raise FalsificationError("a row of an X-colouring repeats a colour", L, H)
        common = rows[0]
        for r in rows[1:]:
            common &= r
        slot = per[xs.q_of(combo)]
        slot[0] += 1
        total += 1
        if common == 0 and n >= 2:
            slot[1] += 1
            injective += 1
        full_classes |= common
    return total, injective, full_classes


def _census_table(xs: XSide, per, L, H) -> tuple[int, int, int]:
    R, Qk = xs.table()
    if np.any(np.bitwise_count(R) != xs.a):
        raise FalsificationError("a row of an X-colouring repeats a colour", L, H)
    common = np.bitwise_and.reduce(R, axis=1)
    inj = (common == 0) if xs.n >= 2 else np.zeros(len(R), dtype=bool)
    for key, cnt in zip(*np.unique(Qk, return_counts=True)):
        per[xs.unpack_q(key)][0] += int(cnt)
    for key, cnt in zip(*np.unique(Qk[inj], return_counts=True)):
        per[xs.unpack_q(key)][1] += int(cnt)
    return len(R), int(inj.sum()), int(np.bitwise_or.reduce(common))


# -- fibers ---------------------------------------------------------------------------

@dataclass
class FiberAnalysis:
    y_vertex: int
    bad_set_B: list[dict[int, int]]
    bad_injective_B_I: list[dict[int, int]]
    residual_K: frozenset[int] | None = None
    residuals: list[tuple[frozenset[int], ...]] = field(default_factory=list)


class BadnessOracle:
    """Memoised 'is f bad for fiber y' on residual masks."""

    def __init__(self, xs: XSide):
        self.xs = xs
        self.memo: dict[tuple[int, ...], bool] = {}
        self.ymasks = [xs.y_masks(y) for y in range(xs.b)]

    def bad(self, rows: Sequence[int], y: int) -> bool:
        res = tuple(m & ~r for m, r in zip(self.ymasks[y], rows))
        hit = self.memo.get(res)
        if hit is None:
            hit = not _colorable_masks(self.xs.M, list(res))
            self.memo[res] = hit
        return hit

    def residual(self, rows: Sequence[int], y: int) -> tuple[int, ...]:
        return tuple(m & ~r for m, r in zip(self.ymasks[y], rows))

    def bad_vector(self, y: int) -> np.ndarray:
        """Badness of every X-colouring for fiber y, in table order.

        Residual lists are packed (bit t of row i's field = t-th colour of
        L(v_i, y)) so each distinct residual tuple is solved once.
        """
        R, _ = self.xs.table()
        ym = self.ymasks[y]
        if any(m.bit_length() > 64 for m in ym):
            return np.array([self.bad(rows, y) for _, rows in self.xs], dtype=bool)
        widths = [m.bit_count() for m in ym]
        if sum(widths) > 63:
            return np.array([self.bad(rows, y) for _, rows in self.xs], dtype=bool)
        key = np.zeros(len(R), dtype=np.uint64)
        offset = 0
        for i, m in enumerate(ym):
            free = np.uint64(m) & ~R[:, i]
            for t, c in enumerate(_bits(m)):
                key |= ((free >> np.uint64(c)) & np.uint64(1)) << np.uint64(offset + t)
            offset += widths[i]
        uniq, inv = np.unique(key, return_inverse=True)
        verdict = np.empty(len(uniq), dtype=bool)
        for u, packed in enumerate(uniq.tolist()):
            res, offset = [], 0
            for i, m in enumerate(ym):
                res.append(sum(1 << c for t, c in enumerate(_bits(m)) if packed >> (offset + t) & 1))
                offset += widths[i]
            res = tuple(res)
            hit = self.memo.get(res)
            if hit is None:
                hit = not _colorable_masks(self.xs.M, list(res))
                self.memo[res] = hit
            verdict[u] = hit
        return verdict[inv.reshape(-1)]


def fiber_analysis(H: Graph, L: ListAssignment, y: int, k: int | None = None,
                   xside: XSide | None = None, oracle: BadnessOracle | None = None) -> FiberAnalysis:
    """B and B_I for fiber y_y; size bound and uniqueness are asserted.

    k defaults to chi(M).  Violations raise FalsificationError.
    """
    P = _structure(H)
    if not rows_pairwise_disjoint(restrict(L, P.V_X), P):
        raise ListError("fiber analysis requires pairwise-disjoint rows")
    xs = xside or XSide(H, L)
    orc = oracle or BadnessOracle(xs)
    if k is None:
        k = chromatic_number(xs.M)
    if xs.vectorised:
        R, _ = xs.table()
        hits = [(xs.decode(i), tuple(int(r) for r in R[i])) for i in np.flatnonzero(orc.bad_vector(y))]
    else:
        hits = [(combo, rows) for combo, rows in xs if orc.bad(rows, y)]
    if len(hits) > 2 ** (k - 1):
        raise FalsificationError(f"fiber {y}: {len(hits)} > 2^(k-1) = {2 ** (k - 1)} bad colourings", L, H)
    B, BI, residuals = [], [], []
    for combo, rows in hits:
        common = rows[0]
        for r in rows[1:]:
            common &= r
        f = xs.coloring(combo)
        B.append(f)
        residuals.append(tuple(frozenset(_bits(m)) for m in orc.residual(rows, y)))
        if xs.n >= 2 and common == 0:
            BI.append(f)
    if BI and (len(BI) != 1 or len(B) != 1):
        raise FalsificationError(f"fiber {y}: an (n-1)-to-1 bad colouring is not the unique bad colouring", L, H)
    K = None
    if residuals and len(set(residuals[0])) == 1:
        K = residuals[0][0]
    return FiberAnalysis(y, B, BI, K, residuals)


# -- certificates -----------------------------------------------------------------------

KINDS = ("colorable-by-bound", "colorable-by-extension", "colorable-by-intersecting-rows",
         "non-colorable-by-cover", "inconclusive")


@dataclass
class Certificate:
    kind: str
    b: int
    bound_value: Fraction | None
    evidence: dict | None = None
    census: XSideCensus | None = None
    coloring: dict[int, int] | None = None

    def __post_init__(self):
        assert self.kind in KINDS
        if self.kind == "colorable-by-bound":
            assert self.bound_value is not None and self.b < self.bound_value

    @property
    def colorable(self) -> bool | None:
        if self.kind.startswith("colorable"):
            return True
        if self.kind == "non-colorable-by-cover":
            return False
        return None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "b": self.b,
            "bound_value": None if self.bound_value is None else f"{self.bound_value.numerator}/{self.bound_value.denominator}",
            "per_tuple": self.census.to_json()["per_tuple"] if self.census else None,
            "evidence": self.evidence,
        }
        if self.census is not None:
            out["total_CX"] = str(self.census.total_CX)
            out["injective_IX"] = str(self.census.injective_IX)
        if self.coloring is not None:
            out["coloring"] = {str(v): c for v, c in sorted(self.coloring.items())}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def bound_value(census: XSideCensus, k: int) -> Fraction:
    """|I_X| + (|C_X| - |I_X|) / 2^(k-1)."""
    return census.injective_IX + Fraction(census.total_CX - census.injective_IX, 2 ** (k - 1))


def _extend(xs: XSide, combo, rows: Sequence[int], oracle: BadnessOracle) -> dict[int, int]:
    """Extend an X-colouring that is bad for no fiber to a full colouring."""
    colors = xs.coloring(combo)
    for y in range(xs.b):
        _, wit = _search(xs.M, list(oracle.residual(rows, y)), count_all=False)
        if wit is None:
            raise AssertionError("extension requested for a bad colouring")
        for i in range(xs.n):
            colors[xs.P.yv(i, y)] = wit[i]
    return colors


def certify_or_color(H: Graph, L: ListAssignment, k: int | None = None) -> Certificate:
    """Decide L-colourability of H along the counting argument, with cross-checks.

    Intersecting rows: the solver must colour H.  Otherwise, if
    b < |I_X| + (|C_X| - |I_X|)/2^(k-1) the solver must colour H; else every
    f ∈ C_X is sent to its lowest-index bad fiber, and a complete cover must
    agree with the solver failing.  Any disagreement is a FalsificationError.
    """
    P = _structure(H)
    xs_M = base_graph(H)
    if k is None:
        k = chromatic_number(xs_M)
    size = L.uniform_size
    if size != k + P.a - 1:
        raise ListError(f"expected a {k + P.a - 1}-assignment, got uniform size {size}")
    hit = intersecting_row(L, P)
    if hit is not None:
        wit = find_proper_coloring(H, L)
        if wit is None:
            raise FalsificationError(f"row {hit[0]} lists intersect but H is not L-colourable", L, H)
        return Certificate("colorable-by-intersecting-rows", P.b, None,
                           {"row": hit[0], "columns": [hit[1], hit[2]]}, coloring=wit)
    xs = XSide(H, L)
    census = census_X(H, L, xs)
    bv = bound_value(census, k)
    if P.b < bv:
        wit = find_proper_coloring(H, L)
        if wit is None or not is_proper_coloring(H, L, wit):
            raise FalsificationError(f"b = {P.b} < bound {bv} but the solver found no colouring", L, H)
        return Certificate("colorable-by-bound", P.b, bv, None, census, wit)
    oracle = BadnessOracle(xs)
    first = lowest_bad_fiber(xs, oracle)
    open_idx = np.flatnonzero(first < 0)
    if len(open_idx) == 0:
        if find_proper_coloring(H, L) is not None:
            raise FalsificationError("every X-colouring is covered, yet the solver coloured H", L, H)
        return Certificate("non-colorable-by-cover", P.b, bv, _cover_evidence(xs, first), census)
    combo = xs.decode(int(open_idx[0]))
    colors = xs.coloring(combo)
    rows = [0] * xs.n
    for i in range(xs.n):
        for j in range(xs.a):
            rows[i] |= 1 << colors[P.xv(i, j)]
    colors = _extend(xs, combo, rows, oracle)
    if not is_proper_coloring(H, L, colors):
        raise AssertionError("extension produced an improper colouring")
    return Certificate("colorable-by-extension", P.b, bv,
                       {"uncovered": xs.colors(combo)}, census, colors)


COVER_MAP_LIMIT = 10_000


def lowest_bad_fiber(xs: XSide, oracle: BadnessOracle | None = None) -> np.ndarray:
    """The map F: lowest-index bad fiber per X-colouring (table order), -1 if none."""
    oracle = oracle or BadnessOracle(xs)
    first = np.full(xs.size, -1, dtype=np.int64)
    for y in range(xs.b):
        if xs.vectorised:
            bad = oracle.bad_vector(y)
        else:
            bad = np.array([oracle.bad(rows, y) for _, rows in xs], dtype=bool)
        first[bad & (first < 0)] = y
        if not np.any(first < 0):
            break
    return first


def _cover_evidence(xs: XSide, first: np.ndarray) -> dict:
    ev: dict = {"fiber_loads": {str(y): int(c) for y, c in enumerate(np.bincount(first, minlength=xs.b)) if c}}
    if xs.size <= COVER_MAP_LIMIT:
        ev["cover"] = {" ".join(map(str, xs.colors(xs.decode(i)))): int(y) for i, y in enumerate(first)}
    return ev


def cover_verdict(H: Graph, L: ListAssignment) -> bool:
    """True iff every proper L_X-colouring is bad for some fiber."""
    xs = XSide(H, L)
    return bool(np.all(lowest_bad_fiber(xs) >= 0))


# -- the auxiliary graph M_q ----------------------------------------------------------------

def build_Mq(H: Graph, L: ListAssignment, q: Sequence[int], census: XSideCensus) -> Graph:
    """Graph on V_X (local order i*a + j) built from the flags of q."""
    P = _structure(H)
    n, a = P.n, P.a
    lists = L.as_dict()
    if len(q) != a or any(q[j] not in lists[P.xv(0, j)] for j in range(a)):
        raise ValueError(f"{tuple(q)} is not in the product of row-1 X lists")
    edges = []
    for j in range(a):
        if census.sq_flags[q[j]] == 0:
            edges += [(i * a + j, i2 * a + j) for i, i2 in itertools.combinations(range(n), 2)]
        else:
            if n >= 2:
                edges += [(j, 1 * a + j2) for j2 in range(a) if j2 != j]
            edges += [(i * a + j, i2 * a + j) for i, i2 in itertools.combinations(range(1, n), 2)]
    return Graph.from_edges(n * a, edges, parent=tuple(P.V_X))


@dataclass
class CorrespondenceReport:
    q: tuple[int, ...]
    s: int
    d: list[int]
    C_prime: int
    I_Xq: int
    C_Xq: int
    ok: bool
    failures: list[str]
    counterexample: list[int] | None = None


def verify_correspondence(H: Graph, L: ListAssignment, q: Sequence[int], census: XSideCensus,
                          check_bounds: bool | None = None) -> CorrespondenceReport:
    """Colourings of M_q with prefix q are (n-1)-to-1 colourings of H_X; count bounds hold.

    Bounds are checked only for complete M with 2 <= n <= a unless forced.
    """
    from .inequalities import coloringbound_lower, mq_completion_lower, nminus1to1_lower

    P = _structure(H)
    n, a = P.n, P.a
    q = tuple(q)
    lists = L.as_dict()
    Mq = build_Mq(H, L, q, census)
    masks = [_mask(lists[P.xv(i, j)]) for i in range(n) for j in range(a)]
    for j in range(a):
        masks[j] = 1 << q[j]
    M = base_graph(H)
    failures: list[str] = []
    counter = None
    count = 0
    for col in enumerate_colorings(Mq, masks):
        count += 1
        proper = all(col[i * a + j] != col[i2 * a + j] for j in range(a) for i, i2 in M.edges)
        if not proper or not is_n_minus_1_to_1(col, n):
            failures.append("M_q colouring outside I_X,q")
            counter = list(col)
            break
    flagged = {c for c in q if census.sq_flags[c]}
    s = census.per_tuple[q][2]
    d = [len(lists[P.xv(1, j)] & (flagged | {q[j]})) for j in range(a)] if n >= 2 else [0] * a
    C_Xq, I_Xq = census.per_tuple[q][0], census.per_tuple[q][1]
    if check_bounds is None:
        check_bounds = _is_complete(M) and 2 <= n <= a
    if check_bounds:
        if any(dj > s + 1 for dj in d) or sum(d) > a:
            failures.append(f"d = {d} violates d_j <= s+1 or sum <= a (s = {s})")
        if C_Xq < coloringbound_lower(n, a, s):
            failures.append("|C_X,q| below the greedy completion bound")
        if count < mq_completion_lower(n, a, s, d):
            failures.append("|C'_q| below the M_q completion bound")
        interval_bound = nminus1to1_lower(n, a, s).lower
        if mq_completion_lower(n, a, s, d) < interval_bound:
            failures.append("d_j product below its majorization lower bound")
        if I_Xq < interval_bound:
            failures.append("|I_X,q| below the (n-1)-to-1 lower bound")
    if count > I_Xq:
        failures.append("|C'_q| exceeds |I_X,q|")
    return CorrespondenceReport(q, s, d, count, I_Xq, C_Xq, not failures, failures, counter)
