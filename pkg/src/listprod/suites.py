"""Randomised and exhaustive property suites over the product machinery.

Every suite is driven by an explicit seed; a falsification raises
FalsificationError carrying a replayable list assignment.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .coloring import (GuardExceeded, chromatic_number, chromatic_polynomial_value,
                       choosability_upper_bound, find_proper_coloring, is_proper_coloring,
                       list_chromatic_number, list_color_function)
from .graphs import (Graph, cartesian_product, coloring_number, complete_graph, cycle, parse_graph,
                     product_of_complete)
from .lists import ListAssignment, canonical_k_assignments
from .product import (BadnessOracle, FalsificationError, XSide, census_X, certify_or_color,
                      cover_verdict, fiber_analysis, lowest_bad_fiber, verify_correspondence)


# -- random instances -------------------------------------------------------------------

def random_product_instance(rng: random.Random, n: int, a: int, b: int,
                            extra_colors: int | None = None,
                            adversarial: float = 0.5) -> tuple[Graph, ListAssignment]:
    """Disjoint-row (n+a-1)-assignment of K_n □ K_{a,b}.

    Rows draw from a shared universe slightly larger than one row needs, so
    colours recur across rows.  A fiber is adversarial with probability
    ``adversarial``: its lists are f(row i) ∪ K for a random X-colouring f
    and a random (n-1)-set K avoiding f's colours, so f is bad for it.
    """
    H = product_of_complete(n, a, b)
    P = H.product
    k = n + a - 1
    extra = rng.randint(0, n + 1) if extra_colors is None else extra_colors
    universe = a * k + extra
    lists: dict[int, list[int]] = {}
    for i in range(n):
        pool = rng.sample(range(universe), a * k)
        for j in range(a):
            lists[P.xv(i, j)] = pool[j * k:(j + 1) * k]
    for y in range(b):
        f = _random_x_coloring(rng, n, a, lists, P) if rng.random() < adversarial else None
        if f is None:
            for i in range(n):
                lists[P.yv(i, y)] = rng.sample(range(universe), k)
            continue
        used = {c for row in f for c in row}
        free = [c for c in range(universe + n) if c not in used]
        K = rng.sample(free, n - 1)
        for i in range(n):
            lists[P.yv(i, y)] = list(f[i]) + K
    return H, ListAssignment.from_mapping(lists)


def _random_x_coloring(rng: random.Random, n: int, a: int, lists, P) -> list[list[int]] | None:
    """Random proper colouring of the X side of K_n □ K_{a,.}: distinct colours per column."""
    cols = []
    for j in range(a):
        for _ in range(50):
            col = [rng.choice(lists[P.xv(i, j)]) for i in range(n)]
            if len(set(col)) == n:
                cols.append(col)
                break
        else:
            return None
    return [[cols[j][i] for j in range(a)] for i in range(n)]


# -- the lemma suite ---------------------------------------------------------------------

@dataclass
class SuiteReport:
    instances: int = 0
    seed: int = 0
    by_shape: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    bad_set_equality_witnesses: int = 0
    kinds: dict = field(default_factory=dict)
    violations: int = 0

    def tick(self, name: str, amount: int = 1) -> None:
        self.checks[name] = self.checks.get(name, 0) + amount

    def to_json(self) -> dict:
        return {"instances": self.instances, "seed": self.seed,
                "by_shape": {f"{n},{a}": c for (n, a), c in sorted(self.by_shape.items())},
                "checks": dict(sorted(self.checks.items())),
                "bad_set_equality_witnesses": self.bad_set_equality_witnesses,
                "certificate_kinds": dict(sorted(self.kinds.items())),
                "violations": self.violations}


def check_instance(H: Graph, L: ListAssignment, rng: random.Random, report: SuiteReport,
                   q_samples: int = 6) -> None:
    """All product-machinery properties on one instance; raises on violation."""
    P = H.product
    n = P.n
    xs = XSide(H, L)
    census = census_X(H, L, xs)  # colour-class structure and flag exclusion asserted inside
    report.tick("census")
    oracle = BadnessOracle(xs)
    for y in range(P.b):
        fa = fiber_analysis(H, L, y, k=n, xside=xs, oracle=oracle)  # |B| and B_I uniqueness asserted
        report.tick("bad-set-size")
        report.tick("injective-bad-unique")
        if len(fa.bad_set_B) == 2 ** (n - 1):
            report.bad_set_equality_witnesses += 1
    covered = bool(np.all(lowest_bad_fiber(xs, oracle) >= 0))
    solvable = find_proper_coloring(H, L) is not None
    if covered == solvable:
        raise FalsificationError(f"cover verdict {covered} disagrees with solver colourable={solvable}", L, H)
    report.tick("cover-equivalence")
    cert = certify_or_color(H, L)
    if cert.coloring is not None and not is_proper_coloring(H, L, cert.coloring):
        raise FalsificationError("certificate carries an improper colouring", L, H)
    report.kinds[cert.kind] = report.kinds.get(cert.kind, 0) + 1
    report.tick("certificate")
    qs = sorted(census.per_tuple)
    for q in rng.sample(qs, min(q_samples, len(qs))):
        corr = verify_correspondence(H, L, q, census)
        if not corr.ok:
            raise FalsificationError(f"q = {q}: {'; '.join(corr.failures)}", L, H)
        report.tick("Mq-containment")
        if 2 <= n <= P.a:
            report.tick("count-lower-bounds")


def lemma_suite(count: int = 1000, seed: int = 0, ns=(2, 3), as_=(1, 2, 3), b_max: int = 3,
                q_samples: int = 6) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport(seed=seed)
    for _ in range(count):
        n, a, b = rng.choice(ns), rng.choice(as_), rng.randint(1, b_max)
        H, L = random_product_instance(rng, n, a, b)
        check_instance(H, L, rng, report, q_samples)
        report.instances += 1
        report.by_shape[(n, a)] = report.by_shape.get((n, a), 0) + 1
    return report


def cover_equivalence_exhaustive(b_values=(1, 2)) -> dict:
    """Cover verdict vs solver on every canonical 2-assignment of K_2 □ K_{1,b}."""
    out = {}
    for b in b_values:
        H = product_of_complete(2, 1, b)
        checked = 0
        for L in canonical_k_assignments(H, 2):
            if cover_verdict(H, L) != (find_proper_coloring(H, L) is None):
                raise FalsificationError("cover verdict disagrees with the solver", L, H)
            checked += 1
        out[b] = checked
    return out


def certificate_sample(n: int, a: int, b: int, count: int, seed: int = 0) -> dict:
    """certify_or_color on random disjoint-row (n+a-1)-assignments with random fibers."""
    rng = random.Random(seed)
    kinds: dict[str, int] = {}
    min_bound = None
    for _ in range(count):
        H, L = random_product_instance(rng, n, a, b, adversarial=0.0)
        cert = certify_or_color(H, L)
        if cert.colorable and cert.coloring is not None and not is_proper_coloring(H, L, cert.coloring):
            raise FalsificationError("certificate witness is not a proper colouring", L, H)
        kinds[cert.kind] = kinds.get(cert.kind, 0) + 1
        if cert.bound_value is not None:
            min_bound = cert.bound_value if min_bound is None else min(min_bound, cert.bound_value)
    return {"count": count, "seed": seed, "kinds": kinds,
            "min_bound_value": None if min_bound is None else f"{min_bound.numerator}/{min_bound.denominator}"}


# -- product bound and cross-checks -----------------------------------------------------------

def product_bound_check(G: Graph, H: Graph, exact_guard: int = 12) -> dict:
    """chi_l(G □ H) <= min(chi_l(G)+col(H), col(G)+chi_l(H)) - 1.

    The product's chi_l is computed exactly when within ``exact_guard``;
    otherwise the bound is certified by col or an Alon-Tarsi monomial.
    """
    cg, ch = list_chromatic_number(G).value, list_chromatic_number(H).value
    bound = min(cg + coloring_number(H), coloring_number(G) + ch) - 1
    GH = cartesian_product(G, H)
    row = {"G": G.name, "H": H.name, "bound": bound, "chi": chromatic_number(GH)}
    try:
        exact = list_chromatic_number(GH, guard=exact_guard).value
        row.update(method="exact", chi_list=exact, holds=exact <= bound)
    except GuardExceeded:
        ok, reason = choosability_upper_bound(GH, bound)
        row.update(method="certificate", certificate=reason, holds=ok)
    return row


CROSS_G = ("K(2)", "K(3)", "C(4)", "C(5)")
CROSS_H = ("K(1,1)", "K(1,2)", "K(2,2)")


def cross_check_suite(cycle_max: int = 6, cycle_k: int = 3, clique_max: int = 4, clique_k: int = 4,
                      on_row=None) -> dict:
    """P_l = P on small cycles and cliques, and the product bound on the fixed pairs."""
    rows = []

    def emit(row):
        rows.append(row)
        if on_row:
            on_row(row)

    for n in range(3, cycle_max + 1):
        for k in range(1, cycle_k + 1):
            G = cycle(n)
            pl, p = list_color_function(G, k, guard=64).value, chromatic_polynomial_value(G, k)
            emit({"check": "lcf", "graph": f"C({n})", "k": k, "P_l": str(pl), "P": str(p), "holds": pl == p})
    for n in range(1, clique_max + 1):
        for k in range(1, clique_k + 1):
            G = complete_graph(n)
            pl, p = list_color_function(G, k, guard=64).value, chromatic_polynomial_value(G, k)
            emit({"check": "lcf", "graph": f"K({n})", "k": k, "P_l": str(pl), "P": str(p), "holds": pl == p})
    for gexpr in CROSS_G:
        for hexpr in CROSS_H:
            row = product_bound_check(parse_graph(gexpr), parse_graph(hexpr))
            emit({"check": "product-bound", **row})
    return {"rows": rows, "all_hold": all(r["holds"] for r in rows)}
