import itertools
import json
import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from listprod.coloring import find_proper_coloring, is_proper_coloring
from listprod.graphs import cartesian_product, complete_bipartite, cycle, product_of_complete
from listprod.lists import ListAssignment, ListError
from listprod.product import (BadnessOracle, Certificate, XSide, bound_value, build_Mq, census_X,
                              certify_or_color, cover_verdict, fiber_analysis, is_bad_coloring,
                              is_n_minus_1_to_1, lowest_bad_fiber, residual_lists, verify_correspondence)
from listprod.suites import random_product_instance


def brute_census(H, L):
    """(|C_X|, |I_X|) by listing every colouring of the X side."""
    P = H.product
    VX = P.V_X
    lists = L.as_dict()
    total = inj = 0
    for f in itertools.product(*[sorted(lists[v]) for v in VX]):
        col = dict(zip(VX, f))
        if any(col[u] == col[v] for u, v in H.edges if u in col and v in col):
            continue
        total += 1
        counts = {}
        for c in f:
            counts[c] = counts.get(c, 0) + 1
        if P.n >= 2 and max(counts.values()) <= P.n - 1:
            inj += 1
    return total, inj


def brute_bad(H, L, f, y):
    P = H.product
    res = residual_lists(H, L, f, y)
    M = H.product.n
    return not any(all(g[i] != g[j] for i, j in itertools.combinations(range(M), 2))
                   for g in itertools.product(*[sorted(r) for r in res]))


def k2_instance(y_lists):
    H = product_of_complete(2, 1, len(y_lists))
    P = H.product
    lists = {P.xv(0, 0): [0, 1], P.xv(1, 0): [2, 3]}
    for y, (top, bottom) in enumerate(y_lists):
        lists[P.yv(0, y)] = top
        lists[P.yv(1, y)] = bottom
    return H, ListAssignment.from_mapping(lists)


def test_bad_coloring_examples():
    H, L = k2_instance([([0, 3], [2, 3]), ([0, 3], [2, 1])])
    f = {H.product.xv(0, 0): 0, H.product.xv(1, 0): 2}
    # residuals {3},{3}: bad; residuals {3},{1}: fine
    assert is_bad_coloring(H, L, f, 0)
    assert not is_bad_coloring(H, L, f, 1)
    with pytest.raises(ValueError):
        is_bad_coloring(H, L, {H.product.xv(0, 0): 9, H.product.xv(1, 0): 2}, 0)


def test_n_minus_1_to_1():
    assert is_n_minus_1_to_1([1, 2, 1, 3], 3)
    assert not is_n_minus_1_to_1([1, 1, 1], 3)
    assert is_n_minus_1_to_1({0: 5, 1: 6}, 2)


@pytest.mark.parametrize("seed", range(30))
def test_census_matches_brute_force(seed):
    rng = random.Random(seed)
    n, a = rng.choice([(2, 1), (2, 2), (3, 1), (3, 2)])
    H, L = random_product_instance(rng, n, a, 1)
    c = census_X(H, L)
    assert (c.total_CX, c.injective_IX) == brute_census(H, L)
    assert sum(v[0] for v in c.per_tuple.values()) == c.total_CX
    assert sum(v[1] for v in c.per_tuple.values()) == c.injective_IX
    loop = census_X(H, L, vectorised=False)
    assert loop.per_tuple == c.per_tuple and loop.sq_flags == c.sq_flags


def test_single_row_has_no_injective_colourings():
    H = product_of_complete(1, 2, 1)
    L = ListAssignment.constant(range(H.n), [0, 1])
    L = ListAssignment.from_mapping({**L.as_dict(), H.product.xv(0, 0): [0, 1], H.product.xv(0, 1): [2, 3]})
    c = census_X(H, L)
    assert c.total_CX == 4 and c.injective_IX == 0


def test_constant_lists_on_edge_times_a_vertex():
    H = product_of_complete(2, 1, 1)
    L = ListAssignment.constant(range(H.n), [0, 1, 2])
    c = census_X(H, L)
    assert c.total_CX == c.injective_IX == 6
    assert bound_value(c, 2) == 6


def test_census_requires_disjoint_rows():
    H = product_of_complete(2, 2, 1)
    L = ListAssignment.constant(range(H.n), [0, 1, 2])
    with pytest.raises(ListError):
        census_X(H, L)


@pytest.mark.parametrize("seed", range(20))
def test_fiber_analysis_matches_brute_force(seed):
    rng = random.Random(100 + seed)
    n, a = rng.choice([(2, 1), (2, 2), (3, 1)])
    H, L = random_product_instance(rng, n, a, 2, adversarial=0.7)
    xs = XSide(H, L)
    for y in range(2):
        fa = fiber_analysis(H, L, y, xside=xs)
        expected = []
        for combo, _ in xs:
            f = xs.coloring(combo)
            if brute_bad(H, L, f, y):
                expected.append(f)
        assert sorted(map(sorted, (f.items() for f in fa.bad_set_B))) == \
               sorted(map(sorted, (f.items() for f in expected)))
        assert len(fa.bad_set_B) <= 2 ** (n - 1)


@pytest.mark.parametrize("seed", range(20))
def test_bad_vector_agrees_with_scalar_oracle(seed):
    rng = random.Random(200 + seed)
    H, L = random_product_instance(rng, 3, 2, 2, adversarial=0.8)
    xs = XSide(H, L)
    assert xs.vectorised
    oracle = BadnessOracle(xs)
    for y in range(2):
        vec = oracle.bad_vector(y)
        scalar = [oracle.bad(rows, y) for _, rows in xs]
        assert list(vec) == scalar


def test_table_matches_iteration_order():
    rng = random.Random(5)
    H, L = random_product_instance(rng, 2, 2, 1)
    xs = XSide(H, L)
    R, Qk = xs.table()
    for idx, (combo, rows) in enumerate(xs):
        assert tuple(int(r) for r in R[idx]) == rows
        assert xs.decode(idx) == combo
        assert xs.unpack_q(Qk[idx]) == xs.q_of(combo)


@pytest.mark.parametrize("seed", range(40))
def test_cover_verdict_agrees_with_solver(seed):
    rng = random.Random(300 + seed)
    n, a = rng.choice([(2, 1), (2, 2), (3, 1)])
    H, L = random_product_instance(rng, n, a, rng.randint(1, 4), adversarial=0.9)
    assert cover_verdict(H, L) == (find_proper_coloring(H, L) is None)


@pytest.mark.parametrize("seed", range(40))
def test_certify_or_color(seed):
    rng = random.Random(400 + seed)
    n, a = rng.choice([(2, 1), (2, 2), (3, 1)])
    H, L = random_product_instance(rng, n, a, rng.randint(1, 5), adversarial=0.9)
    cert = certify_or_color(H, L)
    assert cert.colorable == (find_proper_coloring(H, L) is not None)
    if cert.coloring is not None:
        assert is_proper_coloring(H, L, cert.coloring)
    if cert.kind == "colorable-by-bound":
        assert cert.b < cert.bound_value
    data = json.loads(cert.dumps())
    assert data["kind"] == cert.kind and data["b"] == cert.b


def test_empty_fiber_side_is_colourable():
    H = product_of_complete(2, 2, 0)
    P = H.product
    L = ListAssignment.from_mapping({P.xv(0, 0): [0, 1, 2], P.xv(0, 1): [3, 4, 5],
                                     P.xv(1, 0): [0, 1, 2], P.xv(1, 1): [3, 4, 5]})
    cert = certify_or_color(H, L)
    assert cert.colorable and cert.kind == "colorable-by-bound"


def test_intersecting_rows_certificate():
    H = product_of_complete(2, 2, 1)
    L = ListAssignment.constant(range(H.n), [0, 1, 2])
    cert = certify_or_color(H, L)
    assert cert.kind == "colorable-by-intersecting-rows"
    assert is_proper_coloring(H, L, cert.coloring)


def test_certificate_rejects_wrong_list_size():
    H = product_of_complete(2, 1, 1)
    with pytest.raises(ListError):
        certify_or_color(H, ListAssignment.constant(range(H.n), [0, 1, 2]))


def test_certificate_invariants():
    with pytest.raises(AssertionError):
        Certificate("colorable-by-bound", 5, Fraction(4))
    with pytest.raises(AssertionError):
        Certificate("maybe", 1, None)


def test_lowest_bad_fiber_on_a_full_cover():
    # Every X-colouring of K_2 □ K_{1,4} from {0,1} x {2,3} is killed by one of 4 fibers.
    fibers = []
    for top in (0, 1):
        for bottom in (2, 3):
            fibers.append(([top, 9], [bottom, 9]))
    H, L = k2_instance(fibers)
    first = lowest_bad_fiber(XSide(H, L))
    assert sorted(first.tolist()) == [0, 1, 2, 3]
    assert find_proper_coloring(H, L) is None
    assert certify_or_color(H, L).kind == "non-colorable-by-cover"


@pytest.mark.parametrize("seed", range(15))
def test_Mq_edge_count_and_correspondence(seed):
    rng = random.Random(500 + seed)
    n, a = rng.choice([(2, 2), (2, 3), (3, 3)])
    H, L = random_product_instance(rng, n, a, 1)
    census = census_X(H, L)
    for q, (_, _, s) in list(census.per_tuple.items())[:5]:
        Mq = build_Mq(H, L, q, census)
        assert Mq.m == a * comb(n, 2) - s * (n - 1) + s * (a - 1)
        rep = verify_correspondence(H, L, q, census)
        assert rep.ok, rep.failures


def test_Mq_rejects_foreign_tuple():
    H, L = random_product_instance(random.Random(1), 2, 2, 1)
    census = census_X(H, L)
    with pytest.raises(ValueError):
        build_Mq(H, L, (999, 998), census)


def test_general_base_graph():
    # M = C4 is not complete; the machinery still runs and agrees with the solver.
    H = cartesian_product(cycle(4), complete_bipartite(1, 2))
    rng = random.Random(3)
    P = H.product
    for _ in range(10):
        lists = {v: rng.sample(range(6), 2) for v in range(H.n)}
        L = ListAssignment.from_mapping(lists)
        assert cover_verdict(H, L) == (find_proper_coloring(H, L) is None)
