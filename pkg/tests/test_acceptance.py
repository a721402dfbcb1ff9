"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The slow criteria (key sweep, cross-checks) dominate the runtime; each test
asserts its own wall-clock budget.
"""
import random
import time

import pytest

from listprod.coloring import (chromatic_polynomial_value, find_proper_coloring, is_proper_coloring,
                               is_strongly_chromatic_choosable, list_chromatic_number, list_color_function)
from listprod.extremal import compute_fa, construct_extremal_assignment, delete_fiber
from listprod.graphs import complete_bipartite, complete_graph, parse_graph
from listprod.inequalities import (key_sweep, optlemma_grid, smallsineq_polynomial, threshold_b,
                                   verify_analytic_facts)
from listprod.product import certify_or_color
from listprod.suites import cross_check_suite, cover_equivalence_exhaustive, lemma_suite, random_product_instance

MINUTE = 60.0


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for the criterion, even when the test fails."""
    state = {}

    def record(label: str, ok: bool, detail: str = "") -> None:
        state.update(label=label, ok=ok, detail=detail)

    start = time.perf_counter()
    yield record
    took = time.perf_counter() - start
    with capsys.disabled():
        label = state.get("label", "?")
        mark = "PASS" if state.get("ok") else "FAIL"
        print(f"\n[acceptance] {mark} {label} ({took:.1f}s) {state.get('detail', '')}")


def test_threshold_table(verdict):
    start = time.perf_counter()
    stars = [list_chromatic_number(complete_bipartite(1, b)).value for b in (1, 2, 3)]
    k23 = list_chromatic_number(complete_bipartite(2, 3)).value
    k24 = list_chromatic_number(complete_bipartite(2, 4)).value
    f3 = compute_fa(complete_graph(1), 3)
    took = time.perf_counter() - start
    ok = stars == [2, 2, 2] and k23 == 2 and k24 == 3 and f3 == 27 == threshold_b(1, 3) and took <= 5 * MINUTE
    verdict("1 threshold table", ok, f"K1b={stars} K23={k23} K24={k24} f_3(K1)={f3}")
    assert ok


def test_fa_equals_list_color_function(verdict):
    start = time.perf_counter()
    f2, f3 = compute_fa(complete_graph(2), 1), compute_fa(complete_graph(3), 1)
    p2, p3 = list_color_function(complete_graph(2), 2).value, list_color_function(complete_graph(3), 3).value
    took = time.perf_counter() - start
    ok = (f2, f3) == (p2, p3) == (2, 6) and took <= 10 * MINUTE
    verdict("2 f_1 = P_l on K2, K3", ok, f"f_1(K2)={f2} P_l={p2}; f_1(K3)={f3} P_l={p3}")
    assert ok


def test_witness_soundness(verdict):
    start = time.perf_counter()
    rng = random.Random(0)
    rows = []
    ok = True
    for n, a in [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (2, 2)]:
        H, L, b = construct_extremal_assignment(n, a)
        blocked = find_proper_coloring(H, L) is None
        fibers = range(b) if b <= 36 else rng.sample(range(b), 10)
        freed = all(find_proper_coloring(*delete_fiber(H, L, y)) is not None for y in fibers)
        ok &= blocked and freed and b == threshold_b(n, a)
        rows.append(f"({n},{a}) b*={b} |V|={H.n}")
    took = time.perf_counter() - start
    ok = ok and took <= 30 * MINUTE
    verdict("3 witness soundness", ok, "; ".join(rows))
    assert ok


def test_certificate_soundness(verdict):
    start = time.perf_counter()
    rng = random.Random(2024)
    count, failures, least = 1000, 0, None
    for _ in range(count):
        H, L = random_product_instance(rng, 2, 2, 35, adversarial=0.0)
        cert = certify_or_color(H, L)
        good = (cert.kind == "colorable-by-bound" and cert.bound_value > 35
                and cert.coloring is not None and is_proper_coloring(H, L, cert.coloring))
        failures += not good
        if cert.bound_value is not None:
            least = cert.bound_value if least is None else min(least, cert.bound_value)
    took = time.perf_counter() - start
    ok = failures == 0
    verdict("4 certificate soundness at (2,2), b=35", ok,
            f"{count} instances, {failures} failures, least bound {least}, {took:.0f}s")
    assert ok


def test_lemma_suite(verdict):
    start = time.perf_counter()
    rep = lemma_suite(1000, seed=0)
    exhaustive = cover_equivalence_exhaustive()
    took = time.perf_counter() - start
    checks = rep.checks
    ok = (rep.instances == 1000 and rep.violations == 0 and checks["bad-set-size"] > 0
          and checks["cover-equivalence"] == 1000 and checks["Mq-containment"] > 0
          and checks["count-lower-bounds"] > 0 and set(rep.by_shape) == {(n, a) for n in (2, 3) for a in (1, 2, 3)}
          and took <= 20 * MINUTE)
    verdict("5 lemma suite", ok, f"{rep.instances} instances, checks {checks}, exhaustive {exhaustive}")
    assert ok


def test_optlemma_grid(verdict):
    start = time.perf_counter()
    res = optlemma_grid(6, 6, 12)
    took = time.perf_counter() - start
    ok = res["mismatches"] == [] and res["checked"] > 0 and took <= 5 * MINUTE
    verdict("6 box minimum closed form", ok, f"{res['checked']} instances, {len(res['mismatches'])} mismatches")
    assert ok


def test_key_sweep(verdict):
    start = time.perf_counter()
    zero_s = []

    def on_row(kv):
        if kv.s == 0:
            zero_s.append(kv.equality and kv.lhs_enclosure.contains(2 ** (kv.n - 1)))

    res = key_sweep(200, 200, max_bits=256, on_row=on_row)
    took = time.perf_counter() - start
    expected = sum(a + 1 for n in range(2, 201) for a in range(n, 201))
    ok = (res["holds"] == expected and res["fails"] == 0 and res["inconclusive"] == 0
          and res["max_precision_bits"] <= 256 and zero_s and all(zero_s) and took <= 30 * MINUTE)
    verdict("7 key inequality sweep", ok,
            f"holds {res['holds']}/{expected}, equalities at s=0: {sum(zero_s)}/{len(zero_s)}, "
            f"max {res['max_precision_bits']} bits")
    assert ok


def test_small_s_polynomials_and_facts(verdict):
    start = time.perf_counter()
    negative = [(n, a) for n in range(3, 501) for a in range(max(n, 3), 501) if smallsineq_polynomial(n, a) < 0]
    facts = verify_analytic_facts()
    took = time.perf_counter() - start
    ok = not negative and facts["all_hold"] and facts["grid_step"] == "1/1000" and took <= 10 * MINUTE
    verdict("8 small-s polynomials and analytic facts", ok,
            f"{len(facts['facts'])} facts, negative polynomial cases {len(negative)}")
    assert ok


def test_scc_decisions(verdict):
    start = time.perf_counter()
    expected = {"K(2)": True, "K(3)": True, "C(3)": True, "C(5)": True, "J(K(1),C(5))": True,
                "C(4)": False, "P(3)": False}
    got = {e: is_strongly_chromatic_choosable(parse_graph(e)).value for e in expected}
    took = time.perf_counter() - start
    ok = got == expected and took <= 5 * MINUTE
    verdict("9 strong chromatic-choosability", ok, str(got))
    assert ok


def test_cross_checks(verdict):
    start = time.perf_counter()
    res = cross_check_suite()
    took = time.perf_counter() - start
    rows = res["rows"]
    lcf_rows = [r for r in rows if r["check"] == "lcf"]
    prod_rows = [r for r in rows if r["check"] == "product-bound"]
    # the list function agrees with an independent chromatic polynomial evaluation
    consistent = all(int(r["P"]) == chromatic_polynomial_value(parse_graph(r["graph"]), r["k"]) for r in lcf_rows)
    ok = res["all_hold"] and consistent and len(lcf_rows) == 12 + 16 and len(prod_rows) == 12 and took <= 15 * MINUTE
    verdict("10 cross-checks", ok, f"{len(lcf_rows)} P_l = P rows, {len(prod_rows)} product-bound rows")
    assert ok
