import itertools
import math
from fractions import Fraction
from math import factorial, prod

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from listprod.inequalities import (IntervalScalar, OptInstance, amgm_glue_check, analytic_facts,
                                   bigsineq_check, coloringbound_lower, karamata_compare,
                                   karamata_property_check, key_inequality_check, key_lhs, key_lhs_exact,
                                   key_sweep, majorizes, mq_completion_lower, nis2_check, nminus1to1_lower,
                                   optlemma_bruteforce, optlemma_closed_form, optlemma_grid, precision,
                                   smallsineq_check, smallsineq_log_sum, smallsineq_polynomial, threshold_b,
                                   threshold_b_product, verify_analytic_facts)


def test_threshold_examples():
    assert threshold_b(1, 2) == 4
    assert threshold_b(2, 1) == 2
    assert threshold_b(2, 2) == 36
    assert threshold_b(1, 3) == 27


@pytest.mark.parametrize("n,a", [(n, a) for n in range(1, 6) for a in range(1, 5)])
def test_threshold_forms_agree(n, a):
    assert threshold_b(n, a) == threshold_b_product(n, a)
    assert threshold_b(n, a) == (factorial(n + a - 1) // factorial(a - 1)) ** a


def test_threshold_rejects_zero():
    with pytest.raises(ValueError):
        threshold_b(0, 2)


@pytest.mark.parametrize("n,m,k,C,expected", [(2, 3, 2, 5, 12), (2, 4, 2, 5, 9), (3, 4, 2, 4, 16),
                                              (3, 5, 2, 4, 12)])
def test_optlemma_examples(n, m, k, C, expected):
    inst = OptInstance(n, m, k, C)
    assert optlemma_closed_form(inst) == expected
    assert optlemma_bruteforce(inst) == expected


def test_optlemma_rejects_invalid():
    for args in [(1, 3, 2, 5), (2, 2, 2, 5), (2, 3, 2, 2), (2, 1, 0, 3)]:
        with pytest.raises(ValueError):
            OptInstance(*args)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5), st.integers(1, 4), st.data())
def test_optlemma_random(n, k, data):
    m = data.draw(st.integers(k + 1, k * (n + 1)))
    C = data.draw(st.integers(k + 1, 3 * k + 3))
    inst = OptInstance(n, m, k, C)
    assert optlemma_closed_form(inst) == optlemma_bruteforce(inst)


def test_optlemma_grid_small():
    res = optlemma_grid(4, 4, 8)
    assert res["checked"] == 450 and res["mismatches"] == []


def test_majorizes_examples():
    assert majorizes([3, 1], [2, 2])
    assert not majorizes([2, 2], [3, 1])
    assert majorizes([2, 2], [2, 2])
    assert majorizes([2, 1, 0], [1, 1, 1])
    assert not majorizes([3, 1], [2, 1])  # unequal sums
    with pytest.raises(ValueError):
        majorizes([1, 3], [2, 2])
    with pytest.raises(ValueError):
        majorizes([1], [1])


def test_karamata_compare():
    assert karamata_compare([3, 1], [2, 2], 5) in ("interval", "exact")
    assert karamata_compare([2, 2], [2, 2], 5) == "equal"
    # 2*4 vs 3*3: the majorizing tuple has the smaller product
    assert prod(5 - v for v in [3, 1]) < prod(5 - v for v in [2, 2])


def test_karamata_property_small():
    res = karamata_property_check(samples=400, seed=3)
    assert res["violations"] == [] and res["confirmed"] == 400


def test_count_bounds():
    assert coloringbound_lower(3, 3, 1) == 2880
    assert coloringbound_lower(2, 2, 0) == 4
    assert nminus1to1_lower(2, 2, 1).contains(3)
    assert nminus1to1_lower(2, 2, 0).lower == 4
    assert nminus1to1_lower(2, 2, 2).lower == 0
    with pytest.raises(ValueError):
        coloringbound_lower(3, 2, 0)


@pytest.mark.parametrize("n,a", [(2, 2), (2, 4), (3, 3), (3, 5), (4, 4)])
def test_completion_dominates_the_majorized_bound(n, a):
    # every d with 0 <= d_j <= s+1 and sum d_j <= a gives at least the interval bound
    for s in range(a + 1):
        bound = nminus1to1_lower(n, a, s).lower
        for d in itertools.product(range(min(s + 1, n + a - 2) + 1), repeat=a):
            if sum(d) <= a:
                assert mq_completion_lower(n, a, s, d) >= bound


def test_key_examples():
    kv = key_inequality_check(2, 2, 0)
    assert kv.verdict == "holds" and kv.equality
    kv = key_inequality_check(2, 2, 2)
    assert kv.verdict == "holds" and kv.lhs_enclosure.contains(Fraction(9, 4))
    assert key_lhs_exact(2, 2, 2) is None  # exponent 2/3
    assert key_lhs_exact(2, 2, 1) == Fraction(3, 2) + Fraction(1, 2) * Fraction(3, 2)


@pytest.mark.parametrize("n,a,s", [(2, 3, 1), (3, 3, 2), (4, 7, 3), (5, 9, 0), (3, 11, 5)])
def test_key_lhs_encloses_high_precision_value(n, a, s):
    D = n + a - 2
    with mpmath.workdps(60):
        t1 = mpmath.mpf(a + n - 1) / a
        t2 = (mpmath.mpf(D - s) / D) * (mpmath.mpf(D + 1) / D) ** s
        val = t1 ** s + (2 ** (n - 1) - 1) * t2 ** (mpmath.mpf(a) / (s + 1)) * (mpmath.mpf(a + n - 2) / a) ** s
        enc = IntervalScalar.from_iv(key_lhs(n, a, s), 128)
        assert mpmath.mpf(enc.lower.numerator) / enc.lower.denominator <= val
        assert val <= mpmath.mpf(enc.upper.numerator) / enc.upper.denominator
    exact = key_lhs_exact(n, a, s)
    if exact is not None:
        assert enc.contains(exact)


def test_key_sweep_small():
    rows = []
    res = key_sweep(6, 12, on_row=rows.append)
    assert res["fails"] == 0 and res["inconclusive"] == 0
    assert res["equalities"] == sum(1 for r in rows if r.s == 0)
    assert len(rows) == sum(a + 1 for n in range(2, 7) for a in range(n, 13))


def test_key_sweep_worker_count_is_invisible():
    one = key_sweep(4, 8)
    two = key_sweep(4, 8, workers=2)
    assert one == two


@pytest.mark.parametrize("n,a,s", [(3, 3, 3), (3, 10, 9), (4, 4, 5)])
def test_big_s(n, a, s):
    assert bigsineq_check(n, a, s)


def test_big_s_preconditions():
    with pytest.raises(ValueError):
        bigsineq_check(3, 3, 2)
    with pytest.raises(ValueError):
        bigsineq_check(2, 3, 3)


def test_small_s_polynomial():
    assert smallsineq_polynomial(4, 4) == 9 * 64 + 5 * 4 * (48 - 4)
    assert smallsineq_polynomial(3, 3) == 949
    with pytest.raises(ValueError):
        smallsineq_check(3, 2, 0)
    for a in range(3, 60):
        assert smallsineq_check(3, a, a // 2)


def test_small_s_log_sum_directly():
    n, a, s = 4, 6, 3
    Mc, D = 2 ** (n - 1) - 1, n + a - 2
    val = (s * (s + 1) * math.log((a + n - 1) / a) + Mc * s * (s + 1) * math.log((a + n - 2) / a)
           + Mc * a * math.log((D - s) / D) + Mc * a * s * math.log((D + 1) / D))
    enc = smallsineq_log_sum(n, a, s)
    assert abs(float(enc.lower) - val) < 1e-9
    assert smallsineq_log_sum(n, a, 0).lower == 0


@pytest.mark.parametrize("n,a,s", [(2, 2, 1), (2, 5, 3), (3, 4, 2), (4, 5, 1), (3, 3, 3)])
def test_amgm_glue(n, a, s):
    assert amgm_glue_check(n, a, s)


def test_n_equals_two():
    assert nis2_check(5, 3)
    assert nis2_check(2, 0)
    assert nis2_check(2, 2)
    for a in range(2, 40):
        for s in range(a + 1):
            assert nis2_check(a, s)
    with pytest.raises(ValueError):
        nis2_check(1, 0)


def test_interval_endpoints_are_exact_and_ordered():
    with precision(64):
        enc = nminus1to1_lower(3, 5, 2, bits=64)
    assert enc.lower <= enc.upper
    assert isinstance(enc.lower, Fraction)
    assert enc.upper - enc.lower < Fraction(1, 10 ** 6) * enc.upper


def test_analytic_fact_values():
    facts = {f.name: f for f in analytic_facts()}
    assert len(facts) == 11
    with precision(128):
        exp_fact = next(f for n, f in facts.items() if n.startswith("e^(0.75r) >= 2"))
        g1 = exp_fact.g(mpmath.iv.mpf(1))
        assert float(g1.a) + 2 > 2.117
        for f in facts.values():
            if f.lo <= 0 <= f.hi:
                assert abs(float(f.g(mpmath.iv.mpf(0)).a)) < 1e-30
        ln_half = next(f for n, f in facts.items() if "0.34,0.53" in n and n.startswith("ln"))
        assert float(ln_half.g(mpmath.iv.mpf(0.5)).a) > 0


def test_fact_derivatives_match_finite_differences():
    h = 1e-7
    with precision(128):
        for f in analytic_facts():
            for t in (0.2, 0.5, 0.8):
                x = float(f.lo) + t * float(f.hi - f.lo)
                num = (float(f.g(mpmath.iv.mpf(x + h)).mid) - float(f.g(mpmath.iv.mpf(x - h)).mid)) / (2 * h)
                assert abs(num - float(f.dg(mpmath.iv.mpf(x)).mid)) < 1e-5, f.name


def test_analytic_facts_coarse_grid():
    report = verify_analytic_facts(grid_step=Fraction(1, 50))
    assert report["all_hold"]
