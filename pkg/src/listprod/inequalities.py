"""Exact and interval-certified checks of the counting inequalities.

Interval work uses ``mpmath.iv`` (outward rounding).  Fractional powers are
evaluated as exp(p * log(base)); a zero base short-circuits to exact 0.
Verdicts compare exact rational endpoints against exact right-hand sides.
"""
from __future__ import annotations

import itertools
import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Sequence

import mpmath
import numpy as np
from mpmath import iv

DEFAULT_PREC = 128
MAX_PREC = 1024
SWEEP_PREC_LIMIT = 256
SEVENTY_THREE = Fraction(73, 100)


@contextmanager
def precision(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _endpoint(raw) -> Fraction:
    p, q = mpmath.libmp.to_rational(raw)
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class IntervalScalar:
    """Closed enclosure [lower, upper] with exact binary endpoints."""

    lower: Fraction
    upper: Fraction
    precision_bits: int

    @classmethod
    def from_iv(cls, x, bits: int) -> "IntervalScalar":
        lo, hi = x._mpi_
        return cls(_endpoint(lo), _endpoint(hi), bits)

    @classmethod
    def exact(cls, q, bits: int = 0) -> "IntervalScalar":
        q = Fraction(q)
        return cls(q, q, bits)

    def __post_init__(self):
        assert self.lower <= self.upper

    @property
    def a(self) -> Fraction:
        return self.lower

    @property
    def b(self) -> Fraction:
        return self.upper

    def contains(self, q) -> bool:
        return self.lower <= Fraction(q) <= self.upper

    def __str__(self) -> str:
        return f"[{float(self.lower)!r}, {float(self.upper)!r}]"


def Q(x) -> "iv.mpf":
    """Enclosure of an exact rational in the current iv precision."""
    x = Fraction(x)
    if x.denominator == 1:
        return iv.mpf(x.numerator)
    return iv.mpf(x.numerator) / x.denominator


def _lo(x) -> Fraction:
    return _endpoint(x._mpi_[0])


def _hi(x) -> Fraction:
    return _endpoint(x._mpi_[1])


# -- threshold -------------------------------------------------------------------

def threshold_b(n: int, a: int) -> int:
    """((n+a-1)!/(a-1)!)^a; equals P(K_n, n+a-1)^a."""
    if n < 1 or a < 1:
        raise ValueError("n, a >= 1")
    return (factorial(n + a - 1) // factorial(a - 1)) ** a


def threshold_b_product(n: int, a: int) -> int:
    return prod(n + a - 1 - i for i in range(n)) ** a


# -- the box-constrained product minimum -------------------------------------------------

@dataclass(frozen=True)
class OptInstance:
    n: int
    m: int
    k: int
    C: int

    def __post_init__(self):
        if not (self.n >= 2 and self.m > self.k and self.C > self.k and self.k >= 1):
            raise ValueError(f"invalid instance {self}: need n >= 2, m > k >= 1, C > k")

    @property
    def q(self) -> int:
        return self.m // self.k

    @property
    def r(self) -> int:
        return self.m % self.k


def optlemma_closed_form(inst: OptInstance) -> int:
    n, k, C, q, r = inst.n, inst.k, inst.C, inst.q, inst.r
    if n <= q:
        return (C - k) ** n
    return (C - k) ** q * (C - r) * C ** (n - q - 1)


def optlemma_bruteforce(inst: OptInstance, guard: int = 10 ** 7) -> int:
    """min prod(C - x_i) over integer 0 <= x_i <= k with sum <= m, by enumeration."""
    if (inst.k + 1) ** inst.n > guard:
        raise ValueError("enumeration guard exceeded")
    best = None
    for xs in itertools.product(range(inst.k + 1), repeat=inst.n):
        if sum(xs) <= inst.m:
            val = prod(inst.C - x for x in xs)
            if best is None or val < best:
                best = val
    return best


@lru_cache(maxsize=64)
def _box(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    grid = np.array(list(itertools.product(range(k + 1), repeat=n)), dtype=np.int64)
    return grid, grid.sum(axis=1)


def optlemma_grid(n_max: int = 6, k_max: int = 6, C_max: int = 12) -> dict:
    """Closed form vs exhaustive enumeration on every valid (n, m, k, C) in the box.

    For each (n, k, C) the full tuple box is enumerated once; the minimum
    over sum <= m is the prefix minimum of per-sum minima.
    """
    checked, mismatches = 0, []
    for n in range(2, n_max + 1):
        for k in range(1, k_max + 1):
            grid, sums = _box(n, k)
            for C in range(k + 1, C_max + 1):
                prods = np.prod(C - grid, axis=1)
                per_sum = np.full(n * k + 1, np.iinfo(np.int64).max, dtype=np.int64)
                np.minimum.at(per_sum, sums, prods)
                prefix = np.minimum.accumulate(per_sum)
                for m in range(k + 1, k * (n + 1) + 1):
                    brute = int(prefix[min(m, n * k)])
                    closed = optlemma_closed_form(OptInstance(n, m, k, C))
                    checked += 1
                    if brute != closed:
                        mismatches.append((n, m, k, C, brute, closed))
    return {"checked": checked, "mismatches": mismatches}


# -- majorization and Karamata ----------------------------------------------------------

def majorizes(x: Sequence, y: Sequence) -> bool:
    """x ≻ y for descending sequences of equal length >= 2."""
    if len(x) != len(y) or len(x) < 2:
        raise ValueError("need equal lengths >= 2")
    for seq in (x, y):
        if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
            raise ValueError(f"sequence {list(seq)} is not sorted in descending order")
    px = py = 0
    for i in range(len(x) - 1):
        px += x[i]
        py += y[i]
        if px < py:
            return False
    return sum(x) == sum(y)


def _log_sum(xs: Sequence[int], C: int):
    total = iv.mpf(0)
    for x in xs:
        total += iv.log(iv.mpf(C - x))
    return total


def karamata_compare(x: Sequence[int], y: Sequence[int], C: int, bits: int = DEFAULT_PREC) -> str:
    """Check sum ln(C - x_i) <= sum ln(C - y_i) for x ≻ y.

    Returns 'interval' when the enclosures separate, 'equal' for identical
    multisets, 'exact' when resolved by comparing the integer products, and
    'violation' otherwise.
    """
    if sorted(x) == sorted(y):
        return "equal"
    with precision(bits):
        lhs, rhs = _log_sum(x, C), _log_sum(y, C)
        if _hi(lhs) <= _lo(rhs):
            return "interval"
    if prod(C - v for v in x) <= prod(C - v for v in y):
        return "exact"
    return "violation"


def _random_majorized_pair(rng: random.Random, length: int, top: int) -> tuple[list[int], list[int]]:
    x = sorted((rng.randint(0, top) for _ in range(length)), reverse=True)
    y = list(x)
    for _ in range(rng.randint(0, 2 * length)):
        i, j = rng.sample(range(length), 2)
        if y[i] < y[j]:
            i, j = j, i
        if y[i] > y[j]:
            t = rng.randint(0, y[i] - y[j])
            y[i] -= t
            y[j] += t
    return x, sorted(y, reverse=True)


def karamata_property_check(samples: int = 10_000, bits: int = DEFAULT_PREC, seed: int = 0) -> dict:
    """Random majorizing pairs under the concave map t -> ln(C - t)."""
    rng = random.Random(seed)
    tally = {"interval": 0, "equal": 0, "exact": 0, "violation": 0}
    violations = []
    for idx in range(samples):
        length = rng.randint(2, 8)
        top = rng.randint(1, 12)
        C = top + rng.randint(1, 6)
        if idx % 4 == 3:
            # the extremal tuple (k,...,k,r,0,...,0) against a feasible tuple of equal sum
            k = top
            m = rng.randint(k + 1, k * length)
            qq, r = divmod(m, k)
            star = [k] * qq + ([r] if qq < length else [])
            star = (star + [0] * length)[:length]
            other = _random_sum_tuple(rng, length, k, m)
            x, y = sorted(star, reverse=True), sorted(other, reverse=True)
        else:
            x, y = _random_majorized_pair(rng, length, top)
        if not majorizes(x, y):
            raise AssertionError(f"generator produced a non-majorizing pair {x} {y}")
        verdict = karamata_compare(x, y, C, bits)
        tally[verdict] += 1
        if verdict == "violation":
            violations.append((x, y, C))
    return {"samples": samples, "seed": seed, "precision_bits": bits, **tally,
            "confirmed": samples - tally["violation"], "violations": violations}


def _random_sum_tuple(rng: random.Random, length: int, k: int, m: int) -> list[int]:
    xs = [0] * length
    left = min(m, k * length)
    while left:
        i = rng.randrange(length)
        if xs[i] < k:
            xs[i] += 1
            left -= 1
    return xs


# -- counting lower bounds ---------------------------------------------------------

def _check_nas(n: int, a: int, s: int) -> None:
    if not (2 <= n <= a and 0 <= s <= a):
        raise ValueError(f"need 2 <= n <= a and 0 <= s <= a, got n={n}, a={a}, s={s}")


def coloringbound_lower(n: int, a: int, s: int) -> int:
    """a^(a-s) (n+a-1)^s prod_{i=2}^{n-1} (n+a-i)^a."""
    _check_nas(n, a, s)
    return a ** (a - s) * (n + a - 1) ** s * prod((n + a - i) ** a for i in range(2, n))


def _tail_factors(n: int, a: int, s: int) -> int:
    up = prod(n + a - i + 1 for i in range(3, n + 1))
    down = prod(n + a - i for i in range(3, n + 1))
    return up ** s * down ** (a - s)


def mq_completion_lower(n: int, a: int, s: int, d: Sequence[int]) -> int:
    """prod_j (n+a-1-d_j) times the rows-3..n completion factors."""
    return prod(n + a - 1 - dj for dj in d) * _tail_factors(n, a, s)


def nminus1to1_lower(n: int, a: int, s: int, bits: int = DEFAULT_PREC) -> IntervalScalar:
    """Enclosure of (n+a-s-2)^(a/(s+1)) (n+a-1)^(sa/(s+1)) times the completion factors."""
    _check_nas(n, a, s)
    tail = _tail_factors(n, a, s)
    base = n + a - s - 2
    if s == 0:
        return IntervalScalar.exact(base ** a * tail, bits)
    if base == 0:
        return IntervalScalar.exact(0, bits)
    with precision(bits):
        e = Q(Fraction(a, s + 1))
        val = iv.exp(e * iv.log(iv.mpf(base)) + e * s * iv.log(iv.mpf(n + a - 1))) * tail
        return IntervalScalar.from_iv(val, bits)


# -- the key inequality ---------------------------------------------------------------

@dataclass
class KeyVerdict:
    n: int
    a: int
    s: int
    verdict: str  # holds | fails | inconclusive
    lhs_enclosure: IntervalScalar
    rhs: int
    precision_bits: int
    equality: bool = False

    def row(self) -> list:
        return [self.n, self.a, self.s, self.verdict, self.precision_bits,
                mpmath.nstr(mpmath.mpf(self.lhs_enclosure.lower.numerator) / self.lhs_enclosure.lower.denominator, 20),
                mpmath.nstr(mpmath.mpf(self.lhs_enclosure.upper.numerator) / self.lhs_enclosure.upper.denominator, 20)]


@lru_cache(maxsize=4096)
def _key_logs(n: int, a: int, bits: int):
    with precision(bits):
        D = n + a - 2
        return (iv.log(Q(Fraction(a + n - 1, a))),
                iv.log(Q(Fraction(a + n - 2, a))),
                iv.log(Q(Fraction(D + 1, D))))


def key_lhs(n: int, a: int, s: int, bits: int = DEFAULT_PREC):
    """Interval enclosure (iv.mpf) of the left side of the key inequality."""
    D = n + a - 2
    l1, l3, lD = _key_logs(n, a, bits)
    with precision(bits):
        t1 = iv.exp(s * l1)
        if s == D:
            return t1
        inner = iv.log(Q(Fraction(D - s, D))) + s * lD
        t2 = (2 ** (n - 1) - 1) * iv.exp(Q(Fraction(a, s + 1)) * inner + s * l3)
        return t1 + t2


def key_lhs_exact(n: int, a: int, s: int) -> Fraction | None:
    """Exact value when a/(s+1) is an integer, else None."""
    if a % (s + 1):
        return None
    D = n + a - 2
    e = a // (s + 1)
    t1 = Fraction(a + n - 1, a) ** s
    bracket = Fraction(D - s, D) * Fraction(D + 1, D) ** s
    return t1 + (2 ** (n - 1) - 1) * bracket ** e * Fraction(a + n - 2, a) ** s


def key_inequality_check(n: int, a: int, s: int, bits: int = DEFAULT_PREC,
                         max_bits: int = MAX_PREC) -> KeyVerdict:
    """Certify LHS >= 2^(n-1); precision doubles while inconclusive."""
    _check_nas(n, a, s)
    rhs = 2 ** (n - 1)
    while True:
        enc = IntervalScalar.from_iv(key_lhs(n, a, s, bits), bits)
        if enc.lower >= rhs:
            return KeyVerdict(n, a, s, "holds", enc, rhs, bits, equality=enc.upper == rhs)
        if enc.upper < rhs:
            return KeyVerdict(n, a, s, "fails", enc, rhs, bits)
        if bits * 2 > max_bits:
            break
        bits *= 2
    exact = key_lhs_exact(n, a, s)
    if exact is not None:
        verdict = "holds" if exact >= rhs else "fails"
        return KeyVerdict(n, a, s, verdict, enc, rhs, bits, equality=exact == rhs)
    return KeyVerdict(n, a, s, "inconclusive", enc, rhs, bits)


def _sweep_chunk(args) -> list[KeyVerdict]:
    ns, a_max, bits, max_bits = args
    out = []
    for n in ns:
        for a in range(n, a_max + 1):
            for s in range(a + 1):
                out.append(key_inequality_check(n, a, s, bits, max_bits))
        _key_logs.cache_clear()
    return out


def key_sweep(n_max: int, a_max: int, bits: int = DEFAULT_PREC, max_bits: int = SWEEP_PREC_LIMIT,
              workers: int = 1, on_row: Callable[[KeyVerdict], None] | None = None) -> dict:
    """All 2 <= n <= min(n_max, a), n <= a <= a_max, 0 <= s <= a.

    Work is split by n; results are merged in (n, a, s) order so the output
    does not depend on the worker count.
    """
    ns = list(range(2, min(n_max, a_max) + 1))
    chunks = [([n], a_max, bits, max_bits) for n in ns]
    counts = {"holds": 0, "fails": 0, "inconclusive": 0}
    equalities, worst_prec = 0, bits
    bad: list[tuple] = []

    def consume(rows):
        nonlocal equalities, worst_prec
        for kv in rows:
            counts[kv.verdict] += 1
            equalities += kv.equality
            worst_prec = max(worst_prec, kv.precision_bits)
            if kv.verdict != "holds":
                bad.append((kv.n, kv.a, kv.s, kv.verdict))
            if on_row:
                on_row(kv)

    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            for rows in pool.map(_sweep_chunk, chunks):
                consume(rows)
    else:
        for ch in chunks:
            consume(_sweep_chunk(ch))
    return {"n_max": n_max, "a_max": a_max, **counts, "equalities": equalities,
            "max_precision_bits": worst_prec, "not_holding": bad}


# -- large s, small s, n = 2 ----------------------------------------------------------------

def bigsineq_check(n: int, a: int, s: int, bits: int = DEFAULT_PREC) -> bool:
    """(1 + (n-1)/a)^s > 2^(n-1) for a >= n >= 3, s > 0.73(n+a-2); with chain spot-checks."""
    if not (a >= n >= 3 and s > SEVENTY_THREE * (n + a - 2)):
        raise ValueError("need a >= n >= 3 and s > 0.73(n+a-2)")
    rhs = 2 ** (n - 1)
    with precision(bits):
        base = Q(Fraction(a + n - 1, a))
        main = _lo(iv.exp(s * iv.log(base))) > rhs
        # (1 + x/m)^(m + x/2) >= e^x with x = n-1, m = a
        chain1 = _lo(iv.exp((a + Q(Fraction(n - 1, 2))) * iv.log(base) - (n - 1))) >= 1
        # (1 + (n-1)/a)^(n+a-2) >= (1 + (n-1)/a)^(a+(n-1)/2)
        chain2 = Fraction(2 * (n + a - 2)) >= 2 * a + (n - 1)
        # e^(0.73(n-1)) > 2^(n-1)
        chain3 = _lo(iv.exp(Q(SEVENTY_THREE) * (n - 1)) - iv.mpf(2) ** (n - 1)) > 0
    return bool(main and chain1 and chain2 and chain3)


def smallsineq_polynomial(n: int, a: int) -> int:
    """Numerator whose nonnegativity finishes the small-s case."""
    if n >= 4:
        return (10 * n - 31) * a ** 3 + 5 * (n - 2) ** 2 * (3 * a ** 2 - (n - 2) ** 2)
    if n == 3:
        return a * (17 * a ** 2 - 20) + 5 * (13 * a ** 2 - 7)
    raise ValueError("n >= 3")


def smallsineq_log_sum(n: int, a: int, s: int, bits: int = DEFAULT_PREC) -> IntervalScalar:
    """Enclosure of the logarithm of the product-form quantity."""
    if s == 0:
        return IntervalScalar.exact(0, bits)
    Mc = 2 ** (n - 1) - 1
    D = n + a - 2
    with precision(bits):
        val = (s * (s + 1) * iv.log(Q(Fraction(a + n - 1, a)))
               + Mc * s * (s + 1) * iv.log(Q(Fraction(a + n - 2, a)))
               + Mc * a * iv.log(Q(Fraction(D - s, D)))
               + Mc * a * s * iv.log(Q(Fraction(D + 1, D))))
        return IntervalScalar.from_iv(val, bits)


def smallsineq_check(n: int, a: int, s: int, bits: int = DEFAULT_PREC) -> bool:
    if not (n >= 3 and a >= n and 0 <= 100 * s <= 73 * (n + a - 2)):
        raise ValueError("need a >= n >= 3 and 0 <= s <= 0.73(n+a-2)")
    if smallsineq_polynomial(n, a) < 0:
        return False
    return smallsineq_log_sum(n, a, s, bits).lower >= 0


def amgm_glue_check(n: int, a: int, s: int, bits: int = DEFAULT_PREC) -> bool:
    """LHS >= 2^(n-1) * G^(1/((s+1) 2^(n-1))), with G the product-form quantity."""
    _check_nas(n, a, s)
    lhs = IntervalScalar.from_iv(key_lhs(n, a, s, bits), bits)
    logG = smallsineq_log_sum(n, a, s, bits) if n >= 3 else _n2_log_product(a, s, bits)
    if logG is None:
        return lhs.lower >= 2 ** (n - 1)  # zero bracket: geometric mean is 0
    with precision(bits):
        lg = iv.mpf([mpmath.mpf(logG.lower.numerator) / logG.lower.denominator,
                     mpmath.mpf(logG.upper.numerator) / logG.upper.denominator])
        gm = iv.exp(lg / ((s + 1) * 2 ** (n - 1))) * 2 ** (n - 1)
        return lhs.lower >= _hi(gm)


def _n2_log_product(a: int, s: int, bits: int) -> IntervalScalar | None:
    if s == a:
        return None
    return smallsineq_log_sum(2, a, s, bits) if s else IntervalScalar.exact(0, bits)


def nis2_check(a: int, s: int, bits: int = DEFAULT_PREC) -> bool:
    """(1+1/a)^s + [(1-s/a)(1+1/a)^s]^(a/(s+1)) >= 2, evaluated directly."""
    if not (a >= 2 and 0 <= s <= a):
        raise ValueError("need a >= 2 and 0 <= s <= a")
    if s == 0:
        return True  # 1 + 1 = 2 exactly
    with precision(bits):
        l = iv.log(Q(Fraction(a + 1, a)))
        t1 = iv.exp(s * l)
        if s == a:
            val = t1
        else:
            val = t1 + iv.exp(Q(Fraction(a, s + 1)) * (iv.log(Q(Fraction(a - s, a))) + s * l))
        return _lo(val) >= 2


# -- analytic facts on whole intervals ---------------------------------------------------

Fn = Callable[["iv.mpf"], "iv.mpf"]


@dataclass
class Fact:
    name: str
    lo: Fraction
    hi: Fraction
    g: Fn          # claim: g >= 0 on [lo, hi]
    dg: Fn         # derivative of g, for monotonicity on a cell


def _ln_fact(tau) -> tuple[Fn, Fn]:
    t = Fraction(tau)

    def g(r):
        return iv.log(1 - r) + r + Q(t) * r * r

    def dg(r):
        return r * (Q(2 * t - 1) - Q(2 * t) * r) / (1 - r)

    return g, dg


def _exp_fact(tau) -> tuple[Fn, Fn]:
    t = Fraction(tau)

    def g(r):
        return iv.exp(Q(Fraction(3, 4)) * r) + iv.exp(-Q(t) * r) - 2

    def dg(r):
        return Q(Fraction(3, 4)) * iv.exp(Q(Fraction(3, 4)) * r) - Q(t) * iv.exp(-Q(t) * r)

    return g, dg


def analytic_facts() -> list[Fact]:
    F = Fraction
    facts = [
        Fact("ln(1+x) >= x - x^2/2 on [0,4]", F(0), F(4),
             lambda x: iv.log(1 + x) - x + x * x / 2,
             lambda x: x * x / (1 + x)),
        Fact("ln(1+x) >= x - 1.1x^2 on [-0.73,4]", F(-73, 100), F(4),
             lambda x: iv.log(1 + x) - x + Q(F(11, 10)) * x * x,
             lambda x: x * (Q(F(6, 5)) + Q(F(11, 5)) * x) / (1 + x)),
        Fact("e^(0.75r) >= 2 on [0.93,1]", F(93, 100), F(1),
             lambda r: iv.exp(Q(F(3, 4)) * r) - 2,
             lambda r: Q(F(3, 4)) * iv.exp(Q(F(3, 4)) * r)),
    ]
    regimes = [(F(78, 100), F(93, 100), F(2)), (F(53, 100), F(78, 100), F(5, 4)),
               (F(34, 100), F(53, 100), F(1)), (F(0), F(34, 100), F(3, 4))]
    for lo, hi, tau in regimes:
        g, dg = _ln_fact(tau)
        facts.append(Fact(f"ln(1-r) >= -r - {float(tau)}r^2 on [{float(lo)},{float(hi)}]", lo, hi, g, dg))
        g, dg = _exp_fact(tau)
        facts.append(Fact(f"e^(0.75r) + e^(-{float(tau)}r) >= 2 on [{float(lo)},{float(hi)}]", lo, hi, g, dg))
    return facts


def _cell(lo: Fraction, hi: Fraction):
    return iv.mpf([Q(lo).a, Q(hi).b])


def _certify_cell(fact: Fact, lo: Fraction, hi: Fraction, depth: int) -> bool:
    X = _cell(lo, hi)
    if _lo(fact.g(X)) >= 0:
        return True
    D = fact.dg(X)
    if _lo(D) >= 0 and _lo(fact.g(Q(lo))) >= 0:
        return True
    if _hi(D) <= 0 and _lo(fact.g(Q(hi))) >= 0:
        return True
    if depth == 0:
        return False
    mid = (lo + hi) / 2
    return _certify_cell(fact, lo, mid, depth - 1) and _certify_cell(fact, mid, hi, depth - 1)


def verify_analytic_facts(bits: int = DEFAULT_PREC, grid_step: Fraction = Fraction(1, 1000),
                          facts: list[Fact] | None = None) -> dict:
    """Certify each fact on every grid cell (so on the whole interval).

    A cell passes if the interval image of g is nonnegative, or g is
    monotone on it (derivative enclosure of one sign) and nonnegative at the
    lower end of that monotonicity.  Failing cells are bisected a few times
    before being reported.  The grid always breaks at 0, where the facts
    hold with equality and no enclosure of a straddling cell can succeed.
    """
    step = Fraction(grid_step)
    report = {"precision_bits": bits, "grid_step": str(step), "facts": []}
    with precision(bits):
        for fact in facts or analytic_facts():
            bad_cells = []
            cells = 0
            lo = fact.lo
            while lo < fact.hi:
                hi = min(lo + step, fact.hi)
                if lo < 0 < hi:
                    hi = Fraction(0)  # every fact touches equality at 0; keep it a cell end
                cells += 1
                if not _certify_cell(fact, lo, hi, depth=6):
                    bad_cells.append((float(lo), float(hi)))
                lo = hi
            report["facts"].append({"name": fact.name, "cells": cells, "inconclusive": bad_cells,
                                    "holds": not bad_cells})
    report["all_hold"] = all(f["holds"] for f in report["facts"])
    return report
