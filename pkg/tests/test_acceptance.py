"""Acceptance criteria 1-11.

Each criterion is one test tagged with ``criterion``; the conftest hook
prints a PASS/FAIL line per criterion at the end of the run.  Printed
table entries with a known misprint are checked against the corrected
value here; the printed value itself is exercised by strict xfails.
"""

import io
import math
import random
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest

from wrtseifert import cli
from wrtseifert.asymptotics import lambda2_closed_form, ohtsuki_series, t_series, z_dominant, z_dominant_alt
from wrtseifert.exact import dedekind_sum
from wrtseifert.hp import gauss_reciprocity_check, omega_bernoulli_check
from wrtseifert.lattice import (
    c_coefficient,
    casson_ehrhart_check,
    conjecture_report,
    ehrhart_polynomial,
    interior_count,
    mordell_count,
    reciprocity_residuals,
)
from wrtseifert.modular import eichler_limit, nearly_modular_residual, radial_limit
from wrtseifert.seifert import casson_invariant, make_manifold, orbit_representatives
from wrtseifert.tables import TABLE1, TABLE2, digit_deviation, matches, misprint
from wrtseifert.wrt import witten_z

T1_FAST = [22, 23, 98, 99, 100, 998, 999, 1000]
T1_SLOW = [2398, 2399, 2400, 2401]
T2_FAST = [58, 59, 60, 61, 118, 119, 120, 121]
T2_SLOW = [238, 239, 240, 241, 242, 243, 244, 998, 999, 1000]
SERIES_SET = [(2, 3, 5), (2, 3, 7), (2, 3, 5, 7), (2, 3, 5, 7, 11)]

_cache = {}


def exact_z(table, N, threads=1):
    key = (table.table_id, N, threads)
    if key not in _cache:
        _cache[key] = witten_z(table.manifold(), N, threads=threads)
    return _cache[key]


def _expected(table, N, column):
    """The printed entry, or its correction if it is a known misprint."""
    mp = misprint(table.table_id, N, column)
    return mp.corrected if mp else getattr(table.row(N), column)


def _check_rows(table, rows, column, value):
    bad = []
    for N in rows:
        got = value(table, N)
        want = _expected(table, N, column)
        if not matches(want, got):
            dev = digit_deviation(want, got)
            bad.append(f"N={N}: expected {want}, got {got.to_string(12)} ({max(dev.values()):.3g} units)")
    return bad


@pytest.mark.criterion(1, "Table 1 exact values, fast tier")
def test_criterion_01_table1_fast():
    bad = _check_rows(TABLE1, T1_FAST, "exact", exact_z)
    assert not bad, "\n".join(bad)


@pytest.mark.criterion(2, "Table 1 exact values, slow tier")
def test_criterion_02_table1_slow():
    bad = _check_rows(TABLE1, T1_SLOW, "exact", exact_z)
    assert not bad, "\n".join(bad)


@pytest.mark.criterion(3, "Table 2 exact values")
def test_criterion_03_table2():
    bad = _check_rows(TABLE2, T2_FAST, "exact", exact_z)
    assert not bad, "\n".join(bad)


@pytest.mark.criterion(4, "asymptotics columns of both tables")
def test_criterion_04_asymptotics():
    dom = lambda t, N: z_dominant(t.manifold(), N)
    bad = _check_rows(TABLE1, T1_FAST + T1_SLOW, "asymptotic", dom)
    bad += _check_rows(TABLE2, T2_FAST, "asymptotic", dom)
    assert not bad, "\n".join(bad)


@pytest.mark.parametrize(
    "table,N,column",
    [(TABLE1, 23, "exact"), (TABLE1, 98, "asymptotic"), (TABLE2, 118, "asymptotic")],
    ids=["t1-23-exact", "t1-98-asymptotic", "t2-118-asymptotic"],
)
@pytest.mark.xfail(strict=True, reason="printed entry is a misprint; the corrected entry is checked above")
def test_printed_misprints(table, N, column):
    value = exact_z(table, N) if column == "exact" else z_dominant(table.manifold(), N)
    assert matches(getattr(table.row(N), column), value)


@pytest.mark.criterion(5, "two forms of the dominant term agree")
def test_criterion_05_dominant_forms():
    for p, N in [((2, 3, 5, 7, 11), 99), ((2, 3, 5, 7, 11), 100), ((2, 3, 5), 100)]:
        m = make_manifold(p)
        a, b = z_dominant(m, N), z_dominant_alt(m, N)
        with mpmath.workprec(160):
            assert abs(a.mpc - b.mpc) / abs(a.mpc) < 1e-20, (p, N)


@pytest.mark.criterion(6, "T-series")
def test_criterion_06_t_series():
    for p in SERIES_SET:
        m = make_manifold(p)
        T = t_series(m, 6, "both")  # raises unless the two methods agree exactly
        assert T[0] == 0 and T[1] == 4 * m.P
    assert t_series(make_manifold((2, 3, 5)), 2)[2] == -129360


@pytest.mark.criterion(7, "Ohtsuki coefficients")
def test_criterion_07_ohtsuki():
    assert casson_invariant(make_manifold((2, 3, 5))) == -1
    assert casson_invariant(make_manifold((2, 3, 7))) == -1
    for p in SERIES_SET:
        m = make_manifold(p)
        lam = ohtsuki_series(m, 2).lambdas
        assert lam[0] == 1
        assert lam[1] == 6 * casson_invariant(m)
        assert lam[2] == lambda2_closed_form(m)


@pytest.mark.criterion(8, "lattice count against vanishing C")
def test_criterion_08_conjecture():
    r = conjecture_report(make_manifold((2, 3, 5, 7, 11)))
    assert (r.D, r.gamma, r.L) == (30, 30, 0)
    r = conjecture_report(make_manifold((3, 7, 8, 11, 13, 17)))
    assert (r.D, r.gamma, r.L) == (5040, 5029, 11)
    printed = [
        (1, 1, 1, 1, 1, 1), (1, 1, 1, 1, 1, 2), (1, 1, 1, 1, 1, 3), (1, 1, 1, 1, 2, 1),
        (1, 1, 1, 1, 2, 2), (1, 1, 1, 1, 3, 1), (1, 1, 1, 2, 1, 1), (1, 1, 1, 2, 1, 2),
        (1, 1, 1, 2, 2, 1), (1, 1, 2, 1, 1, 1), (1, 2, 1, 1, 1, 1),
    ]  # fmt: skip
    assert sorted(l.ell for l in r.vanishing_labels) == printed
    # conjecture_report raises if C is nonzero on an interior label
    for p in [(2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 3, 5, 7), (3, 4, 5, 7, 11)]:
        assert conjecture_report(make_manifold(p)).holds


def _coprime(rng, size, lo, hi, max_product=None):
    while True:
        t = tuple(rng.randint(lo, hi) for _ in range(size))
        if max_product and math.prod(t) > max_product:
            continue
        if all(math.gcd(a, b) == 1 for i, a in enumerate(t) for b in t[i + 1 :]):
            return t


@pytest.mark.criterion(9, "Mordell and Ehrhart identities")
def test_criterion_09_lattice():
    rng = random.Random(2024)
    for size, count in [(3, 10), (4, 5)]:
        for _ in range(count):
            p = _coprime(rng, size, 2, 30 if size == 3 else 12)
            assert mordell_count(p) == interior_count(p), p
    for size, count in [(3, 10), (4, 5), (5, 2)]:
        for _ in range(count):
            p = _coprime(rng, size, 1, 40, 10**4)
            e = ehrhart_polynomial(p)
            assert reciprocity_residuals(e, (1, 2, 3)) == [0, 0, 0], p
            assert e.coefficient(size - 2) == c_coefficient(p), p
    for p in [(2, 3, 5), (2, 3, 7), (2, 3, 5, 7, 11)]:
        assert casson_ehrhart_check(make_manifold(p)) == 0


@pytest.mark.criterion(10, "modular-form property suite")
def test_criterion_10_modular():
    m = make_manifold((2, 3, 5))
    v = eichler_limit(m, (1, 1, 1), 0, 1).value
    assert v.real == -2 and v.imag == 0
    for x in (Fraction(0), Fraction(1, 3), Fraction(1, 8)):
        for l in orbit_representatives(m):
            e = eichler_limit(m, l, x.numerator, x.denominator).value.mpc
            r = radial_limit(m, l, x).mpc
            with mpmath.workprec(128):
                assert abs(e - r) < 1e-3, (x, l)
    for K in range(5):
        for l in orbit_representatives(m):
            r50 = abs(nearly_modular_residual(m, l, 50, K))
            r100 = abs(nearly_modular_residual(m, l, 100, K))
            assert r100 / r50 < 2.0**-K, (K, l)
    rng = random.Random(99)
    n = 0
    while n < 50:
        N, Mm = rng.randint(1, 50), rng.randint(1, 50)
        if (N * Mm) % 2:
            continue
        assert gauss_reciprocity_check(N, Mm, Fraction(rng.randint(0, N), N)) < 1e-25
        n += 1
    for _ in range(50):
        N = rng.randint(2, 50)
        assert omega_bernoulli_check(N, rng.randint(1, 6), rng.randint(0, N - 1)) < 1e-25
    n = 0
    while n < 200:
        a, b = rng.randint(1, 10**4), rng.randint(1, 10**4)
        if math.gcd(a, b) != 1:
            continue
        assert dedekind_sum(a, b) + dedekind_sum(b, a) == Fraction(-1, 4) + Fraction(a * a + b * b + 1, 12 * a * b)
        n += 1


@pytest.mark.criterion(11, "thread-count independence")
def test_criterion_11_determinism():
    # thread count only reaches the exact evaluation; every other criterion
    # is single-threaded exact or fixed-order arithmetic
    for threads in (4, 16):
        for N in T1_FAST + T1_SLOW:
            assert exact_z(TABLE1, N, threads) == exact_z(TABLE1, N, 1), (N, threads)
        for N in (58, 119):
            assert exact_z(TABLE2, N, threads) == exact_z(TABLE2, N, 1), (N, threads)
    outs = []
    for threads in ("1", "4", "16"):
        buf = io.StringIO()
        cli.run(["wrt", "--p", "2,3,5,7,11", "--n", "100", "--format", "json", "--threads", threads], buf, io.StringIO())
        outs.append(buf.getvalue())
    assert outs[0] == outs[1] == outs[2]


@pytest.mark.parametrize("N", T1_FAST)
def test_precision_adequacy(N):
    # raising the working precision changes no printed digit
    m = TABLE1.manifold()
    row = TABLE1.row(N)
    for column, f in (("exact", lambda prec: witten_z(m, N, prec)), ("asymptotic", lambda prec: z_dominant(m, N, prec))):
        printed = getattr(row, column)
        lo, hi = f(128), f(192)
        for part in ("re", "im"):
            q = printed.unit(part)
            a = dict(zip(("re", "im"), lo.decimal_parts()))[part]
            b = dict(zip(("re", "im"), hi.decimal_parts()))[part]
            assert Decimal(a).quantize(q) == Decimal(b).quantize(q)


@pytest.mark.slow
@pytest.mark.parametrize("N", T2_SLOW)
def test_table2_slow_tier(N):
    bad = _check_rows(TABLE2, [N], "exact", exact_z)
    bad += _check_rows(TABLE2, [N], "asymptotic", lambda t, n: z_dominant(t.manifold(), n))
    assert not bad, "\n".join(bad)
