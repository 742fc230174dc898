import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrtseifert.errors import DomainError
from wrtseifert.exact import (
    bernoulli_number,
    bernoulli_polynomial,
    bernoulli_weighted_sum,
    dedekind_sum,
    f_polynomial,
    is_pairwise_coprime,
    k_number,
    lah_number,
    l_value,
    sawtooth,
    stirling_first,
)
from wrtseifert.periodic import PeriodicFunction
from wrtseifert.polynomial import RationalPolynomial, interpolate


def test_sawtooth_values():
    assert sawtooth(Fraction(1, 3)) == Fraction(-1, 6)
    assert sawtooth(2) == 0
    assert sawtooth(Fraction(-1, 4)) == Fraction(1, 4)


def test_dedekind_known_values():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(1, 1) == 0
    assert dedekind_sum(2, 5) == 0
    # s(1, a) = (a-1)(a-2)/12a
    for a in range(2, 30):
        assert dedekind_sum(1, a) == Fraction((a - 1) * (a - 2), 12 * a)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.integers(1, 400))
def test_dedekind_reciprocity(a, b):
    if math.gcd(a, b) != 1:
        return
    lhs = dedekind_sum(a, b) + dedekind_sum(b, a)
    rhs = Fraction(-1, 4) + Fraction(a * a + b * b + 1, 12 * a * b)
    assert lhs == rhs


def test_dedekind_rejects_bad_modulus():
    with pytest.raises(DomainError):
        dedekind_sum(1, 0)


def test_bernoulli_numbers():
    assert [bernoulli_number(n) for n in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert bernoulli_number(12) == Fraction(-691, 2730)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 14), st.fractions(min_value=-3, max_value=3, max_denominator=50))
def test_bernoulli_difference_and_reflection(k, x):
    B = bernoulli_polynomial(k)
    assert B(x + 1) - B(x) == k * x ** (k - 1)
    assert B(1 - x) == (-1) ** k * B(x)


def test_bernoulli_weighted_sum_matches_polynomial():
    w = {1: 3, 4: -2, 7: 5}
    for k in range(6):
        B = bernoulli_polynomial(k)
        assert bernoulli_weighted_sum(w, k, 9) == sum(v * B(Fraction(n, 9)) for n, v in w.items())


def test_stirling_generating_function():
    for n in range(8):
        poly = RationalPolynomial([1])
        for j in range(n):
            poly = poly * RationalPolynomial([-j, 1])
        assert [stirling_first(n, m) for m in range(n + 1)] == list(poly.coefficients) + [0] * (n + 1 - len(poly.coefficients))
    assert stirling_first(3, 5) == 0


def test_lah_closed_form():
    for n in range(1, 9):
        for m in range(1, n + 1):
            assert lah_number(n, m) == math.factorial(n) // math.factorial(m) * math.comb(n - 1, m - 1)
    with pytest.raises(DomainError):
        lah_number(3, 0)


def test_k_number():
    assert k_number(0, 0, 0) == 1
    assert k_number(2, 1, 2) == 1
    assert k_number(1, 0, 0) == Fraction(3, 2)
    with pytest.raises(DomainError):
        k_number(1, 2, 0)


def test_f_polynomial_explicit_forms():
    for M in range(2, 9):
        assert f_polynomial(M, M) == RationalPolynomial([Fraction(1, M)])
        assert f_polynomial(M - 1, M) == RationalPolynomial([0, 1])
        # the closed forms are stated for positive index only
        if M > 2:
            want = RationalPolynomial([-Fraction(M, 12), 0, 1]) * Fraction(math.comb(M, 2), M)
            assert f_polynomial(M - 2, M) == want
        if M > 3:
            want = RationalPolynomial([0, -Fraction(M, 4), 0, 1]) * Fraction(math.comb(M, 3), M)
            assert f_polynomial(M - 3, M) == want
        if M > 4:
            want = RationalPolynomial([Fraction(M * (5 * M + 2), 240), 0, -Fraction(M, 2), 0, 1])
            assert f_polynomial(M - 4, M) == want * Fraction(math.comb(M, 4), M)


def test_f_polynomial_index_zero():
    assert f_polynomial(0, 2) == RationalPolynomial([Fraction(-1, 2), 0, Fraction(1, 2)])
    with pytest.raises(DomainError):
        f_polynomial(4, 3)


def test_f_polynomial_parity_and_derivative():
    for M in range(2, 9):
        for k in range(0, M):
            f = f_polynomial(M - k, M)
            if M - k == 0:
                continue
            assert f.is_even() if k % 2 == 0 else f.is_odd()
            if M - k + 1 <= M:
                assert f.derivative() == f_polynomial(M - k + 1, M) * (M - k + 1)


def test_f_polynomial_recursion():
    x = RationalPolynomial.x()
    for M in range(2, 7):
        for j in range(1, M + 1):
            left = f_polynomial(j, M + 1).shift(Fraction(-1, 2))
            right = (x - Fraction(M, 2)) * f_polynomial(j, M)
            if j - 1 >= 1 or j - 1 == 0:
                right = right + f_polynomial(j - 1, M) * Fraction(j - 1, j)
            assert left == right


def test_l_value_needs_mean_zero():
    C = PeriodicFunction(4, {1: 1, 3: -1}, -1)
    assert l_value(C, 0) == Fraction(1, 2)  # Dirichlet L(0, chi_4)
    with pytest.raises(DomainError):
        l_value(PeriodicFunction(4, {1: 1, 3: 1}, 1), 0)


def test_pairwise_coprime():
    assert is_pairwise_coprime((2, 3, 5)) is None
    assert is_pairwise_coprime((2, 4, 5)) == (2, 4)


def test_interpolate_exact():
    poly = interpolate([0, 1, 2, 3], [1, 8, 27, 64])
    assert poly == RationalPolynomial([1, 3, 3, 1])
