"""Exact integer and rational special functions.

Everything here returns ``int`` or :class:`fractions.Fraction`; no floating
point is involved.  Tables (Bernoulli polynomials, Stirling and Lah numbers)
are built by integer recurrences and memoised.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Mapping

from .errors import DomainError
from .polynomial import RationalPolynomial


def sawtooth(x) -> Fraction:
    """``((x))``: ``x - floor(x) - 1/2`` off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum(b: int, a: int) -> Fraction:
    """Dedekind sum ``s(b, a) = sum_{k=1}^{a-1} ((k/a)) ((kb/a))``.

    Evaluated straight from the definition with integers: for ``0 < k < a``
    we have ``((k/a)) = (2k - a) / 2a``, and the second factor vanishes when
    ``a | kb``.
    """
    if a < 1:
        raise DomainError(f"dedekind_sum needs a >= 1, got a={a}")
    total = 0
    bm = b % a
    r = 0
    for k in range(1, a):
        r += bm
        if r >= a:
            r -= a
        if r:
            total += (2 * k - a) * (2 * r - a)
    return Fraction(total, 4 * a * a)


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """``B_n = B_n(0)`` with the convention ``B_1 = -1/2``."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = sum(comb(n + 1, j) * bernoulli_number(j) for j in range(n))
    return -s / (n + 1)


@lru_cache(maxsize=None)
def bernoulli_polynomial(k: int) -> RationalPolynomial:
    """The Bernoulli polynomial ``B_k(x) = sum_j C(k, j) B_j x^(k-j)``."""
    if k < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = comb(k, j) * bernoulli_number(j)
    return RationalPolynomial(coeffs)


def bernoulli_weighted_sum(weights: Mapping[int, int], k: int, denominator: int) -> Fraction:
    """``sum_n w[n] * B_k(n / denominator)`` using integer power sums.

    Much faster than evaluating the polynomial once per point with
    Fractions when there are many points.
    """
    poly = bernoulli_polynomial(k)
    power_sums = [0] * (k + 1)
    for n, w in weights.items():
        if not w:
            continue
        t = w
        for i in range(k + 1):
            power_sums[i] += t
            t *= n
    total = Fraction(0)
    for i, c in enumerate(poly.coefficients):
        if c and power_sums[i]:
            total += c * Fraction(power_sums[i], denominator**i)
    return total


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    # S_{n}^{(m)} = S_{n-1}^{(m-1)} - (n-1) S_{n-1}^{(m)}
    row = [0] * (n + 1)
    for m in range(n + 1):
        a = prev[m - 1] if m >= 1 else 0
        b = prev[m] if m < len(prev) else 0
        row[m] = a - (n - 1) * b
    return tuple(row)


def stirling_first(n: int, m: int) -> int:
    """Signed Stirling number of the first kind: ``prod_{j<n}(x-j) = sum_m S_n^(m) x^m``."""
    if n < 0 or m < 0:
        raise DomainError("Stirling indices must be nonnegative")
    if m > n:
        return 0
    return _stirling_row(n)[m]


@lru_cache(maxsize=None)
def _lah_row(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    prev = _lah_row(n - 1)
    k = n - 1
    # A_{k+1}^{(m)} = A_k^{(m-1)} + (k + m) A_k^{(m)}
    row = [0] * (n + 1)
    for m in range(1, n + 1):
        a = prev[m - 1]
        b = prev[m] if m < len(prev) else 0
        row[m] = a + (k + m) * b
    return tuple(row)


def lah_number(n: int, m: int) -> int:
    """Unsigned Lah number ``A_n^(m) = n!/m! * C(n-1, m-1)``, ``1 <= m <= n``."""
    if m < 1 or m > n:
        raise DomainError(f"lah_number needs 1 <= m <= n, got n={n}, m={m}")
    return _lah_row(n)[m]


def k_number(b: int, x: int, j: int) -> Fraction:
    """``K_{b,x}^(j) = C(b, j) * prod_{k=0}^{b-j-1} (1/2 + b - x - k)``."""
    if b < 0 or j < 0:
        raise DomainError("k_number needs nonnegative b and j")
    if x not in (0, 1):
        raise DomainError("k_number parity argument must be 0 or 1")
    if j > b:
        raise DomainError(f"k_number needs j <= b, got j={j}, b={b}")
    out = Fraction(comb(b, j))
    for k in range(b - j):
        out *= Fraction(1, 2) + b - x - k
    return out


@lru_cache(maxsize=None)
def f_polynomial(m: int, M: int) -> RationalPolynomial:
    """The Stirling analogue of the Bernoulli polynomial.

    ``f_m^M(x) = sum_{k=max(m,1)}^{M} S_M^(k)/k * C(k, m) * (x + M/2)^(k-m)``.
    """
    if M < 1 or m < 0:
        raise DomainError("f_polynomial needs M >= 1 and m >= 0")
    if m > M:
        raise DomainError(f"f_polynomial needs m <= M, got m={m}, M={M}")
    shift = RationalPolynomial([Fraction(M, 2), 1])
    total = RationalPolynomial()
    for k in range(max(m, 1), M + 1):
        s = stirling_first(M, k)
        if s:
            total = total + (shift ** (k - m)) * Fraction(s * comb(k, m), k)
    return total


def l_value(C, s: int) -> Fraction:
    """``L(s, C)`` at a nonpositive integer for a mean-zero periodic function.

    Uses ``zeta(1-k, z) = -B_k(z)/k`` so that
    ``L(s, C) = -f^(-s)/(1-s) * sum_{k=1}^{f} C(k) B_{1-s}(k/f)``.
    ``C`` needs ``modulus`` and ``items()`` (residue, value) like
    :class:`~wrtseifert.periodic.PeriodicFunction`.
    """
    if s > 0:
        raise DomainError("l_value is only available at s <= 0")
    f = C.modulus
    items = dict(C.items())
    if sum(items.values()) != 0:
        raise DomainError("l_value needs a periodic function with mean value zero")
    k = 1 - s
    # residue 0 is evaluated at k = f
    shifted = {(n if n else f): v for n, v in items.items() if v}
    return -Fraction(f ** (-s), k) * bernoulli_weighted_sum(shifted, k, f)


def is_pairwise_coprime(ps) -> tuple[int, int] | None:
    """Return the first non-coprime pair, or None."""
    ps = list(ps)
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            if gcd(ps[i], ps[j]) != 1:
                return ps[i], ps[j]
    return None
