"""High-precision complex values, exact phases and deterministic summation.

Roots of unity are carried as exact rational *turns* (``exp(2 pi i t)``) and
only converted to floating point at the last moment.  Floating values are
mpmath numbers tagged with the precision they were produced at.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Union

import mpmath
from mpmath import mp

from .exact import DomainError, bernoulli_polynomial, stirling_first

DEFAULT_PRECISION = 128
CHUNK_SIZE = 1 << 16

Real = Union[int, Fraction, "mpmath.mpf"]


def _check_precision(bits: int) -> int:
    bits = int(bits)
    if bits < 53:
        raise DomainError(f"precision_bits must be >= 53, got {bits}")
    return bits


def to_mpf(x) -> mpmath.mpf:
    """Convert int/Fraction/mpf to mpf at the current working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@dataclass(frozen=True)
class PhaseTurns:
    """The root of unity ``exp(2 pi i * turns)`` with ``turns`` exact in [0, 1)."""

    turns: Fraction

    def __post_init__(self):
        t = Fraction(self.turns)
        object.__setattr__(self, "turns", t - (t.numerator // t.denominator))

    def __add__(self, other: "PhaseTurns") -> "PhaseTurns":
        return PhaseTurns(self.turns + PhaseTurns._as_turns(other))

    def __sub__(self, other: "PhaseTurns") -> "PhaseTurns":
        return PhaseTurns(self.turns - PhaseTurns._as_turns(other))

    def __neg__(self) -> "PhaseTurns":
        return PhaseTurns(-self.turns)

    def __mul__(self, n: int) -> "PhaseTurns":
        return PhaseTurns(self.turns * n)

    __rmul__ = __mul__

    @staticmethod
    def _as_turns(x) -> Fraction:
        return x.turns if isinstance(x, PhaseTurns) else Fraction(x)

    def exp(self, precision_bits: int = DEFAULT_PRECISION) -> "HPComplex":
        return phase_exp(self, precision_bits)


class HPComplex:
    """Complex number with an explicit binary precision.

    Arithmetic runs at the larger precision of the operands, so mixing a
    128-bit and a 192-bit value yields a 192-bit result.
    """

    __slots__ = ("real", "imag", "precision_bits")

    def __init__(self, real=0, imag=0, precision_bits: int = DEFAULT_PRECISION):
        prec = _check_precision(precision_bits)
        with mpmath.workprec(prec):
            if isinstance(real, mpmath.mpc):
                re, im = +real.real, +real.imag
            else:
                re, im = +to_mpf(real), +to_mpf(imag)
        self.real = re
        self.imag = im
        self.precision_bits = prec

    @classmethod
    def from_mpc(cls, z, precision_bits: int) -> "HPComplex":
        z = mpmath.mpmathify(z)
        if isinstance(z, mpmath.mpc):
            return cls(z.real, z.imag, precision_bits)
        return cls(z, 0, precision_bits)

    @property
    def mpc(self) -> mpmath.mpc:
        # mpc() and unary minus round to the ambient precision, so pin it
        with mpmath.workprec(self.precision_bits):
            return mpmath.mpc(self.real, self.imag)

    def _binary(self, other, op):
        if isinstance(other, HPComplex):
            prec = max(self.precision_bits, other.precision_bits)
            b = other.mpc
        else:
            prec = self.precision_bits
            b = other
        with mpmath.workprec(prec):
            if isinstance(b, Fraction):
                b = to_mpf(b)
            return HPComplex.from_mpc(op(self.mpc, b), prec)

    def __add__(self, o):
        return self._binary(o, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, o):
        return self._binary(o, lambda a, b: a - b)

    def __rsub__(self, o):
        return self._binary(o, lambda a, b: b - a)

    def __mul__(self, o):
        return self._binary(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._binary(o, lambda a, b: a / b)

    def __rtruediv__(self, o):
        return self._binary(o, lambda a, b: b / a)

    def __neg__(self):
        with mpmath.workprec(self.precision_bits):
            return HPComplex(-self.real, -self.imag, self.precision_bits)

    def __abs__(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision_bits):
            return mpmath.hypot(self.real, self.imag)

    def conjugate(self) -> "HPComplex":
        with mpmath.workprec(self.precision_bits):
            return HPComplex(self.real, -self.imag, self.precision_bits)

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __eq__(self, other) -> bool:
        if isinstance(other, HPComplex):
            return self.real == other.real and self.imag == other.imag
        return NotImplemented

    def __hash__(self):
        return hash((self.real, self.imag))

    def __repr__(self) -> str:
        return f"HPComplex({self.to_string()}, prec={self.precision_bits})"

    def digits(self) -> int:
        """Significant decimal digits that pin down a value of this precision."""
        return int(math.ceil(self.precision_bits * math.log10(2))) + 2

    def decimal_parts(self, digits: int | None = None) -> tuple[str, str]:
        d = digits or self.digits()
        with mpmath.workprec(self.precision_bits):
            return (
                mpmath.nstr(self.real, d, strip_zeros=False, min_fixed=-5, max_fixed=20),
                mpmath.nstr(self.imag, d, strip_zeros=False, min_fixed=-5, max_fixed=20),
            )

    def to_string(self, digits: int | None = None) -> str:
        re, im = self.decimal_parts(digits)
        if im.startswith("-"):
            return f"{re} - {im[1:]}i"
        return f"{re} + {im}i"

    def ulp(self) -> mpmath.mpf:
        """Unit in the last place of the larger component."""
        with mpmath.workprec(self.precision_bits):
            m = max(abs(self.real), abs(self.imag))
            if m == 0:
                return mpmath.mpf(0)
            return mpmath.ldexp(1, int(mpmath.floor(mpmath.log(m, 2))) + 1 - self.precision_bits)


def phase_exp(t, precision_bits: int = DEFAULT_PRECISION) -> HPComplex:
    """``exp(2 pi i t)`` for exact rational ``t``.

    The turn is reduced mod 1 exactly and folded into the first octant
    before any trigonometric evaluation.
    """
    prec = _check_precision(precision_bits)
    u = PhaseTurns._as_turns(t) if not isinstance(t, PhaseTurns) else t.turns
    u = u - (u.numerator // u.denominator)
    # fold into [0, 1/8] using exact rational symmetries
    quadrant = int(u * 4)
    v = u - Fraction(quadrant, 4)
    swap = v > Fraction(1, 8)
    if swap:
        v = Fraction(1, 4) - v
    with mpmath.workprec(prec + 16):
        if v == 0:
            c, s = mpmath.mpf(1), mpmath.mpf(0)
        else:
            x = 2 * to_mpf(v)
            c, s = mpmath.cospi(x), mpmath.sinpi(x)
        if swap:
            c, s = s, c
        for _ in range(quadrant):
            c, s = -s, c
    return HPComplex(c, s, prec)


def _exact(x: mpmath.mpf) -> tuple[int, int]:
    sign, man, exp, _ = x._mpf_
    if not man:
        return 0, 0
    return (-int(man) if sign else int(man)), int(exp)


def _add_exact(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    (m1, e1), (m2, e2) = a, b
    if m1 == 0:
        return b
    if m2 == 0:
        return a
    e = min(e1, e2)
    return (m1 << (e1 - e)) + (m2 << (e2 - e)), e


def _chunk_partial(chunk: list[HPComplex]) -> tuple[tuple[int, int], tuple[int, int], int]:
    re = (0, 0)
    im = (0, 0)
    prec = 0
    for z in chunk:
        re = _add_exact(re, _exact(z.real))
        im = _add_exact(im, _exact(z.imag))
        prec = max(prec, z.precision_bits)
    return re, im, prec


def compensated_sum(
    terms: Iterable[HPComplex],
    chunk_size: int = CHUNK_SIZE,
    workers: int = 1,
) -> HPComplex:
    """Deterministic sum of a finite stream of :class:`HPComplex`.

    Each chunk of ``chunk_size`` consecutive terms is accumulated exactly
    (binary floating values are dyadic rationals), chunk partials are
    combined in index order, and the total is rounded once.  The result is
    the correctly rounded exact sum, so it does not depend on ``workers``.
    """
    if chunk_size < 1:
        raise DomainError("chunk_size must be positive")
    it = iter(terms)

    def chunks():
        while True:
            block = list(islice(it, chunk_size))
            if not block:
                return
            yield block

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_chunk_partial, chunks()))
    else:
        partials = [_chunk_partial(c) for c in chunks()]

    re, im, prec = (0, 0), (0, 0), 0
    for r, i, p in partials:
        re = _add_exact(re, r)
        im = _add_exact(im, i)
        prec = max(prec, p)
    prec = prec or DEFAULT_PRECISION
    with mpmath.workprec(prec):
        return HPComplex(mpmath.mpf(re), mpmath.mpf(im), prec)


def gauss_reciprocity_check(N: int, Mm: int, k, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``|LHS - RHS|`` of the quadratic Gauss sum reciprocity law.

    ``sum_{n mod N} e(Mm n^2 / 2N + k n)`` against
    ``sqrt|N/Mm| e(sign(N Mm)/8) sum_{n mod Mm} e(-N (n+k)^2 / 2Mm)``,
    where ``e(x) = exp(2 pi i x)``.
    """
    k = Fraction(k)
    if N == 0 or Mm == 0:
        raise DomainError("N and Mm must be nonzero")
    if (N * Mm) % 2:
        raise DomainError("N * Mm must be even")
    if (N * k).denominator != 1:
        raise DomainError("N * k must be an integer")
    prec = _check_precision(precision_bits)
    lhs = compensated_sum(
        phase_exp(Fraction(Mm * n * n, 2 * N) + k * n, prec + 32) for n in range(abs(N))
    )
    rhs_sum = compensated_sum(
        phase_exp(-Fraction(N, 2 * Mm) * (n + k) ** 2, prec + 32) for n in range(abs(Mm))
    )
    sign = 1 if N * Mm > 0 else -1
    with mpmath.workprec(prec + 32):
        rhs = mpmath.sqrt(abs(mpmath.mpf(N) / Mm)) * phase_exp(Fraction(sign, 8), prec + 32).mpc * rhs_sum.mpc
        diff = abs(lhs.mpc - rhs)
    with mpmath.workprec(prec):
        return +diff


def omega_bernoulli_closed_form(N: int, k: int, a: int) -> Fraction:
    """Right side of the root-of-unity Bernoulli identity (exact rational)."""
    total = Fraction(0)
    for j in range(1, k + 1):
        B = bernoulli_polynomial(j)
        total += Fraction(stirling_first(k, j), j) * (B(Fraction(1)) - N**j * B(Fraction(a + 1, N)))
    return (-1) ** k * total / math.factorial(k - 1)


def omega_bernoulli_check(N: int, k: int, a: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``|sum_{c=1}^{N-1} w^{(a+1)c} / (1 - w^c)^k - closed form|`` with ``w = e(1/N)``."""
    if N < 2:
        raise DomainError("omega_bernoulli_check needs N >= 2")
    if k < 1:
        raise DomainError("omega_bernoulli_check needs k >= 1")
    if not 0 <= a <= N - 1:
        raise DomainError("omega_bernoulli_check needs 0 <= a <= N-1")
    prec = _check_precision(precision_bits)
    work = prec + 32
    terms = []
    with mpmath.workprec(work):
        for c in range(1, N):
            num = phase_exp(Fraction((a + 1) * c, N), work).mpc
            w = phase_exp(Fraction(c, N), work).mpc
            terms.append(HPComplex.from_mpc(num / (1 - w) ** k, work))
        lhs = compensated_sum(terms).mpc
        diff = abs(lhs - to_mpf(omega_bernoulli_closed_form(N, k, a)))
    with mpmath.workprec(prec):
        return +diff
