"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class RationalPolynomial:
    """Polynomial ``sum_k c[k] x**k`` over the rationals.

    Coefficients are stored lowest degree first and trailing zeros are
    stripped, so the zero polynomial has an empty coefficient list and
    degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[Number] = ()):
        self._c = tuple(_trim([Fraction(c) for c in coefficients]))

    @classmethod
    def constant(cls, c: Number) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __call__(self, x):
        # Horner; works for Fraction, int, mpf or another polynomial.
        acc = 0 if not isinstance(x, RationalPolynomial) else RationalPolynomial()
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == RationalPolynomial([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self._c):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*x^{k}" if k > 1 else f"{c}*x")
        return " + ".join(terms) or "0"

    def __repr__(self) -> str:
        return f"RationalPolynomial({self})"

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other])
        raise TypeError(f"cannot combine RationalPolynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return RationalPolynomial([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self._c])

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self._c or not o._c:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(o._c):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = RationalPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([k * c for k, c in enumerate(self._c)][1:])

    def shift(self, h: Number) -> "RationalPolynomial":
        """Return ``x -> self(x + h)``."""
        h = Fraction(h)
        out = [Fraction(0)] * len(self._c)
        for k, c in enumerate(self._c):
            if c == 0:
                continue
            hp = Fraction(1)
            for i in range(k, -1, -1):
                out[i] += c * comb(k, i) * hp
                hp *= h
        return RationalPolynomial(out)

    def scale(self, s: Number) -> "RationalPolynomial":
        """Return ``x -> self(s * x)``."""
        s = Fraction(s)
        return RationalPolynomial([c * s**k for k, c in enumerate(self._c)])

    def is_even(self) -> bool:
        return all(c == 0 for k, c in enumerate(self._c) if k % 2)

    def is_odd(self) -> bool:
        return all(c == 0 for k, c in enumerate(self._c) if k % 2 == 0)


def interpolate(xs: Sequence[Number], ys: Sequence[Number]) -> RationalPolynomial:
    """Exact Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = RationalPolynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = RationalPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * RationalPolynomial([-Fraction(xj), 1])
            denom *= Fraction(xi) - Fraction(xj)
        total = total + basis * (Fraction(yi) / denom)
    return total
