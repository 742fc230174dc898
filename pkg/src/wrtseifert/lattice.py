"""Lattice points in the tetrahedron ``sum l_j/p_j < 1`` and related counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapacityError, ConsistencyError, DomainError, ValidationError
from .exact import dedekind_sum, is_pairwise_coprime
from .modular import c_value
from .polynomial import RationalPolynomial, interpolate
from .seifert import (
    Label,
    SeifertData,
    _interior_tuples,
    casson_invariant,
    chi_support,
    label_sum,
    orbit_representatives,
)

# Brute-force envelope for the Ehrhart dilates.
MAX_EHRHART_PRODUCT = 10**7


@dataclass(frozen=True)
class EhrhartPoly:
    closure_poly: RationalPolynomial
    open_counts: list
    closure_counts: list

    def coefficient(self, i: int) -> Fraction:
        return self.closure_poly[i]


@dataclass(frozen=True)
class ConjectureReport:
    D: int
    gamma: int
    L: int
    vanishing_labels: list
    coincidence_map: list

    @property
    def holds(self) -> bool:
        return self.D - self.gamma == self.L


def _check_positive(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if not p:
        raise ValidationError("need at least one entry")
    if any(x < 1 for x in p):
        raise ValidationError(f"entries must be positive, got {p}")
    return p


def interior_count(p: Sequence[int]) -> int:
    """Number of ``l`` with ``l_j >= 1`` and ``sum l_j/p_j < 1``."""
    return sum(1 for _ in _interior_tuples(_check_positive(p)))


def mordell_count(p: Sequence[int]) -> Fraction:
    """Dedekind-sum closed form of :func:`interior_count` for three or four entries."""
    p = _check_positive(p)
    if len(p) not in (3, 4):
        raise ValidationError(f"unsupported: closed form needs 3 or 4 entries, got {len(p)}")
    bad = is_pairwise_coprime(p)
    if bad is not None:
        raise ValidationError(f"p must be pairwise coprime: ({bad[0]},{bad[1]})")
    P = math.prod(p)
    if len(p) == 3:
        out = Fraction(math.prod(x - 1 for x in p), 4) + Fraction(1, 12 * P) - Fraction(1, 4)
        out -= Fraction(P, 12) * (1 - sum(Fraction(1, x * x) for x in p))
        out -= sum(dedekind_sum(P // x, x) for x in p)
    else:
        out = Fraction(math.prod(x - 1 for x in p), 8) + Fraction(3, 8) - Fraction(P, 12)
        out += Fraction(P, 24) * sum(Fraction(1 + x, x * x) for x in p)
        out += Fraction(1 - sum(p), 24 * P)
        pairs = [(a, b) for a in range(4) for b in range(4) if a != b]
        out -= Fraction(P, 24) * sum(Fraction(1, p[a] ** 2 * p[b]) for a, b in pairs)
        out -= Fraction(1, 2) * sum(dedekind_sum(P // x, x) for x in p)
        out += Fraction(1, 2) * sum(dedekind_sum(P // (p[a] * p[b]), p[a]) for a, b in pairs)
    if out.denominator != 1 or out < 0:
        raise ConsistencyError(f"closed form gave {out}, not a nonnegative integer")
    return out


def gamma_count(m: SeifertData) -> tuple[int, list[Label]]:
    """Number of orbit representatives with ``C != 0`` and the vanishing ones."""
    vanishing = []
    gamma = 0
    for l in orbit_representatives(m):
        if c_value(m, l):
            gamma += 1
        else:
            vanishing.append(l)
    return gamma, vanishing


def _chi_key(m: SeifertData, l) -> frozenset:
    return frozenset(chi_support(m, l).items())


def conjecture_report(m: SeifertData) -> ConjectureReport:
    """Compare ``D - gamma`` with the interior lattice count.

    For vanishing labels outside the tetrahedron, look for an interior label
    with the same periodic function.
    """
    gamma, vanishing = gamma_count(m)
    interior = [Label(t) for t in _interior_tuples(m.p)]
    L = len(interior)
    for l in interior:
        if c_value(m, l):
            raise ConsistencyError(f"C does not vanish at interior label {l}")
    if m.D - gamma < L:
        raise ConsistencyError(f"D - gamma = {m.D - gamma} is below the lattice count {L}")
    by_chi = {_chi_key(m, l): l for l in interior}
    coincidence = []
    for l in vanishing:
        if label_sum(m, l) < 1:
            coincidence.append((l, l))
        else:
            coincidence.append((l, by_chi.get(_chi_key(m, l))))
    return ConjectureReport(m.D, gamma, L, vanishing, coincidence)


def _count_closed(p: tuple[int, ...], t: int) -> int:
    """``#{m >= 0 : sum m_j/p_j <= t}``."""
    P = math.prod(p)
    weights = [P // x for x in p]
    budget = t * P

    def rec(j: int, rest: int) -> int:
        if j == len(p) - 1:
            return rest // weights[j] + 1
        total = 0
        used = 0
        while used <= rest:
            total += rec(j + 1, rest - used)
            used += weights[j]
        return total

    return rec(0, budget)


def _count_open(p: tuple[int, ...], t: int) -> int:
    """``#{m >= 1 : sum m_j/p_j < t}``."""
    P = math.prod(p)
    weights = [P // x for x in p]

    def rec(j: int, rest: int) -> int:
        # strict inequality: need sum of remaining weights < rest
        if j == len(p) - 1:
            return max(0, (rest - 1) // weights[j])
        total = 0
        used = weights[j]
        while used < rest:
            total += rec(j + 1, rest - used)
            used += weights[j]
        return total

    return rec(0, t * P)


def ehrhart_polynomial(p: Sequence[int]) -> EhrhartPoly:
    """Interpolate the closure counts at ``t = 0..M`` and check ``t = M + 1``."""
    p = _check_positive(p)
    M = len(p)
    if math.prod(p) > MAX_EHRHART_PRODUCT:
        raise CapacityError(f"product {math.prod(p)} exceeds the counting limit {MAX_EHRHART_PRODUCT}")
    ts = list(range(M + 1))
    closed = [_count_closed(p, t) for t in ts]
    poly = interpolate(ts, closed)
    extra = _count_closed(p, M + 1)
    if poly(M + 1) != extra:
        raise ConsistencyError(f"interpolant gives {poly(M + 1)} at t={M + 1}, count is {extra}")
    lead = Fraction(math.prod(p), math.factorial(M))
    if poly[M] != lead:
        raise ConsistencyError(f"leading coefficient {poly[M]} differs from the volume {lead}")
    opened = [_count_open(p, t) for t in range(1, M + 1)]
    return EhrhartPoly(poly, opened, closed + [extra])


def reciprocity_residuals(e: EhrhartPoly, ts=(1, 2, 3)) -> list[Fraction]:
    """``E(-t) - (-1)^M * interior(t)``; all zero by Ehrhart-Macdonald reciprocity."""
    M = e.closure_poly.degree
    out = []
    for t in ts:
        if t <= len(e.open_counts):
            inner = e.open_counts[t - 1]
        else:
            raise DomainError(f"no interior count stored for t={t}")
        out.append(e.closure_poly(-t) - (-1) ** M * inner)
    return out


def c_coefficient(p: Sequence[int]) -> Fraction:
    """Closed form of ``c_{M-2}`` for pairwise coprime entries."""
    p = _check_positive(p)
    if len(p) < 2:
        raise ValidationError("need at least two entries")
    bad = is_pairwise_coprime(p)
    if bad is not None:
        raise ValidationError(f"p must be pairwise coprime: ({bad[0]},{bad[1]})")
    M = len(p)
    P = math.prod(p)
    q = [P // x for x in p]
    v = Fraction(M, 4) + Fraction(2 - sum(x * x for x in q) + 3 * sum(q) ** 2, 24 * P)
    v -= sum(dedekind_sum(P // x, x) for x in p)
    return v / math.factorial(M - 2)


def casson_ehrhart_rhs(m: SeifertData) -> Fraction:
    """Right side of the Casson/Ehrhart identity, with ``-(M-2)P/24``."""
    P, M = m.P, m.M
    pairs = sum(Fraction(1, m.p[j] * m.p[k]) for j in range(M) for k in range(j + 1, M))
    return -Fraction(M + 1, 8) - Fraction((M - 2) * P, 24) - Fraction(P, 8) * pairs


def casson_ehrhart_check(m: SeifertData) -> Fraction:
    """Residual of ``lambda_C - (M-2)!/2 c_{M-2} = rhs``; raises unless exactly 0."""
    lhs = casson_invariant(m) - Fraction(math.factorial(m.M - 2), 2) * c_coefficient(m.p)
    res = lhs - casson_ehrhart_rhs(m)
    if res:
        raise ConsistencyError(f"Casson/Ehrhart residual {res} for {m}")
    return res
