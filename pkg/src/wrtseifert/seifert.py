"""Seifert fibered homology spheres, their periodic functions and labels."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError, ValidationError
from .exact import dedekind_sum, is_pairwise_coprime
from .periodic import PeriodicFunction


@dataclass(frozen=True)
class Label:
    """An M-tuple ``ell`` with ``1 <= ell_j <= p_j - 1``."""

    ell: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(int(x) for x in self.ell))

    def __iter__(self):
        return iter(self.ell)

    def __len__(self):
        return len(self.ell)

    def __getitem__(self, j):
        return self.ell[j]

    def __lt__(self, other: "Label") -> bool:
        return self.ell < other.ell

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.ell)) + ")"


@dataclass(frozen=True)
class LabelOrbit:
    """Class of labels under an even number of flips ``ell_j -> p_j - ell_j``."""

    representative: Label
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, label) -> bool:
        return _as_tuple(label) in {m.ell for m in self.members}


def _as_tuple(label) -> tuple[int, ...]:
    return label.ell if isinstance(label, Label) else tuple(int(x) for x in label)


@dataclass(frozen=True)
class SeifertData:
    """The homology sphere with exceptional fibers of orders ``p``.

    ``phi_value`` pins the phase invariant to a given rational instead of
    the Dedekind-sum formula; it exists so that published tables computed
    with a different value can be reproduced.
    """

    p: tuple[int, ...]
    phi_value: Fraction | None = None

    @property
    def M(self) -> int:
        return len(self.p)

    @cached_property
    def P(self) -> int:
        return math.prod(self.p)

    @cached_property
    def D(self) -> int:
        return math.prod(pj - 1 for pj in self.p) // 2 ** (self.M - 1)

    @cached_property
    def phi(self) -> Fraction:
        if self.phi_value is not None:
            return Fraction(self.phi_value)
        return phi_invariant(self)

    @property
    def eveodd(self) -> int:
        return self.M % 2

    def label(self, ell) -> Label:
        """Validate ``ell`` against the fiber orders."""
        t = _as_tuple(ell)
        if len(t) != self.M:
            raise ValidationError(f"label needs {self.M} entries, got {len(t)}")
        for lj, pj in zip(t, self.p):
            if not 1 <= lj <= pj - 1:
                raise ValidationError(f"label entry {lj} outside [1, {pj - 1}]")
        return Label(t)

    def __str__(self) -> str:
        return "Sigma(" + ",".join(map(str, self.p)) + ")"


def make_manifold(p: Iterable[int], phi=None) -> SeifertData:
    p = tuple(int(x) for x in p)
    if len(p) < 3:
        raise ValidationError(f"unsupported: need at least 3 exceptional fibers, got {len(p)}")
    for pj in p:
        if pj < 2:
            raise ValidationError(f"fiber orders must be >= 2, got {pj}")
    bad = is_pairwise_coprime(p)
    if bad is not None:
        raise ValidationError(f"p must be pairwise coprime: ({bad[0]},{bad[1]})")
    return SeifertData(p, None if phi is None else Fraction(phi))


def phi_invariant(m: SeifertData) -> Fraction:
    """``3 - 1/P + 12 sum_j s(P/p_j, p_j)``, ignoring any pinned value."""
    P = m.P
    return 3 - Fraction(1, P) + 12 * sum(dedekind_sum(P // pj, pj) for pj in m.p)


def casson_invariant(m: SeifertData) -> Fraction:
    P, M = m.P, m.M
    s = sum(dedekind_sum(P // pj, pj) for pj in m.p)
    sq = sum((P // pj) ** 2 for pj in m.p)
    return Fraction(-1, 8) + Fraction(1 + sq - (M - 2) * P * P, 24 * P) - s / 2


def label_sum(m: SeifertData, l) -> Fraction:
    """``sum_j ell_j / p_j``."""
    return sum((Fraction(lj, pj) for lj, pj in zip(_as_tuple(l), m.p)), Fraction(0))


def chern_simons(m: SeifertData, l) -> Fraction:
    """``-(P/4)(1 + sum ell_j/p_j)^2 mod 1``."""
    l = m.label(l)
    x = -Fraction(m.P, 4) * (1 + label_sum(m, l)) ** 2
    return x - (x.numerator // x.denominator)


def canonical_label(m: SeifertData, l) -> Label:
    """Lexicographically smallest member of the orbit of ``l``."""
    t = m.label(l).ell
    low = [min(lj, pj - lj) for lj, pj in zip(t, m.p)]
    if any(2 * lj == pj for lj, pj in zip(t, m.p)):
        return Label(low)
    flips = sum(1 for lj, lo in zip(t, low) if lj != lo)
    if flips % 2:
        low[-1] = m.p[-1] - low[-1]
    return Label(low)


def orbit_members(m: SeifertData, l) -> frozenset:
    t = m.label(l).ell
    out = set()
    for fl in itertools.product((0, 1), repeat=m.M):
        if sum(fl) % 2 == 0:
            out.add(Label(tuple(pj - lj if f else lj for lj, pj, f in zip(t, m.p, fl))))
    return frozenset(out)


def orbit_representatives(m: SeifertData) -> list[Label]:
    """The D canonical labels in lexicographic order (members not built)."""
    reps = []
    halves = [range(1, pj // 2 + 1) for pj in m.p]
    for low in itertools.product(*halves):
        reps.append(Label(low))
        if not any(2 * lj == pj for lj, pj in zip(low, m.p)):
            reps.append(Label(low[:-1] + (m.p[-1] - low[-1],)))
    reps.sort()
    if len(reps) != m.D:
        raise ConsistencyError(f"found {len(reps)} orbits, expected D={m.D}")
    return reps


def enumerate_orbits(m: SeifertData) -> list[LabelOrbit]:
    return [LabelOrbit(r, orbit_members(m, r)) for r in orbit_representatives(m)]


def chi_support(m: SeifertData, l) -> dict[int, int]:
    """Nonzero values of the periodic function attached to ``l``."""
    t = _as_tuple(l)
    P = m.P
    cof = [lj * (P // pj) for lj, pj in zip(t, m.p)]
    support: dict[int, int] = {}
    for eps in itertools.product((1, -1), repeat=m.M):
        n = (P + sum(e * c for e, c in zip(eps, cof))) % (2 * P)
        # distinct sign vectors never collide for a valid label
        assert n not in support, f"residue collision at {n} for label {t}"
        support[n] = -math.prod(eps)
    return support


def chi_function(m: SeifertData, l) -> PeriodicFunction:
    l = m.label(l)
    return PeriodicFunction(2 * m.P, chi_support(m, l), -1 if m.M % 2 else 1)


def basis_periodic(P: int, a: int, kind: str) -> PeriodicFunction:
    """``theta_{2P}^{(a)}`` (kind ``even``) or ``psi_{2P}^{(a)}`` (kind ``odd``)."""
    if P < 1:
        raise DomainError("P must be positive")
    if kind == "even":
        if not 0 <= a <= P:
            raise DomainError(f"even basis function needs 0 <= a <= P, got a={a}")
        sup = {a % (2 * P): 1, (-a) % (2 * P): 1}
        return PeriodicFunction(2 * P, sup, 1)
    if kind == "odd":
        if not 0 < a < P:
            raise DomainError(f"odd basis function needs 0 < a < P, got a={a}")
        return PeriodicFunction(2 * P, {a: 1, 2 * P - a: -1}, -1)
    raise DomainError(f"kind must be 'even' or 'odd', got {kind!r}")


def eta_vectors(m: SeifertData, l, a: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """Sign vectors with ``2a - 1 < sum eta_j ell_j / p_j < 2a + 1`` and their sums."""
    t = _as_tuple(l)
    out = []
    for eta in itertools.product((1, -1), repeat=m.M):
        s = sum((Fraction(e * lj, pj) for e, lj, pj in zip(eta, t, m.p)), Fraction(0))
        if 2 * a - 1 < s < 2 * a + 1:
            out.append((eta, s))
    return out


def chi_generating_check(m: SeifertData, l) -> bool:
    """Check the generating product of ``chi`` as an exact Laurent identity in z.

    ``-z^P prod_j (z^{P l_j/p_j} - z^{-P l_j/p_j})`` plus, for every a >= 1
    and every sign vector with ``2a-1 < s < 2a+1`` (s the signed label sum),
    ``prod(eta) z^P (z^{aP} - z^{-aP}) (z^{P(s-a)} + (-1)^{M+1} z^{-P(s-a)})``
    must equal ``sum_{n<2P} chi(n) z^n``.
    """
    l = m.label(l)
    P, M = m.P, m.M
    poly: dict[int, int] = {}

    def add(e: Fraction, c: int):
        if e.denominator != 1:
            raise ConsistencyError(f"non-integral exponent {e}")
        k = int(e)
        poly[k] = poly.get(k, 0) + c

    for eps in itertools.product((1, -1), repeat=M):
        s = sum((Fraction(e * lj, pj) for e, lj, pj in zip(eps, l, m.p)), Fraction(0))
        add(P * (1 + s), -math.prod(eps))

    sign = (-1) ** (M + 1)
    a_max = int(label_sum(m, l) + 1) // 2 + 1
    for a in range(1, a_max + 1):
        for eta, s in eta_vectors(m, l, a):
            c = math.prod(eta)
            for ea, ca in ((a * P, 1), (-a * P, -1)):
                add(P + ea + P * (s - a), c * ca)
                add(P + ea - P * (s - a), c * ca * sign)

    poly = {k: v for k, v in poly.items() if v}
    expected = chi_support(m, l)
    for k in sorted(set(poly) | set(expected)):
        got, want = poly.get(k, 0), expected.get(k, 0)
        if not 0 <= k < 2 * P:
            want = 0
        if got != want:
            raise ConsistencyError(
                f"generating product differs at z^{k}: product gives {got}, chi gives {want}"
            )
    return True


def interior_labels(m: SeifertData) -> list[Label]:
    """Labels with ``sum ell_j/p_j < 1``."""
    out = []
    for t in _interior_tuples(m.p):
        out.append(Label(t))
    return out


def _interior_tuples(p: Sequence[int]):
    # depth-first with the remaining budget as an exact fraction
    M = len(p)

    def rec(j: int, rest: Fraction, prefix: tuple):
        if j == M:
            if rest > 0:
                yield prefix
            return
        lj = 1
        while lj < p[j] and Fraction(lj, p[j]) < rest:
            yield from rec(j + 1, rest - Fraction(lj, p[j]), prefix + (lj,))
            lj += 1

    yield from rec(0, Fraction(1), ())
