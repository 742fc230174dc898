"""Modular transformation data, C-values and Eichler integral limits.

The q-series evaluator at the end is deliberately naive: it sums the
defining series inside the upper half plane and is used as an independent
check of the closed-form limiting values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import CapacityError, DomainError
from .exact import bernoulli_polynomial, bernoulli_weighted_sum, l_value
from .hp import DEFAULT_PRECISION, HPComplex, PhaseTurns, compensated_sum, phase_exp, to_mpf
from .seifert import Label, SeifertData, chi_function, chi_support, label_sum, orbit_representatives

# Dense D x D matrices beyond this size are refused; use s_entry / s_row.
MAX_DENSE_DIM = 1024


@dataclass(frozen=True)
class TransformData:
    s_entries: object = None
    t_turns: tuple = ()
    n_entries: object = None
    m_entries: object = None
    labels: tuple = field(default=())


@dataclass(frozen=True)
class EichlerValue:
    value: HPComplex
    tau: Fraction
    label: Label
    derivative_order: int = 0


def _reduce2(x: Fraction) -> Fraction:
    """x mod 2, exact."""
    return x - 2 * ((x.numerator // x.denominator) // 2)


def _sinpi(x: Fraction) -> mpmath.mpf:
    return mpmath.sinpi(to_mpf(_reduce2(Fraction(x))))


def s_sign_exponent(m: SeifertData, l, lp) -> int:
    P, p = m.P, m.p
    x = P * (1 + sum(Fraction(a + b, pj) for a, b, pj in zip(l, lp, p)))
    for j in range(m.M):
        for k in range(m.M):
            if k != j:
                x += Fraction(P * l[j] * lp[k], p[j] * p[k])
    assert x.denominator == 1
    return int(x)


def s_entry(m: SeifertData, l, lp, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Entry ``S^{l}_{l'}`` (real for every M)."""
    l, lp = m.label(l), m.label(lp)
    M = m.M
    ipow = M - m.eveodd  # even, so i^ipow = (-1)^(ipow/2)
    sign = (-1) ** (ipow // 2) * (-1) ** s_sign_exponent(m, l, lp)
    with mpmath.workprec(precision_bits + 16):
        v = mpmath.mpf(2) ** M / mpmath.sqrt(2 * m.P)
        for a, b, pj in zip(l, lp, m.p):
            v *= _sinpi(Fraction(m.P * a * b, pj * pj))
        v *= sign
    with mpmath.workprec(precision_bits):
        return +v


def s_row(m: SeifertData, l, precision_bits: int = DEFAULT_PRECISION) -> list[mpmath.mpf]:
    """Row ``S^{l}_{l'}`` over the canonical representatives ``l'``."""
    return [s_entry(m, l, lp, precision_bits) for lp in orbit_representatives(m)]


def s_matrix(m: SeifertData, precision_bits: int = DEFAULT_PRECISION, max_dim: int = MAX_DENSE_DIM):
    """Dense S matrix, rows and columns in canonical-representative order."""
    if m.D > max_dim:
        raise CapacityError(f"D={m.D} exceeds the dense-matrix limit {max_dim}; use s_entry/s_row")
    reps = orbit_representatives(m)
    with mpmath.workprec(precision_bits):
        S = mpmath.matrix(m.D, m.D)
        for i, a in enumerate(reps):
            for j in range(i, m.D):
                S[i, j] = S[j, i] = s_entry(m, a, reps[j], precision_bits)
    return S


def t_phase(m: SeifertData, l) -> PhaseTurns:
    """``T^l = exp(2 pi i (P/4)(1 + sum l/p)^2)`` as exact turns."""
    l = m.label(l)
    return PhaseTurns(Fraction(m.P, 4) * (1 + label_sum(m, l)) ** 2)


def theta_psi_matrices(P: int, precision_bits: int = DEFAULT_PRECISION) -> TransformData:
    """The (P+1)x(P+1) matrix N and (P-1)x(P-1) matrix M of the theta/psi families."""
    if P < 2:
        raise DomainError("theta_psi_matrices needs P >= 2")
    with mpmath.workprec(precision_bits):
        Nm = mpmath.matrix(P + 1, P + 1)
        c0 = 1 / mpmath.sqrt(2 * P)
        c1 = mpmath.sqrt(mpmath.mpf(2) / P)
        for a in range(P + 1):
            for b in range(P + 1):
                if a == 0:
                    Nm[a, b] = c0
                elif a == P:
                    Nm[a, b] = c0 * (-1) ** b
                else:
                    Nm[a, b] = c1 * mpmath.cospi(to_mpf(_reduce2(Fraction(a * b, P))))
        Mm = mpmath.matrix(P - 1, P - 1)
        for a in range(1, P):
            for b in range(a, P):
                Mm[a - 1, b - 1] = Mm[b - 1, a - 1] = c1 * _sinpi(Fraction(a * b, P))
    return TransformData(n_entries=Nm, m_entries=Mm)


def transform_data(m: SeifertData, precision_bits: int = DEFAULT_PRECISION) -> TransformData:
    reps = orbit_representatives(m)
    tp = theta_psi_matrices(m.P, precision_bits) if m.P <= 64 else TransformData()
    return TransformData(
        s_entries=s_matrix(m, precision_bits),
        t_turns=tuple(t_phase(m, r) for r in reps),
        n_entries=tp.n_entries,
        m_entries=tp.m_entries,
        labels=tuple(reps),
    )


def c_value(m: SeifertData, l, k: int | None = None) -> Fraction:
    """``sum_{n=1}^{2P} chi(n) B_k(n/2P)``; ``k`` defaults to ``M - 2``."""
    if k is None:
        k = m.M - 2
    if k < 0:
        raise DomainError("c_value needs k >= 0")
    sup = chi_support(m, m.label(l))
    # chi(0) = 0 always, so residues map to 1..2P-1 unchanged
    return bernoulli_weighted_sum(sup, k, 2 * m.P)


def _check_rational_point(N2: int, N1: int):
    if N1 < 1:
        raise DomainError("N1 must be positive")
    if math.gcd(N1, N2) != 1:
        raise DomainError(f"N1 and N2 must be coprime, got {N2}/{N1}")


def _bernoulli_phase_sum(m, l, N2, N1, degree, prec) -> mpmath.mpc:
    """``sum_{n=1}^{2P N1} chi(n) e(N2 n^2 / 4P N1) B_degree(n / 2P N1)``."""
    P = m.P
    B = bernoulli_polynomial(degree)
    mod = 2 * P * N1
    terms = []
    work = prec + 32
    with mpmath.workprec(work):
        for r, v in chi_support(m, l).items():
            for j in range(N1):
                n = r + 2 * P * j
                if n == 0:
                    n = mod
                w = v * B(Fraction(n, mod))
                if w:
                    z = phase_exp(Fraction(N2 * n * n, 4 * P * N1), work)
                    terms.append(z * w)
    if not terms:
        return mpmath.mpc(0)
    return compensated_sum(terms).mpc


def eichler_limit(
    m: SeifertData, l, N2: int, N1: int, precision_bits: int = DEFAULT_PRECISION
) -> EichlerValue:
    """Radial limit of the Eichler integral at the rational point ``N2/N1``."""
    _check_rational_point(N2, N1)
    l = m.label(l)
    eo = m.eveodd
    s = _bernoulli_phase_sum(m, l, N2, N1, 2 - eo, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        v = -mpmath.mpf(m.P * N1) ** (1 - eo) * s
    return EichlerValue(HPComplex.from_mpc(v, precision_bits), Fraction(N2, N1), l, 0)


def eichler_derivative_limit(
    m: SeifertData, l, b: int, N2: int, N1: int, precision_bits: int = DEFAULT_PRECISION
) -> EichlerValue:
    """Limit of ``(2P/(pi i) d/dtau)^b`` applied to the Eichler integral."""
    if b < 0:
        raise DomainError("derivative order must be nonnegative")
    _check_rational_point(N2, N1)
    l = m.label(l)
    eo = m.eveodd
    deg = 2 * b + 2 - eo
    s = _bernoulli_phase_sum(m, l, N2, N1, deg, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        v = -mpmath.mpf(2 * m.P * N1) ** (2 * b + 1 - eo) / deg * s
    return EichlerValue(HPComplex.from_mpc(v, precision_bits), Fraction(N2, N1), l, b)


def qseries_value(
    m: SeifertData,
    l,
    tau_real,
    tau_imag,
    derivative_order: int = 0,
    precision_bits: int = DEFAULT_PRECISION,
) -> HPComplex:
    """Partial sums of ``sum_{n>=0} n^{2b+1-eo} chi(n) q^{n^2/4P}``.

    Summation stops once a full period of terms is below
    ``10^-(0.3 precision_bits)`` and terms are decreasing.
    """
    tau_imag = to_mpf(tau_imag)
    if tau_imag <= 0:
        raise DomainError("tau_imag must be positive")
    tau_real = Fraction(tau_real)
    l = m.label(l)
    P = m.P
    power = 2 * derivative_order + 1 - m.eveodd
    sup = sorted(chi_support(m, l).items())
    work = precision_bits + 32
    with mpmath.workprec(work):
        eps = mpmath.mpf(10) ** (-int(0.3 * precision_bits))
        decay = 2 * mpmath.pi * tau_imag / (4 * P)
        # terms decrease once n^2 decay > power/2
        n_peak = int(mpmath.sqrt(power / (2 * decay))) + 1 if power else 0
        terms = []
        j = 0
        while True:
            biggest = mpmath.mpf(0)
            for r, v in sup:
                n = r + 2 * P * j
                if n == 0:
                    continue
                mag = mpmath.mpf(n) ** power * mpmath.exp(-decay * n * n)
                ph = phase_exp(tau_real * Fraction(n * n, 4 * P), work).mpc
                terms.append(HPComplex.from_mpc(v * mag * ph, work))
                biggest = max(biggest, mag)
            j += 1
            if 2 * P * j > n_peak and biggest < eps:
                break
        total = compensated_sum(terms)
    return HPComplex.from_mpc(total.mpc, precision_bits)


def radial_limit(
    m: SeifertData,
    l,
    tau_real,
    derivative_order: int = 0,
    t_values=(Fraction(1, 10**3), Fraction(1, 10**4), Fraction(1, 10**5)),
    precision_bits: int = DEFAULT_PRECISION,
) -> HPComplex:
    """Extrapolate ``qseries_value`` to ``tau_imag -> 0``.

    The series is a power series in ``tau_imag`` near a rational point, so
    the three samples are combined by Lagrange extrapolation to 0.  At
    ``tau_real = a/c`` the expansion variable is ``c^2 tau_imag``, so the
    sample points are scaled by ``1/c^2``.
    """
    c = Fraction(tau_real).denominator
    t_values = [Fraction(t) / (c * c) for t in t_values]
    vals = [qseries_value(m, l, tau_real, t, derivative_order, precision_bits).mpc for t in t_values]
    with mpmath.workprec(precision_bits):
        ts = [to_mpf(t) for t in t_values]
        total = mpmath.mpc(0)
        for i, (ti, vi) in enumerate(zip(ts, vals)):
            w = mpmath.mpf(1)
            for j, tj in enumerate(ts):
                if j != i:
                    w *= tj / (tj - ti)
            total += w * vi
    return HPComplex.from_mpc(total, precision_bits)


def nearly_modular_tail(m: SeifertData, l, N: int, k: int) -> tuple[Fraction, Fraction]:
    """Coefficient ``L(-2k-1+eo, chi)/k!`` and the power k of ``pi i / 2PN``."""
    chi = chi_function(m, l)
    return l_value(chi, -2 * k - 1 + m.eveodd) / math.factorial(k), Fraction(k)


def nearly_modular_residual(
    m: SeifertData, l, N: int, tail_terms: int, precision_bits: int = DEFAULT_PRECISION
) -> HPComplex:
    """Left side of the nearly modular relation minus its L-value series.

    The series is kept through the ``k = tail_terms`` term, so the residual
    is of order ``N^-(tail_terms + 1)``.
    """
    if N < 2:
        raise DomainError("nearly_modular_residual needs N >= 2")
    if tail_terms < 0:
        raise DomainError("tail_terms must be nonnegative")
    l = m.label(l)
    eo = m.eveodd
    work = precision_bits + 32
    lhs = eichler_limit(m, l, 1, N, work).value.mpc
    with mpmath.workprec(work):
        acc = mpmath.mpc(0)
        for lp in orbit_representatives(m):
            base = eichler_limit(m, lp, 0, 1, work).value.mpc
            tn = phase_exp(-t_phase(m, lp).turns * N, work).mpc
            acc += s_entry(m, l, lp, work) * tn * base
        lhs += (N / mpmath.mpc(0, 1)) ** (mpmath.mpf(3) / 2 - eo) * acc
        chi = chi_function(m, l)
        x = mpmath.mpc(0, mpmath.pi) / (2 * m.P * N)
        tail = mpmath.mpc(0)
        for k in range(tail_terms + 1):
            tail += to_mpf(l_value(chi, -2 * k - 1 + eo) / math.factorial(k)) * x**k
        res = lhs - tail
    return HPComplex.from_mpc(res, precision_bits)
