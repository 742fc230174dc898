"""Exact evaluation of the WRT invariant from its single 2PN-term sum.

With ``n = N q + k`` (``0 < k < N``, ``0 <= q < 2P``) the sum

    sum_{N not | n} e(-n^2 / 4PN) prod_j 2i sin(pi n / N p_j) / (2i sin(pi n / N))^(M-2)

factors as ``-4 sum_k e(-k^2/4PN) sin(pi k/N)^(2-M) S(k)``, where the inner
sums ``S(k)`` only involve 4P-th roots of unity and sines of ``pi n / N p_j``.
The inner sums are computed exactly in fixed point (see ``_kernel``); the
outer k-sum runs in mpmath.  Terms at ``n`` and ``2PN - n`` agree, which
halves the work.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import _kernel
from .errors import DomainError
from .hp import DEFAULT_PRECISION, HPComplex, compensated_sum, phase_exp
from .seifert import SeifertData, chi_support


@dataclass(frozen=True)
class WrtResult:
    """``tau`` is the WRT invariant at ``N``; ``z = tau sin(pi/N) sqrt(2/N)`` is
    the Witten invariant at level ``N - 2``."""

    tau: HPComplex
    z: HPComplex
    N: int
    precision_bits: int
    term_count: int


def default_threads() -> int:
    return os.cpu_count() or 1


def guard_bits(m: SeifertData, N: int) -> int:
    # room for the term count, for terms as large as (N/pi)^(M-2), and for
    # cancellation down to results far smaller than the terms
    terms = 2 * m.P * N
    return 64 + terms.bit_length() + (m.M - 2) * N.bit_length()


def _exact_sum(m: SeifertData, N: int, work: int, threads: int) -> HPComplex:
    """The full n-sum (without the e(1/8)/(2 sqrt(2PN)) prefactor)."""
    L = _kernel.limbs_for(work)
    F = _kernel.LIMB_BITS * (L - 1)
    half = range(1, (N - 1) // 2 + 1)
    ks = list(half) + ([N // 2] if N % 2 == 0 else [])
    inner = _kernel.inner_sums(m.p, N, L, ks, threads)
    P, M = m.P, m.M
    terms = []
    with mpmath.workprec(work):
        for k in ks:
            re, im = inner[k]
            weight = 1 if 2 * k == N else 2
            s = mpmath.mpc(mpmath.ldexp(re, -F), mpmath.ldexp(im, -F))
            outer = phase_exp(Fraction(-k * k, 4 * P * N), work).mpc
            outer /= mpmath.sinpi(mpmath.mpf(k) / N) ** (M - 2)
            terms.append(HPComplex.from_mpc(-4 * weight * outer * s, work))
    return compensated_sum(terms)


def tau_exact(
    m: SeifertData,
    N: int,
    precision_bits: int = DEFAULT_PRECISION,
    threads: int | None = None,
) -> WrtResult:
    """The WRT invariant ``tau_N`` at the requested precision."""
    if precision_bits < 53:
        raise DomainError(f"precision_bits must be >= 53, got {precision_bits}")
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    work = precision_bits + guard_bits(m, N)
    total = _exact_sum(m, N, work, threads or default_threads())
    P = m.P
    with mpmath.workprec(work):
        rhs = phase_exp(Fraction(1, 8), work).mpc * total.mpc / (2 * mpmath.sqrt(2 * P * N))
        lhs = phase_exp((m.phi / 4 - Fraction(1, 2)) / N, work).mpc
        lhs *= phase_exp(Fraction(1, N), work).mpc - 1
        tau = rhs / lhs
        z = tau * mpmath.sinpi(mpmath.mpf(1) / N) * mpmath.sqrt(mpmath.mpf(2) / N)
    return WrtResult(
        tau=HPComplex.from_mpc(tau, precision_bits),
        z=HPComplex.from_mpc(z, precision_bits),
        N=N,
        precision_bits=precision_bits,
        term_count=2 * P * (N - 1),
    )


def witten_z(
    m: SeifertData,
    k: int,
    precision_bits: int = DEFAULT_PRECISION,
    threads: int | None = None,
) -> HPComplex:
    """Witten invariant ``Z_k = tau_{k+2} / tau_{k+2}(S^2 x S^1)``.

    This is the quantity tabulated as the exact value for row ``k``.
    """
    if k < 1:
        raise DomainError(f"level must be >= 1, got {k}")
    return tau_exact(m, k + 2, precision_bits, threads).z


def phase_sum_zero_check(
    m: SeifertData, l, N: int, precision_bits: int = DEFAULT_PRECISION
) -> mpmath.mpf:
    """``|sum_{n<2PN} chi(n) exp(pi i n^2 / 2PN)|``, which vanishes identically."""
    if N < 1:
        raise DomainError("N must be positive")
    P = m.P
    sup = chi_support(m, m.label(l))
    terms = []
    for r, v in sup.items():
        for t in range(N):
            n = r + 2 * P * t
            z = phase_exp(Fraction(n * n % (4 * P * N), 4 * P * N), precision_bits)
            terms.append(z if v > 0 else -z)
    total = compensated_sum(terms)
    return abs(total)


def direct_sum(m: SeifertData, N: int, precision_bits: int = DEFAULT_PRECISION) -> HPComplex:
    """Term-by-term evaluation of the full n-sum; slow, used as an oracle."""
    P, M = m.P, m.M
    work = precision_bits + 32
    terms = []
    with mpmath.workprec(work):
        for n in range(2 * P * N):
            if n % N == 0:
                continue
            ph = phase_exp(Fraction(-(n * n % (4 * P * N)), 4 * P * N), work).mpc
            num = mpmath.mpf(1)
            for pj in m.p:
                num *= 2 * mpmath.sinpi(mpmath.mpf(n % (2 * N * pj)) / (N * pj))
            den = (2 * mpmath.sinpi(mpmath.mpf(n % (2 * N)) / N)) ** (M - 2)
            terms.append(HPComplex.from_mpc(ph * num / den * mpmath.mpc(0, 1) ** 2, work))
    return compensated_sum(terms)
