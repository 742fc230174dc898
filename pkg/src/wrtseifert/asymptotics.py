"""Large-N asymptotics: dominant term, full expansion, T-series and Ohtsuki series.

Every function here takes the level ``N`` of ``Z_N`` (the table row), so
formulas written for ``tau_L`` are evaluated at ``L = N + 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import CapacityError, ConsistencyError, DomainError
from .exact import (
    bernoulli_polynomial,
    bernoulli_weighted_sum,
    f_polynomial,
    k_number,
    stirling_first,
)
from .hp import DEFAULT_PRECISION, HPComplex, PhaseTurns, compensated_sum, phase_exp, to_mpf
from .modular import c_value, s_entry
from .seifert import (
    Label,
    SeifertData,
    chi_support,
    eta_vectors,
    label_sum,
    orbit_representatives,
)

# The theta/psi blocks cost O(2^M P) high-precision cosines.
MAX_EXPANSION_P = 200_000


@dataclass(frozen=True)
class ExpansionTerm:
    """``amplitude * L^power * exp(-2 pi i L cs_turns)`` at level ``L = N + 2``.

    ``growth_order`` k means the term contributes at ``N^(M-3-k)`` to Z.
    """

    block: str
    growth_order: int
    power: Fraction
    cs_turns: PhaseTurns
    amplitude: HPComplex


@dataclass
class ExpansionReport:
    p: tuple[int, ...]
    N: int
    terms: list[ExpansionTerm]
    tail: list[Fraction]
    tail_order: int
    normalization: str = "tau"
    precision_bits: int = DEFAULT_PRECISION

    @property
    def level(self) -> int:
        return self.N + 2

    def divergent_sum(self, growth_orders=None) -> mpmath.mpc:
        """Sum of the divergent terms in the normalization of the left side."""
        L = self.level
        with mpmath.workprec(self.precision_bits + 32):
            parts = []
            for t in self.terms:
                if growth_orders is not None and t.growth_order not in growth_orders:
                    continue
                v = t.amplitude.mpc * mpmath.mpf(L) ** to_mpf(t.power)
                v *= phase_exp(-t.cs_turns.turns * L, self.precision_bits + 32).mpc
                parts.append(HPComplex.from_mpc(v, self.precision_bits + 32))
            return compensated_sum(parts).mpc if parts else mpmath.mpc(0)

    def tail_sum(self, terms: int | None = None) -> mpmath.mpc:
        K = self.tail_order if terms is None else terms
        L = self.level
        P = math.prod(self.p)
        with mpmath.workprec(self.precision_bits + 32):
            x = mpmath.mpc(0, mpmath.pi) / (2 * P * L)
            return mpmath.fsum(to_mpf(self.tail[k] / math.factorial(k)) * x**k for k in range(K + 1))

    def to_z(self, value: mpmath.mpc, phi: Fraction) -> HPComplex:
        """Convert a left-side quantity into the Z normalization."""
        L = self.level
        work = self.precision_bits + 32
        with mpmath.workprec(work):
            pre = phase_exp((phi / 4 - Fraction(1, 2)) / L, work).mpc
            pre *= phase_exp(Fraction(1, L), work).mpc - 1
            z = value / pre * mpmath.sinpi(mpmath.mpf(1) / L) * mpmath.sqrt(mpmath.mpf(2) / L)
        return HPComplex.from_mpc(z, self.precision_bits)


@dataclass(frozen=True)
class TSeries:
    coefficients: list

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class OhtsukiSeries:
    lambdas: list = field(default_factory=list)

    def __getitem__(self, n):
        return self.lambdas[n]


def _level(N: int) -> int:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return N + 2


def sigma1_power_e(m: SeifertData) -> Label:
    """``sigma_1^(M-1)(E)``: ``E`` for odd M, ``E`` with first entry flipped for even M."""
    ell = [1] * m.M
    if m.M % 2 == 0:
        ell[0] = m.p[0] - 1
    return Label(tuple(ell))


def sigma_power(m: SeifertData, x: int) -> int:
    """``sigma^(M-1)(x)`` on ``Z_2P`` with ``sigma(x) = P - x``."""
    P = m.P
    if m.M % 2 == 0:
        return (P - x) % (2 * P)
    return x % (2 * P)


def _cs_turns(m: SeifertData, l) -> Fraction:
    return Fraction(m.P, 4) * (1 + label_sum(m, l)) ** 2


def z_dominant(m: SeifertData, N: int, precision_bits: int = DEFAULT_PRECISION) -> HPComplex:
    """Leading flat-connection term of ``Z_N`` from the S-matrix row of ``sigma_1^(M-1)(E)``."""
    L = _level(N)
    work = precision_bits + 32
    top = sigma1_power_e(m)
    terms = []
    with mpmath.workprec(work):
        for l in orbit_representatives(m):
            C = c_value(m, l)
            if not C:
                continue
            v = s_entry(m, top, l, work) * to_mpf(C)
            v = v * phase_exp(-_cs_turns(m, l) * L, work).mpc
            terms.append(HPComplex.from_mpc(v, work))
        total = compensated_sum(terms).mpc if terms else mpmath.mpc(0)
        pre = mpmath.mpf(L) ** (m.M - 3) / (2 * mpmath.sqrt(2) * math.factorial(m.M - 2))
        pre = pre * phase_exp(-m.phi / (4 * L), work).mpc
        pre *= mpmath.mpc(0, 1) ** (m.eveodd - 1) * phase_exp(Fraction(-3, 8), work).mpc
        z = pre * total
    return HPComplex.from_mpc(z, precision_bits)


def z_dominant_alt(m: SeifertData, N: int, precision_bits: int = DEFAULT_PRECISION) -> HPComplex:
    """Leading term of ``Z_N`` as a single sum over ``0 <= n < 2P``."""
    L = _level(N)
    P, M = m.P, m.M
    work = precision_bits + 32
    B = bernoulli_polynomial(M - 2)
    terms = []
    with mpmath.workprec(work):
        for n in range(2 * P):
            if any(n % pj == 0 for pj in m.p):
                continue
            w = (-1) ** (n * M) * B(Fraction(n, 2 * P))
            if not w:
                continue
            v = to_mpf(w) * phase_exp(Fraction(-n * n * L, 4 * P), work).mpc
            for pj in m.p:
                v *= mpmath.sinpi(mpmath.mpf(n % (2 * pj)) / pj)
            terms.append(HPComplex.from_mpc(v, work))
        total = compensated_sum(terms).mpc
        pre = mpmath.mpf(L) ** (M - 3) * 2 ** (M - 2) / (math.factorial(M - 2) * mpmath.sqrt(P))
        pre = pre * phase_exp(-m.phi / (4 * L), work).mpc
        pre *= phase_exp(Fraction(-(2 * M - 3), 8), work).mpc
        z = pre * total
    return HPComplex.from_mpc(z, precision_bits)


def torsion_magnitude(m: SeifertData, l, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``|prod_j sin(P l_j pi / p_j^2)| * C(l)``."""
    l = m.label(l)
    C = c_value(m, l)
    with mpmath.workprec(precision_bits + 16):
        v = mpmath.mpf(1)
        for lj, pj in zip(l, m.p):
            r = Fraction(m.P * lj, pj * pj)
            r -= 2 * ((r.numerator // r.denominator) // 2)
            v *= mpmath.sinpi(to_mpf(r))
        v = abs(v) * to_mpf(C)
    with mpmath.workprec(precision_bits):
        return +v


# --- truncated power series with rational coefficients --------------------


def _series_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _series_inv(a: list, n: int) -> list:
    if not a[0]:
        raise DomainError("series inverse needs a nonzero constant term")
    out = [Fraction(0)] * n
    out[0] = 1 / Fraction(a[0])
    for k in range(1, n):
        s = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -s / a[0]
    return out


def _sinh_over_x(c: Fraction, n: int) -> list:
    """Coefficients of ``sinh(c x) / x`` through ``x^(n-1)``."""
    out = [Fraction(0)] * n
    for k in range(0, n, 2):
        out[k] = Fraction(c) ** (k + 1) / math.factorial(k + 1)
    return out


def _sinh_ratio_series(p, scale: Fraction, n: int) -> list:
    """``prod sinh(scale x/p_j) / sinh(scale x)^(M-2)`` through ``x^(n-1)``.

    Both sides carry powers of x that cancel to an overall ``x^2``.
    """
    M = len(p)
    num = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for pj in p:
        num = _series_mul(num, _sinh_over_x(scale / pj, n), n)
    den = [Fraction(1)] + [Fraction(0)] * (n - 1)
    base = _sinh_over_x(scale, n)
    for _ in range(M - 2):
        den = _series_mul(den, base, n)
    core = _series_mul(num, _series_inv(den, n), n)
    return [Fraction(0), Fraction(0)] + core[: n - 2]


def _t_by_series(m: SeifertData, k_max: int) -> list:
    n = 2 * k_max + 1
    g = _sinh_ratio_series(m.p, Fraction(m.P), n + 2)
    return [2 * g[2 * k] * math.factorial(2 * k) for k in range(k_max + 1)]


def _eta_terms(m: SeifertData):
    """``(a, b, sign, s)`` for the signed eta-sums, ``s = sum eta_j / p_j``."""
    E = (1,) * m.M
    a_max = int(sum(Fraction(1, pj) for pj in m.p) + 1) // 2 + 1
    for a in range(1, a_max + 1):
        for eta, s in eta_vectors(m, E, a):
            sign = math.prod(eta)
            for b in range(a):
                yield a, b, sign, s


def _eta_index(m: SeifertData, a: int, s: Fraction) -> int:
    x = m.P * s - (2 * a - 1) * m.P
    assert x.denominator == 1
    return sigma_power(m, int(x))


def _t_closed(m: SeifertData, k: int) -> Fraction:
    P, M = m.P, m.M
    scale = Fraction((2 * P) ** (2 * k))
    chi = chi_support(m, sigma1_power_e(m))
    total = Fraction(0)
    for j in range(1, M - 1):
        f = f_polynomial(j, M - 2)
        B = bernoulli_polynomial(2 * k + j)
        part = Fraction(0)
        for n, v in chi.items():
            n = n or 2 * P
            shifted = Fraction(n + (M - 1) * P, 2 * P)
            shifted -= shifted.numerator // shifted.denominator
            part += v * B(Fraction(n, 2 * P)) * f(shifted - Fraction(1, 2))
        total += (-1) ** j * Fraction(j, 2 * k + j) * part
    total *= Fraction((-1) ** (M + 1), 2) * scale / math.factorial(M - 3)
    if M >= 4:
        corr = Fraction(0)
        for a, b, sign, s in _eta_terms(m):
            r = _eta_index(m, a, s)
            x = b + Fraction(1, 2) - s / 2
            for j in range(1, M - 2):
                corr += (
                    sign
                    * (-1) ** ((M + 1) * (j + 1))
                    * Fraction(j, 2 * k + j)
                    * f_polynomial(j, M - 3)(x)
                    * bernoulli_polynomial(2 * k + j)(Fraction(r, 2 * P))
                )
        total -= scale / math.factorial(M - 4) * corr
    else:
        # With three fibers the eta-terms of the generating product reduce to
        # cosh(P (s - 1) x); this only arises for (2,3,5).
        for a, b, sign, s in _eta_terms(m):
            total += sign * (m.P * (s - a)) ** (2 * k)
    return total


def t_series(m: SeifertData, k_max: int, method: str = "series") -> TSeries:
    """Tail coefficients ``T_p(0..k_max)``.

    ``series`` expands the sinh generating function, ``closed`` uses the
    Bernoulli/f-polynomial formula, ``both`` computes the two and insists
    they agree.
    """
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    if method not in ("series", "closed", "both"):
        raise DomainError(f"method must be series, closed or both, got {method!r}")
    if method in ("series", "both"):
        series = _t_by_series(m, k_max)
    if method in ("closed", "both"):
        closed = [_t_closed(m, k) for k in range(k_max + 1)]
    if method == "both":
        for k, (x, y) in enumerate(zip(series, closed)):
            if x != y:
                raise ConsistencyError(f"T-series disagree at k={k}: series {x}, closed form {y}")
    return TSeries(series if method != "closed" else closed)


def ohtsuki_series(m: SeifertData, n_max: int) -> OhtsukiSeries:
    """``lambda_0..lambda_n_max`` from the differential operator acting on G(x)."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    size = 2 * n_max + 4
    G = _sinh_ratio_series(m.p, Fraction(1), size)
    shift = Fraction(1, 2) - m.phi / 4
    P = Fraction(m.P, 4)
    lambdas = []
    for n in range(n_max + 1):
        h = list(G)
        for j in range(n + 1):
            d2 = [h[i + 2] * (i + 2) * (i + 1) for i in range(len(h) - 2)] + [Fraction(0)] * 2
            h = [P * d2[i] + (shift - j) * h[i] for i in range(len(h))]
        lambdas.append(2 * h[0] / math.factorial(n + 1))
    return OhtsukiSeries(lambdas)


def tau_infinity_series(m: SeifertData, order: int) -> list:
    """Coefficients of the formal series in ``(q - 1)`` built from the T-series.

    ``q^(phi/4 - 1/2) (q-1) tau = sum_k T(k)/k! (log q / 4P)^k`` with
    ``(log q)^k / k! = sum_n S_n^(k) (q-1)^n / n!``.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    T = t_series(m, order + 1).coefficients
    P4 = 4 * m.P
    # (q-1) tau without the q-power: coefficient of (q-1)^n
    inner = [Fraction(0)] * (order + 2)
    for n in range(order + 2):
        inner[n] = sum(
            (Fraction(stirling_first(n, k), math.factorial(n)) * T[k] / P4**k for k in range(1, n + 1)),
            Fraction(0),
        )
    alpha = Fraction(1, 2) - m.phi / 4
    binom = [Fraction(1)]
    for i in range(1, order + 2):
        binom.append(binom[-1] * (alpha - i + 1) / i)
    out = []
    for n in range(order + 1):
        # coefficient of (q-1)^(n+1) in q^alpha * inner
        out.append(sum((binom[n + 1 - j] * inner[j] for j in range(n + 2)), Fraction(0)))
    return out


def lambda2_closed_form(m: SeifertData) -> Fraction:
    """Published closed form of the second Ohtsuki coefficient."""
    phi, P, M = m.phi, m.P, m.M
    s2 = 2 - M + sum(Fraction(1, pj**2) for pj in m.p)
    s4 = 2 - M + sum(Fraction(1, pj**4) for pj in m.p)
    return (
        (3 * phi**2 + 12 * phi - 4) / 96
        - Fraction(P, 16) * s2 * (phi + 2)
        + Fraction(P * P, 96) * (5 * s2**2 - 2 * s4)
    )


# --- the full expansion ---------------------------------------------------


def _theta_matrix_entry(P: int, a: int, c: int) -> mpmath.mpf:
    if a == 0:
        return 1 / mpmath.sqrt(2 * P)
    if a == P:
        return (-1) ** c / mpmath.sqrt(2 * P)
    return mpmath.sqrt(mpmath.mpf(2) / P) * mpmath.cospi(mpmath.mpf((a * c) % (2 * P)) / P)


def _psi_matrix_entry(P: int, a: int, c: int) -> mpmath.mpf:
    return mpmath.sqrt(mpmath.mpf(2) / P) * mpmath.sinpi(mpmath.mpf((a * c) % (2 * P)) / P)


class _Collector:
    """Accumulates amplitudes keyed by (block, power, cs turns)."""

    def __init__(self, M: int):
        self.M = M
        self.items: dict = {}

    def add(self, block: str, power: Fraction, turns: Fraction, value):
        key = (block, Fraction(power), PhaseTurns(turns))
        self.items[key] = self.items.get(key, 0) + value

    def terms(self, precision_bits: int) -> list[ExpansionTerm]:
        out = []
        for (block, power, turns), v in sorted(
            self.items.items(), key=lambda kv: (-kv[0][1], kv[0][0], kv[0][2].turns)
        ):
            growth = self.M - 3 - int(power - Fraction(1, 2))
            out.append(ExpansionTerm(block, growth, power, turns, HPComplex.from_mpc(v, precision_bits)))
        return out


def _theta_c_sum(col: _Collector, block, P, weights: dict, power, coef, j, work):
    """``coef * L^power * sum_c (sum_a w_a N^a_c) (2-d_c0-d_cP)/2 B_2j(c/2P) e(-L c^2/4P)``."""
    B = bernoulli_polynomial(2 * j)
    for c in range(P + 1):
        amp = mpmath.mpf(0)
        for a, w in weights.items():
            amp += w * _theta_matrix_entry(P, a, c)
        if c in (0, P):
            amp /= 2
        bc = B(Fraction(c, 2 * P))
        if amp and bc:
            col.add(block, power, Fraction(c * c, 4 * P), coef * amp * to_mpf(bc))


def _psi_c_sum(col: _Collector, block, P, weights: dict, power, coef, j, work):
    B = bernoulli_polynomial(2 * j + 1)
    for c in range(1, P):
        amp = mpmath.mpf(0)
        for a, w in weights.items():
            amp += w * _psi_matrix_entry(P, a, c)
        bc = B(Fraction(c, 2 * P))
        if amp and bc:
            col.add(block, power, Fraction(c * c, 4 * P), coef * amp * to_mpf(bc))


def full_expansion(
    m: SeifertData, N: int, tail_order: int, precision_bits: int = DEFAULT_PRECISION
) -> ExpansionReport:
    """All divergent terms plus the tail coefficients for ``Z_N``.

    Terms are in the normalization of
    ``e^{2 pi i (phi/4 - 1/2)/L} (e^{2 pi i/L} - 1) tau_L`` with ``L = N + 2``;
    :meth:`ExpansionReport.to_z` converts.
    """
    if tail_order < 0:
        raise DomainError("tail_order must be >= 0")
    L = _level(N)
    P, M, eo = m.P, m.M, m.eveodd
    if P > MAX_EXPANSION_P:
        raise CapacityError(f"P={P} exceeds the full-expansion limit {MAX_EXPANSION_P}")
    work = precision_bits + 32
    col = _Collector(M)
    h = (M - 3) // 2
    I = mpmath.mpc(0, 1)
    top = sigma1_power_e(m)
    chi_top = chi_support(m, top)

    with mpmath.workprec(work):
        r = I / (2 * P * mpmath.pi)
        # S-matrix block
        pre = mpmath.mpf(1) / (2 * math.factorial(M - 3)) / phase_exp(Fraction(3 - 2 * eo, 8), work).mpc
        reps = orbit_representatives(m)
        srow = {l: s_entry(m, top, l, work) for l in reps}
        for j in range(h + 1):
            deg = 2 * j + 2 - eo
            power = Fraction(2 * (j + M // 2) - 1, 2)
            coef = pre * r ** (h - j) * to_mpf(k_number(h, eo, j)) / deg
            for l in reps:
                C = c_value(m, l, deg)
                if C:
                    col.add("S", power, _cs_turns(m, l), coef * srow[l] * to_mpf(C))

        if M >= 4:
            i32 = phase_exp(Fraction(3, 8), work).mpc
            i12 = phase_exp(Fraction(1, 8), work).mpc
            # theta block
            pre = (-1) ** M / (math.factorial(M - 3) * i32)
            for mm in range(1, h + 1):
                f = f_polynomial(2 * mm, M - 2)
                weights = {}
                for a, v in chi_top.items():
                    if a <= P:
                        w = v * f(Fraction(a, 2 * P) - Fraction(eo, 2))
                        if w:
                            weights[a] = to_mpf(w)
                for j in range(1, mm + 1):
                    power = Fraction(2 * (mm + j) - 1, 2)
                    coef = pre * r ** (mm - j) * to_mpf(k_number(mm - 1, 0, j - 1) * Fraction(mm, j))
                    _theta_c_sum(col, "theta", P, weights, power, coef, j, work)
            # psi block
            pre = (-1) ** (M - 1) / (math.factorial(M - 3) * i12)
            for mm in range((M - 4) // 2 + 1):
                f = f_polynomial(2 * mm + 1, M - 2)
                weights = {}
                for a, v in chi_top.items():
                    if 0 < a < P:
                        w = v * f(Fraction(a, 2 * P) - Fraction(eo, 2))
                        if w:
                            weights[a] = to_mpf(w)
                for j in range(mm + 1):
                    power = Fraction(2 * (mm + j) + 1, 2)
                    coef = pre * r ** (mm - j) * to_mpf(k_number(mm, 1, j) * Fraction(2 * mm + 1, 2 * j + 1))
                    _psi_c_sum(col, "psi", P, weights, power, coef, j, work)
            # eta correction blocks
            pre = mpmath.mpf((-1) ** M) / math.factorial(M - 4)
            theta_w: dict = {}
            psi_w: dict = {}
            for a, b, sign, s in _eta_terms(m):
                idx = _eta_index(m, a, s)
                x = b + Fraction(1, 2) - s / 2
                # theta^(x) = theta^(2P-x); psi^(x) = -psi^(2P-x)
                t_idx, t_sgn = (idx, 1) if idx <= P else (2 * P - idx, 1)
                p_idx, p_sgn = (idx, 1) if idx <= P else (2 * P - idx, -1)
                for mm in range(1, h + 1):
                    w = sign * t_sgn * f_polynomial(2 * mm, M - 3)(x)
                    d = theta_w.setdefault(mm, {})
                    d[t_idx] = d.get(t_idx, 0) + w
                for mm in range((M - 4) // 2 + 1):
                    if 0 < p_idx < P:
                        w = sign * p_sgn * f_polynomial(2 * mm + 1, M - 3)(x)
                        d = psi_w.setdefault(mm, {})
                        d[p_idx] = d.get(p_idx, 0) + w
            for mm, ws in theta_w.items():
                ws = {a: to_mpf(w) for a, w in ws.items() if w}
                for j in range(1, mm + 1):
                    power = Fraction(2 * (mm + j) - 1, 2)
                    coef = -pre / i32 * r ** (mm - j) * to_mpf(k_number(mm - 1, 0, j - 1) * Fraction(mm, j))
                    _theta_c_sum(col, "eta-theta", P, ws, power, coef, j, work)
            for mm, ws in psi_w.items():
                ws = {a: to_mpf(w) for a, w in ws.items() if w}
                for j in range(mm + 1):
                    power = Fraction(2 * (mm + j) + 1, 2)
                    coef = (-1) ** (M - 1) * -pre / i12 * r ** (mm - j)
                    coef *= to_mpf(k_number(mm, 1, j) * Fraction(2 * mm + 1, 2 * j + 1))
                    _psi_c_sum(col, "eta-psi", P, ws, power, coef, j, work)

    tail = t_series(m, tail_order).coefficients
    return ExpansionReport(
        p=m.p,
        N=N,
        terms=col.terms(precision_bits),
        tail=tail,
        tail_order=tail_order,
        precision_bits=precision_bits,
    )


def evaluate_expansion(m: SeifertData, report: ExpansionReport, tail_terms: int | None = None) -> HPComplex:
    """Z-normalized value of divergent terms plus the truncated tail."""
    with mpmath.workprec(report.precision_bits + 32):
        v = report.divergent_sum() + report.tail_sum(tail_terms)
    return report.to_z(v, m.phi)
