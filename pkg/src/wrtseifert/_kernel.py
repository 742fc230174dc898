"""Fixed-point inner loop for the 2PN-term oscillatory sum.

Numbers in ``[-1, 1]`` are held as a sign plus ``L`` little 32-bit limbs
stored in ``uint64`` (limb 0 is the integer part, limb i weighs 2^(-32 i)).
Products are truncated to ``L`` limbs.  Every term is added limb-wise into
signed ``int64`` accumulators without carrying, so a block of terms sums
exactly and the result cannot depend on how blocks are scheduled.
"""

from __future__ import annotations

import math
from functools import lru_cache

import gmpy2
import numpy as np
from numba import njit

LIMB_BITS = 32
_MASK = np.uint64(0xFFFFFFFF)
_SHIFT = np.uint64(32)

# Accumulators take at most 2^16 terms of < 2^32 each before being flushed.
MAX_UNIT = 1 << 16


def limbs_for(frac_bits: int) -> int:
    return -(-frac_bits // LIMB_BITS) + 1


def to_limbs(values: list[int], L: int) -> np.ndarray:
    """Split nonnegative integers ``< 2^(32 L)`` into rows of big-endian limbs."""
    blob = b"".join(v.to_bytes(4 * L, "big") for v in values)
    return np.frombuffer(blob, dtype=">u4").reshape(len(values), L).astype(np.uint64)


def from_limbs(acc) -> int:
    """Integer value of a row of (possibly negative, uncarried) limbs."""
    total = 0
    for a in acc:
        total = (total << LIMB_BITS) + int(a)
    return total


def _fixed_sines(angles_num: range, denom: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """``sin(pi r / denom)`` for r in ``angles_num`` as (limbs, signs)."""
    F = LIMB_BITS * (L - 1)
    mags, signs = [], []
    with gmpy2.context(gmpy2.get_context(), precision=F + 64):
        pi = gmpy2.const_pi()
        for r in angles_num:
            v = gmpy2.sin(pi * r / denom)
            iv = int(gmpy2.rint(gmpy2.mul_2exp(v, F)))
            signs.append(-1 if iv < 0 else 1)
            mags.append(abs(iv))
    return to_limbs(mags, L), np.asarray(signs, dtype=np.int64)


@lru_cache(maxsize=8)
def quarter_table(P: int, L: int) -> np.ndarray:
    """``sin(pi r / 2P)`` for ``r = 0..P`` (all nonnegative)."""
    mags, _ = _fixed_sines(range(P + 1), 2 * P, L)
    return mags


@lru_cache(maxsize=64)
def sine_table(N: int, p: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """``sin(pi r / (N p))`` for ``r = 0..2Np-1``."""
    return _fixed_sines(range(2 * N * p), N * p, L)


@njit(nogil=True, cache=True)
def _mul(a, b, out, cols):
    L = a.shape[0]
    for t in range(L + 1):
        cols[t] = 0
    for i in range(L):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(L, L + 1 - i)):
            p = ai * b[j]
            t = i + j
            cols[t] += p & _MASK
            if t > 0:
                cols[t - 1] += p >> _SHIFT
    c = np.uint64(0)
    for t in range(L, -1, -1):
        v = cols[t] + c
        cols[t] = v & _MASK
        c = v >> _SHIFT
    for t in range(L):
        out[t] = cols[t]


@njit(nogil=True, cache=True)
def _group_product(tables, signs, offsets, periods, out, out_sign):
    """Fill a product table ``prod_g table_g[r mod period_g]``."""
    L = out.shape[1]
    cols = np.zeros(L + 1, dtype=np.uint64)
    tmp = np.zeros(L, dtype=np.uint64)
    G = offsets.shape[0]
    for r in range(out.shape[0]):
        idx = offsets[0] + r % periods[0]
        for t in range(L):
            tmp[t] = tables[idx, t]
        sg = signs[idx]
        for g in range(1, G):
            idx = offsets[g] + r % periods[g]
            _mul(tmp, tables[idx], tmp, cols)
            sg *= signs[idx]
        for t in range(L):
            out[r, t] = tmp[t]
        out_sign[r] = sg


@njit(nogil=True, cache=True)
def _sum_units(units, N, P, M, tables, signs, offsets, periods, quarter, out):
    """Inner sums ``S(k) = sum_q rho^{e(q)} prod_j sin(pi (N q + k) / (N p_j))``.

    ``rho = exp(2 pi i / 4P)`` and ``e(q) = 2PqM - N q^2 - 2 q k mod 4P``.
    Each unit row is ``(k, q0, q1)``; ``out[u, 0]`` and ``out[u, 1]`` receive
    the uncarried real and imaginary limb sums.
    """
    L = quarter.shape[1]
    G = offsets.shape[0]
    F4 = 4 * P
    cols = np.zeros(L + 1, dtype=np.uint64)
    prod = np.zeros(L, dtype=np.uint64)
    part = np.zeros(L, dtype=np.uint64)
    for u in range(units.shape[0]):
        k = units[u, 0]
        q0 = units[u, 1]
        q1 = units[u, 2]
        for t in range(L):
            out[u, 0, t] = 0
            out[u, 1, t] = 0
        qq = (q0 * q0) % F4
        e = (2 * P * ((q0 * M) % 2) - (N % F4) * qq - 2 * q0 * k) % F4
        d = (2 * P * (M % 2) - N * (2 * q0 + 1) - 2 * k) % F4
        step = (2 * N) % F4
        for q in range(q0, q1):
            n = N * q + k
            idx = offsets[0] + n % periods[0]
            sg = signs[idx]
            if G == 1:
                for t in range(L):
                    prod[t] = tables[idx, t]
            else:
                idx2 = offsets[1] + n % periods[1]
                _mul(tables[idx], tables[idx2], prod, cols)
                sg *= signs[idx2]
                for g in range(2, G):
                    idx2 = offsets[g] + n % periods[g]
                    _mul(prod, tables[idx2], prod, cols)
                    sg *= signs[idx2]
            # rho^e = cos + i sin via the quarter-wave table
            if e < P:
                s_i, s_s, c_i, c_s = e, 1, P - e, 1
            elif e < 2 * P:
                s_i, s_s, c_i, c_s = 2 * P - e, 1, e - P, -1
            elif e < 3 * P:
                s_i, s_s, c_i, c_s = e - 2 * P, -1, 3 * P - e, -1
            else:
                s_i, s_s, c_i, c_s = 4 * P - e, -1, e - 3 * P, 1
            if sg != 0:
                _mul(prod, quarter[c_i], part, cols)
                if sg * c_s > 0:
                    for t in range(L):
                        out[u, 0, t] += np.int64(part[t])
                else:
                    for t in range(L):
                        out[u, 0, t] -= np.int64(part[t])
                _mul(prod, quarter[s_i], part, cols)
                if sg * s_s > 0:
                    for t in range(L):
                        out[u, 1, t] += np.int64(part[t])
                else:
                    for t in range(L):
                        out[u, 1, t] -= np.int64(part[t])
            e += d
            if e >= F4:
                e -= F4
            d -= step
            if d < 0:
                d += F4


def plan_groups(p: tuple[int, ...], N: int, max_rows: int = 1 << 21) -> list[tuple[int, ...]]:
    """Split the fiber orders into groups whose product tables stay small.

    Fewer groups means fewer multiplications per term; a group's table has
    ``2 N prod(group)`` rows.
    """
    groups: list[list[int]] = []
    for pj in sorted(p, reverse=True):
        best = None
        for g in groups:
            rows = 2 * N * math.prod(g) * pj
            if rows <= max_rows and (best is None or math.prod(g) < math.prod(best)):
                best = g
        if best is None:
            groups.append([pj])
        else:
            best.append(pj)
    return [tuple(sorted(g)) for g in groups]


def build_tables(p: tuple[int, ...], N: int, L: int):
    """Concatenated group product tables with their offsets and periods."""
    mags, sgns, offsets, periods = [], [], [], []
    off = 0
    for g in plan_groups(p, N):
        parts = [sine_table(N, pj, L) for pj in g]
        if len(g) == 1:
            t, s = parts[0]
        else:
            sub_t = np.concatenate([x[0] for x in parts])
            sub_s = np.concatenate([x[1] for x in parts])
            sub_off = np.cumsum([0] + [len(x[0]) for x in parts[:-1]]).astype(np.int64)
            sub_per = np.asarray([2 * N * pj for pj in g], dtype=np.int64)
            rows = 2 * N * math.prod(g)
            t = np.zeros((rows, L), dtype=np.uint64)
            s = np.zeros(rows, dtype=np.int64)
            _group_product(sub_t, sub_s, sub_off, sub_per, t, s)
        mags.append(t)
        sgns.append(s)
        offsets.append(off)
        periods.append(len(t))
        off += len(t)
    return (
        np.ascontiguousarray(np.concatenate(mags)),
        np.concatenate(sgns),
        np.asarray(offsets, dtype=np.int64),
        np.asarray(periods, dtype=np.int64),
    )


def make_units(N: int, P: int, ks) -> np.ndarray:
    rows = []
    for k in ks:
        for q0 in range(0, 2 * P, MAX_UNIT):
            rows.append((k, q0, min(q0 + MAX_UNIT, 2 * P)))
    return np.asarray(rows, dtype=np.int64).reshape(-1, 3)


def inner_sums(p: tuple[int, ...], N: int, L: int, ks, threads: int = 1) -> dict[int, tuple[int, int]]:
    """Exact fixed-point ``S(k)`` (real, imag) as integers scaled by ``2^(32(L-1))``."""
    from concurrent.futures import ThreadPoolExecutor

    P = math.prod(p)
    M = len(p)
    tables, signs, offsets, periods = build_tables(tuple(p), N, L)
    quarter = quarter_table(P, L)
    units = make_units(N, P, ks)
    out = np.zeros((len(units), 2, L), dtype=np.int64)
    threads = max(1, int(threads))
    bounds = np.linspace(0, len(units), min(threads, max(1, len(units))) + 1).astype(int)

    def work(i):
        a, b = bounds[i], bounds[i + 1]
        if b > a:
            _sum_units(units[a:b], N, P, M, tables, signs, offsets, periods, quarter, out[a:b])

    if len(bounds) > 2:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(len(bounds) - 1)))
    else:
        work(0)

    result: dict[int, list[int]] = {}
    for u in range(len(units)):
        k = int(units[u, 0])
        acc = result.setdefault(k, [0, 0])
        acc[0] += from_limbs(out[u, 0])
        acc[1] += from_limbs(out[u, 1])
    return {k: (v[0], v[1]) for k, v in result.items()}
