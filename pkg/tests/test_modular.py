from fractions import Fraction

import mpmath
import pytest

from wrtseifert.errors import CapacityError, DomainError
from wrtseifert.exact import bernoulli_polynomial, l_value
from wrtseifert.hp import phase_exp
from wrtseifert.modular import (
    c_value,
    eichler_derivative_limit,
    eichler_limit,
    nearly_modular_residual,
    qseries_value,
    radial_limit,
    s_entry,
    s_matrix,
    t_phase,
    theta_psi_matrices,
)
from wrtseifert.seifert import chi_function, chi_support, interior_labels, make_manifold, orbit_representatives


def test_s_entry_example(m235):
    with mpmath.workprec(128):
        want = 2 / mpmath.sqrt(5) * mpmath.sinpi(mpmath.mpf(1) / 5)
        assert abs(s_entry(m235, (1, 1, 1), (1, 1, 1)) - want) < mpmath.mpf(2) ** -120


@pytest.mark.parametrize("p", [(2, 3, 5), (2, 3, 7), (2, 3, 5, 7), (2, 3, 5, 7, 11)])
def test_s_matrix_is_orthogonal(p):
    # S acts on the orbit basis as a real symmetric involution
    m = make_manifold(p)
    with mpmath.workprec(128):
        S = s_matrix(m)
        err = mpmath.mnorm(S * S - mpmath.eye(m.D), 1)
        assert err < mpmath.mpf(10) ** -30


def test_s_matrix_capacity():
    with pytest.raises(CapacityError):
        s_matrix(make_manifold((3, 7, 8, 11, 13, 17)))


def test_t_phase(m235):
    assert t_phase(m235, (1, 1, 1)).turns == Fraction(1, 120)
    assert t_phase(m235, (1, 1, 2)).turns == (Fraction(30, 4) * Fraction(67, 30) ** 2) % 1


def test_theta_psi_matrices():
    d = theta_psi_matrices(2)
    assert d.m_entries.rows == 1 and abs(d.m_entries[0, 0] - 1) < 1e-30
    d = theta_psi_matrices(7)
    with mpmath.workprec(128):
        for b in range(8):
            assert abs(d.n_entries[0, b] - 1 / mpmath.sqrt(14)) < mpmath.mpf(10) ** -30
        # both families transform unitarily
        for A in (d.n_entries, d.m_entries):
            assert mpmath.mnorm(A * A - mpmath.eye(A.rows), 1) < mpmath.mpf(10) ** -30
    with pytest.raises(DomainError):
        theta_psi_matrices(1)


def test_c_value(m235):
    assert c_value(m235, (1, 1, 1), 1) == 2
    assert c_value(m235, (1, 1, 1), 0) == 0
    for p in [(2, 3, 7), (2, 3, 11), (2, 3, 5, 31), (3, 4, 5, 7, 11)]:
        m = make_manifold(p)
        for l in interior_labels(m):
            assert c_value(m, l) == 0


def test_eichler_limit_at_zero(m235):
    v = eichler_limit(m235, (1, 1, 1), 0, 1)
    assert v.value.real == -2 and v.value.imag == 0
    # the same number is L(0, chi)
    assert l_value(chi_function(m235, (1, 1, 1)), 0) == -2


def test_eichler_limit_matches_definition(m235):
    P, N1, N2 = 30, 3, 1
    sup = chi_support(m235, (1, 1, 1))
    B1 = bernoulli_polynomial(1)
    with mpmath.workprec(160):
        s = mpmath.mpc(0)
        for k in range(1, 2 * P * N1 + 1):
            c = sup.get(k % (2 * P), 0)
            if c:
                s += c * phase_exp(Fraction(N2 * k * k, 4 * P * N1), 160).mpc * float(B1(Fraction(k, 2 * P * N1)))
        got = eichler_limit(m235, (1, 1, 1), N2, N1).value.mpc
        assert abs(got + s) < 1e-14


def test_derivative_limit_order_zero():
    for p in [(2, 3, 5), (2, 3, 5, 7)]:
        m = make_manifold(p)
        for l in orbit_representatives(m):
            a = eichler_limit(m, l, 1, 4).value.mpc
            b = eichler_derivative_limit(m, l, 0, 1, 4).value.mpc
            scale = 2 ** (1 - m.eveodd) / (2 - m.eveodd)
            with mpmath.workprec(128):
                assert abs(b - scale * a) < mpmath.mpf(10) ** -30


def test_derivative_limit_closed_form(m235):
    # b = 1 at tau = 0 reduces to -(2P)^2/3 * sum chi(n) B_3(n/2P)
    v = eichler_derivative_limit(m235, (1, 1, 1), 1, 0, 1).value
    want = -Fraction(60**2, 3) * c_value(m235, (1, 1, 1), 3)
    with mpmath.workprec(128):
        assert abs(v.mpc - mpmath.mpf(want.numerator) / want.denominator) < mpmath.mpf(10) ** -30


def test_rational_point_validation(m235):
    with pytest.raises(DomainError):
        eichler_limit(m235, (1, 1, 1), 2, 4)
    with pytest.raises(DomainError):
        eichler_limit(m235, (1, 1, 1), 1, 0)
    with pytest.raises(DomainError):
        qseries_value(m235, (1, 1, 1), 0, 0)


def test_qseries_vanishes_at_large_height(m235):
    # leading term is q^(1/120)
    assert abs(qseries_value(m235, (1, 1, 1), 0, 5000)) < 1e-30


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(1, 8)])
def test_radial_limit_agrees_with_eichler(m235, x):
    for l in orbit_representatives(m235):
        e = eichler_limit(m235, l, x.numerator, x.denominator).value.mpc
        r = radial_limit(m235, l, x).mpc
        with mpmath.workprec(128):
            assert abs(e - r) < 1e-3


@pytest.mark.parametrize("K", [0, 1, 2, 3, 4])
def test_nearly_modular_decay(m235, K):
    for l in orbit_representatives(m235):
        r50 = abs(nearly_modular_residual(m235, l, 50, K))
        r100 = abs(nearly_modular_residual(m235, l, 100, K))
        assert r100 / r50 < 2.0**-K


def test_nearly_modular_improves(m235):
    one = abs(nearly_modular_residual(m235, (1, 1, 1), 50, 0))
    four = abs(nearly_modular_residual(m235, (1, 1, 1), 50, 3))
    assert four < one
    with pytest.raises(DomainError):
        nearly_modular_residual(m235, (1, 1, 1), 50, -1)
