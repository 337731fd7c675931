import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from qwlab.qcore import (
    DomainError,
    ZetaSeries,
    parse_rational,
    qbinomial_ratio_series,
    qpoch_finite,
    qpoch_infinite,
    set_precision,
    zeta_series_mul,
)

F = Fraction

small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=20)
unit_fracs = st.fractions(min_value=0, max_value=F(9, 10), max_denominator=20)


def test_qpoch_finite_empty_product():
    assert qpoch_finite(F(7, 3), F(1, 2), 0) == 1


def test_qpoch_finite_two_factors():
    assert qpoch_finite(F(1, 2), F(1, 2), 2) == F(3, 8)


@given(a=small_fracs, q=unit_fracs, m=st.integers(0, 6), n=st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_qpoch_finite_splits(a, q, m, n):
    lhs = qpoch_finite(a, q, m + n)
    rhs = qpoch_finite(a, q, m) * qpoch_finite(a * q**m, q, n)
    assert lhs == rhs


def test_qpoch_infinite_zero_argument():
    assert qpoch_infinite(F(0), F(1, 2)) == 1


def test_qpoch_infinite_exact_zero_factor():
    assert qpoch_infinite(F(1), F(1, 2)) == 0
    assert qpoch_infinite(F(4), F(1, 2)) == 0  # 1 - 4 q^2 = 0


def test_qpoch_infinite_rejects_q_outside_disc():
    with pytest.raises(DomainError):
        qpoch_infinite(F(1, 2), F(3, 2))


def test_qpoch_infinite_truncation_stability():
    # Two very different tolerances agree to the coarser one.
    v1 = qpoch_infinite(F(1, 2), F(1, 2), tol=1e-20)
    v2 = qpoch_infinite(F(1, 2), F(1, 2), tol=1e-35)
    assert abs(v1 - v2) < F(1, 10**19)


def test_qpoch_infinite_matches_finite_head():
    q = F(1, 2)
    full = qpoch_infinite(q, q, tol=1e-30)
    head = qpoch_finite(q, q, 40)
    # The tail beyond 40 factors is below 2^-40 relative.
    assert abs(full - head) / head < F(1, 2**38)


def test_qbinomial_trivial_ratio():
    s = qbinomial_ratio_series(F(1, 3), F(1, 3), F(1, 2), 4)
    assert s.coeffs == (1, 0, 0, 0, 0)


def test_qbinomial_first_order_coefficient():
    c, t, q = F(2, 7), F(1, 5), F(1, 3)
    s = qbinomial_ratio_series(t * c, c, q, 1)
    assert s.coeffs[1] == c * (1 - t) / (1 - q)


def test_qbinomial_inverse_euler_expansion():
    s = qbinomial_ratio_series(F(0), F(1), F(1, 2), 2)
    assert s.coeffs == (1, 2, F(8, 3))


@given(a=small_fracs, b=small_fracs, q=unit_fracs)
@settings(max_examples=40, deadline=None)
def test_qbinomial_ratio_times_inverse_is_one(a, b, q):
    order = 5
    s1 = qbinomial_ratio_series(a, b, q, order)
    s2 = qbinomial_ratio_series(b, a, q, order)
    assert (s1 * s2).coeffs == ZetaSeries.one(order).coeffs


def test_zeta_series_identity_and_square():
    one = ZetaSeries((F(1), F(0), F(0)))
    assert zeta_series_mul(one, one).coeffs == (1, 0, 0)
    lin = ZetaSeries((F(1), F(1), F(0)))
    assert zeta_series_mul(lin, lin).coeffs == (1, 2, 1)


def test_zeta_series_order_mismatch():
    with pytest.raises(DomainError):
        ZetaSeries((F(1), F(0))) * ZetaSeries((F(1),))


def test_parse_rational():
    assert parse_rational("3/7") == F(3, 7)
    assert parse_rational("-2") == F(-2)


def test_set_precision_floor():
    with pytest.raises(DomainError):
        set_precision(32)
    with set_precision(128):
        assert mp.mp.prec == 128
