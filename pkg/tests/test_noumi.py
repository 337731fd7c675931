import itertools
import random
from fractions import Fraction

import pytest

from qwlab.qcore import DomainError, qpoch_finite
from qwlab.noumi import (
    apply_noumi,
    compositions_of_weight,
    macdonald_d1_check,
    noumi_coeff,
    noumi_eigenvalue_series,
    verify_noumi,
)
from qwlab.sampling import distinct_rationals
from qwlab.symfunc import eval_symmetric, macdonald_gram_schmidt

F = Fraction
Q, T = F(1, 3), F(1, 5)


def noumi_coeff_naive(nu, z, q, t):
    """Independent re-implementation by bare loops over the definition."""
    n = len(z)
    cross = F(1)
    for i in range(n):
        for j in range(n):
            if i < j:
                cross *= (q ** nu[i] * z[i] - q ** nu[j] * z[j]) / (z[i] - z[j])
    poch = F(1)
    for i in range(n):
        for j in range(n):
            num = F(1)
            den = F(1)
            for k in range(nu[i]):
                num *= 1 - t * z[i] / z[j] * q**k
                den *= 1 - q * z[i] / z[j] * q**k
            poch *= num / den
    return cross * poch


def test_compositions_enumeration_order():
    assert list(compositions_of_weight(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert sum(1 for _ in compositions_of_weight(4, 3)) == 15


def test_coeff_zero_shift_is_one():
    assert noumi_coeff((0, 0), (F(1, 2), F(1, 3)), Q, T) == 1


def test_coeff_single_variable():
    for n in range(4):
        got = noumi_coeff((n,), (F(2, 5),), Q, T)
        assert got == qpoch_finite(T, Q, n) / qpoch_finite(Q, Q, n)


def test_coeff_matches_naive_loops():
    rng = random.Random(2)
    for _ in range(10):
        z = distinct_rationals(rng, 2, nonzero=True)
        for nu in [(1, 0), (0, 1), (2, 1), (1, 2)]:
            assert noumi_coeff(nu, z, Q, T) == noumi_coeff_naive(nu, z, Q, T)


def test_coeff_rejects_coincident_points():
    with pytest.raises(DomainError):
        noumi_coeff((1, 0), (F(1, 2), F(1, 2)), Q, T)


def test_apply_constant_function_single_variable():
    series = apply_noumi(lambda z: F(1), (F(2, 7),), Q, T, 2)
    assert series.coeffs == (
        F(1),
        qpoch_finite(T, Q, 1) / qpoch_finite(Q, Q, 1),
        qpoch_finite(T, Q, 2) / qpoch_finite(Q, Q, 2),
    )


def test_apply_order_zero():
    poly = macdonald_gram_schmidt((2, 1), Q, T, nvars=2)
    z = (F(1, 2), F(2, 7))
    series = apply_noumi(lambda pt: eval_symmetric(poly, pt), z, Q, T, 0)
    assert series.coeffs == (eval_symmetric(poly, z),)


def test_eigenvalue_series_t_zero_degenerates_to_euler_factor():
    s = noumi_eigenvalue_series((0, 0), 2, Q, F(0), 3)
    # Only the last coordinate contributes: the series of 1/(zeta; q)_inf.
    expect = [F(1)]
    den = F(1)
    for k in range(1, 4):
        den *= 1 - Q**k
        expect.append(1 / den)
    assert list(s.coeffs) == expect


def test_eigenvalue_series_first_order():
    s = noumi_eigenvalue_series((0,), 1, Q, T, 1)
    assert s.coeffs[1] == (1 - T) / (1 - Q)


def test_eigenvalue_series_order_zero():
    assert noumi_eigenvalue_series((3, 1), 2, Q, T, 0).coeffs == (F(1),)


def test_verify_empty_partition_is_q_binomial_theorem():
    rep = verify_noumi((), 1, Q, T, order=5, samples=3, seed=1)
    assert rep.passed


def test_verify_small_cases_exact():
    assert verify_noumi((1,), 2, Q, T, order=2, samples=3, seed=7).passed
    assert verify_noumi((2, 1), 2, t=F(0), order=3, samples=3, seed=7).passed
    assert verify_noumi((2,), 2, q=Q, t=Q, order=3, samples=3, seed=3).passed  # t = q


def test_operator_coefficients_symmetric_under_point_permutation():
    rng = random.Random(17)
    poly = macdonald_gram_schmidt((2,), Q, T, nvars=3)
    z = distinct_rationals(rng, 3, nonzero=True)
    f = lambda pt: eval_symmetric(poly, pt)
    base = apply_noumi(f, z, Q, T, 3)
    for perm in itertools.permutations(z):
        assert apply_noumi(f, perm, Q, T, 3).coeffs == base.coeffs


def test_d1_check_trivial_and_deep():
    assert macdonald_d1_check((), 2, Q, T, samples=2, seed=2).passed
    assert macdonald_d1_check((1,), 2, Q, T, samples=3, seed=2).passed
    assert macdonald_d1_check((2, 1), 3, samples=3, seed=5).passed


def test_verify_rejects_long_partition():
    with pytest.raises(DomainError):
        verify_noumi((1, 1), 1, Q, T)
