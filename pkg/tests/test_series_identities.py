from fractions import Fraction

import mpmath as mp

from qwlab.limits import ScalingPoint, scaling_map
from qwlab.noumi import noumi_eigenvalue_series
from qwlab.qcore import ZetaSeries, qbinomial_ratio_series, zeta_series_mul
from qwlab.sampling import unit_interval_rational

F = Fraction


def test_eigenvalue_series_is_product_of_single_factors():
    import random

    rng = random.Random(9)
    for _ in range(5):
        q = unit_interval_rational(rng)
        t = unit_interval_rational(rng)
        lam = (3, 1)
        order = 4
        direct = noumi_eigenvalue_series(lam, 2, q, t, order)
        manual = zeta_series_mul(
            qbinomial_ratio_series(q ** lam[0] * t**2, q ** lam[0] * t, q, order),
            qbinomial_ratio_series(q ** lam[1] * t, q ** lam[1], q, order),
        )
        assert direct.coeffs == manual.coeffs


def test_t_zero_eigenvalue_collapses_to_last_coordinate_factor():
    q = F(1, 3)
    lam = (2, 1)
    order = 3
    collapsed = noumi_eigenvalue_series(lam, 2, q, F(0), order)
    last_factor = qbinomial_ratio_series(F(0), q ** lam[1], q, order)
    assert collapsed.coeffs == last_factor.coeffs


def test_ratio_series_inverse_to_order_six():
    a, b, q = F(2, 5), F(-3, 7), F(1, 4)
    s1 = qbinomial_ratio_series(a, b, q, 6)
    s2 = qbinomial_ratio_series(b, a, q, 6)
    assert (s1 * s2).coeffs == ZetaSeries.one(6).coeffs


def test_scaling_map_asymmetric_point_frozen_values():
    img = scaling_map(ScalingPoint(0.05, (0.3, -0.3), (0.5, -0.2)))
    # +-(20 log 20 + 6), frozen from direct evaluation
    assert abs(img.lam_raw[0] - mp.mpf("65.9146454711")) < mp.mpf("1e-6")
    assert abs(img.lam_raw[1] + mp.mpf("65.9146454711")) < mp.mpf("1e-6")
    assert img.lam == (66, -66)


def test_shift_and_difference_operators_simultaneously_diagonal():
    # Same partition, variables, and seed for both eigenrelation checks.
    from qwlab.noumi import macdonald_d1_check, verify_noumi

    lam, n, seed = (2, 1), 2, 77
    q, t = F(2, 7), F(3, 11)
    assert verify_noumi(lam, n, q, t, order=3, samples=2, seed=seed).passed
    assert macdonald_d1_check(lam, n, q, t, samples=2, seed=seed).passed


def test_residue_cap_growth_within_tail_estimate():
    from qwlab.baxter import TestFunction, residue_apply

    with mp.workprec(100):
        f = TestFunction("product-pole", b=3.0)
        w = (mp.mpc(0.1, -0.4), mp.mpc(-0.7, -0.6))
        r20 = residue_apply(f, w, -0.8, cap=20)
        r30 = residue_apply(f, w, -0.8, cap=30)
        assert abs(r30.value - r20.value) <= r20.error
