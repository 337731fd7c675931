"""Scalar domains and q-series primitives.

Everything downstream runs on one of two scalar domains:

* exact rationals (`fractions.Fraction`) -- used whenever both sides of an
  identity are rational, so equality checks can demand exact zeros;
* arbitrary-precision floats/complexes (mpmath `mpf`/`mpc`) -- used for the
  analytic side, with the working precision set explicitly by the caller.

All functions here are pure and accept either domain; they never silently
convert an exact input to floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp

MIN_PREC_BITS = 64


class QwlabError(Exception):
    """Base class for errors raised by this package."""


class DomainError(QwlabError):
    """Input outside an operation's mathematical domain."""


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or a plain integer/decimal string into a Fraction."""
    return Fraction(text.strip())


def set_precision(bits: int):
    """Context manager fixing the mpmath working precision in bits (>= 64)."""
    if bits < MIN_PREC_BITS:
        raise DomainError(f"precision must be >= {MIN_PREC_BITS} bits, got {bits}")
    return mp.workprec(bits)


def to_mpf(x) -> mp.mpf:
    """Convert x (Fraction, int, float, mpf, or decimal string) to mpf."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def to_mpc(x) -> mp.mpc:
    """Convert x to mpc; Fractions convert exactly at the working precision."""
    if isinstance(x, Fraction):
        return mp.mpc(to_mpf(x))
    return mp.mpc(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def abs_val(x):
    """|x| in whatever domain x lives in."""
    return abs(x)


# ---------------------------------------------------------------------------
# Truncated power series in the formal variable zeta
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaSeries:
    """Truncated power series sum_{k=0}^{order} coeffs[k] * zeta^k.

    Arithmetic truncates at the shared order; mixing orders is an error
    rather than an implicit truncation.
    """

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise DomainError("ZetaSeries needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int, domain_one=Fraction(1)) -> "ZetaSeries":
        zero = domain_one * 0
        return cls((domain_one,) + (zero,) * order)

    def __add__(self, other: "ZetaSeries") -> "ZetaSeries":
        self._check_order(other)
        return ZetaSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ZetaSeries") -> "ZetaSeries":
        self._check_order(other)
        return ZetaSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "ZetaSeries") -> "ZetaSeries":
        return zeta_series_mul(self, other)

    def scale(self, c) -> "ZetaSeries":
        return ZetaSeries(tuple(c * a for a in self.coeffs))

    def _check_order(self, other: "ZetaSeries") -> None:
        if self.order != other.order:
            raise DomainError(
                f"series order mismatch: {self.order} != {other.order}"
            )


def zeta_series_mul(s1: ZetaSeries, s2: ZetaSeries) -> ZetaSeries:
    """Cauchy product truncated at the shared order."""
    s1._check_order(s2)
    n = s1.order
    out = []
    for k in range(n + 1):
        acc = s1.coeffs[0] * s2.coeffs[k]
        for i in range(1, k + 1):
            acc = acc + s1.coeffs[i] * s2.coeffs[k - i]
        out.append(acc)
    return ZetaSeries(tuple(out))


# ---------------------------------------------------------------------------
# q-Pochhammer symbols
# ---------------------------------------------------------------------------


def qpoch_finite(a, q, n: int):
    """(a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); exact when the inputs are."""
    if n < 0:
        raise DomainError("finite q-Pochhammer needs n >= 0")
    one = a * 0 + q * 0 + 1
    prod = one
    aqk = a
    for _ in range(n):
        prod = prod * (one - aqk)
        aqk = aqk * q
    return prod


def _float_abs(x) -> float:
    if isinstance(x, Fraction):
        return abs(float(x))
    return float(abs(mp.mpf(abs(x))))


def qpoch_infinite(a, q, tol=1e-30):
    """(a;q)_infty truncated so the dropped tail changes the result by < tol.

    Requires |q| < 1.  The tail prod_{k>=K}(1 - a q^k) satisfies
    |log tail| <= sum_{k>=K} |a||q|^k / (1 - |a||q|^K), a geometric bound; K
    is chosen to push it below tol/2.  A factor that vanishes exactly makes
    the product an exact zero, which is returned as the domain's zero.
    """
    abs_q = _float_abs(q)
    if abs_q >= 1.0:
        raise DomainError("infinite q-Pochhammer needs |q| < 1")
    abs_a = _float_abs(a)
    one = a * 0 + q * 0 + 1
    if abs_a == 0.0:
        return one
    if tol <= 0:
        raise DomainError("tol must be positive")
    # Smallest K with |a| q^K <= 1/2 and geometric tail below tol/2.
    if abs_q == 0.0:
        K = 1
    else:
        K = 0
        while abs_a * abs_q**K > 0.5:
            K += 1
        while abs_a * abs_q**K / ((1 - abs_q) * (1 - abs_a * abs_q**K)) >= tol / 2:
            K += 1
    prod = one
    aqk = a
    for _ in range(K):
        factor = one - aqk
        if factor == 0:
            return a * 0
        prod = prod * factor
        aqk = aqk * q
    return prod


def qbinomial_ratio_series(a, b, q, order: int) -> ZetaSeries:
    """Series of (a zeta; q)_infty / (b zeta; q)_infty up to the given order.

    Coefficient of zeta^n is prod_{k=0}^{n-1}(b - a q^k) / (q;q)_n, the
    q-binomial theorem written so that b = 0 degenerates smoothly to the
    q-exponential expansion of (a zeta; q)_infty.
    """
    abs_q = _float_abs(q)
    if abs_q >= 1.0:
        raise DomainError("q-binomial series needs |q| < 1")
    one = a * 0 + b * 0 + q * 0 + 1
    coeffs = [one]
    num = one  # prod_{k<n} (b - a q^k)
    den = one  # (q;q)_n
    aqk = a
    qn = q
    for n in range(1, order + 1):
        num = num * (b - aqk)
        den = den * (one - qn)
        coeffs.append(num / den)
        aqk = aqk * q
        qn = qn * q
    return ZetaSeries(tuple(coeffs))
