"""Complex Gamma function at arbitrary working precision.

Uses Spouge's rational-kernel approximation, whose coefficient count scales
with the requested precision, together with Euler reflection for the left
half-plane.  The working precision is taken from the ambient mpmath
context; coefficients are cached per (term count, precision).
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath as mp

from .qcore import DomainError


class GammaPoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


def _term_count(prec_bits: int) -> int:
    # Relative truncation error of the kernel is ~ (2 pi)^{-(a+1/2)} sqrt(a);
    # choose a to push it safely below 2^-prec.
    digits = prec_bits * math.log10(2.0)
    return max(8, int(math.ceil((digits + 4) / math.log10(2.0 * math.pi))) + 1)


@lru_cache(maxsize=None)
def _coefficients(a: int, work_prec: int) -> tuple:
    with mp.workprec(work_prec):
        coeffs = [mp.sqrt(2 * mp.pi)]
        fact = mp.mpf(1)
        for k in range(1, a):
            c = (a - k) ** (mp.mpf(k) - mp.mpf("0.5")) * mp.exp(mp.mpf(a - k)) / fact
            coeffs.append(c if k % 2 == 1 else -c)
            fact *= k
        return tuple(coeffs)


@lru_cache(maxsize=None)
def _rational_kernel(a: int, work_prec: int) -> tuple:
    """The partial-fraction sum c_0 + sum_k c_k/(z+k) combined over the
    common denominator Q(z) = prod_{k=1}^{a-1} (z+k): returns (P, Q)
    coefficient tuples, highest degree first, for Horner evaluation."""
    coeffs = _coefficients(a, work_prec)
    with mp.workprec(work_prec):
        Q = [mp.mpf(1)]
        for k in range(1, a):
            Q = [mp.mpf(0)] + Q
            for i in range(len(Q) - 1):
                Q[i] = Q[i] + k * Q[i + 1]
        # Q is stored lowest-first here; P accumulates c_k * Q/(z+k).
        P = [mp.mpf(0)] * (a - 1)
        for k in range(1, a):
            part = list(Q)
            # Exact synthetic division by (z+k): Q is divisible by it.
            out = [mp.mpf(0)] * (len(part) - 1)
            carry = part[-1]
            for d in range(len(part) - 2, -1, -1):
                out[d] = carry
                carry = part[d] - k * carry
            for d in range(a - 1):
                P[d] = P[d] + coeffs[k] * out[d]
        for d in range(a - 1):
            P[d] = P[d] + coeffs[0] * Q[d]
        P[a - 1:] = [coeffs[0] * Q[a - 1]]
        return tuple(reversed(P)), tuple(reversed(Q))


def _horner(poly: tuple, z):
    acc = poly[0]
    for c in poly[1:]:
        acc = acc * z + c
    return acc


def _kernel(z: mp.mpc, a: int, rational: tuple) -> mp.mpc:
    # Gamma(z) for Re(z) >= 1/2 via the shifted Spouge rational kernel.
    zm1 = z - 1
    P, Q = rational
    acc = _horner(P, zm1) / _horner(Q, zm1)
    return (zm1 + a) ** (z - mp.mpf("0.5")) * mp.exp(-(zm1 + a)) * acc


def gamma_c(z) -> mp.mpc:
    """Complex Gamma at the current mpmath working precision.

    Raises GammaPoleError at non-positive integers.
    """
    z = mp.mpc(z)
    if z.imag == 0 and z.real == mp.floor(z.real) and z.real <= 0:
        raise GammaPoleError(f"Gamma pole at {z}")
    prec = mp.mp.prec
    a = _term_count(prec)
    # Guard digits cover cancellation in the alternating kernel sum.
    work = prec + a + 16
    rational = _rational_kernel(a, work)
    with mp.workprec(work):
        z = mp.mpc(z)
        if z.real >= 0.5:
            val = _kernel(z, a, rational)
        else:
            val = mp.pi / (mp.sinpi(z) * _kernel(1 - z, a, rational))
    return +val


def log_abs_gamma_asymptotic(z) -> mp.mpf:
    """Leading-order log|Gamma| for large |Im z|: used for truncation bounds."""
    z = mp.mpc(z)
    y = abs(z.imag)
    return (
        mp.log(2 * mp.pi) / 2
        - mp.pi * y / 2
        + (z.real - mp.mpf("0.5")) * mp.log(max(y, mp.mpf(1)))
    )
