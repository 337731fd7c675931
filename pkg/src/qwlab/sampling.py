"""Seeded random draws used by the verification checks.

All sampling goes through `random.Random(seed)` so every report can be
replayed from its recorded seed.  Rationals are kept small (numerators and
denominators bounded by 100) so exact arithmetic stays cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction

MAX_NUM = 100
MAX_DEN = 100


def rational(rng: random.Random, signed: bool = True, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(0, MAX_NUM), rng.randint(1, MAX_DEN))
        if signed and rng.random() < 0.5:
            v = -v
        if nonzero and v == 0:
            continue
        return v


def unit_interval_rational(rng: random.Random, allow_zero: bool = False) -> Fraction:
    """A rational strictly inside (0, 1), or [0, 1) when allow_zero is set."""
    while True:
        den = rng.randint(2, MAX_DEN)
        num = rng.randint(0 if allow_zero else 1, den - 1)
        v = Fraction(num, den)
        if v == 0 and not allow_zero:
            continue
        return v


def distinct_rationals(rng: random.Random, count: int, nonzero: bool = True) -> tuple:
    vals: list[Fraction] = []
    while len(vals) < count:
        v = rational(rng, nonzero=nonzero)
        if v not in vals:
            vals.append(v)
    return tuple(vals)


def complex_in_box(rng: random.Random, re_lo: float, re_hi: float,
                   im_lo: float, im_hi: float) -> complex:
    return complex(rng.uniform(re_lo, re_hi), rng.uniform(im_lo, im_hi))
