"""Adaptive quadrature over truncated boxes, in mpmath arithmetic.

Two one-dimensional rules are provided and cross-validated in the tests:

* tanh-sinh: the double-exponential transform plus trapezoid sum, refined
  by halving the step;
* composite Gauss-Legendre: fixed-order panels, refined by doubling the
  panel count.

Multi-dimensional integrals are tensor products of the same node sets.
Refinement stops when two successive levels agree to the target relative
error; the last disagreement is reported as the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp

from .qcore import QwlabError

TANH_SINH = "tanh-sinh"
GAUSS_LEGENDRE = "gauss-legendre-composite"
SCHEMES = (TANH_SINH, GAUSS_LEGENDRE)


class QuadratureError(QwlabError):
    """Refinement failed to converge; diagnostics carry the level history."""


@dataclass(frozen=True)
class QuadratureConfig:
    scheme: str = TANH_SINH
    box_halfwidth: float = 12.0
    target_rel_error: float = 1e-10
    max_depth: int = 8
    prec_bits: int | None = None
    abs_floor: float = 0.0  # treat |I| below this as zero when testing rel. error

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise QwlabError(f"unknown quadrature scheme {self.scheme!r}")
        if self.box_halfwidth <= 0 or self.target_rel_error <= 0:
            raise QwlabError("box half-width and target error must be positive")

    def working_prec(self) -> int:
        if self.prec_bits is not None:
            return self.prec_bits
        return max(64, int(-math.log2(self.target_rel_error)) + 30)


@dataclass
class QuadResult:
    value: object
    error: object
    diagnostics: dict = field(default_factory=dict)


GL_ORDER = 12


@lru_cache(maxsize=None)
def gauss_legendre_rule(order: int, prec: int) -> tuple:
    """Nodes/weights on [-1, 1], Newton-refined to the requested precision."""
    with mp.workprec(prec + 20):
        nodes = []
        for k in range(1, order + 1):
            x = mp.mpf(math.cos(math.pi * (k - 0.25) / (order + 0.5)))
            for _ in range(60):
                p0, p1 = mp.mpf(1), x
                for n in range(2, order + 1):
                    p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x = x - dx
                if abs(dx) < mp.mpf(2) ** (-(prec + 10)):
                    break
            p0, p1 = mp.mpf(1), x
            for n in range(2, order + 1):
                p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
            dp = order * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append((+x, +w))
        return tuple(nodes)


@lru_cache(maxsize=None)
def tanh_sinh_rule(level: int, prec: int) -> tuple:
    """Symmetric tanh-sinh nodes/weights on [-1, 1] at step h = 2^-level."""
    with mp.workprec(prec + 20):
        h = mp.mpf(2) ** (-level)
        pi_half = mp.pi / 2
        cutoff = mp.mpf(2) ** (-(prec + 12))
        out = [(mp.mpf(0), pi_half * h)]
        k = 1
        while True:
            t = k * h
            sh = pi_half * mp.sinh(t)
            x = mp.tanh(sh)
            w = pi_half * mp.cosh(t) / mp.cosh(sh) ** 2 * h
            if w < cutoff or 1 - abs(x) < cutoff:
                break
            out.append((+x, +w))
            out.append((-x, +w))
            k += 1
        return tuple(out)


def nodes_1d(scheme: str, level: int, lo, hi, prec: int) -> tuple:
    """Node/weight list on [lo, hi] for the scheme at a refinement level."""
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    if scheme == TANH_SINH:
        base = tanh_sinh_rule(level, prec)
        mid = (hi + lo) / 2
        half = (hi - lo) / 2
        return tuple((mid + half * x, half * w) for x, w in base)
    if scheme == GAUSS_LEGENDRE:
        width = hi - lo
        panels = max(1, int(mp.ceil(width / 3))) * 2**level
        rule = gauss_legendre_rule(GL_ORDER, prec)
        out = []
        step = width / panels
        for p in range(panels):
            a = lo + p * step
            mid = a + step / 2
            half = step / 2
            for x, w in rule:
                out.append((mid + half * x, half * w))
        return tuple(out)
    raise QwlabError(f"unknown scheme {scheme!r}")


def _level_range(scheme: str, max_depth: int):
    start = 2 if scheme == TANH_SINH else 0
    return range(start, start + max_depth)


def integrate_1d(f, lo, hi, cfg: QuadratureConfig) -> QuadResult:
    """Adaptive 1-d integral of f over [lo, hi]."""
    prec = cfg.working_prec()
    # Extra bits keep near-endpoint tanh-sinh nodes off the boundary and
    # absorb accumulation error in long sums.
    with mp.workprec(prec + 30):
        prev = None
        history = []
        for level in _level_range(cfg.scheme, cfg.max_depth):
            total = mp.mpf(0)
            for x, w in nodes_1d(cfg.scheme, level, lo, hi, prec):
                total = total + w * f(x)
            history.append(total)
            if prev is not None:
                err = abs(total - prev)
                scale = max(abs(total), mp.mpf(cfg.abs_floor))
                if err <= cfg.target_rel_error * scale:
                    return QuadResult(+total, +err, {"levels": len(history)})
            prev = total
    raise QuadratureError(
        f"1-d quadrature did not converge on [{lo}, {hi}] "
        f"(last values {[mp.nstr(abs(h), 8) for h in history[-3:]]})"
    )


def integrate_nd(f, boxes, cfg: QuadratureConfig) -> QuadResult:
    """Adaptive tensor-product integral over a list of [lo, hi] boxes."""
    if len(boxes) == 1:
        return integrate_1d(lambda x: f((x,)), boxes[0][0], boxes[0][1], cfg)
    prec = cfg.working_prec()
    with mp.workprec(prec + 30):
        prev = None
        history = []
        for level in _level_range(cfg.scheme, cfg.max_depth):
            axes = [nodes_1d(cfg.scheme, level, lo, hi, prec) for lo, hi in boxes]
            total = _tensor_sum(f, axes, ())
            history.append(total)
            if prev is not None:
                err = abs(total - prev)
                scale = max(abs(total), mp.mpf(cfg.abs_floor))
                if err <= cfg.target_rel_error * scale:
                    return QuadResult(+total, +err, {"levels": len(history)})
            prev = total
    raise QuadratureError(
        f"{len(boxes)}-d quadrature did not converge "
        f"(last values {[mp.nstr(abs(h), 8) for h in history[-3:]]})"
    )


def _tensor_sum(f, axes, prefix):
    total = mp.mpf(0)
    if len(axes) == 1:
        for x, w in axes[0]:
            total = total + w * f(prefix + (x,))
        return total
    for x, w in axes[0]:
        total = total + w * _tensor_sum(f, axes[1:], prefix + (x,))
    return total
