"""Whittaker functions via the Givental integral, and Stade's identities.

The Whittaker function is defined here as the integral over triangular
patterns X = (x_{k,i}, 1 <= i <= k <= N) with the top row pinned to x:

    psi_lam(x) = integral exp(F_lam(X)) over the N(N-1)/2 interior entries,

    F_lam(X) = i sum_k lam_k (|row_k| - |row_{k-1}|)
             - sum_{k<N} sum_i (e^{x_{k,i}-x_{k+1,i}} + e^{x_{k+1,i+1}-x_{k,i}}).

The e^(-e^s) coupling makes the integrand die double-exponentially a few
units outside the top-row hull, so a modest truncated box suffices.

For N = 2 the interior integral separates into a center-of-mass phase times
a one-dimensional profile in s = x_1 - x_2; `pair_profile` exposes that
profile, and the Stade checks integrate against it.  The separation is an
exact change of variables and is itself cross-checked against the direct
pattern integral in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .gamma import gamma_c
from .qcore import DomainError
from .quadrature import (
    GAUSS_LEGENDRE,
    QuadratureConfig,
    QuadResult,
    integrate_1d,
    integrate_nd,
)
from .report import VerificationReport, comparison_report

MAX_WHITTAKER_N = 3


@dataclass(frozen=True)
class GiventalPattern:
    """Triangular array; rows[k] has k+1 entries and rows[-1] is the top row."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for k, row in enumerate(rows):
            if len(row) != k + 1:
                raise DomainError(f"row {k + 1} must have {k + 1} entries")


def givental_action(lam, pattern: GiventalPattern):
    """The exponent F_lam(X) of the Givental integrand."""
    rows = pattern.rows
    n = len(rows)
    if len(lam) != n:
        raise DomainError("need one spectral parameter per row")
    total = mp.mpc(0)
    prev_sum = mp.mpf(0)
    for k in range(n):
        row_sum = mp.fsum(rows[k])
        total = total + 1j * mp.mpc(lam[k]) * (row_sum - prev_sum)
        prev_sum = row_sum
    for k in range(n - 1):
        lower, upper = rows[k], rows[k + 1]
        for i in range(k + 1):
            total = total - mp.exp(lower[i] - upper[i]) - mp.exp(upper[i + 1] - lower[i])
    return total


DEFAULT_WHITTAKER_CFG = QuadratureConfig(
    scheme=GAUSS_LEGENDRE, box_halfwidth=12.0, target_rel_error=1e-10
)


def _interior_box(x, cfg: QuadratureConfig):
    # Integrand is below e^(-e^pad) outside this window: pad 5 leaves mass
    # ~1e-64, so the configured half-width only matters if smaller.
    pad = min(cfg.box_halfwidth, 5.0)
    return (min(x) - pad, max(x) + pad)


def whittaker_eval(lam, x, cfg: QuadratureConfig | None = None) -> QuadResult:
    """psi_lam(x) for N <= 3 by quadrature over the interior pattern entries.

    N = 1 is the exact exponential e^{i lam_1 x_1}.  The error field carries
    the last refinement difference.
    """
    x = tuple(mp.mpf(v) for v in x)
    lam = tuple(mp.mpc(v) for v in lam)
    n = len(x)
    if len(lam) != n:
        raise DomainError("lam and x must have the same length")
    if n == 0 or n > MAX_WHITTAKER_N:
        raise DomainError(f"pattern integral supports 1 <= N <= {MAX_WHITTAKER_N}")
    if cfg is None:
        cfg = DEFAULT_WHITTAKER_CFG
    if n == 1:
        return QuadResult(mp.exp(1j * lam[0] * x[0]), mp.mpf(0), {"exact": True})
    box = _interior_box(x, cfg)
    if n == 2:
        l1, l2 = lam
        x1, x2 = x
        phase2 = 1j * l2 * (x1 + x2)

        def integrand2(t):
            return mp.exp(
                1j * (l1 - l2) * t + phase2 - mp.exp(t - x1) - mp.exp(x2 - t)
            )

        return integrate_1d(integrand2, box[0], box[1], cfg)
    return _pattern_quad_3(lam, x, box, cfg)


def _pattern_quad_3(lam, x, box, cfg: QuadratureConfig) -> QuadResult:
    """N = 3 pattern integral as a tensor sum with per-axis tables.

    The couplings between pattern entries are real exponentials, so each
    grid point costs one real exp; the complex spectral phases factor per
    axis and are precomputed on the shared node list.
    """
    from .quadrature import QuadratureError, nodes_1d

    l1, l2, l3 = lam
    x1, x2, x3 = x
    prec = cfg.working_prec()
    with mp.workprec(prec):
        const = mp.exp(1j * l3 * (x1 + x2 + x3))
        c1, c2 = mp.exp(-x1), mp.exp(x2)
        c3, c4 = mp.exp(-x2), mp.exp(x3)
        d12 = 1j * (l1 - l2)
        d23 = 1j * (l2 - l3)
        prev = None
        history = []
        for level in range(cfg.max_depth):
            nodes = nodes_1d(cfg.scheme, level, box[0], box[1], prec)
            ax1 = []
            ax2 = []
            ax3 = []
            for t, wt in nodes:
                E = mp.exp(t)
                iE = 1 / E
                ax1.append((E, iE, wt * mp.exp(d12 * t)))
                ax2.append((iE, E * c1 + c2 * iE, wt * mp.exp(d23 * t)))
                ax3.append((E, E * c3 + c4 * iE, wt * mp.exp(d23 * t)))
            total = mp.mpc(0)
            exp = mp.exp
            for E1, iE1, p1 in ax1:
                acc1 = mp.mpc(0)
                for iE2, a2, p2 in ax2:
                    base = E1 * iE2 + a2
                    acc2 = mp.mpc(0)
                    for E3, a3, p3 in ax3:
                        acc2 += p3 * exp(-(base + E3 * iE1 + a3))
                    acc1 += p2 * acc2
                total += p1 * acc1
            total = const * total
            history.append(total)
            if prev is not None:
                err = abs(total - prev)
                scale = max(abs(total), mp.mpf(cfg.abs_floor))
                if err <= cfg.target_rel_error * scale:
                    return QuadResult(+total, +err, {"levels": len(history)})
            prev = total
    raise QuadratureError(
        f"pattern quadrature did not converge "
        f"(last values {[mp.nstr(abs(h), 8) for h in history[-3:]]})"
    )


def pair_profile(mu1, mu2, s, cfg: QuadratureConfig | None = None) -> QuadResult:
    """The reduced N = 2 pattern integral at row separation s:

        integral dt exp(i (mu1 - mu2) t - 2 e^{-s/2} cosh t),

    so that psi_(mu1,mu2)(x1, x2) = e^{i (mu1+mu2)(x1+x2)/2} * profile(x1-x2).
    """
    if cfg is None:
        cfg = DEFAULT_WHITTAKER_CFG
    mu1, mu2 = mp.mpc(mu1), mp.mpc(mu2)
    s = mp.mpf(s)
    z = 2 * mp.exp(-s / 2)
    rate = abs(mp.im(mu1 - mu2))  # real growth rate of the phase factor
    # Box: z cosh(t) must dominate both the target accuracy and the phase growth.
    need = -mp.log(mp.mpf(cfg.target_rel_error)) + 45
    tmax = mp.log(2 * need / z + 3) + 1
    for _ in range(3):
        tmax = mp.log(2 * (need + rate * tmax) / z + 3) + 1

    def integrand(t):
        return mp.exp(1j * (mu1 - mu2) * t - z * mp.cosh(t))

    return integrate_1d(integrand, -tmax, tmax, cfg)


# ---------------------------------------------------------------------------
# Sklyanin measures
# ---------------------------------------------------------------------------


def _check_distinct(xi):
    for i in range(len(xi)):
        for j in range(i + 1, len(xi)):
            if xi[i] == xi[j]:
                raise DomainError("Sklyanin measure needs pairwise distinct arguments")


def sklyanin_m(xi) -> mp.mpc:
    """(2 pi)^-N / N! * prod_{i != j} Gamma(i xi_i - i xi_j)^-1."""
    xi = tuple(mp.mpc(v) for v in xi)
    _check_distinct(xi)
    n = len(xi)
    val = mp.mpc(1) / ((2 * mp.pi) ** n * mp.factorial(n))
    for i in range(n):
        for j in range(n):
            if i != j:
                val = val / gamma_c(1j * (xi[i] - xi[j]))
    return val


def sklyanin_s(xi) -> mp.mpc:
    """(2 pi i)^-N / N! * prod_{i != j} Gamma(xi_i - xi_j)^-1."""
    xi = tuple(mp.mpc(v) for v in xi)
    _check_distinct(xi)
    n = len(xi)
    val = mp.mpc(1) / ((2j * mp.pi) ** n * mp.factorial(n))
    for i in range(n):
        for j in range(n):
            if i != j:
                val = val / gamma_c(xi[i] - xi[j])
    return val


def pair_coupling(delta) -> mp.mpc:
    """1 / (Gamma(z) Gamma(-z)) = -z sin(pi z) / pi, the reflection-resolved
    form of the Sklyanin pair factor; analytic across z = 0."""
    z = mp.mpc(delta)
    return -z * mp.sinpi(z) / mp.pi


# ---------------------------------------------------------------------------
# Stade's integral identities
# ---------------------------------------------------------------------------


def _cutoff_box(rate, u, target):
    """[lo, hi] for integrals of e^{-u e^y} e^{rate y}: double-exponential on
    the right, rate-exponential on the left."""
    rate = mp.re(mp.mpc(rate))
    if rate <= 0:
        raise DomainError("cutoff integral needs a positive decay rate")
    need = -mp.log(mp.mpf(target)) + 12
    hi = mp.log((need + rate * 10) / u + 3) + 2
    lo = -(need / rate) - 2
    return float(lo), float(hi)


def stade_check(u, lam, nu, which: str = "first",
                cfg: QuadratureConfig | None = None,
                tolerance: float = 1e-8) -> VerificationReport:
    """Compare the N-fold cutoff integral of a product of two Whittaker
    functions against its closed Gamma-product value, for N <= 2.

    first:  integral dx e^{-u e^{x_1}}  psi_{-i lam}(x) psi_{-i nu}(x)
    second: integral dx e^{-u e^{-x_N}} psi_{ i lam}(x) psi_{ i nu}(x)
    both equal u^{-sum(lam + nu)} prod_{i,j} Gamma(lam_i + nu_j).
    """
    if which not in ("first", "second"):
        raise DomainError("which must be 'first' or 'second'")
    lam = tuple(mp.mpc(v) for v in lam)
    nu = tuple(mp.mpc(v) for v in nu)
    n = len(lam)
    if len(nu) != n or n not in (1, 2):
        raise DomainError("Stade check supports N in {1, 2}")
    u = mp.mpf(u)
    if u <= 0:
        raise DomainError("u must be positive")
    for li in lam:
        for nj in nu:
            if mp.re(li + nj) <= 0:
                raise DomainError("need Re(lam_i + nu_j) > 0 for all pairs")
    if cfg is None:
        # The nested N = 2 integral only needs to resolve a 1e-4 tolerance;
        # tanh-sinh outer nodes persist across levels, so the profile cache hits.
        if n == 1:
            cfg = QuadratureConfig(scheme=GAUSS_LEGENDRE, target_rel_error=1e-11)
        else:
            cfg = QuadratureConfig(target_rel_error=1e-7)

    total_rate = mp.fsum([mp.re(v) for v in lam + nu])
    if n == 1:
        # psi_{-i a}(x) = e^{a x}; psi_{i a}(x) = e^{-a x}.
        box = _cutoff_box(total_rate, u, cfg.target_rel_error)
        if which == "first":
            f = lambda y: mp.exp(-u * mp.exp(y) + (lam[0] + nu[0]) * y)
            lhs_res = integrate_1d(f, box[0], box[1], cfg)
        else:
            f = lambda y: mp.exp(-u * mp.exp(-y) - (lam[0] + nu[0]) * y)
            lhs_res = integrate_1d(f, -box[1], -box[0], cfg)
        lhs = lhs_res.value
        diag = {"quad_error": lhs_res.error}
    else:
        lhs_res = _stade_pair_integral(u, lam, nu, which, cfg)
        lhs = lhs_res.value
        diag = lhs_res.diagnostics
        diag["quad_error"] = lhs_res.error

    rhs = u ** (-mp.fsum([v for v in lam]) - mp.fsum([v for v in nu]))
    for li in lam:
        for nj in nu:
            rhs = rhs * gamma_c(li + nj)
    return comparison_report(
        check_id=f"stade-{which}",
        params={"u": u, "lam": list(lam), "nu": list(nu), "n": n},
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        diagnostics=diag,
    )


def _stade_pair_integral(u, lam, nu, which, cfg: QuadratureConfig) -> QuadResult:
    """N = 2 cutoff integral, reduced by the center-of-mass change of
    variables to (cutoff profile) x (relative-coordinate profile)."""
    L = lam[0] + lam[1]
    V = nu[0] + nu[1]
    rate = mp.re(L + V)

    # Center-of-mass factor: integral over y of e^{-u e^{+-y}} e^{+-(L+V)y}.
    box = _cutoff_box(rate, u, cfg.target_rel_error)
    if which == "first":
        fy = lambda y: mp.exp(-u * mp.exp(y) + (L + V) * y)
        com = integrate_1d(fy, box[0], box[1], cfg)
    else:
        fy = lambda y: mp.exp(-u * mp.exp(-y) - (L + V) * y)
        com = integrate_1d(fy, -box[1], -box[0], cfg)

    # Relative coordinate: profiles of psi_{-i lam} are pair_profile of
    # mu = -i lam, i.e. exponent (lam1 - lam2) t - z cosh t (real for real lam).
    if which == "first":
        mulam = (-1j * lam[0], -1j * lam[1])
        munu = (-1j * nu[0], -1j * nu[1])
    else:
        mulam = (1j * lam[0], 1j * lam[1])
        munu = (1j * nu[0], 1j * nu[1])

    sub_cfg = QuadratureConfig(
        scheme=cfg.scheme,
        box_halfwidth=cfg.box_halfwidth,
        target_rel_error=cfg.target_rel_error / 10,
        max_depth=cfg.max_depth,
        prec_bits=cfg.working_prec(),
    )
    profile_cache: dict = {}

    def profiles(s):
        key = mp.nstr(s, 25)
        if key not in profile_cache:
            pa = pair_profile(mulam[0], mulam[1], s, sub_cfg).value
            pb = pair_profile(munu[0], munu[1], s, sub_cfg).value
            profile_cache[key] = pa * pb
        return profile_cache[key]

    # Tail rates in s: the profile product grows like e^{(d_lam + d_nu) s / 2}
    # with d = |Re spread|, against the cutoff factor e^{-(L+V) s / 2}.
    spread = abs(mp.re(lam[0] - lam[1])) + abs(mp.re(nu[0] - nu[1]))
    right_rate = (rate - spread) / 2
    if right_rate <= 0:
        raise DomainError("relative-coordinate integral does not converge")
    need = -mp.log(mp.mpf(cfg.target_rel_error)) + 12
    s_hi = float(need / right_rate + 5)
    s_lo = -float(2 * mp.log(need) + 6)

    def fs(s):
        return mp.exp(-(L + V) * s / 2) * profiles(s)

    rel = integrate_1d(fs, s_lo, s_hi, cfg)
    value = com.value * rel.value
    err = abs(com.error * rel.value) + abs(com.value * rel.error)
    return QuadResult(value, err, {"com_error": com.error, "rel_error": rel.error})
