"""Structured verification reports.

One report records one identity check: the inputs, both sides, the error,
the tolerance it was held to, and whether it passed.  Formatting is stable
so that identical runs produce byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp


@dataclass
class VerificationReport:
    check_id: str
    params: dict
    lhs: object
    rhs: object
    abs_err: object
    rel_err: object
    tolerance: object
    passed: bool
    seed: int | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_obj(self) -> dict:
        """Plain-data form with fixed key order, ready for JSON."""
        return {
            "check_id": self.check_id,
            "params": format_value(self.params),
            "lhs": format_value(self.lhs),
            "rhs": format_value(self.rhs),
            "abs_err": format_value(self.abs_err),
            "rel_err": format_value(self.rel_err),
            "tolerance": format_value(self.tolerance),
            "pass": self.passed,
            "seed": self.seed,
            "diagnostics": format_value(self.diagnostics),
        }


FLOAT_DIGITS = 17


def format_value(v):
    """Render scalars/collections into JSON-safe values, deterministically."""
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, mp.mpf):
        return mp.nstr(v, FLOAT_DIGITS, show_zero_exponent=False)
    if isinstance(v, (complex, mp.mpc)):
        return {
            "re": format_value(mp.mpf(v.real)),
            "im": format_value(mp.mpf(v.imag)),
        }
    if isinstance(v, dict):
        return {str(k): format_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [format_value(x) for x in v]
    return str(v)


def relative_error(lhs, rhs):
    """|lhs - rhs| / max(|lhs|, |rhs|); the absolute error if both vanish."""
    diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    if scale == 0:
        return diff
    return diff / scale


def comparison_report(check_id: str, params: dict, lhs, rhs, tolerance,
                      seed=None, diagnostics=None) -> VerificationReport:
    """Standard two-sided numeric comparison at a relative tolerance."""
    abs_err = abs(lhs - rhs)
    rel_err = relative_error(lhs, rhs)
    return VerificationReport(
        check_id=check_id,
        params=params,
        lhs=lhs,
        rhs=rhs,
        abs_err=abs_err,
        rel_err=rel_err,
        tolerance=tolerance,
        passed=bool(rel_err <= tolerance),
        seed=seed,
        diagnostics=diagnostics or {},
    )
