"""Unit-group facts for Q(s): fundamentality of t - s and small exponents."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from . import ring
from .errors import InsufficientPoints, InvalidT
from .intervals import DEFAULT_PREC, cbrt, context, decide_less
from .ring import RingContext


class ExponentClass(enum.Enum):
    FUNCTIONAL_MINUS1 = "FunctionalMinus1"
    FUNCTIONAL_2 = "Functional2"
    IMPOSSIBLE_ZERO_ONE = "ImpossibleZeroOne"
    IMPOSSIBLE_NEGATIVE = "ImpossibleNegative"
    SIEVE_CANDIDATE = "SieveCandidate"


@dataclass(frozen=True)
class SolutionRecord:
    """A solution (x, y) of the norm-form equation with value (-1)^delta.

    ``m`` is the exponent of t - s when known; records produced by the
    brute-force search leave it as None.
    """

    t: int
    x: int
    y: int
    delta: int
    m: int | None = None

    def key(self) -> tuple[int, int, int, int]:
        return (self.t, self.x, self.y, self.delta)


def norm_form(t: int, x: int, y: int) -> int:
    d = t**3 - 1
    return x**3 - d * y**3 + 3 * d * x * y + d * d


def verify_fundamental_unit(t: int, prec: int = DEFAULT_PREC) -> bool:
    """Check 4 u^(3/2) + 27 < 27 (t^3 - 1)^2 with u = t^2 + st + s^2.

    By Artin's inequality a unit v > 1 with v^n = u, n >= 2, would force the
    reverse inequality, so a True result certifies that t - s is fundamental.
    """
    if t < 2:
        raise InvalidT(f"t must be >= 2, got {t}")
    ctx = context(prec)
    s = cbrt(ctx, t**3 - 1)
    tt = ctx.mpf(t)
    u = tt * tt + tt * s + s * s
    lhs = 4 * u * ctx.sqrt(u) + 27
    rhs = ctx.mpf(27 * (t**3 - 1) ** 2)
    return decide_less(lhs, rhs, "Artin's inequality")


def negative_exponent_witness(ctx: RingContext, prec: int = DEFAULT_PREC) -> bool:
    """Rigorously decide 9 s^4 - 2/(3 s^2) > 3 s^2."""
    ic = context(prec)
    s = cbrt(ic, ctx.d)
    s2 = s * s
    return decide_less(3 * s2, 9 * s2 * s2 - 2 / (3 * s2), "9s^4 - 2/(3s^2) > 3s^2")


def classify_exponent(m: int, ctx: RingContext) -> ExponentClass:
    if m == -1:
        return ExponentClass.FUNCTIONAL_MINUS1
    if m == 2:
        return ExponentClass.FUNCTIONAL_2
    if m in (0, 1):
        return ExponentClass.IMPOSSIBLE_ZERO_ONE
    if m <= -2:
        if not negative_exponent_witness(ctx):
            raise AssertionError(f"exclusion inequality for m <= -2 failed at t={ctx.t}")
        return ExponentClass.IMPOSSIBLE_NEGATIVE
    return ExponentClass.SIEVE_CANDIDATE


def solution_from_exponent(t: int, m: int, delta: int = 0) -> SolutionRecord | None:
    """Read off (x, y) from x - s y + s^2 = (-1)^delta (t - s)^m, if possible.

    Returns None when the s^2-coefficient of the right-hand side is not 1.
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    ctx = RingContext(t)
    e = ring.pow(ctx.unit(), m, ctx)
    if delta:
        e = -e
    if e.a2 != 1:
        return None
    rec = SolutionRecord(t=t, x=e.a0, y=-e.a1, delta=delta, m=m)
    assert norm_form(t, rec.x, rec.y) == (-1) ** delta
    assert ring.norm(e, ctx) == (-1) ** delta
    return rec


ZIEGLER_MIN_POINTS = 28


def ziegler_value(t: int) -> int:
    """x(x - t y)(x - (t^4 + 3t) y) + y^3 at Ziegler's functional pair."""
    x = t**9 + 3 * t**6 + 4 * t**3 + 1
    y = t**8 + 3 * t**5 + 3 * t**2
    return x * (x - t * y) * (x - (t**4 + 3 * t) * y) + y**3


def verify_ziegler_identity(sample_points: Iterable[int] = range(-14, 14)) -> bool:
    """Both sides have degree <= 27 in t, so 28 agreeing points prove the identity."""
    points = set(sample_points)
    if len(points) < ZIEGLER_MIN_POINTS:
        raise InsufficientPoints(f"need {ZIEGLER_MIN_POINTS} distinct points, got {len(points)}")
    return all(ziegler_value(t) == 1 for t in points)
