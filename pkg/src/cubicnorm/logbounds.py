"""Rigorous bounds for the linear form in two logarithms.

Throughout, ``s`` is the real cube root of ``t^3 - 1``, ``u = t^2 + st + s^2``
and ``phi = atan(sqrt(3) s / (2t + s))`` is minus the argument of
``t - omega*s``, so the ratio ``(t - omega s)/(t - omega^2 s)`` equals
``exp(-2 i phi)``.  All quantities are carried as outward-rounded intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import gmpy2
from mpmath import libmp

from . import intervals
from .errors import InconclusivePrecision, InvalidRange, InvalidT
from .intervals import DEFAULT_PREC, Interval, cbrt, context, imax, with_escalation

# Laurent's two-logarithm constants, specialised to D = 3 and alpha_2 a root of unity.
LAURENT_C = "22.8"
LAURENT_SHIFT = "0.21"
DEGREE_D = 3

# Rounded constants used when inverting the combined inequality.
PAPER_C = "644.66"
PAPER_SLACK = "1.3"
SWITCH_M = 8928


@dataclass(frozen=True)
class Lambda1Evaluation:
    t: int
    m: int
    b: int
    lambda1_abs: Interval
    upper_bound: Interval | None
    unit_bound: Interval
    laurent_lower: Interval

    @property
    def upper_bound_holds(self) -> bool | None:
        """Whether |Lambda_1| <= the closed-form upper bound (None if m < 3)."""
        if self.upper_bound is None:
            return None
        return self.lambda1_abs.hi <= self.upper_bound.hi

    @property
    def b_within_bound(self) -> bool:
        return 2 * abs(self.b) <= self.m + 2


@dataclass(frozen=True)
class DerivedBounds:
    m_max: int
    t_max_coarse: int
    t_max: int

    def as_dict(self) -> dict[str, int]:
        return {"m_max": self.m_max, "t_max_coarse": self.t_max_coarse, "t_max": self.t_max}


def _check_t(t: int) -> None:
    if t < 2:
        raise InvalidT(f"t must be >= 2, got {t}")


def _basics(ctx, t: int):
    s = cbrt(ctx, t**3 - 1)
    tt = ctx.mpf(t)
    u = tt * tt + tt * s + s * s
    phi = ctx.atan2(ctx.sqrt(3) * s, 2 * tt + s)
    return s, u, phi


def _to_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def _nearest_integer(x) -> int:
    """Round an interval to the unique nearest integer, or fail."""
    lo, hi = (_to_fraction(r) for r in x._mpi_)
    a, b = floor(lo + Fraction(1, 2)), floor(hi + Fraction(1, 2))
    if a != b:
        raise InconclusivePrecision("multiple of 2*pi/3 is ambiguous at this precision")
    return a


def arg_of_unit_conjugate(t: int, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of Im log(t - omega s), which equals -phi."""
    _check_t(t)
    ctx = context(prec)
    _, _, phi = _basics(ctx, t)
    return Interval.from_iv(-phi)


def height_of_ratio(t: int, prec: int = DEFAULT_PREC) -> Interval:
    """h((t - omega s)/(t - omega^2 s)) = log(u)/2."""
    _check_t(t)
    ctx = context(prec)
    _, u, _ = _basics(ctx, t)
    return Interval.from_iv(ctx.log(u) / 2)


def _lambda1(ctx, t: int, m: int):
    s, u, phi = _basics(ctx, t)
    third = 2 * ctx.pi / 3
    # -1/omega = exp(i pi/3); total argument of -(1/omega) * ratio^m
    theta = ctx.pi / 3 - 2 * m * phi
    b = _nearest_integer(theta / third)
    lam = abs(theta - b * third)
    unit = 4 * abs(ctx.cos(2 * ctx.pi / 3 - m * phi))
    return b, lam, unit


def eval_lambda1(t: int, m: int, prec: int = DEFAULT_PREC, tol=None) -> Lambda1Evaluation:
    """Evaluate |Lambda_1| and the bounds that sandwich it for a solution.

    ``b`` is the integer minimising ``|theta - b * 2pi/3|`` where ``theta`` is the
    argument of ``-(1/omega) * ((t - omega s)/(t - omega^2 s))^m``.  ``unit_bound``
    is ``2|W + 1|`` with ``W = omega (t - omega s)^m / (omega^2 (t - omega^2 s)^m)``,
    which bounds |Lambda_1| for every (t, m); ``upper_bound`` additionally uses
    the unit equation and is only guaranteed when (t, m) gives a solution.
    """
    _check_t(t)
    if m < 1:
        raise InvalidRange(f"m must be >= 1, got {m}")
    ctx = context(prec)
    b, lam, unit = _lambda1(ctx, t, m)
    if tol is None:
        tol = Fraction(1, 2 ** (prec // 2))
    if _to_fraction(lam.delta._mpi_[1]) > tol:
        raise InconclusivePrecision(f"|Lambda_1| enclosure wider than {float(tol):.3g}")
    return Lambda1Evaluation(
        t=t,
        m=m,
        b=b,
        lambda1_abs=Interval.from_iv(lam),
        upper_bound=lambda1_upper(t, m, prec) if m >= 3 else None,
        unit_bound=Interval.from_iv(unit),
        laurent_lower=laurent_lower(t, m, prec),
    )


def lambda1_upper(t: int, m: int, prec: int = DEFAULT_PREC) -> Interval:
    """6 * 3^(-m/4) * s^(2-m) + 2 (t - s)^m / (sqrt(3) s^m)."""
    _check_t(t)
    if m < 3:
        raise InvalidRange(f"upper bound needs m >= 3, got {m}")
    ctx = context(prec)
    s = cbrt(ctx, t**3 - 1)
    # t - s = 1/u avoids cancellation
    tt = ctx.mpf(t)
    t_minus_s = 1 / (tt * tt + tt * s + s * s)
    first = 6 * ctx.mpf(3) ** (ctx.mpf(-m) / 4) * s ** (2 - m)
    second = 2 * t_minus_s**m / (ctx.sqrt(3) * s**m)
    return Interval.from_iv(first + second)


def _b_prime(ctx, u, m: int):
    return 2 * ctx.mpf(m) / (3 * ctx.log(u)) + 3 * ctx.mpf(m) / (2 * ctx.pi)


def b_prime(t: int, m: int, prec: int = DEFAULT_PREC) -> Interval:
    _check_t(t)
    ctx = context(prec)
    _, u, _ = _basics(ctx, t)
    return Interval.from_iv(_b_prime(ctx, u, m))


def laurent_lower(t: int, m: int, prec: int = DEFAULT_PREC) -> Interval:
    """Laurent's lower bound for log|Lambda_1| with D = 3, log A_2 = 2pi/9."""
    _check_t(t)
    if m < 1:
        raise InvalidRange(f"m must be >= 1, got {m}")
    ctx = context(prec)
    _, u, _ = _basics(ctx, t)
    log_a1 = ctx.log(u) / 2
    log_a2 = 2 * ctx.pi / 9
    bp = _b_prime(ctx, u, m)
    big = imax(ctx, ctx.log(bp) + ctx.mpf(LAURENT_SHIFT), ctx.mpf(30) / DEGREE_D, ctx.mpf(1))
    value = -ctx.mpf(LAURENT_C) * DEGREE_D**4 * big**2 * log_a1 * log_a2
    return Interval.from_iv(value)


def laurent_constant(prec: int = DEFAULT_PREC) -> Interval:
    """22.8 * D^4 * log A_2 * (1/2), the coefficient of log u in the bound."""
    ctx = context(prec)
    value = ctx.mpf(LAURENT_C) * DEGREE_D**4 * (2 * ctx.pi / 9) / 2
    return Interval.from_iv(value)


def log_term_dominates(m: int, prec: int = DEFAULT_PREC) -> bool:
    """Rigorously decide log(2m) + 0.21 > 30/D."""
    ctx = context(prec)
    lhs = ctx.log(ctx.mpf(2 * m)) + ctx.mpf(LAURENT_SHIFT)
    return intervals.decide_less(ctx.mpf(30) / DEGREE_D, lhs, "log(2m) + 0.21 > 10")


def _m_bound_holds(m: int, prec: int) -> bool:
    ctx = context(prec)
    rhs = ctx.mpf(PAPER_C) * (ctx.log(ctx.mpf(2 * m)) + ctx.mpf(LAURENT_SHIFT)) ** 2
    rhs = rhs + ctx.mpf(PAPER_SLACK)
    # equality would be irrational-equals-rational, so strict separation is expected
    return not intervals.decide_less(rhs, ctx.mpf(m) / 2, "m/2 <= 644.66 (log 2m + 0.21)^2 + 1.3")


def m_bound_holds(m: int, prec: int = DEFAULT_PREC) -> bool:
    """Whether m/2 <= 644.66 (log(2m) + 0.21)^2 + 1.3, decided rigorously."""
    return with_escalation(lambda p: _m_bound_holds(m, p), prec)


def derive_m_max(prec: int = DEFAULT_PREC) -> int:
    """Largest m with m/2 <= 644.66 (log(2m) + 0.21)^2 + 1.3.

    The gap between the two sides is concave in m and positive at m = 1, so
    the admissible set is an initial segment and bisection finds its end.
    """
    lo, hi = 1, 1 << 10
    while m_bound_holds(hi, prec):
        lo, hi = hi, hi << 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if m_bound_holds(mid, prec):
            lo = mid
        else:
            hi = mid
    return lo


def _iroot(n: int, k: int) -> int:
    if n < 0:
        return -1
    return int(gmpy2.iroot(gmpy2.mpz(n), k)[0])


def derive_t_bounds(m_max: int) -> DerivedBounds:
    """Largest t with sqrt(2) t^(3/2) <= m_max and with cbrt(6) t^2 <= m_max.

    Both comparisons are done as 2 t^3 <= m_max^2 and 6 t^6 <= m_max^3.
    """
    if m_max < 3:
        raise InvalidRange(f"m_max must be >= 3, got {m_max}")
    coarse = _iroot(m_max**2 // 2, 3)
    fine = _iroot(m_max**3 // 6, 6)
    return DerivedBounds(m_max=m_max, t_max_coarse=coarse, t_max=fine)
