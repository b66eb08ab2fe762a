"""Outward-rounded interval helpers on top of mpmath's interval context.

Every function takes the working precision explicitly and uses a private
``MPIntervalContext`` for that precision, so nothing depends on (or mutates)
the global ``mpmath.iv`` state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import gmpy2
import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .errors import InconclusivePrecision

DEFAULT_PREC = 160
MAX_PREC = 2048

_local = threading.local()


def context(prec: int = DEFAULT_PREC) -> MPIntervalContext:
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = MPIntervalContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


@dataclass(frozen=True)
class Interval:
    """Closed enclosure ``[lo, hi]``; endpoints are mpmath ``mpf`` values."""

    lo: object
    hi: object

    @classmethod
    def from_iv(cls, x) -> Interval:
        # make_mpf keeps the raw endpoints unrounded
        lo, hi = x._mpi_
        return cls(mpmath.mp.make_mpf(lo), mpmath.mp.make_mpf(hi))

    @property
    def width(self):
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def cbrt(ctx: MPIntervalContext, n: int):
    """Enclosure of the real cube root of the positive integer ``n``.

    Built from an exact integer cube root of ``n * 2**(3k)``, so the bracket
    is correct independently of any transcendental function.
    """
    if n <= 0:
        raise ValueError("cbrt expects a positive integer")
    k = ctx.prec
    r = int(gmpy2.iroot(gmpy2.mpz(n) << (3 * k), 3)[0])
    scale = ctx.mpf(2) ** k
    lo = ctx.mpf(r) / scale
    hi = ctx.mpf(r + 1) / scale
    return ctx.mpf([lo.a, hi.b])


def imax(ctx: MPIntervalContext, *xs):
    """Interval extension of ``max``."""
    lo = max(x.a for x in xs)
    hi = max(x.b for x in xs)
    return ctx.mpf([lo, hi])


def decide_less(lhs, rhs, what: str = "inequality") -> bool:
    """Rigorous verdict on ``lhs < rhs`` for two intervals.

    Returns True/False only when the enclosures are separated; raises
    :class:`InconclusivePrecision` when they overlap.
    """
    if lhs.b < rhs.a:
        return True
    if lhs.a >= rhs.b:
        return False
    raise InconclusivePrecision(f"cannot separate the two sides of {what}")


def with_escalation(fn, prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC):
    """Call ``fn(prec)``, doubling ``prec`` on InconclusivePrecision."""
    while True:
        try:
            return fn(prec)
        except InconclusivePrecision:
            if prec >= max_prec:
                raise
            prec = min(2 * prec, max_prec)
