"""Brute-force search for solutions of the norm-form equation.

Deliberately independent of the ring and sieve code: it only evaluates the
integer polynomial x^3 - d y^3 + 3 d x y + d^2 with d = t^3 - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import InvalidWindow
from .units import SolutionRecord, solution_from_exponent


def norm_value(t: int, x: int, y: int) -> int:
    d = t**3 - 1
    return x**3 - d * y**3 + 3 * d * x * y + d * d


@dataclass(frozen=True)
class SearchWindow:
    t: int
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 2 * self.t**2:
            raise InvalidWindow(f"bound {self.bound} < 2 t^2 = {2 * self.t**2}")

    @classmethod
    def default(cls, t: int) -> SearchWindow:
        return cls(t, max(2 * t * t, 1000))


def _monotone_hits(f, lo: int, hi: int, increasing: bool) -> list[int]:
    """x in [lo, hi] with f(x) in {-1, 0, 1}, f monotone on that range."""
    if lo > hi:
        return []
    sign = 1 if increasing else -1
    # first x with sign*f(x) >= -1
    a, b = lo, hi + 1
    while a < b:
        mid = (a + b) // 2
        if sign * f(mid) >= -1:
            b = mid
        else:
            a = mid + 1
    out = []
    x = a
    while x <= hi:
        v = f(x)
        if sign * v > 1:
            break
        out.append(x)
        x += 1
    return out


def _row(t: int, y: int, bound: int) -> list[tuple[int, int]]:
    d = t**3 - 1
    c1 = 3 * d * y
    c0 = d * d - d * y**3

    def f(x: int) -> int:
        return x**3 + c1 * x + c0

    if y >= 0:
        xs = _monotone_hits(f, -bound, bound, True)
    else:
        # critical points at +-sqrt(-d y)
        lo_c = isqrt(-d * y)
        hi_c = lo_c + 1
        xs = (
            _monotone_hits(f, -bound, min(-hi_c, bound), True)
            + _monotone_hits(f, max(-lo_c, -bound), min(lo_c, bound), False)
            + _monotone_hits(f, max(hi_c, -bound), bound, True)
        )
    return [(x, y) for x in xs if f(x) in (1, -1)]


def _records(t: int, pts) -> list[SolutionRecord]:
    out = []
    for x, y in sorted(set(pts)):
        v = norm_value(t, x, y)
        if v in (1, -1):
            out.append(SolutionRecord(t=t, x=x, y=y, delta=0 if v == 1 else 1))
    return out


def brute_force(t: int, window: SearchWindow | None = None, *, naive: bool = False) -> list[SolutionRecord]:
    """All (x, y) with |x|, |y| <= B and norm value +-1, sorted by (x, y).

    The default scan solves the cubic in x for each y by bisection on its
    monotone pieces; ``naive=True`` evaluates every grid point.
    """
    window = window or SearchWindow.default(t)
    if window.t != t:
        raise InvalidWindow("window was built for a different t")
    B = window.bound
    if naive:
        pts = [(x, y) for x in range(-B, B + 1) for y in range(-B, B + 1) if norm_value(t, x, y) in (1, -1)]
    else:
        pts = [p for y in range(-B, B + 1) for p in _row(t, y, B)]
    return _records(t, pts)


def functional_solutions(t: int) -> list[SolutionRecord]:
    return [SolutionRecord(t=t, x=t * t, y=-t, delta=0), SolutionRecord(t=t, x=t * t, y=2 * t, delta=0)]


def cross_check(t_range, bound: int) -> bool:
    """Brute force finds exactly the two functional solutions for every t."""
    for t in t_range:
        found = [r.key() for r in brute_force(t, SearchWindow(t, bound))]
        expected = [solution_from_exponent(t, -1, 0), solution_from_exponent(t, 2, 0)]
        expected = sorted(r.key() for r in expected if r is not None)
        if found != expected:
            return False
    return True
