"""Arithmetic in Z[s] with s^3 = d = t^3 - 1.

Elements are coefficient triples ``(a0, a1, a2)`` standing for
``a0 + a1*s + a2*s**2``.  The exact path uses Python integers throughout;
the modular path reduces every coefficient modulo a word-sized prime so that
powers of ``t - s`` with exponents in the hundreds of thousands stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import BadModulus, InvalidT, NegativePowerOfNonUnit


@dataclass(frozen=True)
class RingContext:
    t: int

    def __post_init__(self) -> None:
        if not isinstance(self.t, int) or self.t < 2:
            raise InvalidT(f"t must be an integer >= 2, got {self.t!r}")

    @property
    def d(self) -> int:
        return self.t**3 - 1

    def unit(self) -> RingElement:
        """The fundamental unit t - s."""
        return RingElement(self.t, -1, 0)

    def unit_inverse(self) -> RingElement:
        """(t - s)^-1 = t^2 + ts + s^2."""
        return RingElement(self.t * self.t, self.t, 1)


class RingElement(NamedTuple):
    a0: int
    a1: int
    a2: int

    def __neg__(self) -> RingElement:
        return RingElement(-self.a0, -self.a1, -self.a2)


class ModularRingElement(NamedTuple):
    r0: int
    r1: int
    r2: int
    p: int

    def coefficients(self) -> tuple[int, int, int]:
        return (self.r0, self.r1, self.r2)


ONE = RingElement(1, 0, 0)


def _mul3(u0, u1, u2, v0, v1, v2, d):
    return (
        u0 * v0 + d * (u1 * v2 + u2 * v1),
        u0 * v1 + u1 * v0 + d * u2 * v2,
        u0 * v2 + u1 * v1 + u2 * v0,
    )


def mul(u: RingElement, v: RingElement, ctx: RingContext) -> RingElement:
    return RingElement(*_mul3(*u, *v, ctx.d))


def pow(base: RingElement, m: int, ctx: RingContext) -> RingElement:
    """Raise ``base`` to the integer power ``m`` by binary exponentiation.

    Negative exponents are only defined for the unit ``t - s``, whose inverse
    is known in closed form.
    """
    base = RingElement(*base)
    if m < 0:
        if base != ctx.unit():
            raise NegativePowerOfNonUnit(
                f"cannot invert {tuple(base)}; only (t, -1, 0) has a known inverse"
            )
        base, m = ctx.unit_inverse(), -m
    d = ctx.d
    result = (1, 0, 0)
    sq = tuple(base)
    while m:
        if m & 1:
            result = _mul3(*result, *sq, d)
        m >>= 1
        if m:
            sq = _mul3(*sq, *sq, d)
    return RingElement(*result)


def norm(u: RingElement, ctx: RingContext) -> int:
    """N(a + b s + c s^2) = a^3 + d b^3 + d^2 c^3 - 3 d a b c."""
    a, b, c = u
    d = ctx.d
    return a**3 + d * b**3 + d * d * c**3 - 3 * d * a * b * c


def reduce_mod(u: RingElement, p: int) -> ModularRingElement:
    return ModularRingElement(u.a0 % p, u.a1 % p, u.a2 % p, p)


def _check_modulus(ctx: RingContext, p: int) -> None:
    if p <= 3:
        raise BadModulus(f"modulus must exceed 3, got {p}")
    if ctx.d % p == 0:
        raise BadModulus(f"modulus {p} divides t^3 - 1 = {ctx.d}")


def pow_mod_prime(base: RingElement, m: int, ctx: RingContext, p: int) -> ModularRingElement:
    """``pow(base, m, ctx)`` reduced coefficientwise modulo the prime ``p``."""
    _check_modulus(ctx, p)
    if m < 0:
        raise ValueError("pow_mod_prime takes a non-negative exponent")
    d = ctx.d % p
    r0, r1, r2 = 1, 0, 0
    b0, b1, b2 = base.a0 % p, base.a1 % p, base.a2 % p
    while m:
        if m & 1:
            r0, r1, r2 = (
                (r0 * b0 + d * (r1 * b2 + r2 * b1)) % p,
                (r0 * b1 + r1 * b0 + d * r2 * b2) % p,
                (r0 * b2 + r1 * b1 + r2 * b0) % p,
            )
        m >>= 1
        if m:
            b0, b1, b2 = (
                (b0 * b0 + 2 * d * b1 * b2) % p,
                (2 * b0 * b1 + d * b2 * b2) % p,
                (2 * b0 * b2 + b1 * b1) % p,
            )
    return ModularRingElement(r0, r1, r2, p)
