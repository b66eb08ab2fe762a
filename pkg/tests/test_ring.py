import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicnorm import ring
from cubicnorm.errors import BadModulus, InvalidT, NegativePowerOfNonUnit
from cubicnorm.intervals import cbrt, context
from cubicnorm.ring import RingContext, RingElement


def poly_mul_reduce(u, v, d):
    """Schoolbook product of coefficient lists, then s^3 -> d."""
    prod = [0] * 5
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            prod[i + j] += a * b
    return (prod[0] + d * prod[3], prod[1] + d * prod[4], prod[2])


def resultant_norm(u, d):
    x = sympy.Symbol("x")
    return int(sympy.resultant(x**3 - d, u[0] + u[1] * x + u[2] * x**2, x))


T2 = RingContext(2)

coef = st.integers(min_value=-(10**30), max_value=10**30)
elements = st.builds(RingElement, coef, coef, coef)


def test_context_rejects_small_t():
    with pytest.raises(InvalidT):
        RingContext(1)
    assert RingContext(2).d == 7


def test_unit_times_inverse_is_one():
    assert ring.mul(RingElement(2, -1, 0), RingElement(4, 2, 1), T2) == (1, 0, 0)


def test_square_matches_convolution():
    u = (4, -4, 1)
    assert poly_mul_reduce(u, u, 7) == (-40, -25, 24)
    assert ring.mul(RingElement(*u), RingElement(*u), T2) == (-40, -25, 24)


@given(elements)
def test_identity(u):
    assert ring.mul(u, ring.ONE, T2) == u


@given(elements, elements, st.integers(2, 50))
def test_mul_commutes_and_matches_convolution(u, v, t):
    ctx = RingContext(t)
    assert ring.mul(u, v, ctx) == ring.mul(v, u, ctx) == poly_mul_reduce(u, v, ctx.d)


def test_pow_examples():
    assert ring.pow(RingElement(2, -1, 0), 2, T2) == (4, -4, 1)
    assert ring.pow(RingElement(2, -1, 0), 5, T2) == (-248, -10, 73)
    assert ring.pow(RingElement(3, -1, 0), -1, RingContext(3)) == (9, 3, 1)
    assert ring.pow(RingElement(5, 7, 1), 0, T2) == (1, 0, 0)


def test_pow_by_repeated_mul():
    acc = ring.ONE
    for _ in range(5):
        acc = tuple(poly_mul_reduce(acc, (2, -1, 0), 7))
    assert acc == (-248, -10, 73)


def test_negative_power_of_non_unit():
    with pytest.raises(NegativePowerOfNonUnit):
        ring.pow(RingElement(4, 2, 1), -1, T2)


@pytest.mark.parametrize("t", [2, 3, 7])
def test_pow_exponent_law(t):
    ctx = RingContext(t)
    unit = ctx.unit()
    for m1 in range(-20, 21, 3):
        for m2 in range(-20, 21, 4):
            assert ring.pow(unit, m1 + m2, ctx) == ring.mul(ring.pow(unit, m1, ctx), ring.pow(unit, m2, ctx), ctx)


def test_norm_examples():
    assert ring.norm(RingElement(4, -4, 1), T2) == 1
    assert ring.norm(RingElement(0, 1, 0), T2) == 7 == resultant_norm((0, 1, 0), 7)
    assert ring.norm(RingElement(4, 2, 1), T2) == 1 == resultant_norm((4, 2, 1), 7)
    assert ring.norm(ring.ONE, T2) == 1


@pytest.mark.parametrize("u", [(3, -2, 5), (-7, 0, 11), (1, 1, 1), (123, -45, 6)])
@pytest.mark.parametrize("t", [2, 4, 9])
def test_norm_matches_resultant(u, t):
    ctx = RingContext(t)
    assert ring.norm(RingElement(*u), ctx) == resultant_norm(u, ctx.d)


@settings(max_examples=300)
@given(elements, elements, st.integers(2, 400))
def test_norm_multiplicative(u, v, t):
    ctx = RingContext(t)
    assert ring.norm(ring.mul(u, v, ctx), ctx) == ring.norm(u, ctx) * ring.norm(v, ctx)


def _embedding_norm(u, t, prec=256):
    ic = context(prec)
    s = cbrt(ic, t**3 - 1)
    a0, a1, a2 = (ic.mpf(a) for a in u)
    real = a0 + a1 * s + a2 * s * s
    re = a0 - (a1 * s + a2 * s * s) / 2
    im = ic.sqrt(3) / 2 * (a1 * s - a2 * s * s)
    return real * (re * re + im * im)


@pytest.mark.parametrize("seed", range(20))
def test_norm_equals_product_of_embeddings(seed):
    rng = random.Random(seed)
    t = rng.randint(2, 100)
    u = RingElement(*(rng.randint(-(10**6), 10**6) for _ in range(3)))
    enc = _embedding_norm(u, t)
    assert ring.norm(u, RingContext(t)) in enc


def test_embedding_identity():
    for t in range(2, 101):
        ic = context(160)
        s = cbrt(ic, t**3 - 1)
        lhs = (t + s / 2) ** 2 + 3 * s * s / 4  # |t - omega s|^2
        rhs = t * t + s * s + s * t
        assert lhs.a <= rhs.b and rhs.a <= lhs.b


def test_pow_mod_prime_examples():
    assert ring.pow_mod_prime(RingElement(2, -1, 0), 5, T2, 101).coefficients() == (55, 91, 73)
    assert ring.pow_mod_prime(RingElement(2, -1, 0), 2, T2, 5).coefficients() == (4, 1, 1)
    assert ring.pow_mod_prime(RingElement(2, -1, 0), 0, T2, 101).coefficients() == (1, 0, 0)


def test_pow_mod_prime_bad_modulus():
    with pytest.raises(BadModulus):
        ring.pow_mod_prime(RingElement(2, -1, 0), 5, T2, 3)
    with pytest.raises(BadModulus):
        ring.pow_mod_prime(RingElement(2, -1, 0), 5, T2, 7)  # 7 | d


def test_pow_mod_prime_agrees_with_exact():
    rng = random.Random(1)
    for _ in range(30):
        t = rng.randint(2, 30)
        ctx = RingContext(t)
        p = int(sympy.randprime(5, 2**61))
        if ctx.d % p == 0:
            continue
        base = RingElement(*(rng.randint(-50, 50) for _ in range(3)))
        m = rng.randint(0, 1000)
        exact = ring.pow(base, m, ctx)
        assert ring.pow_mod_prime(base, m, ctx, p) == ring.reduce_mod(exact, p)
