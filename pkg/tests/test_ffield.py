import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobtrace.ffield import (ExtFieldCtx, PrimeFieldCtx, build_ext, ext_pow, is_irreducible,
                              is_prime, quad_char, squares_table)
from frobtrace.primes import primes_upto

SMALL_PRIMES = [p for p in primes_upto(100).tolist() if p > 2]


def test_quad_char_examples():
    assert quad_char(0, PrimeFieldCtx(7)) == 0
    assert quad_char(2, PrimeFieldCtx(7)) == 1
    assert quad_char(3, PrimeFieldCtx(5)) == -1


def test_ext_pow_examples():
    ctx = build_ext(5, 1)
    assert ext_pow((2,), 3, ctx) == (3,)
    for p, k in [(3, 2), (5, 2), (3, 3), (7, 2)]:
        ctx = build_ext(p, k)
        assert ext_pow(ctx.one, 12345, ctx) == ctx.one
        assert ext_pow(ctx.gen, ctx.q, ctx) == ctx.gen


def test_build_ext_examples():
    assert build_ext(3, 1).modulus == (0, 1)
    assert build_ext(3, 2).modulus == (1, 0, 1)
    assert build_ext(5, 2).modulus == (2, 0, 1)


def test_build_ext_deterministic():
    build_ext.cache_clear()
    first = build_ext(7, 3).modulus
    build_ext.cache_clear()
    assert build_ext(7, 3).modulus == first


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        ExtFieldCtx(5, 2, (4, 0, 1))  # u^2 - 1
    with pytest.raises(ValueError):
        PrimeFieldCtx(2)
    with pytest.raises(ValueError):
        PrimeFieldCtx(9)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_character_multiplicative(p):
    ctx = PrimeFieldCtx(p)
    chi = [quad_char(a, ctx) for a in range(p)]
    for a in range(1, p):
        for b in range(1, p):
            assert chi[a * b % p] == chi[a] * chi[b]


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2), (5, 3)])
def test_half_the_units_are_squares(p, k):
    ctx = build_ext(p, k)
    plus = sum(quad_char(a, ctx) == 1 for a in ctx.elements())
    assert plus == (ctx.q - 1) // 2


def test_table_and_euler_agree():
    for p in primes_upto(10**4).tolist()[1:]:
        table = PrimeFieldCtx.with_table(p)
        plain = PrimeFieldCtx(p)
        a = np.arange(p)
        sq = table.squares
        euler = np.array([pow(int(x), (p - 1) // 2, p) for x in a[1:]])
        assert np.array_equal(sq[1:], euler == 1)
        assert quad_char(p - 1, table) == quad_char(p - 1, plain)


def test_for_queries_threshold():
    assert PrimeFieldCtx.for_queries(101, 1000).squares is not None
    assert PrimeFieldCtx.for_queries(101, 10).squares is None
    assert PrimeFieldCtx.for_queries(101, 1000, threshold=50).squares is None


@given(st.integers(min_value=2, max_value=10**6))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % d for d in range(2, int(n**0.5) + 1))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL_PRIMES[:8]), st.integers(1, 3), st.data())
def test_ext_mul_associative(p, k, data):
    ctx = build_ext(p, k)
    elem = st.integers(0, ctx.q - 1).map(ctx.decode)
    a, b, c = data.draw(elem), data.draw(elem), data.draw(elem)
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.mul(a, ctx.one) == a


def test_irreducible_counts_quadratics():
    # (p^2 - p) / 2 monic irreducible quadratics over F_p
    for p in (3, 5, 7):
        n = sum(is_irreducible((c0, c1, 1), p) for c0 in range(p) for c1 in range(p))
        assert n == (p * p - p) // 2


def test_squares_table_small():
    assert squares_table(7).nonzero()[0].tolist() == [0, 1, 2, 4]
