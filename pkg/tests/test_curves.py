import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobtrace.curves import (CurveModel, FrobeniusRecord, bad_primes, count_points, discriminant,
                              frobenius_trace, frobenius_trace_euler, good_primes, roots_on_circle,
                              trace_sweep, weil_coefficients, weil_polynomial, weil_roots)
from frobtrace.errors import BudgetExceeded

E = CurveModel(1, (1, 1, 0, 1), "E")


def test_discriminant_examples():
    assert discriminant((-1, 0, 1)) == 4
    assert discriminant((1, 1, 0, 1)) == -31
    d = discriminant((1, -1, 0, 0, 0, 1))
    odd = abs(d)
    while odd % 2 == 0:
        odd //= 2
    assert odd == 19 * 151


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_cubic_discriminant_formula(p, q):
    assert discriminant((q, p, 0, 1)) == -4 * p**3 - 27 * q**2


def test_discriminant_rejects_linear():
    with pytest.raises(ValueError):
        discriminant((1, 1))


def test_bad_primes(j1):
    assert bad_primes(E) == {2, 31}
    assert bad_primes(CurveModel(2, (1, -1, 0, 0, 0, 1))) == {2, 19, 151}
    assert bad_primes(j1) == {2, 19, 151}
    assert CurveModel(1, (1, 1, 0, 1), bad_primes_override={2, 3}).bad_primes == {2, 3}


def test_curve_validation():
    with pytest.raises(ValueError):
        CurveModel(2, (1, 0, 1))  # degree 2 is not genus 2
    with pytest.raises(ValueError):
        CurveModel(1, (0, 0, 1, 1))  # x^2 (x + 1) is singular


def test_point_count_examples(j1):
    assert count_points(j1, 3) == 7
    assert count_points(E, 5) == 9
    assert frobenius_trace(j1, 3) == -3
    assert frobenius_trace(E, 5) == -3
    assert frobenius_trace(j1, 5) == -5


def test_ramified_point_counts_once():
    # x^3 - x has roots 0, 1, -1: each contributes a single point
    c = CurveModel(1, (0, -1, 0, 1))
    p = 7
    chi = lambda v: 0 if v % p == 0 else (1 if pow(v, (p - 1) // 2, p) == 1 else -1)
    affine = sum(1 + chi(x**3 - x) for x in range(p))
    assert count_points(c, p) == affine + 1


def test_bad_prime_rejected(j1):
    with pytest.raises(ValueError):
        frobenius_trace(j1, 19)
    with pytest.raises(BudgetExceeded):
        count_points(j1, 101, 2, limit=1000)


def test_kernel_matches_euler_criterion(j1):
    for curve in (j1, E, CurveModel(2, (3, 0, 1, 0, 0, 0, 2))):
        for p in good_primes(curve, 3, 1000).tolist():
            assert frobenius_trace(curve, p) == frobenius_trace_euler(curve, p)


def test_extension_count_brute_force(j1):
    # N_2 at p = 3 by walking F_9 = F_3[i] directly
    p = 3
    def mul(a, b):
        return ((a[0] * b[0] - a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)
    elems = [(a, b) for a in range(p) for b in range(p)]
    squares = {mul(y, y) for y in elems}
    total = 1
    for x in elems:
        x5 = mul(x, mul(mul(x, x), mul(x, x)))
        v = ((x5[0] - x[0] + 1) % p, (x5[1] - x[1]) % p)
        total += 1 if v == (0, 0) else (2 if v in squares else 0)
    assert count_points(j1, 3, 2) == total == 15


def test_weil_polynomial_j1_p3(j1):
    a = weil_polynomial(j1, 3)
    assert a == (-3, 7)
    assert weil_coefficients(a, 3) == [1, 3, 7, 9, 9]
    assert roots_on_circle(a, 3)


def test_weil_polynomial_vanishing_sums():
    assert weil_coefficients((0, 0), 5) == [1, 0, 0, 0, 25]


def test_weil_polynomial_g1():
    for p in (3, 5, 7, 11, 13):
        (a,) = weil_polynomial(E, p)
        assert a == p + 1 - count_points(E, p)
        assert weil_coefficients((a,), p) == [1, -a, p]


def test_weil_roots_g2_small_primes(j1):
    for p in good_primes(j1, 3, 200).tolist():
        a = weil_polynomial(j1, p)
        assert all(isinstance(c, int) for c in a)
        assert roots_on_circle(a, p)
        assert abs(complex(sum(weil_roots(a, p))).real - a[0]) < 1e-9


def test_sweep_examples(j1):
    arch = trace_sweep(j1, 10)
    assert arch.primes.tolist() == [3, 5, 7]
    assert arch.a1.tolist() == [-3, -5, frobenius_trace_euler(j1, 7)]
    assert len(trace_sweep(j1, 2)) == 0


def test_sweep_invariants(j1_small, j1):
    p = j1_small.primes.astype(np.int64)
    assert np.all(np.diff(p) > 0)
    assert not set(p.tolist()) & j1.bad_primes
    assert all(r.within_weil_bound(2) for r in j1_small.records())


def test_sweep_independent_of_workers(j1):
    one = trace_sweep(j1, 1 << 13, 1)
    three = trace_sweep(j1, 1 << 13, 3)
    assert np.array_equal(one.primes, three.primes)
    assert np.array_equal(one.a1, three.a1)


def test_record_weil_bound():
    assert FrobeniusRecord(5, 8).within_weil_bound(2)
    assert not FrobeniusRecord(5, 9).within_weil_bound(2)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4), st.integers(1, 9))
def test_random_cubics_obey_hasse(coeffs, lc):
    f = tuple(coeffs[:3]) + (lc,)
    try:
        curve = CurveModel(1, f)
    except ValueError:
        return
    for p in good_primes(curve, 3, 60).tolist():
        a = frobenius_trace(curve, p)
        assert a * a <= 4 * p
        assert a == frobenius_trace_euler(curve, p)
