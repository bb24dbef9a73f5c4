import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobtrace import matcount as mc
from frobtrace.errors import BudgetExceeded


def test_gsp_order_examples():
    assert mc.gsp_order(1, 3) == 48
    assert mc.gsp_order(2, 2) == 720
    assert mc.gsp_order(2, 3) == 103680


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11, 13])
def test_gsp_order_matches_paper_forms(ell):
    assert mc.gsp_order(1, ell) == ell * (ell - 1) * (ell**2 - 1)
    assert mc.gsp_order(2, ell) == ell**4 * (ell - 1) * (ell**2 - 1) * (ell**4 - 1)


def test_membership_by_hand():
    spec = mc.SymplecticSpec(1, 5)
    assert spec.multiplier([[1, 2], [3, 4]]) == (4 - 6) % 5
    assert not spec.is_member([[1, 2], [2, 4]])
    spec2 = mc.SymplecticSpec(2, 3)
    assert spec2.multiplier(np.eye(4, dtype=int)) == 1
    assert spec2.multiplier(2 * np.eye(4, dtype=int)) == 1
    assert not spec2.is_member(np.diag([1, 1, 1, 2]))


def test_enumeration_examples():
    tab = mc.enumerate_trace_counts(1, 3)
    assert tab.counts == {0: 18, 1: 15, 2: 15}
    assert tab.group_order == 48
    tab = mc.enumerate_trace_counts(2, 2)
    assert tab.counts == {0: 416, 1: 304}


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11, 13])
def test_g1_closed_form_vs_scans(ell):
    full = mc.enumerate_trace_counts(1, ell)
    fast = mc.gl2_trace_table(ell)
    for t in range(ell):
        assert full.count(t) == fast.count(t) == mc.closed_count(1, ell, t).count


def test_closed_count_examples():
    assert mc.closed_count(2, 3, 1).count == 33129
    assert mc.closed_count(1, 5, 0).count == 100
    assert mc.closed_count(2, 2, 0).count == 416
    with pytest.raises(ValueError):
        mc.closed_count(3, 3, 0)


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11, 13, 101])
def test_closed_forms_partition_group(g, ell):
    assert sum(mc.closed_table(g, ell).counts.values()) == mc.gsp_order(g, ell)


@pytest.mark.parametrize("g,m", [(1, 2), (1, 4), (1, 6), (1, 8), (2, 2)])
def test_enumeration_invariants(g, m):
    tab = mc.enumerate_trace_counts(g, m)
    assert sum(tab.counts.values()) == tab.group_order
    for t in range(m):
        assert tab.count(t) == tab.count(-t)


def test_enumerated_entries_are_members():
    # the kernel's histogram must agree with the pure-python membership test
    spec = mc.SymplecticSpec(1, 4)
    hist = {}
    for entries in itertools.product(range(4), repeat=4):
        M = np.array(entries).reshape(2, 2)
        if spec.is_member(M):
            t = int(np.trace(M)) % 4
            hist[t] = hist.get(t, 0) + 1
    assert hist == mc.enumerate_trace_counts(1, 4).counts


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        mc.enumerate_trace_counts(2, 5)
    with pytest.raises(BudgetExceeded):
        mc.m_count(11, 4, limit=100)


def test_n_count_examples():
    assert mc.n_count(5, 0) == 12
    assert mc.n_count(5, 1) == 9
    assert mc.n_count(3, 2) == 1


def test_kloosterman_examples():
    assert mc.kloosterman(3, 1) == pytest.approx(-1.0, abs=1e-12)
    assert mc.kloosterman(3, 2) == pytest.approx(2.0, abs=1e-12)
    assert abs(mc.kloosterman(5, 1)) <= 2 * math.sqrt(5)
    with pytest.raises(ValueError):
        mc.kloosterman(5, 10)


@settings(max_examples=40)
@given(st.sampled_from([3, 5, 7, 11, 13, 101, 1009]), st.integers(1, 10**6))
def test_kloosterman_weil_bound(ell, alpha):
    if alpha % ell:
        assert abs(mc.kloosterman(ell, alpha)) <= 2 * math.sqrt(ell) + 1e-9


def test_m_count_examples():
    for ell in (3, 5, 7):
        assert mc.m_count(ell, 0) == 1
        assert mc.m_count(ell, 1) == 1
    assert mc.m_count(3, 2) == 1  # (2, 2): 2 + 2 = 1 and 2^-1 + 2^-1 = 1 mod 3
    assert mc.m_count(5, 2) <= 2


@pytest.mark.parametrize("ell,r", [(3, 2), (5, 2), (7, 3)])
def test_moment_examples(ell, r):
    lhs, rhs, ok = mc.kloosterman_moment_check(ell, r)
    assert ok
    if (ell, r) == (3, 2):
        assert rhs == 5 and lhs == pytest.approx(5.0)


def test_f_ratio_examples():
    assert mc.f_ratio(mc.enumerate_trace_counts(1, 3), 0) == Fraction(9, 8)
    assert mc.f_ratio(mc.enumerate_trace_counts(1, 3), 1) == Fraction(15, 16)
    assert mc.f_ratio(mc.enumerate_trace_counts(2, 2), 0) == Fraction(52, 45)


def test_stabilization_examples():
    assert mc.f_stabilization_check(2, 2, 2)
    assert mc.f_stabilization_check(2, 1, 2)
    assert mc.f_stabilization_check(3, 1, 2)
    with pytest.raises(BudgetExceeded):
        mc.f_stabilization_check(3, 3, 2, limit=3**11)


@pytest.mark.parametrize("m1,m2,t", [(2, 3, 1), (2, 3, 0), (3, 5, 2)])
def test_crt_examples(m1, m2, t):
    assert mc.crt_factorization_check(m1, m2, t)


def test_crt_rejects_common_factor():
    with pytest.raises(ValueError):
        mc.crt_factorization_check(2, 4, 1)


def test_centralizer_examples():
    assert mc.centralizer_dim(mc.EigenProfile(2, 1, 1)) == (6, 4)
    assert mc.centralizer_dim(mc.EigenProfile(2, 2, 0)) == (10, 0)
    assert mc.centralizer_dim(mc.EigenProfile(3, 0, 0, (3,))) == (9, 12)
    with pytest.raises(ValueError):
        mc.EigenProfile(3, 1, 1)


def test_min_class_dim_examples():
    assert mc.min_class_dim(2) == 4
    assert mc.min_class_dim(3, trace_zero=True) == 10
    assert mc.min_class_dim(4, trace_zero=True) == 14
    d_xy = mc.centralizer_dim(mc.EigenProfile(4, 2, 2))[1]
    assert d_xy == 16


@pytest.mark.parametrize("n", range(2, 11))
def test_min_class_dim_series(n):
    assert mc.min_class_dim(n) == 4 * n - 4
    if n >= 3:
        assert mc.min_class_dim(n, trace_zero=True) == 4 * n - 2


@given(st.integers(1, 7), st.data())
def test_profile_dims_nonnegative(n, data):
    x = data.draw(st.integers(0, n))
    y = data.draw(st.integers(0, n - x))
    blocks = data.draw(st.sampled_from(list(mc.partitions(n - x - y))))
    prof = mc.EigenProfile(n, x, y, blocks)
    dim_z, d = mc.centralizer_dim(prof)
    assert dim_z + d == 2 * n * n + n
    assert d >= 0 and (d == 0) == prof.central
