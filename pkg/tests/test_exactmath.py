import math

import pytest
from hypothesis import given, strategies as st

from treeindep.exactmath import (
    ceil_root_ratio,
    kst_simple_bound_absorbs,
    max_edges_within_kst_bound,
    nth_root_floor,
    within_kst_edge_bound,
)


@given(st.integers(min_value=0, max_value=10**24), st.integers(min_value=1, max_value=12))
def test_nth_root_floor_definition(x, k):
    r = nth_root_floor(x, k)
    assert r ** k <= x < (r + 1) ** k


def test_nth_root_floor_rejects_bad_input():
    with pytest.raises(ValueError):
        nth_root_floor(-1, 2)
    with pytest.raises(ValueError):
        nth_root_floor(4, 0)


@given(
    st.integers(min_value=0, max_value=10**9),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=20),
)
def test_ceil_root_ratio_definition(n, t, d):
    q = ceil_root_ratio(n, t, d)
    if n == 0:
        assert q == 0
    else:
        assert (d * q) ** t >= n
        assert q == 0 or (d * (q - 1)) ** t < n


@given(
    st.integers(min_value=0, max_value=50),
    st.integers(min_value=0, max_value=1500),
    st.integers(min_value=1, max_value=6),
)
def test_within_bound_matches_float_when_clear(n, m, t):
    bound = (t - 1) ** (1.0 / t) / 2.0 * n ** (2.0 - 1.0 / t) + t * n / 2.0 if n else 0.0
    # only compare away from the boundary, where floats are trustworthy
    if abs(m - bound) > 1e-6 * max(1.0, bound):
        assert within_kst_edge_bound(n, m, t) == (m <= bound)


def test_within_bound_exact_on_equality():
    # t = 2, n = 4: bound is exactly 8
    assert within_kst_edge_bound(4, 8, 2)
    assert not within_kst_edge_bound(4, 9, 2)


def test_max_edges_within_bound_small():
    assert max_edges_within_kst_bound(4, 1) == 2
    assert max_edges_within_kst_bound(0, 3) == 0
    # cap at the complete graph
    assert max_edges_within_kst_bound(4, 2) == 6


def test_simple_bound_absorbs_known_thresholds():
    assert kst_simple_bound_absorbs(1, 1)
    assert kst_simple_bound_absorbs(4, 2)
    assert not kst_simple_bound_absorbs(3, 2)
    assert kst_simple_bound_absorbs(9, 3)
    assert not kst_simple_bound_absorbs(8, 3)


@given(st.integers(min_value=1, max_value=8))
def test_simple_bound_monotone_in_n(t):
    held = False
    for n in range(1, 80):
        now = kst_simple_bound_absorbs(n, t)
        assert now or not held, f"bound held at smaller n but fails at {n}"
        held = held or now
