"""The compiled and pure-Python kernel paths must agree bit for bit."""

import itertools

import numpy as np
import pytest

from treeindep import kernels
from treeindep.graph import build_graph, _closed_array, _nbr_array

from conftest import random_graph


def _pure(fn):
    return kernels.pure(fn)


def _arrays(g):
    return _nbr_array(g), _closed_array(g)


CASES = [random_graph(n, p, seed) for n, p, seed in [(5, 0.4, 1), (7, 0.5, 2), (8, 0.3, 3), (6, 0.8, 4), (4, 0.0, 5)]]


@pytest.mark.parametrize("g", CASES)
def test_alpha_table_paths_agree(g):
    nbr, closed = _arrays(g)
    assert np.array_equal(kernels.alpha_table(closed), _pure(kernels.alpha_table)(closed))


@pytest.mark.parametrize("g", CASES)
def test_alpha_brute_paths_agree(g):
    nbr, _ = _arrays(g)
    assert kernels.alpha_brute(nbr) == _pure(kernels.alpha_brute)(nbr)


@pytest.mark.parametrize("g", CASES)
def test_mis_bnb_paths_agree(g):
    nbr, _ = _arrays(g)
    full = g.full_mask()
    for cand in {full, full >> 1, 0b1011 & full, 0}:
        assert kernels.mis_bnb(nbr, cand) == _pure(kernels.mis_bnb)(nbr, cand)


@pytest.mark.parametrize("g", CASES)
def test_bag_and_dp_paths_agree(g):
    nbr, closed = _arrays(g)
    bags = kernels.bag_table(nbr)
    assert np.array_equal(bags, _pure(kernels.bag_table)(nbr))
    table = kernels.alpha_table(closed)
    jit_result = kernels.solve_dp(bags, table, g.n)
    pure_result = _pure(kernels.solve_dp)(bags, table, g.n)
    assert jit_result[0] == pure_result[0]
    assert np.array_equal(jit_result[1], pure_result[1])
    assert jit_result[2] == pure_result[2]


def test_mu_table_paths_agree():
    g = random_graph(6, 0.5, 9)
    edges = g.edge_list()
    from treeindep.decomposition import edge_conflict_masks

    inc = [0] * g.n
    for e, (u, v) in enumerate(edges):
        inc[u] |= 1 << e
        inc[v] |= 1 << e
    conflict = edge_conflict_masks(g, edges)
    inc_arr = np.array(inc, np.int64)
    conf_arr = np.array(conflict, np.int64) if conflict else np.zeros(0, np.int64)
    assert np.array_equal(
        kernels.mu_table(inc_arr, conf_arr, g.n),
        _pure(kernels.mu_table)(inc_arr, conf_arr, g.n),
    )


def test_kst_scan_paths_agree():
    n, t = 4, 2
    pairs = list(itertools.combinations(range(n), 2))
    pair_u = np.array([u for u, _ in pairs], np.int64)
    pair_v = np.array([v for _, v in pairs], np.int64)
    subsets = np.array(list(itertools.combinations(range(n), t)), np.int64)
    assert kernels.kst_scan(n, pair_u, pair_v, subsets, t, 6) == _pure(kernels.kst_scan)(
        n, pair_u, pair_v, subsets, t, 6
    )


def test_popcount_matches_bit_count():
    for x in [0, 1, 2, 3, 255, 2**40 - 1, 2**62 - 7]:
        assert kernels.popcount(x) == x.bit_count()
        assert _pure(kernels.popcount)(x) == x.bit_count()
