import pytest

from treeindep.exactmath import ceil_root_ratio
from treeindep.extraction import (
    compute_thresholds,
    extract_independent_sets,
    extract_induced_matching,
    matching_extraction_threshold,
    set_extraction_threshold,
    transformation_thresholds,
)
from treeindep.experiments import random_bipartite
from treeindep.graph import (
    GraphError,
    build_graph,
    contains_biclique,
    is_independent_set,
    is_induced_matching,
    kst_threshold,
    max_matching,
)

from conftest import complete_bipartite, cycle, edgeless
import oracles


def test_matching_threshold_examples():
    assert matching_extraction_threshold(1, 1) == 24
    assert matching_extraction_threshold(0, 1) == 12
    assert matching_extraction_threshold(1, 2) == 576  # n_2 = 4 < 24**2


def test_set_threshold_examples():
    assert set_extraction_threshold(1, 1, 2) == 16
    assert set_extraction_threshold(24, 1, 24) == 105984
    assert set_extraction_threshold(5, 2, 1) == kst_threshold(2)  # m = 1 zeroes the product


def test_transformation_thresholds():
    m_val, c_val, k_val = transformation_thresholds(1, 1)
    assert (m_val, c_val, k_val) == (24, 105984, 48 + 105984)
    m2, c2, k2 = transformation_thresholds(1, 2)
    assert m2 == 576
    assert c2 == set_extraction_threshold(576, 2, 576)
    assert transformation_thresholds(2, 1)[2] > transformation_thresholds(1, 1)[2]


def test_threshold_growth_consistency():
    # once (12(s+1))**t dominates n_t, the threshold sits below (24s)**t
    for t in (1, 2, 3):
        for s in (1, 2, 5, 9):
            val = matching_extraction_threshold(s, t)
            if (12 * (s + 1)) ** t >= kst_threshold(t):
                assert val <= (24 * s) ** t
    # monotone in s and t
    assert matching_extraction_threshold(2, 2) > matching_extraction_threshold(1, 2)
    assert matching_extraction_threshold(2, 3) > matching_extraction_threshold(2, 2)


def test_threshold_bundle_fields():
    bundle = compute_thresholds(1, 1, 24, 1)
    assert bundle.n_t == 1
    assert bundle.M_val == 24
    assert bundle.N_val == 105984
    assert bundle.C_val == 105984
    assert bundle.K_val == 106032


def test_thresholds_reject_bad_arguments():
    with pytest.raises(GraphError):
        matching_extraction_threshold(-1, 1)
    with pytest.raises(GraphError):
        set_extraction_threshold(1, 0, 2)
    with pytest.raises(GraphError):
        set_extraction_threshold(1, 1, 0)


# --- matching extraction -----------------------------------------------------


def test_extract_on_plain_induced_matching():
    g = build_graph(6, [(0, 1), (2, 3), (4, 5)])
    record = extract_induced_matching(g, [(0, 1), (2, 3), (4, 5)], 2, 2)
    assert record.outcome == "matching"
    assert record.achieved == 3
    assert record.matching == ((0, 1), (2, 3), (4, 5))
    assert record.contracted.m == 0
    assert record.note  # below threshold, no promise


def test_extract_finds_biclique_in_k33(k33):
    record = extract_induced_matching(k33, [(0, 3), (1, 4), (2, 5)], 1, 2)
    assert record.outcome == "biclique"
    p, q = record.biclique
    assert record.biclique_is_induced
    assert all(k33.has_edge(u, v) for u in p for v in q)
    assert is_independent_set(k33, p) and is_independent_set(k33, q)


def test_extract_on_c8_contracts_to_c4():
    c8 = cycle(8)
    record = extract_induced_matching(c8, [(0, 1), (2, 3), (4, 5), (6, 7)], 0, 3)
    assert record.outcome == "matching"
    assert (record.contracted.n, record.contracted.m) == (4, 4)
    assert record.achieved >= 2
    assert is_induced_matching(c8, record.matching)
    assert oracles.o_is_induced_matching(c8, record.matching)


def test_extract_rejects_non_bipartite():
    with pytest.raises(GraphError, match="not bipartite"):
        extract_induced_matching(cycle(5), [(0, 1)], 1, 2)


def test_extract_rejects_invalid_matching(k33):
    with pytest.raises(GraphError):
        extract_induced_matching(k33, [(0, 1)], 1, 2)  # not an edge
    with pytest.raises(GraphError):
        extract_induced_matching(k33, [(0, 3), (0, 4)], 1, 2)  # shares a vertex


def test_extract_internal_guarantee_on_seeded_graphs():
    t = 2
    n_t = kst_threshold(t)
    outcomes = {"biclique": 0, "matching": 0}
    for seed in range(40):
        g, _ = random_bipartite(6, 0.35, seed)
        matching = max_matching(g)
        if not matching:
            continue
        record = extract_induced_matching(g, matching, 1, t)
        outcomes[record.outcome] += 1
        if record.outcome == "biclique":
            p, q = record.biclique
            assert all(g.has_edge(u, v) for u in p for v in q)
        else:
            assert is_induced_matching(g, record.matching)
            if 2 * record.input_size >= n_t:
                expected = ceil_root_ratio(record.input_size, t, 12)
                assert record.guarantee == expected
                assert record.achieved >= expected
    assert outcomes["biclique"] and outcomes["matching"]


# --- independent set extraction ----------------------------------------------


def test_sets_success_on_edgeless():
    g = edgeless(8)
    record = extract_independent_sets(g, [range(4), range(4, 8)], 2, 2, seed=7)
    assert record.success
    assert record.iterations == 1
    assert record.edge_counts == (0,)
    assert record.survivors == (frozenset(range(4)), frozenset(range(4, 8)))


def test_sets_success_with_single_cross_edge():
    g = build_graph(8, [(0, 4)])
    record = extract_independent_sets(g, [range(4), range(4, 8)], 1, 2, seed=3)
    assert record.success
    union = frozenset().union(*record.survivors)
    assert is_independent_set(g, union)
    assert all(len(kept) >= 1 for kept in record.survivors)


def test_sets_failure_on_complete_bipartite():
    g = complete_bipartite(4, 4)
    record = extract_independent_sets(
        g, [range(4), range(4, 8)], 1, 2, seed=1, max_iterations=50
    )
    assert not record.success
    assert record.iterations == 50
    assert record.densest_pair == (0, 1)
    assert record.densest_pair_edges == 16
    assert record.min_edge_count is not None and record.min_edge_count > 1


def test_sets_validation_errors():
    g = edgeless(6)
    with pytest.raises(GraphError, match="at least one"):
        extract_independent_sets(g, [], 1, 1)
    with pytest.raises(GraphError, match="not independent"):
        extract_independent_sets(build_graph(4, [(0, 1)]), [{0, 1}], 0, 1)
    with pytest.raises(GraphError, match="2s"):
        extract_independent_sets(g, [{0}], 1, 1)


def test_sets_deterministic_for_seed():
    g = build_graph(10, [(0, 5), (1, 6), (2, 7)])
    sets = [range(5), range(5, 10)]
    a = extract_independent_sets(g, sets, 2, 2, seed=99)
    b = extract_independent_sets(g, sets, 2, 2, seed=99)
    assert a == b
    c = extract_independent_sets(g, sets, 2, 2, seed=100)
    assert a.iterations >= 1 and c.iterations >= 1  # both well formed


def test_sets_survivor_contract_on_sparse_instances():
    import numpy as np

    rng = np.random.default_rng(4)
    successes = 0
    for trial in range(40):
        cross = [
            (int(a), int(5 + b))
            for a in range(5)
            for b in range(5)
            if rng.random() < 0.08
        ]
        g = build_graph(10, cross)
        record = extract_independent_sets(g, [range(5), range(5, 10)], 2, 2, seed=trial)
        if record.success:
            successes += 1
            union = frozenset().union(*record.survivors)
            assert is_independent_set(g, union)
            assert all(len(k) >= 2 for k in record.survivors)
            for kept, family in zip(record.survivors, (frozenset(range(5)), frozenset(range(5, 10)))):
                assert kept <= family
    assert successes >= 38  # sparse instances almost always succeed quickly
