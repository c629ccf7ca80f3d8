import itertools

import numpy as np
import pytest

from treeindep.graph import Graph, build_graph


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def edgeless(n: int) -> Graph:
    return build_graph(n, [])


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def graph_from_code(n: int, code: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return build_graph(n, [pairs[i] for i in range(len(pairs)) if (code >> i) & 1])


def all_graphs(n: int):
    bits = n * (n - 1) // 2
    for code in range(1 << bits):
        yield graph_from_code(n, code)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    coins = rng.random(len(pairs))
    return build_graph(n, [pairs[i] for i in range(len(pairs)) if coins[i] < p])


def random_ktree(n: int, k: int, seed: int) -> Graph:
    """Seeded k-tree on n >= k+1 vertices (chordal by construction)."""
    assert n >= k + 1
    rng = np.random.default_rng(seed)
    edges = list(itertools.combinations(range(k + 1), 2))
    cliques = [tuple(sorted(c)) for c in itertools.combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = cliques[rng.integers(len(cliques))]
        for u in base:
            edges.append((u, v))
        for drop in range(k):
            cliques.append(tuple(sorted(set(base) - {base[drop]} | {v})))
    return build_graph(n, edges)


def random_biclique_free_graph(n: int, t: int, seed: int) -> Graph:
    """Add random edges one at a time, skipping any that create an induced
    t,t-biclique; the result is biclique-free by construction."""
    from treeindep.graph import contains_biclique

    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    edges = []
    for pair in pairs:
        if rng.random() < 0.55:
            candidate = build_graph(n, edges + [pair])
            if contains_biclique(candidate, t, "induced") is None:
                edges.append(tuple(pair))
    return build_graph(n, edges)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def triangle():
    return complete(3)
