"""Exact minimization of the two bag measures over tree decompositions.

Why elimination orderings suffice
---------------------------------
Both measures are monotone under bag inclusion: alpha(G[X]) <= alpha(G[X'])
and mu(G, X) <= mu(G, X') whenever X is a subset of X'.  Completing every
bag of an arbitrary tree decomposition yields a chordal supergraph whose
maximal cliques each lie inside some original bag, and every chordal
supergraph of G is the fill-in of G along one of its perfect elimination
orderings.  Hence for any bag-monotone measure the optimum over
elimination orderings equals the optimum over all tree decompositions.
minimize_by_chordal_supergraphs re-validates this equivalence from the
other direction on every graph small enough to enumerate supergraphs.

The default solver is a dynamic program over eliminated vertex subsets
(the bag created when eliminating v depends only on the *set* eliminated
before it, not the order), which is exact and handles n around 11
comfortably.  minimize_by_ordering_enumeration walks all n! orderings and
exists as an independently-coded cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .decomposition import (
    TreeDecomposition,
    edge_conflict_masks,
    make_decomposition,
)
from .graph import (
    Graph,
    GraphError,
    LimitExceededError,
    _bitcount,
    _bits_of,
    _closed_array,
    _nbr_array,
    _set_of,
    build_graph,
)

DEFAULT_SOLVER_LIMIT = 11
DEFAULT_ENUMERATION_LIMIT = 9
DEFAULT_SUPERGRAPH_LIMIT = 5
_TABLE_HARD_LIMIT = 16

MEASURES = ("alpha", "mu")


@dataclass(frozen=True)
class SolverResult:
    """Optimal value, witness decomposition, ordering, and search effort."""

    value: int
    witness: TreeDecomposition
    ordering: tuple
    explored: int


def check_ordering(g: Graph, ordering: Sequence) -> tuple:
    order = tuple(int(v) for v in ordering)
    if sorted(order) != list(range(g.n)):
        raise GraphError(f"not a permutation of 0..{g.n - 1}: {order}")
    return order


def _elimination_bags(g: Graph, order: tuple) -> list:
    """Per-vertex bags of the fill-in along the ordering, as masks."""
    adj = list(g.adj)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    later = [0] * g.n
    for i in range(g.n):
        mask = 0
        for j in range(i + 1, g.n):
            mask |= 1 << order[j]
        later[i] = mask
    bags = []
    for i, v in enumerate(order):
        nbrs = adj[v] & later[i]
        bags.append(nbrs | (1 << v))
        for a in _bits_of(nbrs):
            adj[a] |= nbrs & ~(1 << a)
    return bags


def elimination_to_decomposition(g: Graph, ordering: Sequence) -> TreeDecomposition:
    """Clique tree of the chordal fill-in along the ordering.

    Each vertex contributes the bag {v} plus its not-yet-eliminated
    fill-in neighbors, attached to the bag of the earliest-eliminated
    such neighbor (or simply to the next vertex's bag when none remain,
    which keeps the tree connected on disconnected graphs).  Bags
    contained in a neighboring bag are then contracted away, leaving the
    maximal cliques.
    """
    order = check_ordering(g, ordering)
    if g.n == 0:
        return make_decomposition([frozenset()], [])
    bags = _elimination_bags(g, order)
    pos = {v: i for i, v in enumerate(order)}
    parent = [-1] * g.n
    for i, v in enumerate(order):
        nbrs = bags[i] & ~(1 << v)
        if nbrs:
            parent[i] = min(pos[u] for u in _bits_of(nbrs))
        elif i + 1 < g.n:
            parent[i] = i + 1
    node_bags = dict(enumerate(bags))
    neighbors = {i: set() for i in range(g.n)}
    for i in range(g.n):
        if parent[i] >= 0:
            neighbors[i].add(parent[i])
            neighbors[parent[i]].add(i)
    # contract tree edges whose bags are nested, until only maximal bags remain
    changed = True
    while changed:
        changed = False
        for a in sorted(neighbors):
            for b in sorted(neighbors[a]):
                a_in_b = (node_bags[a] & ~node_bags[b]) == 0
                small, big = (a, b) if a_in_b else (b, a)
                if node_bags[small] & ~node_bags[big]:
                    continue
                for c in neighbors[small]:
                    if c != big:
                        neighbors[c].discard(small)
                        neighbors[c].add(big)
                        neighbors[big].add(c)
                neighbors[big].discard(small)
                del neighbors[small]
                del node_bags[small]
                changed = True
                break
            if changed:
                break
    keep = sorted(node_bags, key=lambda i: sorted(_set_of(node_bags[i])))
    renumber = {old: new for new, old in enumerate(keep)}
    final_bags = [_set_of(node_bags[old]) for old in keep]
    final_edges = set()
    for a in neighbors:
        for b in neighbors[a]:
            final_edges.add((min(renumber[a], renumber[b]), max(renumber[a], renumber[b])))
    return make_decomposition(final_bags, final_edges)


def _alpha_measure_table(g: Graph) -> np.ndarray:
    return kernels.alpha_table(_closed_array(g))


def _mu_measure_table(g: Graph) -> np.ndarray:
    edges = g.edge_list()
    if len(edges) > 62:
        raise LimitExceededError(
            f"bag-matching tables limited to 62 edges, got {len(edges)}"
        )
    inc = [0] * g.n
    for e, (u, v) in enumerate(edges):
        inc[u] |= 1 << e
        inc[v] |= 1 << e
    conflict = edge_conflict_masks(g, edges)
    inc_arr = np.array(inc, np.int64) if inc else np.zeros(0, np.int64)
    conf_arr = np.array(conflict, np.int64) if conflict else np.zeros(0, np.int64)
    return kernels.mu_table(inc_arr, conf_arr, g.n)


def _measure_table(g: Graph, measure: str) -> np.ndarray:
    if measure == "alpha":
        return _alpha_measure_table(g)
    if measure == "mu":
        return _mu_measure_table(g)
    raise GraphError(f"unknown measure {measure!r}; expected one of {MEASURES}")


def solve_measure(g: Graph, measure: str, limit: int = DEFAULT_SOLVER_LIMIT) -> SolverResult:
    """Exact minimum of the given bag measure, with witness decomposition."""
    if g.n > min(limit, _TABLE_HARD_LIMIT):
        raise LimitExceededError(
            f"exact solver limited to {min(limit, _TABLE_HARD_LIMIT)} vertices, got {g.n}"
        )
    if g.n == 0:
        return SolverResult(
            value=0,
            witness=make_decomposition([frozenset()], []),
            ordering=(),
            explored=0,
        )
    table = _measure_table(g, measure)
    bag_tab = kernels.bag_table(_nbr_array(g))
    value, order, explored = kernels.solve_dp(bag_tab, table, g.n)
    ordering = tuple(int(v) for v in order)
    witness = elimination_to_decomposition(g, ordering)
    return SolverResult(
        value=int(value), witness=witness, ordering=ordering, explored=int(explored)
    )


def tree_independence_number(g: Graph, limit: int = DEFAULT_SOLVER_LIMIT) -> SolverResult:
    """Minimum over tree decompositions of the largest bag independence number."""
    return solve_measure(g, "alpha", limit=limit)


def induced_matching_treewidth(g: Graph, limit: int = DEFAULT_SOLVER_LIMIT) -> SolverResult:
    """Minimum over tree decompositions of the largest bag-constrained
    induced matching number."""
    return solve_measure(g, "mu", limit=limit)


# ---------------------------------------------------------------------------
# Cross-check search modes.  Both recompute measures with deliberately naive
# subroutines so they share as little as possible with the main path.
# ---------------------------------------------------------------------------


def _brute_alpha_of_mask(g: Graph, mask: int) -> int:
    members = _bits_of(mask)
    for size in range(len(members), 0, -1):
        for sub in itertools.combinations(members, size):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                return size
    return 0


def _brute_mu_of_mask(g: Graph, mask: int) -> int:
    edges = [(u, v) for u, v in g.edge_list() if (mask >> u) & 1 or (mask >> v) & 1]
    best = 0
    for size in range(len(edges), 0, -1):
        if size <= best:
            break
        for sub in itertools.combinations(edges, size):
            verts = [x for e in sub for x in e]
            if len(set(verts)) < 2 * size:
                continue
            if any(
                g.has_edge(x, y)
                for (a, b), (c, d) in itertools.combinations(sub, 2)
                for x, y in ((a, c), (a, d), (b, c), (b, d))
            ):
                continue
            return size
    return best


def _brute_measure(g: Graph, measure: str, mask: int) -> int:
    return (
        _brute_alpha_of_mask(g, mask)
        if measure == "alpha"
        else _brute_mu_of_mask(g, mask)
    )


def minimize_by_ordering_enumeration(
    g: Graph, measure: str, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> SolverResult:
    """Walk all n! elimination orderings (oracle mode).

    Measures are memoized per bag mask; the first optimal ordering in
    lexicographic order wins, matching the main solver's tie-break.
    """
    if measure not in MEASURES:
        raise GraphError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    if g.n > limit:
        raise LimitExceededError(
            f"ordering enumeration limited to {limit} vertices, got {g.n}"
        )
    if g.n == 0:
        return SolverResult(
            value=0,
            witness=make_decomposition([frozenset()], []),
            ordering=(),
            explored=0,
        )
    memo = {}

    def measure_of(mask):
        if mask not in memo:
            memo[mask] = _brute_measure(g, measure, mask)
        return memo[mask]

    best_value = None
    best_order = None
    explored = 0
    for perm in itertools.permutations(range(g.n)):
        explored += 1
        worst = max(measure_of(mask) for mask in _elimination_bags(g, perm))
        if best_value is None or worst < best_value:
            best_value = worst
            best_order = perm
    witness = elimination_to_decomposition(g, best_order)
    return SolverResult(
        value=best_value, witness=witness, ordering=best_order, explored=explored
    )


def _is_chordal(adj: Sequence, n: int) -> bool:
    # repeatedly delete a simplicial vertex; chordal iff everything goes
    alive = (1 << n) - 1
    for _ in range(n):
        found = False
        for v in range(n):
            if not (alive >> v) & 1:
                continue
            nbrs = _bits_of(adj[v] & alive)
            if all(adj[a] & (1 << b) for a, b in itertools.combinations(nbrs, 2)):
                alive &= ~(1 << v)
                found = True
                break
        if not found:
            return False
    return True


def _maximal_cliques(adj: Sequence, n: int) -> list:
    # Bron-Kerbosch without pivoting; fine at this scale
    out = []

    def expand(r, p, x):
        if p == 0 and x == 0:
            out.append(r)
            return
        for v in _bits_of(p):
            expand(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << n) - 1, 0)
    return out


def minimize_by_chordal_supergraphs(
    g: Graph, measure: str, limit: int = DEFAULT_SUPERGRAPH_LIMIT
) -> int:
    """Second oracle: the optimum as a minimum over chordal supergraphs.

    Every tree decomposition of G completes to a chordal supergraph whose
    maximal cliques refine its bags, and clique trees of chordal
    supergraphs are tree decompositions of G, so for bag-monotone
    measures the minimum over supergraphs of the worst maximal clique
    equals the optimum.  Enumerates all 2**(missing pairs) supergraphs.
    """
    if measure not in MEASURES:
        raise GraphError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    if g.n > limit:
        raise LimitExceededError(
            f"supergraph enumeration limited to {limit} vertices, got {g.n}"
        )
    if g.n == 0:
        return 0
    missing = [
        (u, v)
        for u, v in itertools.combinations(range(g.n), 2)
        if not g.has_edge(u, v)
    ]
    best = None
    for bits in range(1 << len(missing)):
        adj = list(g.adj)
        for i, (u, v) in enumerate(missing):
            if (bits >> i) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        if not _is_chordal(adj, g.n):
            continue
        cliques = _maximal_cliques(adj, g.n)
        worst = max((_brute_measure(g, measure, c) for c in cliques), default=0)
        if best is None or worst < best:
            best = worst
    return best
