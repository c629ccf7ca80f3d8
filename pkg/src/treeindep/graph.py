"""Core undirected graph type and the exact/greedy primitives.

Vertices are integers 0..n-1.  Adjacency lives in per-vertex bitmasks, so
all set manipulation is integer arithmetic and every operation is a pure
function of immutable inputs.  Exact routines refuse inputs above their
configured limits instead of falling back to heuristics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .exactmath import (
    kst_simple_bound_absorbs,
    max_edges_within_kst_bound,
    within_kst_edge_bound,
)

EXACT_ALPHA_LIMIT = 24
EXACT_MATCHING_LIMIT = 16
_MASK_KERNEL_LIMIT = 62

VertexSet = frozenset
Edge = tuple
Matching = tuple


class GraphError(ValueError):
    """Invalid graph construction or operation arguments."""


class LimitExceededError(RuntimeError):
    """An exact computation was asked to exceed its configured size limit."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count, adjacency bitmasks, edge count."""

    n: int
    adj: tuple
    m: int

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return _bitcount(self.adj[v])

    def neighbors(self, v: int) -> frozenset:
        return _set_of(self.adj[v])

    def edge_list(self) -> list:
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    out.append((u, v))
                rest >>= 1
                v += 1
        return out

    def full_mask(self) -> int:
        return (1 << self.n) - 1


@dataclass(frozen=True)
class Bipartition:
    """Two independent sides covering the whole vertex set."""

    side_a: frozenset
    side_b: frozenset


def _bitcount(x: int) -> int:
    return int(x).bit_count()


def _set_of(mask: int) -> frozenset:
    out = []
    v = 0
    mask = int(mask)
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _bits_of(mask: int) -> list:
    return sorted(_set_of(mask))


def _mask_of(vertices: Iterable, n: int) -> int:
    mask = 0
    for v in vertices:
        v = int(v)
        if not 0 <= v < n:
            raise GraphError(f"vertex {v} out of range 0..{n - 1}")
        mask |= 1 << v
    return mask


def _nbr_array(g: Graph) -> np.ndarray:
    return np.array(g.adj, dtype=np.int64) if g.n else np.zeros(0, np.int64)


def _closed_array(g: Graph) -> np.ndarray:
    return np.array(
        [g.adj[v] | (1 << v) for v in range(g.n)], dtype=np.int64
    ) if g.n else np.zeros(0, np.int64)


def build_graph(n: int, edges: Iterable) -> Graph:
    """Build a simple graph from an edge list, deduplicating repeats.

    Rejects self-loops and out-of-range endpoints, naming the offending
    pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"self-loop forbidden: ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge endpoint out of range 0..{n - 1}: ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    m = sum(_bitcount(a) for a in adj) // 2
    return Graph(n=n, adj=tuple(adj), m=m)


def neighborhood(g: Graph, x: Iterable) -> frozenset:
    """N(X): vertices outside X adjacent to at least one vertex of X."""
    mask = _mask_of(x, g.n)
    out = 0
    for v in _bits_of(mask):
        out |= g.adj[v]
    return _set_of(out & ~mask)


def closed_neighborhood(g: Graph, v: int) -> frozenset:
    """N[v] = N(v) together with v itself."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    return _set_of(g.adj[v] | (1 << v))


def induced_subgraph(g: Graph, x: Iterable):
    """Subgraph induced by x, plus the old-to-new index map."""
    mask = _mask_of(x, g.n)
    old = _bits_of(mask)
    remap = {o: i for i, o in enumerate(old)}
    edges = [
        (remap[u], remap[v])
        for u, v in itertools.combinations(old, 2)
        if g.has_edge(u, v)
    ]
    return build_graph(len(old), edges), remap


def is_independent_set(g: Graph, x: Iterable) -> bool:
    mask = _mask_of(x, g.n)
    for v in _bits_of(mask):
        if g.adj[v] & mask:
            return False
    return True


def _mis_python(masks: Sequence, cand: int) -> int:
    # Branch and bound over arbitrary-width Python ints; mirrors
    # kernels.mis_bnb for instances wider than 62 items.
    best = 0
    stack = [(cand, 0)]
    while stack:
        c, cnt = stack.pop()
        if cnt + _bitcount(c) <= best:
            continue
        bv, bd = -1, -1
        rem, v = c, 0
        while rem:
            if rem & 1:
                d = _bitcount(masks[v] & c)
                if d > bd:
                    bd, bv = d, v
            rem >>= 1
            v += 1
        if bd <= 0:
            best = max(best, cnt + _bitcount(c))
            continue
        stack.append((c & ~(1 << bv), cnt))
        stack.append((c & ~(masks[bv] | (1 << bv)), cnt + 1))
    return best


def mis_size(masks: Sequence, cand: int) -> int:
    """Maximum independent set size among candidate items.

    masks[i] is the conflict mask of item i.  Dispatches to the compiled
    kernel when everything fits in an int64.
    """
    if len(masks) <= _MASK_KERNEL_LIMIT:
        arr = np.array(masks, dtype=np.int64) if masks else np.zeros(0, np.int64)
        return int(kernels.mis_bnb(arr, cand))
    return _mis_python(masks, cand)


def mis_witness(masks: Sequence, cand: int) -> list:
    """Lexicographically smallest maximum independent item set."""
    target = mis_size(masks, cand)
    chosen = []
    remaining = cand
    while target > 0:
        v = (remaining & -remaining).bit_length() - 1
        without = remaining & ~(masks[v] | (1 << v))
        if 1 + mis_size(masks, without) == target:
            chosen.append(v)
            remaining = without
            target -= 1
        else:
            remaining &= ~(1 << v)
    return chosen


def independence_number(
    g: Graph, within: Optional[Iterable] = None, limit: int = EXACT_ALPHA_LIMIT
) -> int:
    """Exact independence number of g (or of the induced subset)."""
    cand = g.full_mask() if within is None else _mask_of(within, g.n)
    if _bitcount(cand) > limit:
        raise LimitExceededError(
            f"exact independence number limited to {limit} vertices, got {_bitcount(cand)}"
        )
    return mis_size(g.adj, cand)


def max_independent_set(
    g: Graph, within: Optional[Iterable] = None, limit: int = EXACT_ALPHA_LIMIT
) -> frozenset:
    """A maximum independent set; lowest-index-first on ties."""
    cand = g.full_mask() if within is None else _mask_of(within, g.n)
    if _bitcount(cand) > limit:
        raise LimitExceededError(
            f"exact independence number limited to {limit} vertices, got {_bitcount(cand)}"
        )
    return frozenset(mis_witness(g.adj, cand))


def alpha_by_enumeration(g: Graph, limit: int = 16) -> int:
    """Cross-check oracle: independence number by full subset enumeration."""
    if g.n > limit:
        raise LimitExceededError(f"enumeration oracle limited to {limit} vertices")
    return int(kernels.alpha_brute(_nbr_array(g)))


def _matching_mask(matching: Iterable) -> tuple:
    edges = []
    for pair in matching:
        u, v = pair
        u, v = int(u), int(v)
        edges.append((min(u, v), max(u, v)))
    return tuple(sorted(set(edges)))


def check_matching(g: Graph, matching: Iterable) -> tuple:
    """Normalize and validate a matching: edges of g, pairwise disjoint."""
    edges = _matching_mask(matching)
    seen = 0
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge of the graph")
        bits = (1 << u) | (1 << v)
        if seen & bits:
            raise GraphError(f"matching edges share a vertex at ({u}, {v})")
        seen |= bits
    return edges


def max_matching(g: Graph, limit: int = EXACT_MATCHING_LIMIT) -> tuple:
    """Maximum-cardinality matching.

    Bipartite graphs use augmenting paths and have no size limit; general
    graphs fall back to a memoized exhaustive search up to the limit.
    """
    bip = is_bipartite(g)
    if isinstance(bip, Bipartition):
        return _kuhn_matching(g, bip)
    if g.n > limit:
        raise LimitExceededError(
            f"exact matching on non-bipartite graphs limited to {limit} vertices"
        )
    return _general_max_matching(g)


def _kuhn_matching(g: Graph, bip: Bipartition) -> tuple:
    match = {}
    for u in sorted(bip.side_a):
        seen = set()

        def try_augment(a):
            for b in sorted(_set_of(g.adj[a])):
                if b in seen:
                    continue
                seen.add(b)
                if b not in match or try_augment(match[b]):
                    match[b] = a
                    return True
            return False

        try_augment(u)
    return tuple(sorted((min(a, b), max(a, b)) for b, a in match.items()))


def _general_max_matching(g: Graph) -> tuple:
    memo = {}

    def best(mask):
        if mask in memo:
            return memo[mask]
        v = -1
        rem = mask
        i = 0
        while rem:
            if (rem & 1) and (g.adj[i] & mask):
                v = i
                break
            rem >>= 1
            i += 1
        if v < 0:
            memo[mask] = ()
            return ()
        options = [best(mask & ~(1 << v))]
        for u in _bits_of(g.adj[v] & mask):
            sub = best(mask & ~(1 << v) & ~(1 << u))
            options.append(tuple(sorted(((v, u) if v < u else (u, v),) + sub)))
        # prefer larger, then lexicographically smallest edge tuple
        top = max(len(t) for t in options)
        result = min(t for t in options if len(t) == top)
        memo[mask] = result
        return result

    return best(g.full_mask())


def is_induced_matching(g: Graph, matching: Iterable) -> bool:
    """Matching whose distinct edges have no adjacent endpoints."""
    try:
        edges = check_matching(g, matching)
    except GraphError:
        return False
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        for x, y in ((a, c), (a, d), (b, c), (b, d)):
            if g.has_edge(x, y):
                return False
    return True


def contains_biclique(g: Graph, t: int, mode: str = "subgraph"):
    """Search for a t,t-biclique, returning the two t-sets or None.

    mode="subgraph" only requires every cross pair adjacent; in
    mode="induced" both parts must additionally be independent, which for
    simple graphs makes the union induce exactly the complete bipartite
    graph.  Enumeration is over t-subsets with common-neighborhood
    pruning; feasible for small t only.
    """
    if mode not in ("subgraph", "induced"):
        raise GraphError(f"unknown biclique mode: {mode!r}")
    if t < 1:
        raise GraphError(f"biclique order must be positive, got {t}")
    if 2 * t > g.n:
        return None
    candidates = [v for v in range(g.n) if g.degree(v) >= t]
    full = g.full_mask()
    for p in itertools.combinations(candidates, t):
        common = full
        for v in p:
            common &= g.adj[v]
        if _bitcount(common) < t:
            continue
        if mode == "subgraph":
            return frozenset(p), frozenset(_bits_of(common)[:t])
        if not is_independent_set(g, p):
            continue
        members = _bits_of(common)
        for q in itertools.combinations(members, t):
            if is_independent_set(g, q):
                return frozenset(p), frozenset(q)
    return None


def contract_matching(g: Graph, matching: Iterable) -> Graph:
    """Contract a perfect matching of g into one vertex per edge.

    g must be exactly the graph on the matched vertices.  Vertex i of the
    result is the i-th matching edge in sorted order; two contracted
    vertices are adjacent when any endpoints of the two edges are
    adjacent in g.  No loops or parallel edges are created, so the edge
    count never increases.
    """
    edges = check_matching(g, matching)
    covered = 0
    for u, v in edges:
        covered |= (1 << u) | (1 << v)
    if covered != g.full_mask():
        missing = _bits_of(g.full_mask() & ~covered)
        raise GraphError(f"matching is not perfect: vertices {missing} uncovered")
    k = len(edges)
    q_edges = []
    for i, j in itertools.combinations(range(k), 2):
        a, b = edges[i]
        c, d = edges[j]
        if g.has_edge(a, c) or g.has_edge(a, d) or g.has_edge(b, c) or g.has_edge(b, d):
            q_edges.append((i, j))
    return build_graph(k, q_edges)


def turan_bound(n: int, m: int) -> int:
    """ceil(n / (2*sigma + 1)) with sigma = max(1, m/n), computed exactly."""
    if n == 0:
        return 0
    sigma = max(Fraction(1), Fraction(m, n))
    value = Fraction(n) / (2 * sigma + 1)
    return -(-value.numerator // value.denominator)


def greedy_turan_independent_set(g: Graph) -> frozenset:
    """Greedy independent set: repeatedly take a minimum-degree vertex.

    Each step removes the chosen vertex's closed neighborhood.  The
    result has size at least turan_bound(n, m): the minimum-degree rule
    achieves the Caro-Wei sum of 1/(deg+1), which is at least
    n/(average degree + 1).
    """
    alive = g.full_mask()
    chosen = []
    while alive:
        best_v, best_d = -1, g.n + 1
        for v in _bits_of(alive):
            d = _bitcount(g.adj[v] & alive)
            if d < best_d:
                best_v, best_d = v, d
        chosen.append(best_v)
        alive &= ~(g.adj[best_v] | (1 << best_v))
    return frozenset(chosen)


def is_bipartite(g: Graph):
    """Two-coloring by breadth-first layering, or an odd-cycle witness.

    Returns a Bipartition (component roots land on side_a, so edgeless
    graphs put everything on side_a) or a tuple of vertices forming an
    odd cycle.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in _bits_of(g.adj[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return _odd_cycle(parent, depth, u, w)
    side_a = frozenset(v for v in range(g.n) if color[v] == 0)
    side_b = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(side_a=side_a, side_b=side_b)


def _odd_cycle(parent, depth, u, w):
    pu, pw = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pw.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        pu.append(a)
        pw.append(b)
    pw.pop()  # drop duplicate meeting vertex
    return tuple(pu + list(reversed(pw)))


def kst_edge_bound(n: int, t: int) -> float:
    """(t-1)**(1/t)/2 * n**(2-1/t) + t*n/2, in floating point.

    Only for display; comparisons against the bound go through
    within_kst_edge_bound, which raises both sides to the t-th power and
    therefore never mis-flags a violation due to rounding.
    """
    if n < 0 or t < 1:
        raise GraphError("need n >= 0 and t >= 1")
    if n == 0:
        return 0.0
    return (t - 1) ** (1.0 / t) / 2.0 * n ** (2.0 - 1.0 / t) + t * n / 2.0


def kst_threshold(t: int) -> int:
    """Smallest n from which the simplified n**(2-1/t) edge bound holds.

    Found by ascending integer search with the exact root comparison;
    once the inequality holds it holds for every larger n, because the
    deficit 2*n - t*n**(1/t) - ((t-1)*n**t)**(1/t) is nondecreasing.
    """
    if t < 1:
        raise GraphError(f"biclique order must be positive, got {t}")
    n = 1
    while not kst_simple_bound_absorbs(n, t):
        n += 1
    return n


def components(g: Graph, within: Optional[int] = None) -> list:
    """Connected component masks, restricted to the given vertex mask."""
    alive = g.full_mask() if within is None else within
    comps = []
    while alive:
        start = alive & -alive
        comp = start
        frontier = start
        while frontier:
            ex = 0
            for v in _bits_of(frontier):
                ex |= g.adj[v]
            new = ex & alive & ~comp
            comp |= new
            frontier = new
        comps.append(comp)
        alive &= ~comp
    return comps


def is_balanced_separator(g: Graph, s: Iterable) -> bool:
    """No component of G - S has more than n/2 vertices (n of all of G)."""
    mask = _mask_of(s, g.n)
    for comp in components(g, g.full_mask() & ~mask):
        if 2 * _bitcount(comp) > g.n:
            return False
    return True


# Convenience re-exports used throughout the package.
__all__ = [
    "Graph",
    "Bipartition",
    "GraphError",
    "LimitExceededError",
    "EXACT_ALPHA_LIMIT",
    "EXACT_MATCHING_LIMIT",
    "build_graph",
    "neighborhood",
    "closed_neighborhood",
    "induced_subgraph",
    "is_independent_set",
    "independence_number",
    "max_independent_set",
    "alpha_by_enumeration",
    "max_matching",
    "check_matching",
    "is_induced_matching",
    "contains_biclique",
    "contract_matching",
    "turan_bound",
    "greedy_turan_independent_set",
    "is_bipartite",
    "kst_edge_bound",
    "kst_threshold",
    "within_kst_edge_bound",
    "max_edges_within_kst_bound",
    "components",
    "is_balanced_separator",
    "mis_size",
    "mis_witness",
]
