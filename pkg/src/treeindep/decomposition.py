"""Tree decompositions, their validity conditions, and the two bag measures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .graph import (
    Graph,
    GraphError,
    LimitExceededError,
    _bitcount,
    _bits_of,
    _mask_of,
    _set_of,
    independence_number,
    max_independent_set,
    mis_size,
    mis_witness,
    is_balanced_separator,
)

MU_EDGE_LIMIT = 150


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree over bag nodes plus the bag map.

    Nodes are 0..node_count-1; bags[i] is the vertex set of node i and
    tree_edges are unordered node pairs.
    """

    bags: tuple
    tree_edges: frozenset

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def neighbors_of_node(self, x: int) -> list:
        out = []
        for a, b in self.tree_edges:
            if a == x:
                out.append(b)
            elif b == x:
                out.append(a)
        return sorted(out)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate(); failures carry a witness, not an exception."""

    ok: bool
    failure: Optional[str] = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MeasureReport:
    """A bag measure value with the certifying node and witness set."""

    value: int
    witness_node: Optional[int]
    witness_set: object


def make_decomposition(bags: Iterable, tree_edges: Iterable) -> TreeDecomposition:
    bag_tuple = tuple(frozenset(b) for b in bags)
    edges = set()
    for a, b in tree_edges:
        a, b = int(a), int(b)
        edges.add((min(a, b), max(a, b)))
    return TreeDecomposition(bags=bag_tuple, tree_edges=frozenset(edges))


def trivial_decomposition(g: Graph) -> TreeDecomposition:
    """One node whose bag is the whole vertex set; always valid."""
    return make_decomposition([frozenset(range(g.n))], [])


def _is_tree(td: TreeDecomposition):
    k = td.node_count
    if k == 0:
        return "empty decomposition"
    for a, b in td.tree_edges:
        if a == b or not (0 <= a < k and 0 <= b < k):
            return f"bad tree edge ({a}, {b})"
    if len(td.tree_edges) != k - 1:
        return f"{len(td.tree_edges)} tree edges on {k} nodes"
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in td.neighbors_of_node(x):
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    if len(seen) != k:
        return f"tree disconnected: reached {len(seen)} of {k} nodes"
    return None


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the three decomposition conditions, reporting the first failure.

    (a) each graph edge is inside some bag, (b) the nodes holding any
    fixed vertex form a nonempty connected subtree, (c) the node edges
    form a tree.  Bags must also stay within the host vertex range.
    """
    tree_problem = _is_tree(td)
    if tree_problem is not None:
        return ValidationReport(ok=False, failure="not-a-tree", witness=tree_problem)
    for x, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return ValidationReport(
                    ok=False, failure="bag-out-of-range", witness=(x, v)
                )
    for u, v in g.edge_list():
        if not any(u in bag and v in bag for bag in td.bags):
            return ValidationReport(ok=False, failure="uncovered-edge", witness=(u, v))
    for v in range(g.n):
        nodes = {x for x, bag in enumerate(td.bags) if v in bag}
        if not nodes:
            return ValidationReport(ok=False, failure="broken-subtree", witness=v)
        start = min(nodes)
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in td.neighbors_of_node(x):
                if y in nodes and y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if seen != nodes:
            return ValidationReport(ok=False, failure="broken-subtree", witness=v)
    return ValidationReport(ok=True)


def subtree_of_vertex(td: TreeDecomposition, v: int) -> frozenset:
    """Nodes whose bag contains v."""
    return frozenset(x for x, bag in enumerate(td.bags) if v in bag)


def alpha_of_decomposition(g: Graph, td: TreeDecomposition) -> MeasureReport:
    """Maximum independence number over bag-induced subgraphs."""
    values = [independence_number(g, within=bag) for bag in td.bags]
    if not values:
        return MeasureReport(value=0, witness_node=None, witness_set=frozenset())
    best = max(values)
    node = values.index(best)
    witness = max_independent_set(g, within=td.bags[node])
    return MeasureReport(value=best, witness_node=node, witness_set=witness)


def _edges_meeting(g: Graph, x_mask: int) -> list:
    return [(u, v) for u, v in g.edge_list() if (x_mask >> u) & 1 or (x_mask >> v) & 1]


def edge_conflict_masks(g: Graph, edges: list) -> list:
    """Conflict mask per edge: shares a vertex or has adjacent endpoints."""
    masks = [0] * len(edges)
    for i, j in itertools.combinations(range(len(edges)), 2):
        a, b = edges[i]
        c, d = edges[j]
        clash = (
            len({a, b, c, d}) < 4
            or g.has_edge(a, c)
            or g.has_edge(a, d)
            or g.has_edge(b, c)
            or g.has_edge(b, d)
        )
        if clash:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return masks


def mu_of_bag(g: Graph, x: Iterable, limit: int = MU_EDGE_LIMIT):
    """mu(G, X): the largest induced matching whose edges all meet X.

    Returns (value, witness matching).  Computed as a maximum independent
    set in the conflict graph on the edges meeting X.
    """
    x_mask = _mask_of(x, g.n)
    edges = _edges_meeting(g, x_mask)
    if len(edges) > limit:
        raise LimitExceededError(
            f"bag-constrained matching limited to {limit} incident edges, got {len(edges)}"
        )
    conflicts = edge_conflict_masks(g, edges)
    cand = (1 << len(edges)) - 1
    chosen = mis_witness(conflicts, cand)
    return len(chosen), tuple(edges[i] for i in sorted(chosen))


def mu_of_decomposition(g: Graph, td: TreeDecomposition) -> MeasureReport:
    """Maximum bag-constrained induced matching number over bags."""
    results = [mu_of_bag(g, bag) for bag in td.bags]
    if not results:
        return MeasureReport(value=0, witness_node=None, witness_set=())
    best = max(value for value, _ in results)
    node = next(x for x, (value, _) in enumerate(results) if value == best)
    return MeasureReport(value=best, witness_node=node, witness_set=results[node][1])


def find_balanced_separator_bag(g: Graph, td: TreeDecomposition) -> int:
    """A node whose bag is a balanced separator of g.

    Every valid tree decomposition has one, so failure here signals an
    implementation bug and is asserted rather than reported.
    """
    for x, bag in enumerate(td.bags):
        if is_balanced_separator(g, bag):
            return x
    raise AssertionError("no bag is a balanced separator; decomposition invalid?")
