"""Decomposition transformation bounding bag independence on biclique-free graphs.

Starting from a maximum independent set S and a decomposition with small
bag-constrained matching number, vertices of S are classified as light or
heavy by the independence number of their neighborhood.  Light vertices
are moved out of every original bag (replaced by their bag-neighbors) and
each gets a private leaf bag holding its closed neighborhood.  The result
is again a tree decomposition, and three per-node bounds combine into a
cap on its bag independence number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .decomposition import (
    MeasureReport,
    TreeDecomposition,
    alpha_of_decomposition,
    make_decomposition,
    mu_of_decomposition,
    subtree_of_vertex,
    validate,
)
from .extraction import transformation_thresholds
from .graph import (
    Graph,
    GraphError,
    contains_biclique,
    independence_number,
    is_independent_set,
    max_independent_set,
    neighborhood,
)


class PreconditionViolation(Exception):
    """A certified-pipeline hypothesis failed; carries the witness."""

    def __init__(self, kind: str, witness, message: str):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class TransformState:
    """Maximum independent set split into light and heavy, plus attachments.

    attach[s] is the tree node the new leaf of light vertex s hangs off
    (the lowest-id node whose bag contains s); leaves[s] is the id of
    that new leaf in the transformed decomposition.
    """

    independent_set: frozenset
    light_threshold: int
    light: frozenset
    heavy: frozenset
    attach: dict
    leaves: dict


def classify_light_heavy(g: Graph, s_set: Iterable, threshold: int) -> tuple:
    """Split an independent set by alpha(N(v)) < threshold."""
    members = frozenset(int(v) for v in s_set)
    if not is_independent_set(g, members):
        raise GraphError("classification requires an independent set")
    light, heavy = set(), set()
    for v in sorted(members):
        if independence_number(g, within=neighborhood(g, [v])) < threshold:
            light.add(v)
        else:
            heavy.add(v)
    return frozenset(light), frozenset(heavy)


def make_transform_state(
    g: Graph, td: TreeDecomposition, s_set: Iterable, threshold: int
) -> TransformState:
    members = frozenset(int(v) for v in s_set)
    light, heavy = classify_light_heavy(g, members, threshold)
    attach = {}
    for s in sorted(light):
        nodes = subtree_of_vertex(td, s)
        if not nodes:
            raise GraphError(f"light vertex {s} appears in no bag")
        attach[s] = min(nodes)
    leaves = {s: td.node_count + i for i, s in enumerate(sorted(light))}
    return TransformState(
        independent_set=members,
        light_threshold=threshold,
        light=light,
        heavy=heavy,
        attach=attach,
        leaves=leaves,
    )


def build_transformed_decomposition(
    g: Graph, td: TreeDecomposition, state: TransformState
) -> tuple:
    """Build the transformed decomposition and the light-vertex leaf map.

    Every original bag drops the light vertices and gains the
    neighborhood of the light vertices it contained; every light vertex
    s gets a fresh leaf bag N[s] attached inside its old subtree.
    """
    light = state.light
    new_bags = []
    for bag in td.bags:
        light_here = bag & light
        new_bags.append((bag - light) | neighborhood(g, light_here))
    edges = set(td.tree_edges)
    for s in sorted(light):
        leaf = state.leaves[s]
        new_bags.append(frozenset({s}) | neighborhood(g, [s]))
        edges.add((min(state.attach[s], leaf), max(state.attach[s], leaf)))
    return make_decomposition(new_bags, edges), dict(state.leaves)


@dataclass(frozen=True)
class NodeCheckReport:
    """Per-node values of one transformation bound against its cap."""

    name: str
    bound: int
    values: tuple
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def _per_node_report(name: str, bound: int, values: list) -> NodeCheckReport:
    violations = tuple(x for x, value in enumerate(values) if value >= bound)
    return NodeCheckReport(name=name, bound=bound, values=tuple(values), violations=violations)


def check_residual_alpha(
    g: Graph, td: TreeDecomposition, s_set: Iterable, bound: int
) -> NodeCheckReport:
    """alpha(bag minus S) < bound for every node."""
    members = frozenset(s_set)
    values = [independence_number(g, within=bag - members) for bag in td.bags]
    return _per_node_report("residual-alpha", bound, values)


def check_light_neighborhood_alpha(
    g: Graph, td: TreeDecomposition, light: Iterable, bound: int
) -> NodeCheckReport:
    """alpha(N(bag intersect light)) < bound for every node."""
    members = frozenset(light)
    values = [
        independence_number(g, within=neighborhood(g, bag & members))
        for bag in td.bags
    ]
    return _per_node_report("light-neighborhood-alpha", bound, values)


def check_heavy_overlap(
    g: Graph, td: TreeDecomposition, heavy: Iterable, bound: int
) -> NodeCheckReport:
    """|bag intersect heavy| < bound for every node."""
    members = frozenset(heavy)
    values = [len(bag & members) for bag in td.bags]
    return _per_node_report("heavy-overlap", bound, values)


@dataclass(frozen=True)
class PipelineResult:
    """Certified transformation output: the new decomposition plus evidence."""

    transformed: TreeDecomposition
    state: TransformState
    leaf_map: dict
    mu: int
    t: int
    m_threshold: int
    c_threshold: int
    k_threshold: int
    residual_report: NodeCheckReport
    light_report: NodeCheckReport
    heavy_report: NodeCheckReport
    alpha_report: MeasureReport
    mu_report: MeasureReport


def run_certified_pipeline(g: Graph, td: TreeDecomposition, mu: int, t: int) -> PipelineResult:
    """End-to-end certified transformation.

    Preconditions (checked, with witnesses): g contains no induced
    t,t-biclique, td is a valid decomposition of g, and its
    bag-constrained matching number is at most mu.  The pipeline then
    takes a maximum independent set, classifies at the derived threshold,
    builds the transformed decomposition, and asserts its validity, the
    three per-node bounds, and the final bag-independence cap.
    """
    if mu < 1 or t < 1:
        raise GraphError(f"need mu >= 1 and t >= 1, got mu={mu}, t={t}")
    found = contains_biclique(g, t, "induced")
    if found is not None:
        raise PreconditionViolation(
            "biclique", found, f"graph contains an induced {t},{t}-biclique: {found}"
        )
    report = validate(g, td)
    if not report.ok:
        raise PreconditionViolation(
            "invalid-decomposition", report, f"input decomposition invalid: {report.failure}"
        )
    mu_report = mu_of_decomposition(g, td)
    if mu_report.value > mu:
        raise PreconditionViolation(
            "matching-number",
            mu_report,
            f"decomposition has bag matching number {mu_report.value} > {mu}",
        )
    m_val, c_val, k_val = transformation_thresholds(mu, t)
    s_set = max_independent_set(g)
    state = make_transform_state(g, td, s_set, c_val)
    transformed, leaf_map = build_transformed_decomposition(g, td, state)
    check = validate(g, transformed)
    assert check.ok, f"transformed decomposition invalid: {check.failure} {check.witness}"
    residual = check_residual_alpha(g, td, s_set, m_val)
    light = check_light_neighborhood_alpha(g, td, state.light, mu * c_val)
    heavy = check_heavy_overlap(g, td, state.heavy, m_val)
    assert residual.ok, f"residual alpha bound violated at nodes {residual.violations}"
    assert light.ok, f"light neighborhood bound violated at nodes {light.violations}"
    assert heavy.ok, f"heavy overlap bound violated at nodes {heavy.violations}"
    alpha_report = alpha_of_decomposition(g, transformed)
    assert alpha_report.value < k_val, (
        f"transformed bag independence {alpha_report.value} not below {k_val}"
    )
    return PipelineResult(
        transformed=transformed,
        state=state,
        leaf_map=leaf_map,
        mu=mu,
        t=t,
        m_threshold=m_val,
        c_threshold=c_val,
        k_threshold=k_val,
        residual_report=residual,
        light_report=light,
        heavy_report=heavy,
        alpha_report=alpha_report,
        mu_report=mu_report,
    )
