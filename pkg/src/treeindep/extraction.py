"""Constructive extraction of induced matchings and independent sets.

Two procedures drive the decomposition transformation on biclique-free
graphs: matching extraction turns a large matching of a bipartite graph
into either a biclique witness or a large induced matching, and set
extraction is a Las Vegas routine pulling mutually independent subsets
out of a family of large independent sets.  The threshold calculators
give the exact parameter sizes above which the guarantees kick in; they
grow like (12(s+1))**t, so everything is plain arbitrary-precision int.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .exactmath import ceil_root_ratio
from .graph import (
    Bipartition,
    Graph,
    GraphError,
    _bitcount,
    _bits_of,
    _mask_of,
    _set_of,
    contains_biclique,
    contract_matching,
    check_matching,
    greedy_turan_independent_set,
    induced_subgraph,
    is_bipartite,
    is_independent_set,
    is_induced_matching,
    kst_threshold,
)


def matching_extraction_threshold(s: int, t: int) -> int:
    """Matching size above which extraction always yields s+1 induced edges
    (or a biclique): max(n_t, (12*(s+1))**t)."""
    if s < 0 or t < 1:
        raise GraphError(f"need s >= 0 and t >= 1, got s={s}, t={t}")
    return max(kst_threshold(t), (12 * (s + 1)) ** t)


def set_extraction_threshold(s: int, t: int, m: int) -> int:
    """Independent set size above which s survivors per set are guaranteed:
    max(n_t, (8*s*m*(m-1))**t)."""
    if s < 0 or t < 1 or m < 1:
        raise GraphError(f"need s >= 0, t >= 1, m >= 1, got s={s}, t={t}, m={m}")
    return max(kst_threshold(t), (8 * s * m * (m - 1)) ** t)


@dataclass(frozen=True)
class ThresholdBundle:
    """All derived constants for one parameter choice (s, t, m, mu)."""

    s: int
    t: int
    m: int
    mu: int
    n_t: int
    M_val: int
    N_val: int
    C_val: int
    K_val: int


def transformation_thresholds(mu: int, t: int) -> tuple:
    """(M, C, K) for the certified transformation: C = N(M, t, M) and
    K = 2*M + mu*C, where M = matching threshold at (mu, t)."""
    m_val = matching_extraction_threshold(mu, t)
    c_val = set_extraction_threshold(m_val, t, m_val)
    k_val = 2 * m_val + mu * c_val
    return m_val, c_val, k_val


def compute_thresholds(s: int, t: int, m: int, mu: int) -> ThresholdBundle:
    m_val = matching_extraction_threshold(s, t)
    n_val = set_extraction_threshold(s, t, m)
    _, c_val, k_val = transformation_thresholds(mu, t)
    return ThresholdBundle(
        s=s,
        t=t,
        m=m,
        mu=mu,
        n_t=kst_threshold(t),
        M_val=m_val,
        N_val=n_val,
        C_val=c_val,
        K_val=k_val,
    )


@dataclass(frozen=True)
class MatchingExtraction:
    """Outcome record of one matching-extraction run.

    outcome is "biclique" or "matching".  For matchings, achieved is the
    extracted induced matching size, promised is s+1 when the input was
    large enough to promise it, and guarantee is the internal
    ceil(n**(1/t)/12) bound asserted whenever the restricted graph was
    biclique-subgraph-free with 2n at least the simplified-bound
    threshold.  note explains an undersized input.
    """

    outcome: str
    s: int
    t: int
    input_size: int
    threshold: int
    biclique: Optional[tuple] = None
    biclique_is_induced: Optional[bool] = None
    contracted: Optional[Graph] = None
    sigma: Optional[Fraction] = None
    matching: Optional[tuple] = None
    achieved: Optional[int] = None
    promised: Optional[int] = None
    guarantee: Optional[int] = None
    note: Optional[str] = None


def extract_induced_matching(
    g: Graph, matching: Iterable, s: int, t: int
) -> MatchingExtraction:
    """From a matching of a bipartite graph, extract an induced biclique or
    a large induced matching.

    Restricts to the matched vertices; if a t,t-biclique subgraph is
    found there, it is returned (in a bipartite graph a biclique
    subgraph's parts lie on opposite sides, so the witness is
    automatically induced).  Otherwise the matching is contracted, edges
    of the host become edges between contracted vertices, and the greedy
    minimum-degree independent set of the contraction lifts back to an
    induced matching of g.
    """
    if s < 0 or t < 1:
        raise GraphError(f"need s >= 0 and t >= 1, got s={s}, t={t}")
    bip = is_bipartite(g)
    if not isinstance(bip, Bipartition):
        raise GraphError(f"graph is not bipartite; odd cycle {bip}")
    edges = check_matching(g, matching)
    n_m = len(edges)
    threshold = matching_extraction_threshold(s, t)
    covered = sorted(x for e in edges for x in e)
    restricted, remap = induced_subgraph(g, covered)
    back = {new: old for old, new in remap.items()}

    found = contains_biclique(restricted, t, "subgraph")
    if found is not None:
        part_p = frozenset(back[v] for v in found[0])
        part_q = frozenset(back[v] for v in found[1])
        induced = is_independent_set(g, part_p) and is_independent_set(g, part_q)
        return MatchingExtraction(
            outcome="biclique",
            s=s,
            t=t,
            input_size=n_m,
            threshold=threshold,
            biclique=(part_p, part_q),
            biclique_is_induced=induced,
        )

    mapped = [(remap[u], remap[v]) for u, v in edges]
    if n_m == 0:
        return MatchingExtraction(
            outcome="matching",
            s=s,
            t=t,
            input_size=0,
            threshold=threshold,
            matching=(),
            achieved=0,
            note="empty input matching",
        )
    contracted = contract_matching(restricted, mapped)
    sigma = max(Fraction(1), Fraction(contracted.m, contracted.n))
    picked = greedy_turan_independent_set(contracted)
    sorted_edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    lifted = tuple(sorted(sorted_edges[i] for i in picked))
    if not is_induced_matching(g, lifted):
        raise AssertionError("lifted matching is not induced; contraction bug")
    achieved = len(lifted)

    guarantee = None
    if 2 * n_m >= kst_threshold(t):
        guarantee = ceil_root_ratio(n_m, t, 12)
        if achieved < guarantee:
            raise AssertionError(
                f"extraction yielded {achieved} edges, below the {guarantee} guarantee"
            )
    promised = None
    note = None
    if n_m >= threshold:
        promised = s + 1
        if achieved < promised:
            raise AssertionError(
                f"matching of size {n_m} >= {threshold} must yield {s + 1} edges, got {achieved}"
            )
    else:
        note = (
            f"input matching has {n_m} < {threshold} edges; "
            "extracted matching carries no size promise"
        )
    return MatchingExtraction(
        outcome="matching",
        s=s,
        t=t,
        input_size=n_m,
        threshold=threshold,
        contracted=contracted,
        sigma=sigma,
        matching=lifted,
        achieved=achieved,
        promised=promised,
        guarantee=guarantee,
        note=note,
    )


@dataclass(frozen=True)
class SetExtraction:
    """Outcome record of the Las Vegas independent-set extraction.

    On success, survivors[i] is the kept subset of the i-th input set
    (each of size at least s, union independent).  On failure the record
    carries the smallest edge count seen and the densest input pair, the
    natural suspects when the size hypotheses are violated.
    """

    success: bool
    s: int
    t: int
    iterations: int
    edge_counts: tuple
    samples: tuple
    survivors: Optional[tuple] = None
    min_edge_count: Optional[int] = None
    densest_pair: Optional[tuple] = None
    densest_pair_edges: Optional[int] = None


def _rng_for(seed: int, iteration: int) -> np.random.Generator:
    # one generator per iteration, derived from the master seed, so
    # attempts could run concurrently with identical results
    return np.random.default_rng([int(seed), int(iteration)])


def extract_independent_sets(
    g: Graph,
    sets: Iterable,
    s: int,
    t: int,
    seed: int = 0,
    max_iterations: Optional[int] = None,
) -> SetExtraction:
    """Repeatedly sample 2s vertices per set until few cross edges appear.

    Each iteration samples uniformly and independently per set, counts
    the edges inside the sampled union, and on a count of at most s
    deletes the lower-indexed endpoint of each such edge.  What remains
    has at least s survivors per set with an independent union.  When g
    is biclique-free and every set reaches the size threshold, a single
    iteration succeeds with probability at least 1/(s+1), so the default
    iteration cap 50*(s+1) makes failure astronomically unlikely under
    the hypotheses; failures report diagnostics instead of looping on.
    """
    if s < 0 or t < 1:
        raise GraphError(f"need s >= 0 and t >= 1, got s={s}, t={t}")
    families = [frozenset(int(v) for v in family) for family in sets]
    if not families:
        raise GraphError("need at least one input set")
    for i, family in enumerate(families):
        if not is_independent_set(g, family):
            raise GraphError(f"input set {i} is not independent")
        if len(family) < 2 * s:
            raise GraphError(f"input set {i} has {len(family)} < 2s = {2 * s} vertices")
    if max_iterations is None:
        max_iterations = 50 * (s + 1)

    edge_counts = []
    last_samples = ()
    for iteration in range(1, max_iterations + 1):
        rng = _rng_for(seed, iteration)
        samples = []
        for family in families:
            members = sorted(family)
            idx = rng.choice(len(members), size=2 * s, replace=False)
            samples.append(frozenset(members[i] for i in idx))
        last_samples = tuple(samples)
        union_mask = 0
        for sample in samples:
            union_mask |= _mask_of(sample, g.n)
        sampled_edges = [
            (u, v)
            for u, v in g.edge_list()
            if (union_mask >> u) & 1 and (union_mask >> v) & 1
        ]
        edge_counts.append(len(sampled_edges))
        if len(sampled_edges) > s:
            continue
        dead = 0
        for u, v in sorted(sampled_edges):
            if not ((dead >> u) & 1 or (dead >> v) & 1):
                dead |= 1 << min(u, v)
        survivors = tuple(
            frozenset(v for v in sample if not (dead >> v) & 1) for sample in samples
        )
        union = frozenset().union(*survivors)
        if not is_independent_set(g, union):
            raise AssertionError("survivor union is not independent; removal bug")
        if any(len(kept) < s for kept in survivors):
            raise AssertionError("a survivor set dropped below s vertices")
        return SetExtraction(
            success=True,
            s=s,
            t=t,
            iterations=iteration,
            edge_counts=tuple(edge_counts),
            samples=last_samples,
            survivors=survivors,
        )

    densest, densest_count = None, -1
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            mask = _mask_of(families[i] | families[j], g.n)
            count = sum(
                1
                for u, v in g.edge_list()
                if (mask >> u) & 1 and (mask >> v) & 1
            )
            if count > densest_count:
                densest, densest_count = (i, j), count
    return SetExtraction(
        success=False,
        s=s,
        t=t,
        iterations=max_iterations,
        edge_counts=tuple(edge_counts),
        samples=last_samples,
        min_edge_count=min(edge_counts) if edge_counts else None,
        densest_pair=densest,
        densest_pair_edges=densest_count if densest is not None else None,
    )
