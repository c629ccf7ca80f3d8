"""Randomized lower-bound construction and exhaustive edge-bound checks.

The random construction draws a balanced bipartite graph with independent
fair-coin edges.  At size 2**(t/3) per side it is, with probability
tending to one in t, simultaneously free of t,t-bicliques, free of
"co-bicliques" (t-subsets of either side with no edge between them), and
free of induced matchings of size t; those three properties force every
balanced separator to be huge and hence any tree decomposition to carry a
bag with many independent vertices.  None of this is visible at desk
scale (the sides would need thousands of vertices), so the module checks
the three properties exactly, asserts the vacuous regime honestly, and
verifies the separator argument by enumeration where it is feasible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .exactmath import max_edges_within_kst_bound, nth_root_floor
from .graph import (
    Bipartition,
    Graph,
    GraphError,
    LimitExceededError,
    _bitcount,
    _bits_of,
    _mask_of,
    _set_of,
    build_graph,
    components,
    kst_edge_bound,
    mis_size,
    mis_witness,
)
from .decomposition import edge_conflict_masks


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one randomized run."""

    t: int
    p: float = 0.5
    seed: int = 0
    samples: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise GraphError(f"probability out of range: {self.p}")
        if self.t < 1:
            raise GraphError(f"need t >= 1, got {self.t}")


def random_bipartite(n: int, p: float, seed: int) -> tuple:
    """Balanced random bipartite graph: sides 0..n-1 and n..2n-1, each of
    the n*n cross pairs present independently with probability p.

    Deterministic for a fixed seed.
    """
    if n < 0:
        raise GraphError(f"side size must be nonnegative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"probability out of range: {p}")
    rng = np.random.default_rng(seed)
    coins = rng.random((n, n))
    edges = [(i, n + j) for i in range(n) for j in range(n) if coins[i, j] < p]
    g = build_graph(2 * n, edges)
    bip = Bipartition(side_a=frozenset(range(n)), side_b=frozenset(range(n, 2 * n)))
    return g, bip


def lower_bound_instance(t: int, seed: int) -> tuple:
    """The hard-instance candidate at parameter t: side size 2**(t/3),
    rounded down, with fair-coin cross edges."""
    if t < 1:
        raise GraphError(f"need t >= 1, got {t}")
    n = nth_root_floor(2 ** t, 3)
    return random_bipartite(n, 0.5, seed)


@dataclass(frozen=True)
class PropertyReport:
    """The three hard-instance properties, with witnesses for failures."""

    t: int
    side_size: int
    biclique_free: bool
    co_biclique_free: bool
    no_t_matching: bool
    biclique_witness: Optional[tuple] = None
    co_biclique_witness: Optional[tuple] = None
    matching_witness: Optional[tuple] = None

    @property
    def all_pass(self) -> bool:
        return self.biclique_free and self.co_biclique_free and self.no_t_matching


def _side_subsets_feasible(n: int, t: int, cap: int = 2_000_000) -> None:
    import math

    if t <= n and math.comb(n, t) > cap:
        raise LimitExceededError(
            f"enumerating {math.comb(n, t)} {t}-subsets of a {n}-vertex side exceeds {cap}"
        )


def check_three_properties(
    g: Graph, bip: Bipartition, t: int, strict_biclique: bool = False
) -> PropertyReport:
    """Exactly test the three hard-instance properties.

    (i) no t,t-biclique with parts on opposite sides (the union-bound
    counting matches side-respecting placements; pass strict_biclique to
    also search arbitrary vertex subsets for an induced copy),
    (ii) no pair of t-subsets of opposite sides with zero edges between,
    (iii) no induced matching of t edges.
    """
    if t < 1:
        raise GraphError(f"need t >= 1, got {t}")
    side_a = sorted(bip.side_a)
    side_b = sorted(bip.side_b)
    _side_subsets_feasible(len(side_a), t)
    b_mask = _mask_of(side_b, g.n)

    biclique_witness = None
    co_witness = None
    if t <= len(side_a) and t <= len(side_b):
        for xs in itertools.combinations(side_a, t):
            common = b_mask
            union = 0
            for x in xs:
                common &= g.adj[x]
                union |= g.adj[x]
            if biclique_witness is None and _bitcount(common) >= t:
                biclique_witness = (
                    frozenset(xs),
                    frozenset(_bits_of(common)[:t]),
                )
            if co_witness is None:
                missing = b_mask & ~union
                if _bitcount(missing) >= t:
                    co_witness = (frozenset(xs), frozenset(_bits_of(missing)[:t]))
            if biclique_witness is not None and co_witness is not None:
                break
    elif t <= len(side_a) or t <= len(side_b):
        # a t-subset exists on one side only; no biclique or co-biclique
        # can be formed, both properties hold vacuously
        pass
    if strict_biclique and biclique_witness is None:
        from .graph import contains_biclique

        biclique_witness = contains_biclique(g, t, "induced")

    matching_witness = None
    edges = g.edge_list()
    conflicts = edge_conflict_masks(g, edges)
    cand = (1 << len(edges)) - 1
    if mis_size(conflicts, cand) >= t:
        chosen = mis_witness(conflicts, cand)[:t]
        matching_witness = tuple(edges[i] for i in sorted(chosen))

    return PropertyReport(
        t=t,
        side_size=len(side_a),
        biclique_free=biclique_witness is None,
        co_biclique_free=co_witness is None,
        no_t_matching=matching_witness is None,
        biclique_witness=biclique_witness,
        co_biclique_witness=co_witness,
        matching_witness=matching_witness,
    )


@dataclass(frozen=True)
class PartitionWitness:
    """A removed set plus a two-part split of the rest with no cross edges."""

    removed: frozenset
    part_w: frozenset
    part_z: frozenset


def verify_partition_witness(g: Graph, witness: PartitionWitness) -> bool:
    pieces = (witness.removed, witness.part_w, witness.part_z)
    if frozenset().union(*pieces) != frozenset(range(g.n)):
        return False
    if sum(len(p) for p in pieces) != g.n:
        return False
    return not any(
        g.has_edge(u, v) for u in witness.part_w for v in witness.part_z
    )


@dataclass(frozen=True)
class SeparatorBoundReport:
    """Lower bound on the tree-independence number via forced bag size."""

    t: int
    side_size: int
    bound: int
    vacuous: bool
    sets_checked: int
    counterexample: Optional[PartitionWitness] = None
    note: str = ""


def separator_lower_bound(
    g: Graph, bip: Bipartition, t: int, enumeration_cap: int = 2_000_000
) -> SeparatorBoundReport:
    """Certify ceil((n-2t)/2) as a tree-independence lower bound.

    Requires the co-biclique property (an edge between any two opposite
    t-subsets); that property alone implies no small removed set splits
    the rest into two large edge-free parts, which is re-verified here by
    enumerating every candidate removed set of size below n-2t.  A bag of
    every tree decomposition is a balanced separator, so some bag keeps
    at least n-2t vertices of a bipartite graph and therefore holds at
    least half of them as an independent set.  With n - 2t <= 0 the bound
    is vacuous and reported as 0.
    """
    import math

    side_a, side_b = sorted(bip.side_a), sorted(bip.side_b)
    if len(side_a) != len(side_b):
        raise GraphError("separator argument needs equal side sizes")
    n = len(side_a)
    report = check_three_properties(g, bip, t)
    if not report.co_biclique_free:
        raise GraphError(
            "co-biclique property fails; the separator argument does not apply: "
            f"witness {report.co_biclique_witness}"
        )
    if n - 2 * t <= 0:
        return SeparatorBoundReport(
            t=t,
            side_size=n,
            bound=0,
            vacuous=True,
            sets_checked=0,
            note=f"side size {n} <= 2t = {2 * t}; bound vacuous",
        )
    total_sets = sum(math.comb(g.n, k) for k in range(n - 2 * t))
    if total_sets > enumeration_cap:
        raise LimitExceededError(
            f"would enumerate {total_sets} removed sets, beyond cap {enumeration_cap}"
        )
    checked = 0
    for k in range(n - 2 * t):
        for removed in itertools.combinations(range(g.n), k):
            checked += 1
            witness = _find_partition(g, frozenset(removed), 2 * t)
            if witness is not None:
                return SeparatorBoundReport(
                    t=t,
                    side_size=n,
                    bound=0,
                    vacuous=False,
                    sets_checked=checked,
                    counterexample=witness,
                    note="small separator found; lower bound does not hold",
                )
    bound = (n - 2 * t + 1) // 2  # ceil((n-2t)/2)
    return SeparatorBoundReport(
        t=t, side_size=n, bound=bound, vacuous=False, sets_checked=checked
    )


def _find_partition(g: Graph, removed: frozenset, min_side: int):
    """A split of V minus removed into two parts of size >= min_side with no
    cross edges, grouping connected components; None when impossible."""
    removed_mask = _mask_of(removed, g.n)
    comps = components(g, g.full_mask() & ~removed_mask)
    sizes = [_bitcount(c) for c in comps]
    total = sum(sizes)
    # subset-sum over component sizes, tracking one achieving subset
    reachable = {0: 0}
    for i, size in enumerate(sizes):
        update = {}
        for acc, chosen in reachable.items():
            if acc + size not in reachable:
                update[acc + size] = chosen | (1 << i)
        reachable.update(update)
    for acc, chosen in sorted(reachable.items()):
        if acc >= min_side and total - acc >= min_side:
            w_mask = 0
            for i in range(len(comps)):
                if (chosen >> i) & 1:
                    w_mask |= comps[i]
            z_mask = (g.full_mask() & ~removed_mask) & ~w_mask
            return PartitionWitness(
                removed=removed, part_w=_set_of(w_mask), part_z=_set_of(z_mask)
            )
    return None


@dataclass(frozen=True)
class TrialRecord:
    """One seed of the lower-bound experiment."""

    t: int
    seed: int
    side_size: int
    edge_count: int
    properties: PropertyReport
    separator: Optional[SeparatorBoundReport]


def run_lower_bound_trial(t: int, seed: int) -> TrialRecord:
    """Generate one instance, check the three properties, and, when they
    all hold, run the separator lower bound (vacuous at small t)."""
    g, bip = lower_bound_instance(t, seed)
    report = check_three_properties(g, bip, t)
    separator = separator_lower_bound(g, bip, t) if report.all_pass else None
    return TrialRecord(
        t=t,
        seed=seed,
        side_size=len(bip.side_a),
        edge_count=g.m,
        properties=report,
        separator=separator,
    )


@dataclass(frozen=True)
class KstRow:
    n: int
    graphs: int
    free_count: int
    max_free_edges: int
    allowed_edges: int
    bound: float
    violations: int


@dataclass(frozen=True)
class KstCheckReport:
    t: int
    max_n: int
    rows: tuple

    @property
    def violations(self) -> int:
        return sum(row.violations for row in self.rows)


KST_SCAN_MAX_N = 7


def kst_exhaustive_check(max_n: int, t: int) -> KstCheckReport:
    """Assert the biclique-free edge bound on every labeled graph up to
    max_n vertices.

    All 2**(n(n-1)/2) labeled graphs per order are scanned (2**21 at the
    refusal ceiling of n = 7); for each graph with no t,t-biclique
    subgraph the edge count is compared against the exactly computed
    integer cap.
    """
    if t < 1:
        raise GraphError(f"need t >= 1, got {t}")
    if max_n < 0 or max_n > KST_SCAN_MAX_N:
        raise GraphError(
            f"exhaustive scan limited to n <= {KST_SCAN_MAX_N} (got {max_n}); "
            "2**21 graphs at n = 7 is the ceiling"
        )
    rows = []
    for n in range(max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        pair_u = np.array([u for u, _ in pairs], np.int64)
        pair_v = np.array([v for _, v in pairs], np.int64)
        subsets = (
            np.array(list(itertools.combinations(range(n), t)), np.int64)
            if t <= n
            else np.zeros((0, t), np.int64)
        )
        allowed = max_edges_within_kst_bound(n, t)
        free, max_free, violations, total = kernels.kst_scan(
            n, pair_u, pair_v, subsets, t, allowed
        )
        rows.append(
            KstRow(
                n=n,
                graphs=int(total),
                free_count=int(free),
                max_free_edges=int(max_free),
                allowed_edges=allowed,
                bound=kst_edge_bound(n, t),
                violations=int(violations),
            )
        )
    return KstCheckReport(t=t, max_n=max_n, rows=tuple(rows))
