"""Tree decompositions, bag measures, and extremal-bound experiments.

The package provides exact (desk-scale) solvers for the tree-independence
number and the induced matching treewidth, the constructive extraction
procedures relating them on biclique-free graphs, a decomposition
transformation with certified bounds, and randomized lower-bound
experiments, all backed by brute-force cross-checks in the test suite.
"""

from .graph import (
    Graph,
    Bipartition,
    GraphError,
    LimitExceededError,
    build_graph,
    neighborhood,
    closed_neighborhood,
    induced_subgraph,
    is_independent_set,
    independence_number,
    max_independent_set,
    max_matching,
    is_induced_matching,
    contains_biclique,
    contract_matching,
    greedy_turan_independent_set,
    turan_bound,
    is_bipartite,
    kst_edge_bound,
    kst_threshold,
    is_balanced_separator,
)
from .decomposition import (
    TreeDecomposition,
    ValidationReport,
    MeasureReport,
    make_decomposition,
    trivial_decomposition,
    validate,
    subtree_of_vertex,
    alpha_of_decomposition,
    mu_of_bag,
    mu_of_decomposition,
    find_balanced_separator_bag,
)
from .solvers import (
    SolverResult,
    elimination_to_decomposition,
    tree_independence_number,
    induced_matching_treewidth,
    minimize_by_ordering_enumeration,
    minimize_by_chordal_supergraphs,
)

__version__ = "0.1.0"
