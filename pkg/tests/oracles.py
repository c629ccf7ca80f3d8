"""Deliberately naive reference implementations used to cross-check the
library.  Everything here works on plain sets and itertools, shares no
code with the package internals, and is exponential without apology."""

import itertools


def o_is_independent(g, vertices) -> bool:
    return all(not g.has_edge(u, v) for u, v in itertools.combinations(sorted(vertices), 2))


def o_alpha(g, within=None) -> int:
    pool = sorted(range(g.n) if within is None else within)
    for size in range(len(pool), 0, -1):
        for sub in itertools.combinations(pool, size):
            if o_is_independent(g, sub):
                return size
    return 0


def o_max_matching_size(g) -> int:
    edges = g.edge_list()
    for size in range(g.n // 2, 0, -1):
        for sub in itertools.combinations(edges, size):
            used = [x for e in sub for x in e]
            if len(set(used)) == 2 * size:
                return size
    return 0


def o_is_induced_matching(g, edges) -> bool:
    edges = list(edges)
    used = [x for e in edges for x in e]
    if len(set(used)) != 2 * len(edges):
        return False
    if not all(g.has_edge(u, v) for u, v in edges):
        return False
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if any(g.has_edge(x, y) for x in (a, b) for y in (c, d)):
            return False
    return True


def o_mu_of_bag(g, bag) -> int:
    bag = set(bag)
    edges = [e for e in g.edge_list() if bag & set(e)]
    for size in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, size):
            if o_is_induced_matching(g, sub):
                return size
    return 0


def o_max_induced_matching(g) -> int:
    return o_mu_of_bag(g, range(g.n))


def o_contains_biclique(g, t, mode="subgraph") -> bool:
    for p in itertools.combinations(range(g.n), t):
        rest = sorted(set(range(g.n)) - set(p))
        for q in itertools.combinations(rest, t):
            if all(g.has_edge(u, v) for u in p for v in q):
                if mode == "subgraph":
                    return True
                if o_is_independent(g, p) and o_is_independent(g, q):
                    return True
    return False


def o_is_balanced_separator(g, removed) -> bool:
    removed = set(removed)
    remaining = [v for v in range(g.n) if v not in removed]
    seen = set()
    for root in remaining:
        if root in seen:
            continue
        comp = {root}
        frontier = [root]
        while frontier:
            u = frontier.pop()
            for w in remaining:
                if w not in comp and g.has_edge(u, w):
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        if 2 * len(comp) > g.n:
            return False
    return True
