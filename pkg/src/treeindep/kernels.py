"""Hot kernels over int64 adjacency bitmasks.

Everything here is written in numba-compatible Python and compiled with
``@njit(cache=True)`` at import time.  Setting ``TREEINDEP_PURE_PYTHON=1``
in the environment (or running without numba installed) selects the plain
Python path instead; results are bit-identical either way, only speed
differs.  ``benchmarks/bench_kernels.py`` compares the two paths.

Masks are int64, so the kernels handle at most 62 vertices (or 62 edges,
for the edge-conflict helpers).  Callers enforce much tighter limits.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    _HAVE_NUMBA = False

PURE_PYTHON_ENV = "TREEINDEP_PURE_PYTHON"
JIT_ENABLED = _HAVE_NUMBA and os.environ.get(PURE_PYTHON_ENV, "") != "1"


def _jit(fn):
    if JIT_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn


def pure(fn):
    """Return the uncompiled version of a kernel (the kernel itself when
    JIT is disabled)."""
    return getattr(fn, "py_func", fn)


@_jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@_jit
def alpha_table(closed):
    """Independence number of G[mask] for every vertex subset mask.

    closed[v] must be the closed-neighborhood mask N[v].  Classic subset
    DP: either the lowest vertex of the mask is skipped or it is taken
    together with the exclusion of its closed neighborhood.
    """
    n = closed.shape[0]
    out = np.zeros(1 << n, np.int16)
    for mask in range(1, 1 << n):
        v = 0
        while (mask >> v) & 1 == 0:
            v += 1
        skip = out[mask & ~(1 << v)]
        take = 1 + out[mask & ~closed[v]]
        out[mask] = take if take > skip else skip
    return out


@_jit
def alpha_brute(nbr):
    """Independence number by enumerating every subset (oracle path).

    Deliberately naive and independent of both alpha_table and mis_bnb;
    usable up to n around 16.
    """
    n = nbr.shape[0]
    best = 0
    for mask in range(1 << n):
        ok = True
        rem = mask
        v = 0
        while rem:
            if (rem & 1) and (nbr[v] & mask):
                ok = False
                break
            rem >>= 1
            v += 1
        if ok:
            c = popcount(mask)
            if c > best:
                best = c
    return best


@_jit
def mis_bnb(nbr, cand0):
    """Maximum independent set size within the candidate mask.

    Iterative branch and bound: branch on a maximum-degree vertex of the
    candidate set (lowest index on ties), include or exclude it, prune
    with the remaining-popcount bound.
    """
    n = nbr.shape[0]
    cap = 2 * n + 4
    st_cand = np.empty(cap, np.int64)
    st_cnt = np.empty(cap, np.int64)
    st_cand[0] = cand0
    st_cnt[0] = 0
    sp = 1
    best = 0
    while sp > 0:
        sp -= 1
        cand = st_cand[sp]
        cnt = st_cnt[sp]
        if cnt + popcount(cand) <= best:
            continue
        bv = -1
        bd = -1
        rem = cand
        v = 0
        while rem:
            if rem & 1:
                d = popcount(nbr[v] & cand)
                if d > bd:
                    bd = d
                    bv = v
            rem >>= 1
            v += 1
        if bd <= 0:
            c = cnt + popcount(cand)
            if c > best:
                best = c
            continue
        st_cand[sp] = cand & ~(1 << bv)
        st_cnt[sp] = cnt
        sp += 1
        st_cand[sp] = cand & ~(nbr[bv] | (1 << bv))
        st_cnt[sp] = cnt + 1
        sp += 1
    return best


@_jit
def bag_table(nbr):
    """Elimination bag for every (eliminated-set, vertex) pair.

    bag(v, E) is v together with every vertex outside E reachable from v
    along paths whose internal vertices all lie in E; stored flat at
    index E * n + v (entries with v in E stay 0).
    """
    n = nbr.shape[0]
    out = np.zeros((1 << n) * n, np.int64)
    for elim in range(1 << n):
        for v in range(n):
            if (elim >> v) & 1:
                continue
            visited = 1 << v
            frontier = 1 << v
            bag = 1 << v
            while frontier:
                ex = 0
                f = frontier
                u = 0
                while f:
                    if f & 1:
                        ex |= nbr[u]
                    f >>= 1
                    u += 1
                new = ex & ~visited
                visited |= new
                bag |= new & ~elim
                frontier = new & elim
            out[elim * n + v] = bag
    return out


@_jit
def solve_dp(bag_tab, measure, n):
    """Minimize the maximum bag measure over all elimination orderings.

    h[P] is the best achievable maximum measure over the remaining
    eliminations once the vertex set P has been eliminated, so h[0] is
    the optimum.  The returned ordering is the lexicographically
    smallest optimal one (rebuilt greedily from h), and the third value
    counts (set, vertex) expansions examined.
    """
    full = (1 << n) - 1
    h = np.zeros(1 << n, np.int16)
    expansions = 0
    for p in range(full - 1, -1, -1):
        best = np.int16(32000)
        for v in range(n):
            if (p >> v) & 1:
                continue
            expansions += 1
            m = measure[bag_tab[p * n + v]]
            rest = h[p | (1 << v)]
            cost = m if m > rest else rest
            if cost < best:
                best = cost
        h[p] = best
    order = np.empty(n, np.int64)
    p = 0
    for i in range(n):
        for v in range(n):
            if (p >> v) & 1:
                continue
            m = measure[bag_tab[p * n + v]]
            rest = h[p | (1 << v)]
            cost = m if m > rest else rest
            if cost == h[p]:
                order[i] = v
                p |= 1 << v
                break
    return h[0], order, expansions


@_jit
def mu_table(inc, conflict, n):
    """Bag-constrained induced matching number for every vertex subset.

    inc[v] is the mask (over edge indices) of edges incident to v;
    conflict[e] is the mask of edges that cannot share an induced
    matching with edge e.  The value for X is the maximum independent
    set in the conflict graph restricted to edges meeting X.
    """
    out = np.zeros(1 << n, np.int16)
    for x in range(1, 1 << n):
        cand = 0
        rem = x
        v = 0
        while rem:
            if rem & 1:
                cand |= inc[v]
            rem >>= 1
            v += 1
        out[x] = mis_bnb(conflict, cand)
    return out


@_jit
def kst_scan(n, pair_u, pair_v, subsets, t, max_allowed):
    """Scan every labeled graph on n vertices for the biclique edge bound.

    For each graph without a t,t-biclique subgraph, compare its edge
    count against max_allowed (the exactly computed integer cap).
    Returns (free_count, max_free_edges, violations, total_graphs).
    """
    nbits = pair_u.shape[0]
    ns = subsets.shape[0]
    total = 1 << nbits
    free_count = 0
    max_free = -1
    violations = 0
    all_mask = (1 << n) - 1
    nbr = np.zeros(n if n > 0 else 1, np.int64)
    for code in range(total):
        for v in range(n):
            nbr[v] = 0
        m = 0
        for b in range(nbits):
            if (code >> b) & 1:
                nbr[pair_u[b]] |= 1 << pair_v[b]
                nbr[pair_v[b]] |= 1 << pair_u[b]
                m += 1
        has = False
        for si in range(ns):
            inter = -1
            for j in range(t):
                inter &= nbr[subsets[si, j]]
            if popcount(inter & all_mask) >= t:
                has = True
                break
        if not has:
            free_count += 1
            if m > max_free:
                max_free = m
            if m > max_allowed:
                violations += 1
    return free_count, max_free, violations, total
