"""Exact integer arithmetic for comparisons involving t-th roots.

Floating point cannot reliably decide inequalities like
``t * n**(1/t) + ((t-1) * n**t)**(1/t) <= 2*n`` near equality (and the
t = 2, n = 4 case *is* an equality), so the comparisons below work with
integer t-th roots at increasing scale until the answer is certain.
"""

from __future__ import annotations


def nth_root_floor(x: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= x."""
    if x < 0:
        raise ValueError(f"negative radicand: {x}")
    if k < 1:
        raise ValueError(f"root order must be positive, got {k}")
    if k == 1 or x in (0, 1):
        return x
    # Integer Newton iteration, seeded above the true root.
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def ceil_root_ratio(n: int, t: int, d: int) -> int:
    """ceil(n**(1/t) / d) for integers n >= 0, t >= 1, d >= 1, exactly.

    This is the least integer q with (d*q)**t >= n.
    """
    if n <= 0:
        return 0
    q = nth_root_floor(n, t) // d
    while (d * q) ** t < n:
        q += 1
    return q


def within_kst_edge_bound(n: int, m: int, t: int) -> bool:
    """Decide m <= (t-1)**(1/t)/2 * n**(2-1/t) + t*n/2 with exact integers.

    Rearranged to 2*m - t*n <= ((t-1) * n**(2t-1))**(1/t); both sides are
    raised to the t-th power, so no rounding is involved and a violation
    is never reported spuriously.
    """
    if n < 0 or m < 0 or t < 1:
        raise ValueError("arguments must be nonnegative with t >= 1")
    lhs = 2 * m - t * n
    if lhs <= 0:
        return True
    return lhs ** t <= (t - 1) * n ** (2 * t - 1)


def max_edges_within_kst_bound(n: int, t: int) -> int:
    """Largest integer edge count m admitted by within_kst_edge_bound."""
    m = n * (n - 1) // 2
    while m > 0 and not within_kst_edge_bound(n, m, t):
        m -= 1
    return m


def kst_simple_bound_absorbs(n: int, t: int) -> bool:
    """Whether the full biclique-free edge bound is at most n**(2-1/t).

    Equivalent integer form: t * n**(1/t) + ((t-1) * n**t)**(1/t) <= 2*n.
    Decided by bracketing both roots between scaled integer floors and
    refining the scale until the comparison is unambiguous; when both
    roots are exact integers the comparison is exact (this covers the
    equality case t = 2, n = 4).
    """
    if n < 0 or t < 1:
        raise ValueError("need n >= 0 and t >= 1")
    if n == 0:
        return True
    a = n
    b = (t - 1) * n ** t
    scale = 1
    for _ in range(64):
        st = scale ** t
        f1 = nth_root_floor(st * a, t)
        f2 = nth_root_floor(st * b, t)
        rhs = 2 * n * scale
        if t * (f1 + 1) + (f2 + 1) <= rhs:
            return True
        if t * f1 + f2 > rhs:
            return False
        if f1 ** t == st * a and f2 ** t == st * b:
            return t * f1 + f2 <= rhs
        scale *= 16
    raise ArithmeticError(f"root comparison did not converge for n={n}, t={t}")
