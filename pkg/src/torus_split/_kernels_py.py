"""Pure-Python versions of the enumeration kernels."""

from __future__ import annotations

from math import gcd

__all__ = ["coset_order_counts", "count_cycle_fixed"]


def coset_order_counts(adj, d: int, box) -> dict[int, int]:
    """Histogram of orders over the box of coset representatives.

    The order of x in Z^l / B Z^l is d / gcd(d, adj(B) x).
    """
    l = len(box)
    counts: dict[int, int] = {}
    x = [0] * l
    while True:
        g = d
        for i in range(l):
            s = 0
            row = adj[i]
            for j in range(l):
                s += row[j] * x[j]
            g = gcd(g, s)
        o = d // g
        counts[o] = counts.get(o, 0) + 1
        i = 0
        while i < l:
            x[i] += 1
            if x[i] < box[i]:
                break
            x[i] = 0
            i += 1
        if i == l:
            break
    return counts


def count_cycle_fixed(M: int, q: int, signs) -> int:
    """Number of x in Z/M returning to itself after the signed Frobenius walk."""
    count = 0
    for x in range(M):
        y = x
        for s in signs:
            y = (s * q * y) % M
        if y == x:
            count += 1
    return count
