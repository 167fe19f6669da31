"""Integer lattices: Hermite-style echelon forms, kernels, cokernel oracles.

Everything is exact Python integer arithmetic.  The cokernel oracle here is
deliberately independent of the Smith form code in ``torus``: it walks the
Hermite box of the column lattice and reads element orders off the adjugate.
"""

from __future__ import annotations

from .fields import factorize

__all__ = [
    "echelon",
    "hnf_basis",
    "integer_kernel",
    "adjugate",
    "hermite_box",
    "coker_order_counts",
    "invariants_from_order_counts",
    "coker_invariants",
]


def echelon(rows, pivot_cols: int | None = None):
    """Row echelon form by unimodular row operations.

    Only the first ``pivot_cols`` columns are used for pivots.  Returns
    (rows, rank) where the first ``rank`` rows carry the pivots and the
    remaining rows vanish on the pivot columns.
    """
    R = [list(map(int, r)) for r in rows]
    if not R:
        return R, 0
    ncols = len(R[0]) if pivot_cols is None else pivot_cols
    top = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(top, len(R)) if R[i][c]]
            if not live:
                break
            piv = min(live, key=lambda i: (abs(R[i][c]), i))
            R[top], R[piv] = R[piv], R[top]
            if R[top][c] < 0:
                R[top] = [-x for x in R[top]]
            p = R[top][c]
            done = True
            for i in range(top + 1, len(R)):
                if R[i][c]:
                    k = R[i][c] // p
                    R[i] = [x - k * y for x, y in zip(R[i], R[top])]
                    if R[i][c]:
                        done = False
            if done:
                break
        if any(R[i][c] for i in range(top, len(R))):
            for i in range(top):
                k = R[i][c] // R[top][c]
                if k:
                    R[i] = [x - k * y for x, y in zip(R[i], R[top])]
            top += 1
    return R, top


def hnf_basis(vectors, dim: int):
    """Basis (as rows, upper triangular) of the lattice spanned by ``vectors``."""
    R, rank = echelon(vectors)
    basis = R[:rank]
    if rank != dim:
        raise ValueError("vectors do not span a full-rank lattice")
    return basis


def integer_kernel(M):
    """Basis of {y in Z^n : M y = 0} for an m x n integer matrix (rows)."""
    m = len(M)
    n = len(M[0]) if m else 0
    # rows of [M^T | I]; row operations are unimodular
    aug = [[M[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    R, rank = echelon(aug, pivot_cols=m)
    return [row[m:] for row in R[rank:]]


def _det(M) -> int:
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def adjugate(B):
    """adj(B) with B adj(B) = det(B) I, by cofactors."""
    n = len(B)
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[B[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            out[j][i] = (-1) ** (i + j) * _det(minor)
    return out


def hermite_box(B):
    """Diagonal of an echelon basis of the column lattice of B (square, det != 0)."""
    cols = [[B[i][j] for i in range(len(B))] for j in range(len(B))]
    basis = hnf_basis(cols, len(B))
    return [basis[i][i] for i in range(len(B))]


def coker_order_counts(B, kernel=None) -> dict[int, int]:
    """Histogram {order: count} of the elements of Z^l / B Z^l."""
    from . import kernels

    l = len(B)
    d = abs(_det(B))
    if d == 0:
        raise ValueError("singular matrix")
    adj = adjugate(B)
    adj = [[x % d for x in row] for row in adj]
    box = hermite_box(B)
    fn = kernel or kernels.coset_order_counts
    return fn(adj, d, box)


def invariants_from_order_counts(counts: dict[int, int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its order statistics."""
    total = sum(counts.values())
    if total == 1:
        return ()
    per_prime = {}
    for p in factorize(total):
        def below(j):
            # elements whose order has p-part dividing p^j
            return sum(c for o, c in counts.items() if _vp(o, p) <= j)

        base = below(0)
        logs = [0]
        j = 1
        while True:
            cnt = below(j)
            ratio = cnt // base
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            logs.append(e)
            if cnt == total:
                break
            j += 1
        # number of cyclic p-factors of exponent >= j is logs[j] - logs[j-1]
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        exps = []
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            exps += [j] * (cnt - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for k in range(width):
        f = 1
        for p, exps in per_prime.items():
            if k < len(exps):
                f *= p ** exps[k]
        factors.append(f)
    return tuple(sorted(factors))


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def coker_invariants(B, kernel=None) -> tuple[int, ...]:
    return invariants_from_order_counts(coker_order_counts(B, kernel))
