"""Quadratic spaces over GF(q), q odd: reflections and spinor norms.

A form is given by a symmetric Gram matrix G with ``Q(x) = x^T G x`` and
``beta(x, y) = x^T G y``.  Matrices are lists of rows of field elements and
act on column vectors.
"""

from __future__ import annotations

from .fields import GF

__all__ = [
    "mat_mul",
    "mat_vec",
    "mat_identity",
    "mat_det",
    "is_orthogonal",
    "quad",
    "bilinear",
    "reflection_matrix",
    "orthogonal_basis",
    "reflection_factorization",
    "spinor_norm_matrix",
]


def mat_identity(F: GF, n: int):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_mul(F: GF, A, B):
    n, m, r = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = F.zero
            for k in range(m):
                a = A[i][k]
                if a != F.zero:
                    b = B[k][j]
                    if b != F.zero:
                        acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(F: GF, A, v):
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if a != F.zero and x != F.zero:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_det(F: GF, A):
    M = [list(r) for r in A]
    n = len(M)
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c] != F.zero:
                f = F.mul(M[r][c], inv)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def bilinear(F: GF, G, x, y):
    return _dot(F, x, mat_vec(F, G, y))


def quad(F: GF, G, x):
    return bilinear(F, G, x, x)


def _dot(F, x, y):
    acc = F.zero
    for a, b in zip(x, y):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def is_orthogonal(F: GF, g, G) -> bool:
    return mat_mul(F, mat_mul(F, mat_transpose(g), G), g) == [list(r) for r in G]


def reflection_matrix(F: GF, G, v):
    """r_v(x) = x - 2 beta(x, v) / Q(v) v."""
    qv = quad(F, G, v)
    if qv == F.zero:
        raise ValueError("reflection in an isotropic vector")
    c = F.mul(F(2), F.inv(qv))
    Gv = mat_vec(F, G, v)  # beta(x, v) = x . Gv
    n = len(v)
    return [[F.sub(F.one if i == j else F.zero, F.mul(c, F.mul(v[i], Gv[j])))
             for j in range(n)] for i in range(n)]


def _apply_reflection(F, G, v, qv, x):
    c = F.mul(F.mul(F(2), bilinear(F, G, x, v)), F.inv(qv))
    return [F.sub(a, F.mul(c, b)) for a, b in zip(x, v)]


def orthogonal_basis(F: GF, G, order=None):
    """A basis b_1..b_n with beta(b_i, b_j) = 0 (i != j) and Q(b_i) != 0."""
    n = len(G)
    idx = list(order) if order is not None else list(range(n))
    rest = [[F.one if i == j else F.zero for i in range(n)] for j in idx]
    out = []
    while rest:
        pick = next((k for k, u in enumerate(rest) if quad(F, G, u) != F.zero), None)
        if pick is None:
            pair = next(((a, b) for a in range(len(rest)) for b in range(a + 1, len(rest))
                         if bilinear(F, G, rest[a], rest[b]) != F.zero), None)
            if pair is None:
                raise ValueError("degenerate quadratic form")
            a, b = pair
            rest[a] = [F.add(x, y) for x, y in zip(rest[a], rest[b])]
            pick = a
        v = rest.pop(pick)
        qv = quad(F, G, v)
        out.append(v)
        inv = F.inv(qv)
        rest = [[F.sub(x, F.mul(F.mul(bilinear(F, G, u, v), inv), y)) for x, y in zip(u, v)]
                for u in rest]
    return out


def reflection_factorization(F: GF, g, G, strategy: str = "forward"):
    """Vectors v_1..v_r with g = r_{v_1} ... r_{v_r}.

    ``forward`` walks an orthogonal basis in index order and reflects in
    ``h b - b`` when that is anisotropic; ``reverse`` walks the basis built
    from the reversed coordinate order and prefers the two reflections in
    ``h b + b`` and ``b``.  Both are sequential vector corrections.
    """
    if F.p == 2:
        raise ValueError("spinor norms need odd characteristic")
    if not is_orthogonal(F, g, G):
        raise ValueError("matrix does not preserve the form")
    n = len(G)
    order = range(n) if strategy == "forward" else range(n - 1, -1, -1)
    basis = orthogonal_basis(F, G, order)
    h = [list(r) for r in g]
    used = []  # reflections applied on the left: r_k ... r_1 g = 1
    for b in basis:
        hb = mat_vec(F, h, b)
        if hb == b:
            continue
        minus = [F.sub(x, y) for x, y in zip(hb, b)]
        plus = [F.add(x, y) for x, y in zip(hb, b)]
        q_minus = quad(F, G, minus)
        q_plus = quad(F, G, plus)
        if strategy == "forward":
            one_step = q_minus != F.zero
        else:
            one_step = q_plus == F.zero
        if one_step:
            steps = [minus]
        else:
            steps = [plus, b]  # r_plus(hb) = -b, r_b(-b) = b
        for v in steps:
            R = reflection_matrix(F, G, v)
            h = mat_mul(F, R, h)
            used.append(v)
    if h != mat_identity(F, n):
        raise AssertionError("reflection factorization did not terminate at 1")
    # r_k ... r_1 g = 1  =>  g = r_1 ... r_k
    return used


def spinor_norm_matrix(F: GF, g, G, strategy: str = "forward") -> bool:
    """True when the spinor norm of g is a square."""
    value = F.one
    for v in reflection_factorization(F, g, G, strategy):
        value = F.mul(value, quad(F, G, v))
    return F.is_square(value)
