"""Fixed points of sigma*n on the maximal torus, in exponent coordinates.

A torus element ``h_{r_1}(z^{x_1}) ... h_{r_l}(z^{x_l})`` is stored as the
exponent vector ``x`` modulo ``M = p^K - 1`` for a generator ``z`` of
F_{p^K}^*.  The Frobenius twist acts by an integer matrix E and n acts by
the coroot action of its Weyl image, so sigma*n acts by ``A = C(w) E`` and
the fixed subgroup is the kernel of ``A - I``, which is isomorphic to the
cokernel of ``A - I`` on Z^l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .chevtits import TitsElement
from .rootsys import build_root_system
from .weyl import WeylTwist, coroot_action

__all__ = [
    "FrobConfig",
    "TorusVector",
    "TorusStructure",
    "smith_normal_form",
    "sigma_n_matrix",
    "fixed_structure",
    "choose_modulus",
    "is_fixed_point",
    "mult_order",
    "prime_of",
]


def prime_of(q: int) -> int:
    """p for q = p^e; raises for non prime powers."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r = q
    while r % p == 0:
        r //= p
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p


def _matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _identity(l):
    return tuple(tuple(int(i == j) for j in range(l)) for i in range(l))


@dataclass(frozen=True)
class FrobConfig:
    """Frobenius data: ``split`` (q), ``triality`` (q, D4) or ``ree`` (m, G2)."""

    kind: str
    type_label: str
    q: int
    m: int | None = None

    @classmethod
    def split(cls, q: int, type_label: str = "G2") -> "FrobConfig":
        prime_of(q)
        return cls("split", type_label, q)

    @classmethod
    def triality(cls, q: int) -> "FrobConfig":
        prime_of(q)
        return cls("triality", "D4", q)

    @classmethod
    def ree(cls, m: int) -> "FrobConfig":
        if m < 0:
            raise ValueError("m must be non-negative")
        return cls("ree", "G2", 3 ** (2 * m + 1), m)

    @classmethod
    def for_family(cls, family: str, q: int) -> "FrobConfig":
        if family == "G2":
            return cls.split(q, "G2")
        if family == "3D4":
            return cls.triality(q)
        if family == "2G2":
            e = 0
            while 3 ** e < q:
                e += 1
            if 3 ** e != q or e % 2 == 0:
                raise ValueError(f"2G2 needs q = 3^(2m+1), got {q}")
            return cls.ree((e - 1) // 2)
        if family == "D4":
            return cls.split(q, "D4")
        raise ValueError(f"unknown family {family!r}")

    @property
    def p(self) -> int:
        return prime_of(self.q)

    @property
    def sys(self):
        return build_root_system(self.type_label)

    @property
    def rank(self) -> int:
        return self.sys.rank

    @property
    def twist(self) -> WeylTwist:
        kind = {"split": "identity", "triality": "triality", "ree": "ree"}[self.kind]
        return WeylTwist(kind, self.sys)

    @property
    def exponent_matrix(self) -> tuple[tuple[int, ...], ...]:
        l = self.rank
        if self.kind == "split":
            return tuple(tuple(self.q * int(i == j) for j in range(l)) for i in range(l))
        if self.kind == "triality":
            rho = self.sys.symmetry
            # h_{r_i}(t) -> h_{r_rho(i)}(t^q): column i has q in row rho(i)
            return tuple(
                tuple(self.q * int(rho[j + 1] == i + 1) for j in range(l)) for i in range(l)
            )
        # h_{r_1}(t1) h_{r_2}(t2) -> h_{r_1}(t2^{3^m}) h_{r_2}(t1^{3^{m+1}})
        m = self.m
        return ((0, 3 ** m), (3 ** (m + 1), 0))

    def describe(self) -> str:
        if self.kind == "ree":
            return f"ree(m={self.m}, q={self.q})"
        return f"{self.kind}(q={self.q})"


@dataclass(frozen=True)
class TorusVector:
    exps: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(x % self.modulus for x in self.exps))

    def __add__(self, other: "TorusVector") -> "TorusVector":
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return TorusVector(tuple(a + b for a, b in zip(self.exps, other.exps)), self.modulus)

    def __neg__(self) -> "TorusVector":
        return TorusVector(tuple(-a for a in self.exps), self.modulus)

    def scale(self, k: int) -> "TorusVector":
        return TorusVector(tuple(k * a for a in self.exps), self.modulus)

    def apply(self, A) -> "TorusVector":
        l = len(self.exps)
        return TorusVector(
            tuple(sum(A[i][j] * self.exps[j] for j in range(l)) for i in range(l)), self.modulus
        )

    def is_zero(self) -> bool:
        return not any(self.exps)


@dataclass(frozen=True)
class TorusStructure:
    invariant_factors: tuple[int, ...]
    order: int = field(default=0)

    def __post_init__(self):
        prod = 1
        for d in self.invariant_factors:
            prod *= d
        if self.order and self.order != prod:
            raise ValueError("order does not match invariant factors")
        object.__setattr__(self, "order", prod)
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    def to_json(self, **meta) -> str:
        data = dict(meta)
        data["invariant_factors"] = list(self.invariant_factors)
        data["order"] = self.order
        return json.dumps(data, sort_keys=True)


def smith_normal_form(A) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (non-negative).

    Pivot: least nonzero absolute value in the remaining block, ties by
    least (row, column).
    """
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            entries = [
                (abs(M[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if M[i][j]
            ]
            if not entries:
                return diag + [0] * (min(rows, cols) - t)
            _, pi, pj = min(entries)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    k = M[i][t] // p
                    M[i] = [a - k * b for a, b in zip(M[i], M[t])]
                    dirty |= M[i][t] != 0
            for j in range(t + 1, cols):
                if M[t][j]:
                    k = M[t][j] // p
                    for row in M:
                        row[j] -= k * row[t]
                    dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
        diag.append(abs(M[t][t]))
    return diag


def _det(A) -> int:
    """Bareiss fraction-free determinant."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def sigma_n_matrix(config: FrobConfig, n) -> tuple[tuple[int, ...], ...]:
    """Exponent action of sigma followed by conjugation with n (x -> n x^sigma n^-1)."""
    w = n.w if isinstance(n, TitsElement) else n
    if len(w.perm) != 2 * config.sys.npos:
        raise ValueError("dimension mismatch between config and n")
    return _matmul(coroot_action(w, config.sys), config.exponent_matrix)


def fixed_structure(A) -> TorusStructure:
    """Invariant factors of the fixed group of A (the cokernel of A - I)."""
    l = len(A)
    B = [[A[i][j] - int(i == j) for j in range(l)] for i in range(l)]
    det = abs(_det(B))
    if det == 0:
        raise ValueError("A - I is singular")
    diag = smith_normal_form(B)
    factors = tuple(d for d in diag if d != 1)
    out = TorusStructure(factors)
    if out.order != det:
        raise AssertionError("Smith form disagrees with determinant")
    return out


def mult_order(a: int, n: int) -> int:
    """Multiplicative order of a modulo n (n >= 1, gcd(a, n) = 1)."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def choose_modulus(A, p: int, extra: int = 1) -> int:
    """M = p^K - 1 with K minimal such that the fixed group (and ``extra``) embeds."""
    exp = fixed_structure(A).invariant_factors
    d = exp[-1] if exp else 1
    d = d * extra // gcd(d, extra)
    if d % 2 and p != 2:
        d *= 2  # keep -1 representable
    return p ** mult_order(p, d) - 1


def is_fixed_point(v: TorusVector, A, modulus: int | None = None) -> bool:
    if modulus is not None and modulus != v.modulus:
        raise ValueError("modulus mismatch")
    return v.apply(A) == v


def torus_order_formulas(family: str) -> dict:
    """Order polynomials of the torus classes, keyed by class id."""
    if family == "G2":
        return {
            1: lambda q: (q - 1) ** 2,
            2: lambda q: q * q - 1,
            3: lambda q: q * q - 1,
            4: lambda q: (q + 1) ** 2,
            5: lambda q: q * q + q + 1,
            6: lambda q: q * q - q + 1,
        }
    if family == "2G2":
        def s(q):
            e = 0
            while 3 ** e < 3 * q:
                e += 1
            return 3 ** (e // 2)
        return {
            1: lambda q: q - 1,
            2: lambda q: q - s(q) + 1,
            3: lambda q: q + 1,
            4: lambda q: q + s(q) + 1,
        }
    if family == "3D4":
        return {
            1: lambda q: (q ** 3 - 1) * (q - 1),
            2: lambda q: (q ** 3 - 1) * (q + 1),
            3: lambda q: (q ** 3 + 1) * (q - 1),
            4: lambda q: (q * q + q + 1) ** 2,
            5: lambda q: (q * q - q + 1) ** 2,
            6: lambda q: q ** 4 - q * q + 1,
            7: lambda q: (q ** 3 + 1) * (q + 1),
        }
    raise ValueError(f"no order table for {family!r}")


def is_prime_power(q: int) -> bool:
    try:
        prime_of(q)
    except ValueError:
        return False
    return True


__all__ += ["torus_order_formulas", "is_prime_power"]
