"""Root systems of types G2 and D4 with a fixed root numbering.

Roots are addressed by signed 1-based indices: ``i`` is the i-th positive
root of the numbering below and ``-i`` its negative.  Internally every root
also has a *position* in ``range(2 * npos)`` (positives first), which is what
Weyl-group permutations act on.

G2 (r1 short, r2 long)::

    r3 = r1 + r2, r4 = 2r1 + r2, r5 = 3r1 + r2, r6 = 3r1 + 2r2

D4 (r2 the branch node)::

    r5 = r1 + r2, r6 = r2 + r3, r7 = r2 + r4, r8 = r1 + r2 + r3,
    r9 = r1 + r2 + r4, r10 = r2 + r3 + r4, r11 = r1 + r2 + r3 + r4,
    r12 = r1 + 2r2 + r3 + r4
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Root",
    "RootSystem",
    "build_root_system",
    "reflect",
    "coroot_coeffs",
    "apply_symmetry",
]

_POSITIVE = {
    "G2": [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
    "D4": [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1),
        (1, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1),
        (1, 1, 1, 1), (1, 2, 1, 1),
    ],
}

# Gram matrices (r_i, r_j) of the simple roots; G2 short roots have (r, r) = 2.
_GRAM = {
    "G2": ((2, -3), (-3, 6)),
    "D4": (
        (2, -1, 0, 0),
        (-1, 2, -1, -1),
        (0, -1, 2, 0),
        (0, -1, 0, 2),
    ),
}

# Diagram symmetry on simple-root indices (1-based).  For G2 this is the
# long/short exchange used by the Ree twist, for D4 the triality.
_SIMPLE_SYMMETRY = {
    "G2": {1: 2, 2: 1},
    "D4": {1: 3, 2: 2, 3: 4, 4: 1},
}


@dataclass(frozen=True)
class Root:
    index: int
    coeffs: tuple[int, ...]
    length_class: str  # "long" or "short"

    def __neg__(self) -> "Root":
        return Root(-self.index, tuple(-c for c in self.coeffs), self.length_class)


class RootSystem:
    """A closed root system with the numbering fixed above.

    Immutable after construction.  ``roots`` lists the positive roots in
    numbering order followed by their negatives in the same order.
    """

    def __init__(self, type_label: str):
        if type_label not in _POSITIVE:
            raise ValueError(f"unsupported root system type {type_label!r}")
        self.type_label = type_label
        self.gram = _GRAM[type_label]
        self.rank = len(self.gram)
        l = self.rank
        self.cartan = tuple(
            tuple(2 * self.gram[i][j] // self.gram[j][j] for j in range(l))
            for i in range(l)
        )
        pos = [tuple(c) for c in _POSITIVE[type_label]]
        self.npos = len(pos)
        norms = [self._norm(c) for c in pos]
        long_norm = max(norms)
        roots = []
        for i, (c, nrm) in enumerate(zip(pos, norms), start=1):
            roots.append(Root(i, c, "long" if nrm == long_norm else "short"))
        roots += [-r for r in roots]
        self.roots: tuple[Root, ...] = tuple(roots)
        self._by_coeffs = {r.coeffs: r.index for r in self.roots}
        self.symmetry = dict(_SIMPLE_SYMMETRY[type_label])
        self._check_closed()

    # -- indexing -----------------------------------------------------------
    def position(self, index: int) -> int:
        if index > 0:
            return index - 1
        return self.npos - index - 1

    def index_at(self, position: int) -> int:
        if position < self.npos:
            return position + 1
        return -(position - self.npos + 1)

    def root(self, index: int) -> Root:
        if index == 0 or abs(index) > self.npos:
            raise KeyError(f"no root with index {index} in {self.type_label}")
        return self.roots[self.position(index)]

    def index_of(self, coeffs) -> int:
        return self._by_coeffs[tuple(coeffs)]

    def is_root(self, coeffs) -> bool:
        return tuple(coeffs) in self._by_coeffs

    def simple_indices(self) -> range:
        return range(1, self.rank + 1)

    def positive_indices(self) -> range:
        return range(1, self.npos + 1)

    def all_indices(self) -> list[int]:
        return [r.index for r in self.roots]

    def height(self, index: int) -> int:
        return sum(self.root(index).coeffs)

    # -- bilinear form ------------------------------------------------------
    def inner(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def _norm(self, c) -> int:
        return self.inner(c, c)

    def norm(self, index: int) -> int:
        c = self.root(index).coeffs
        return self.inner(c, c)

    def pairing(self, r: int, s: int) -> int:
        """Cartan integer <r, s^vee> = 2 (r, s) / (s, s)."""
        a, b = self.root(r).coeffs, self.root(s).coeffs
        num = 2 * self.inner(a, b)
        den = self.inner(b, b)
        if num % den:
            raise ArithmeticError("non-integral Cartan integer")
        return num // den

    def _check_closed(self):
        for s in self.roots:
            for r in self.roots:
                image = self._reflect_coeffs(s.index, r.index)
                if image not in self._by_coeffs:
                    raise AssertionError(f"root system not closed: w_{s.index}(r_{r.index})")
        if len(self.roots) != {"G2": 12, "D4": 24}[self.type_label]:
            raise AssertionError("wrong number of roots")

    def _reflect_coeffs(self, s: int, r: int) -> tuple[int, ...]:
        k = self.pairing(r, s)
        sc, rc = self.root(s).coeffs, self.root(r).coeffs
        return tuple(x - k * y for x, y in zip(rc, sc))

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label!r})"


@lru_cache(maxsize=None)
def build_root_system(type_label: str) -> RootSystem:
    """Return the (shared, immutable) root system of the given type."""
    return RootSystem(type_label)


def _idx(r) -> int:
    return r.index if isinstance(r, Root) else int(r)


def reflect(sys: RootSystem, s, r) -> Root:
    """w_s(r) = r - <r, s^vee> s."""
    return sys.root(sys.index_of(sys._reflect_coeffs(_idx(s), _idx(r))))


def coroot_coeffs(sys: RootSystem, r) -> tuple[int, ...]:
    """Coefficients c with r^vee = sum_i c_i r_i^vee."""
    root = sys.root(_idx(r))
    nr = sys.inner(root.coeffs, root.coeffs)
    out = []
    for i, a in enumerate(root.coeffs):
        c = Fraction(a * sys.gram[i][i], nr)
        if c.denominator != 1:
            raise ArithmeticError("non-integral coroot coefficient")
        out.append(int(c))
    return tuple(out)


def apply_symmetry(sys: RootSystem, r) -> Root:
    """Image of a root under the diagram symmetry.

    The simple-root permutation is extended through coroot coordinates,
    r^vee = sum c_i r_i^vee  |->  sum c_i r_{rho(i)}.  For the simply laced D4
    this is the linear extension; for G2 it is the long/short exchange.
    """
    if not sys.symmetry:
        raise ValueError(f"no diagram symmetry defined for {sys.type_label}")
    c = coroot_coeffs(sys, r)
    image = [0] * sys.rank
    for i, ci in enumerate(c, start=1):
        image[sys.symmetry[i] - 1] += ci
    return sys.root(sys.index_of(image))
