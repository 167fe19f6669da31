"""Weyl groups as signed permutations of the root list, and twisted classes.

An element acts on roots; ``(a * b)(r) = a(b(r))``.  Twisted conjugacy is
``x ~ y^-1 x y^sigma`` and the twisted centralizer of ``w`` is
``{x : x^-1 w x^sigma = w}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .rootsys import RootSystem, apply_symmetry, build_root_system, coroot_coeffs, reflect

__all__ = [
    "WeylElement",
    "WeylGroup",
    "WeylTwist",
    "enumerate_weyl",
    "weyl_group",
    "sigma_classes",
    "centralizer_sigma",
    "coroot_action",
]


@dataclass(frozen=True, order=True)
class WeylElement:
    perm: tuple[int, ...]  # perm[p] = position of the image of the root at position p

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a = self.perm
        return WeylElement(tuple(a[x] for x in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, x in enumerate(self.perm):
            inv[x] = i
        return WeylElement(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.perm))

    def __pow__(self, k: int) -> "WeylElement":
        base = self if k >= 0 else self.inverse()
        out = WeylElement(tuple(range(len(self.perm))))
        for _ in range(abs(k)):
            out = out * base
        return out


class WeylGroup:
    """Full element list of W with reduced words and lengths."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        n = 2 * sys.npos
        self.identity = WeylElement(tuple(range(n)))
        self.simple = {i: self._reflection_perm(i) for i in sys.simple_indices()}
        # BFS by right multiplication gives a shortest (reduced) word per element.
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for i, s in self.simple.items():
                y = x * s
                if y not in words:
                    words[y] = words[x] + (i,)
                    queue.append(y)
        self.elements: list[WeylElement] = sorted(words)
        self._words = words
        self._index = {w: k for k, w in enumerate(self.elements)}

    def _reflection_perm(self, root_index: int) -> WeylElement:
        sys = self.sys
        perm = [0] * (2 * sys.npos)
        for r in sys.roots:
            perm[sys.position(r.index)] = sys.position(reflect(sys, root_index, r.index).index)
        return WeylElement(tuple(perm))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w) -> bool:
        return w in self._index

    def index(self, w: WeylElement) -> int:
        return self._index[w]

    def reflection(self, root_index: int) -> WeylElement:
        """w_r for any root index r (w_{-r} = w_r)."""
        return self._reflection_perm(abs(root_index))

    def word(self, w: WeylElement) -> tuple[int, ...]:
        return self._words[w]

    def length(self, w: WeylElement) -> int:
        return len(self._words[w])

    def from_word(self, word) -> WeylElement:
        """Product of reflections w_{r_i} for the listed root indices (any roots)."""
        out = self.identity
        for i in word:
            out = out * self.reflection(i)
        return out

    def act(self, w: WeylElement, root_index: int) -> int:
        sys = self.sys
        return sys.index_at(w.perm[sys.position(root_index)])

    def longest(self) -> WeylElement:
        return max(self.elements, key=self.length)

    def center(self) -> list[WeylElement]:
        return [z for z in self.elements if all(z * g == g * z for g in self.simple.values())]


@lru_cache(maxsize=None)
def weyl_group(type_label: str) -> WeylGroup:
    return WeylGroup(build_root_system(type_label))


def enumerate_weyl(sys: RootSystem) -> list[WeylElement]:
    return list(weyl_group(sys.type_label).elements)


class WeylTwist:
    """Action of a Frobenius-type endomorphism on W.

    ``identity`` fixes everything; ``triality`` (D4) and ``ree`` (G2)
    conjugate by the diagram symmetry acting on root positions, so that
    ``w_r`` is sent to ``w_{rho(r)}``.
    """

    def __init__(self, kind: str, sys: RootSystem):
        if kind not in ("identity", "triality", "ree"):
            raise ValueError(f"unknown twist {kind!r}")
        if kind == "triality" and sys.type_label != "D4":
            raise ValueError("triality twist needs D4")
        if kind == "ree" and sys.type_label != "G2":
            raise ValueError("Ree twist needs G2")
        self.kind = kind
        self.sys = sys
        if kind == "identity":
            self._rho = None
        else:
            rho = [0] * (2 * sys.npos)
            for r in sys.roots:
                rho[sys.position(r.index)] = sys.position(apply_symmetry(sys, r).index)
            self._rho = WeylElement(tuple(rho))
            self._rho_inv = self._rho.inverse()

    def __call__(self, w: WeylElement) -> WeylElement:
        if self._rho is None:
            return w
        return self._rho * w * self._rho_inv

    def simple_map(self, i: int) -> int:
        return i if self._rho is None else self.sys.symmetry[i]

    def __repr__(self) -> str:
        return f"WeylTwist({self.kind!r}, {self.sys.type_label})"


def sigma_classes(W: WeylGroup, twist: WeylTwist) -> list[list[WeylElement]]:
    """Partition of W into twisted conjugacy classes.

    Classes are returned sorted, each with its least element first, and
    ordered by that representative.
    """
    seen = set()
    classes = []
    for w in W.elements:
        if w in seen:
            continue
        orbit = {y.inverse() * w * twist(y) for y in W.elements}
        seen |= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda c: c[0])
    return classes


def centralizer_sigma(W: WeylGroup, twist: WeylTwist, w: WeylElement) -> list[WeylElement]:
    """{x in W : x^-1 w x^sigma = w}."""
    cent = [x for x in W.elements if x.inverse() * w * twist(x) == w]
    members = set(cent)
    for a in cent:
        for b in cent:
            if a * b not in members:
                raise AssertionError("twisted centralizer not closed")
    return cent


def coroot_action(w: WeylElement, sys: RootSystem | None = None) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of w on the coroot lattice in the simple-coroot basis.

    Column i holds the coroot coefficients of w(r_i).
    """
    if sys is None:
        sys = _infer_system(w)
    cols = []
    for i in sys.simple_indices():
        image = sys.index_at(w.perm[sys.position(i)])
        cols.append(coroot_coeffs(sys, image))
    l = sys.rank
    return tuple(tuple(cols[j][i] for j in range(l)) for i in range(l))


def _infer_system(w: WeylElement) -> RootSystem:
    return build_root_system({12: "G2", 24: "D4"}[len(w.perm)])
