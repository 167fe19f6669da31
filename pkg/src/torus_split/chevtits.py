"""Chevalley structure constants, the sign table eta, and the Tits group.

The Tits group is generated by the canonical lifts ``n_r = n_r(1)`` of the
simple reflections.  Its elements are kept in the normal form ``h * n_w``
where ``h`` is a vector over F_2 in the basis ``h_1, ..., h_l``
(``h_i = h_{r_i}(-1)``) and ``n_w`` is the product of simple lifts along a
reduced word of ``w``.  Products only need ``n_s^2 = h_s`` and the
conjugation action on h, which is the coroot action reduced mod 2.

The lifts ``n_r`` of non-simple roots depend on the signs of the Chevalley
basis.  They are obtained from the table eta with
``n_s n_r n_s^-1 = n_{w_s(r)}(eta_{s,r})`` which is read off exact integer
matrices in the adjoint representation.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .rootsys import RootSystem, build_root_system, coroot_coeffs
from .weyl import WeylElement, WeylGroup, coroot_action, weyl_group

__all__ = [
    "StructureConstants",
    "TitsElement",
    "TitsGroup",
    "compute_structure_constants",
    "tits_group",
    "tits_mult",
    "closure",
    "pi",
    "ClosureCapExceeded",
    "DEFAULT_SIGNS",
]

DEFAULT_CAP = 10**6


class ClosureCapExceeded(RuntimeError):
    pass


def closure_cap() -> int:
    return int(os.environ.get("TORUS_SPLIT_CAP", DEFAULT_CAP))


# ---------------------------------------------------------------------------
# structure constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureConstants:
    sys: RootSystem
    N: dict  # (r, s) -> N_{r,s}, only for r + s a root
    eta: dict  # (s, r) -> +-1, s simple, r any root
    extraspecial: dict  # xi -> (r, s, sign)

    def n(self, r: int, s: int) -> int:
        return self.N.get((r, s), 0)

    def dump(self) -> str:
        """Deterministic text form, one line per entry."""
        lines = [f"# structure constants {self.sys.type_label}"]
        for (r, s), v in sorted(self.N.items()):
            lines.append(f"N {r} {s} {v}")
        for (s, r), v in sorted(self.eta.items()):
            lines.append(f"eta {s} {r} {v}")
        return "\n".join(lines) + "\n"


def _add(sys, a, b):
    c = tuple(x + y for x, y in zip(sys.root(a).coeffs, sys.root(b).coeffs))
    return sys.index_of(c) if sys.is_root(c) else None


def _extraspecial_pairs(sys: RootSystem) -> dict:
    """xi -> (r, s): r the first positive root (numbering order) with xi - r positive."""
    pairs = {}
    for xi in sys.positive_indices():
        for r in sys.positive_indices():
            if r == xi:
                continue
            d = tuple(x - y for x, y in zip(sys.root(xi).coeffs, sys.root(r).coeffs))
            if sys.is_root(d) and sys.index_of(d) > 0:
                pairs[xi] = (r, sys.index_of(d))
                break
    return pairs


def _chevalley_N(sys: RootSystem, signs: dict | None = None):
    """All N_{r,s} from signs on extraspecial pairs (default +1)."""
    signs = signs or {}
    extra = _extraspecial_pairs(sys)
    table = {}  # positive pairs

    def string_p(r, s):
        # largest p with s - p r a root
        p = 0
        rc, sc = sys.root(r).coeffs, sys.root(s).coeffs
        while sys.is_root(tuple(y - (p + 1) * x for x, y in zip(rc, sc))):
            p += 1
        return p

    def N(a, b):
        if a == -b:
            return 0
        c = _add(sys, a, b)
        if c is None:
            return 0
        if a > 0 and b > 0:
            return table[(a, b)]
        if a < 0 and b < 0:
            return -N(-a, -b)
        if a < 0:
            return -N(b, a)
        # a > 0 > b
        if c > 0:
            v = Fraction(-sys.norm(c), sys.norm(a)) * N(-b, c)
        else:
            v = Fraction(sys.norm(c), sys.norm(b)) * N(-c, a)
        assert v.denominator == 1
        return int(v)

    for xi in sorted(extra, key=lambda x: (sys.height(x), x)):
        r0, s0 = extra[xi]
        sign = signs.get(xi, 1)
        n0 = sign * (string_p(r0, s0) + 1)
        table[(r0, s0)] = n0
        table[(s0, r0)] = -n0
        for r in sys.positive_indices():
            for s in sys.positive_indices():
                if not r < s or (r, s) == (r0, s0) or _add(sys, r, s) != xi:
                    continue
                # four-term relation for r + s + (-r0) + (-s0) = 0
                total = Fraction(0)
                for (a, b, c, d) in ((s, -r0, r, -s0), (-r0, r, s, -s0)):
                    ab = _add(sys, a, b)
                    if ab is not None:
                        total += Fraction(N(a, b) * N(c, d), sys.norm(ab))
                v = total * sys.norm(xi) / n0
                assert v.denominator == 1, (r, s, v)
                table[(r, s)] = int(v)
                table[(s, r)] = -int(v)

    out = {}
    for a in sys.all_indices():
        for b in sys.all_indices():
            v = N(a, b)
            if v:
                out[(a, b)] = v
    return out, {xi: (r, s, signs.get(xi, 1)) for xi, (r, s) in extra.items()}


# ---------------------------------------------------------------------------
# adjoint representation
# ---------------------------------------------------------------------------

class AdjointRep:
    """Integral adjoint representation on the Chevalley basis.

    Basis order: e_r for roots by position, then h_1 .. h_l.
    """

    def __init__(self, sys: RootSystem, N: dict):
        self.sys = sys
        self.N = N
        self.dim = 2 * sys.npos + sys.rank
        self._ad = {}
        for a in sys.all_indices():
            self._ad[a] = self._ad_e(a)
        self._x_cache = {}

    def _ad_e(self, a):
        sys = self.sys
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        base = 2 * sys.npos
        for b in sys.all_indices():
            col = sys.position(b)
            if b == -a:
                for i, c in enumerate(coroot_coeffs(sys, a)):
                    M[base + i, col] = c
            else:
                c = _add(sys, a, b)
                if c is not None:
                    M[sys.position(c), col] = self.N[(a, b)]
        for i in range(sys.rank):
            M[sys.position(a), base + i] = -sys.pairing(a, i + 1)
        return M

    def ad_h(self, i):
        sys = self.sys
        d = [sys.pairing(b, i) for b in sys.all_indices()] + [0] * sys.rank
        return np.diag(np.array(d, dtype=np.int64))

    def ad_basis(self):
        sys = self.sys
        mats = [self._ad[sys.index_at(p)] for p in range(2 * sys.npos)]
        mats += [self.ad_h(i) for i in sys.simple_indices()]
        return mats

    def jacobi_holds(self) -> bool:
        """ad is a Lie homomorphism: ad([x, y]) = [ad x, ad y] on basis pairs."""
        mats = self.ad_basis()
        for j, y in enumerate(mats):
            for i, x in enumerate(mats):
                # [x, y] as a vector is ad(x) applied to basis vector j
                vec = x[:, j]
                lhs = sum(int(c) * mats[k] for k, c in enumerate(vec) if c)
                if isinstance(lhs, int):
                    lhs = np.zeros_like(x)
                if not np.array_equal(lhs, x @ y - y @ x):
                    return False
        return True

    def x(self, r: int, t: int) -> np.ndarray:
        key = (r, t)
        if key not in self._x_cache:
            A = self._ad[r]
            out = np.eye(self.dim, dtype=np.int64)
            P = np.eye(self.dim, dtype=np.int64)
            for k in range(1, 6):
                P = P @ A
                if not P.any():
                    break
                term = P * (t ** k)
                if (term % factorial(k)).any():
                    raise ArithmeticError("non-integral exponential")
                out = out + term // factorial(k)
            self._x_cache[key] = out
        return self._x_cache[key]

    def n(self, r: int, t: int = 1) -> np.ndarray:
        """n_r(t) = x_r(t) x_{-r}(-t^-1) x_r(t) for t = +-1."""
        return self.x(r, t) @ self.x(-r, -t) @ self.x(r, t)

    def h(self, r: int) -> np.ndarray:
        """h_r(-1): e_b -> (-1)^{<b, r^vee>} e_b."""
        sys = self.sys
        d = [(-1) ** (sys.pairing(b, r) % 2) for b in sys.all_indices()] + [1] * sys.rank
        return np.diag(np.array(d, dtype=np.int64))


def compute_structure_constants(sys: RootSystem, signs: dict | None = None) -> StructureConstants:
    """N table from extraspecial signs and eta read off the adjoint representation."""
    N, extra = _chevalley_N(sys, signs)
    adj = AdjointRep(sys, N)
    W = weyl_group(sys.type_label)
    eta = {}
    for s in sys.simple_indices():
        ns, ns_inv = adj.n(s, 1), adj.n(s, -1)
        for r in sys.all_indices():
            conj = ns @ adj.n(r, 1) @ ns_inv
            target = W.act(W.reflection(s), r)
            if np.array_equal(conj, adj.n(target, 1)):
                eta[(s, r)] = 1
            elif np.array_equal(conj, adj.n(target, -1)):
                eta[(s, r)] = -1
            else:
                raise AssertionError(f"n_{s} n_{r} n_{s}^-1 is not n_{target}(+-1)")
    return StructureConstants(sys, N, eta, extra)


# ---------------------------------------------------------------------------
# Tits group
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TitsElement:
    h: tuple[int, ...]  # bits in the basis h_1 .. h_l
    w: WeylElement

    def __mul__(self, other: "TitsElement") -> "TitsElement":
        return tits_group_for(self).mult(self, other)

    def __pow__(self, k: int) -> "TitsElement":
        return tits_group_for(self).power(self, k)

    def inverse(self) -> "TitsElement":
        return tits_group_for(self).inverse(self)


def tits_group_for(x: TitsElement) -> "TitsGroup":
    return tits_group({2: "G2", 4: "D4"}[len(x.h)])


class TitsGroup:
    """Normal-form arithmetic in the extended Weyl group (odd characteristic)."""

    def __init__(self, sys: RootSystem, constants: StructureConstants | None = None):
        self.sys = sys
        self.W: WeylGroup = weyl_group(sys.type_label)
        self.constants = constants or compute_structure_constants(sys, DEFAULT_SIGNS.get(sys.type_label))
        self.l = sys.rank
        self.one = TitsElement((0,) * self.l, self.W.identity)
        self._mod2 = {}
        self._cocycle = {}
        self._adj = None
        self.roots = self._root_lifts()

    # -- basic pieces -------------------------------------------------------
    def action_mod2(self, w: WeylElement):
        if w not in self._mod2:
            C = coroot_action(w, self.sys)
            self._mod2[w] = tuple(tuple(c % 2 for c in row) for row in C)
        return self._mod2[w]

    def act_h(self, w: WeylElement, h):
        C = self.action_mod2(w)
        return tuple(sum(C[i][j] * h[j] for j in range(self.l)) % 2 for i in range(self.l))

    def cocycle(self, a: WeylElement, b: WeylElement):
        """c with n_a n_b = c n_{ab}."""
        key = (a, b)
        if key not in self._cocycle:
            W, sys = self.W, self.sys
            acc = [0] * self.l
            u = a
            for s in W.word(b):
                us = u * W.simple[s]
                if u.perm[sys.position(s)] >= sys.npos:  # u(r_s) < 0: length drops
                    e = [0] * self.l
                    e[s - 1] = 1
                    acc = [(x + y) % 2 for x, y in zip(acc, self.act_h(us, e))]
                u = us
            self._cocycle[key] = tuple(acc)
        return self._cocycle[key]

    def mult(self, x: TitsElement, y: TitsElement) -> TitsElement:
        yh = self.act_h(x.w, y.h)
        c = self.cocycle(x.w, y.w)
        h = tuple((a + b + d) % 2 for a, b, d in zip(x.h, yh, c))
        return TitsElement(h, x.w * y.w)

    def inverse(self, x: TitsElement) -> TitsElement:
        wi = x.w.inverse()
        c = self.cocycle(x.w, wi)
        h = self.act_h(wi, tuple((a + b) % 2 for a, b in zip(x.h, c)))
        return TitsElement(h, wi)

    def power(self, x: TitsElement, k: int) -> TitsElement:
        base = x if k >= 0 else self.inverse(x)
        out = self.one
        for _ in range(abs(k)):
            out = self.mult(out, base)
        return out

    def prod(self, *xs: TitsElement) -> TitsElement:
        out = self.one
        for x in xs:
            out = self.mult(out, x)
        return out

    # -- named elements -----------------------------------------------------
    def h_elem(self, *indices: int) -> TitsElement:
        """Product of h_{r}(-1) over the given (any) roots."""
        bits = [0] * self.l
        for r in indices:
            for i, c in enumerate(coroot_coeffs(self.sys, r)):
                bits[i] = (bits[i] + c) % 2
        return TitsElement(tuple(bits), self.W.identity)

    def simple_lift(self, i: int) -> TitsElement:
        return TitsElement((0,) * self.l, self.W.simple[i])

    def lift(self, w: WeylElement) -> TitsElement:
        """The canonical lift n_w."""
        return TitsElement((0,) * self.l, w)

    def n(self, r: int) -> TitsElement:
        """n_r = n_r(1) for any root r."""
        return self.roots[r]

    def word(self, *indices: int) -> TitsElement:
        return self.prod(*(self.n(r) for r in indices))

    def _root_lifts(self) -> dict:
        sys, eta = self.sys, self.constants.eta
        lifts = {i: self.simple_lift(i) for i in sys.simple_indices()}
        queue = deque(lifts)
        while queue:
            r = queue.popleft()
            for s in sys.simple_indices():
                t = self.W.act(self.W.simple[s], r)
                if t in lifts:
                    continue
                ns = lifts[s]
                conj = self.prod(ns, lifts[r], self.inverse(ns))
                lifts[t] = conj if eta[(s, r)] == 1 else self.inverse(conj)
                queue.append(t)
        return lifts

    # -- adjoint matrices ---------------------------------------------------
    @property
    def adjoint(self) -> AdjointRep:
        if self._adj is None:
            self._adj = AdjointRep(self.sys, self.constants.N)
        return self._adj

    def matrix(self, x: TitsElement) -> np.ndarray:
        adj = self.adjoint
        M = np.eye(adj.dim, dtype=np.int64)
        for i, bit in enumerate(x.h, start=1):
            if bit:
                M = M @ adj.h(i)
        for s in self.W.word(x.w):
            M = M @ adj.n(s, 1)
        return M

    def elements(self) -> list[TitsElement]:
        out = []
        for w in self.W.elements:
            for bits in range(2 ** self.l):
                out.append(TitsElement(tuple((bits >> i) & 1 for i in range(self.l)), w))
        return out

    def is_central(self, z: TitsElement) -> bool:
        return all(self.mult(z, g) == self.mult(g, z) for g in
                   [self.simple_lift(i) for i in self.sys.simple_indices()])

    def central_lifts(self, w: WeylElement) -> list[TitsElement]:
        out = []
        for bits in range(2 ** self.l):
            z = TitsElement(tuple((bits >> i) & 1 for i in range(self.l)), w)
            if self.is_central(z):
                out.append(z)
        return out


# Extraspecial signs used by default.  For D4 this makes N_{r2, ri} = +1 for
# every outer node, a triality invariant choice, so sigma(n_r) = n_{rho(r)}.
DEFAULT_SIGNS = {"G2": {}, "D4": {5: -1}}


@lru_cache(maxsize=None)
def tits_group(type_label: str) -> TitsGroup:
    sys = build_root_system(type_label)
    return TitsGroup(sys, compute_structure_constants(sys, DEFAULT_SIGNS.get(type_label)))


def tits_mult(a: TitsElement, b: TitsElement) -> TitsElement:
    return tits_group_for(a).mult(a, b)


def pi(a: TitsElement) -> WeylElement:
    return a.w


def closure(gens, mult=None, cap: int | None = None, identity=None):
    """Subgroup generated by ``gens`` by breadth-first closure."""
    gens = list(gens)
    if cap is None:
        cap = closure_cap()
    if mult is None:
        mult = tits_mult
    if identity is None:
        identity = tits_group_for(gens[0]).one if gens else None
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mult(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise ClosureCapExceeded(f"closure exceeded cap of {cap} elements")
                queue.append(y)
    return order


@dataclass(frozen=True)
class _Paired:
    t: TitsElement
    m: bytes


def lift_consistency_order(T: TitsGroup, cap: int | None = None) -> int:
    """Order of the group generated by (n_r, adjoint matrix of n_r) over all roots.

    The abstract lifts come from the eta table, the matrices from the
    structure constants.  When the two agree the pairs form a copy of the
    Tits group; a wrong eta entry pairs some n_r with the matrix of its
    inverse and the closure grows.
    """
    adj = T.adjoint
    dim = adj.dim
    mats = {}

    def pair(t, M):
        b = M.tobytes()
        mats[b] = M
        return _Paired(t, b)

    def mult(a, b):
        return pair(T.mult(a.t, b.t), mats[a.m] @ mats[b.m])

    gens = [pair(T.n(r), adj.n(r, 1)) for r in T.sys.all_indices()]
    one = pair(T.one, np.eye(dim, dtype=np.int64))
    return len(closure(gens, mult=mult, cap=cap, identity=one))


def corrupted_constants(sys: RootSystem, entry=(1, 2)) -> StructureConstants:
    """Structure constants with one eta sign flipped (test fixture)."""
    c = compute_structure_constants(sys, DEFAULT_SIGNS.get(sys.type_label))
    eta = dict(c.eta)
    eta[entry] = -eta[entry]
    return StructureConstants(c.sys, c.N, eta, c.extraspecial)


__all__ += ["lift_consistency_order", "corrupted_constants"]
