"""Signed permutations, monomial orthogonal matrices and the twisted D_n engine.

Part one is combinatorics on the hyperoctahedral group: signed permutations of
{+-1, ..., +-n}, their cycle types and the centralizer generators of a cycle
type.

Part two is linear algebra over GF(q): monomial orthogonal matrices for the
form ``x0^2 + sum x_i x_{-i}`` and their spinor norms.

Part three decides complement existence for maximal tori of the twisted
orthogonal groups by a finite search.  Each cycle block is realized over
GF(q) as a field extension.  A positive block of length L is the space
F_{q^L} + F_{q^L} with form Tr(ab).  A negative block of length L is F_{q^{2L}}
with form Tr(x^{q^L + 1}).  The torus acts by multiplication.  The
centralizer of the Weyl element is realized by Galois automorphisms and
block swaps, which gives an honest subgroup of the orthogonal group mapping
isomorphically onto the centralizer.  All the difficulty then sits in the
spinor norm, which is handled by a cocycle search over an integer lattice.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .fields import GF, gf
from .intlat import echelon, hnf_basis, integer_kernel
from .quadform import mat_det, mat_identity, mat_mul, spinor_norm_matrix

__all__ = [
    "SignedPerm",
    "CycleType",
    "cycle_type",
    "standard_element",
    "centralizer_generators",
    "named_elements",
    "brute_force_centralizer",
    "centralizer_order",
    "group_closure",
    "MonomialOrtho",
    "spinor_norm",
    "prop_element",
    "tau_element",
    "TwistedTorusModel",
    "SectionResult",
    "section_search",
    "complement_exists",
    "obstruction_check",
    "LEMMA_CASES",
    "torus_order",
    "torus_order_bruteforce",
    "HypothesisError",
]


class HypothesisError(ValueError):
    """Input does not satisfy the hypotheses of the requested check."""


# ---------------------------------------------------------------------------
# signed permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SignedPerm:
    """A permutation of {+-1..+-n} with phi(-i) = -phi(i).

    ``images[i-1]`` is phi(i); products compose right to left.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(abs(x) for x in self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "SignedPerm":
        """Build from cycles on signed points, e.g. ``[(1, 2, -1, -2)]``.

        Points not mentioned are fixed.  A cycle given only on one sign class
        is completed by its negative.
        """
        img = {}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                for x, y in ((a, b), (-a, -b)):
                    if img.get(x, y) != y:
                        raise ValueError(f"inconsistent cycles at {x}")
                    img[x] = y
        return cls(tuple(img.get(i, i) for i in range(1, n + 1)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "SignedPerm":
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        return cls(tuple(x * rng.choice((1, -1)) for x in perm))

    def __call__(self, i: int) -> int:
        x = self.images[abs(i) - 1]
        return x if i > 0 else -x

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return SignedPerm(tuple(self(x) for x in other.images))

    def inverse(self) -> "SignedPerm":
        out = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            out[abs(x) - 1] = i if x > 0 else -i
        return SignedPerm(tuple(out))

    def __pow__(self, k: int) -> "SignedPerm":
        base = self if k >= 0 else self.inverse()
        out = SignedPerm.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def negative_cycles(self) -> int:
        return sum(1 for _, s in _raw_cycles(self) if s < 0)

    def in_rotation_subgroup(self) -> bool:
        """Membership in the index two subgroup (even number of negative cycles)."""
        return self.negative_cycles() % 2 == 0

    def __str__(self) -> str:
        parts = []
        seen = set()
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc, x = [i], self(i)
            while x != i and x != -i:
                cyc.append(x)
                seen.add(abs(x))
                x = self(x)
            seen.add(i)
            if len(cyc) == 1 and x == i:
                continue
            if x == -i:
                cyc += [-c for c in cyc]
            parts.append("(" + ",".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


def _raw_cycles(phi: SignedPerm):
    """(length, sign) of each cycle of phi, in order of least element."""
    out = []
    seen = set()
    for i in range(1, phi.n + 1):
        if i in seen:
            continue
        length, x = 1, phi(i)
        seen.add(i)
        while abs(x) != i:
            seen.add(abs(x))
            length += 1
            x = phi(x)
        out.append((length, 1 if x == i else -1))
    return out


# ---------------------------------------------------------------------------
# cycle types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleType:
    """Cycle lengths with signs; ``entries`` keep the block order in use."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for length, sign in self.entries:
            if length < 1 or sign not in (1, -1):
                raise ValueError(f"bad cycle entry {(length, sign)}")

    @classmethod
    def parse(cls, text) -> "CycleType":
        """From ``"-2,1,1"`` or a list of signed integers (negative = negative cycle)."""
        if isinstance(text, CycleType):
            return text
        if isinstance(text, str):
            items = [int(x) for x in text.replace(" ", "").split(",") if x]
        else:
            items = [int(x) for x in text]
        if not items or 0 in items:
            raise ValueError(f"malformed cycle type {text!r}")
        return cls(tuple((abs(x), 1 if x > 0 else -1) for x in items))

    @property
    def n(self) -> int:
        return sum(length for length, _ in self.entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return sum(1 for _, s in self.entries if s < 0)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(length for length, _ in self.entries)

    @property
    def signed(self) -> tuple[int, ...]:
        return tuple(length * s for length, s in self.entries)

    def canonical(self) -> "CycleType":
        """Negative cycles first, then positive, each by decreasing length."""
        return CycleType(tuple(sorted(self.entries, key=lambda e: (e[1], -e[0]))))

    def b(self, i: int) -> int:
        """Number of cycles of the same length inside the same sign part (1-based i)."""
        length, sign = self.entries[i - 1]
        return sum(1 for e in self.entries if e == (length, sign))

    def a(self, i: int) -> int:
        return self.entries[i - 1][0] * self.b(i)

    def offsets(self) -> list[int]:
        out, t = [], 0
        for length, _ in self.entries:
            out.append(t)
            t += length
        return out

    def __str__(self) -> str:
        return "".join(f"({length * s})" for length, s in self.entries)


def cycle_type(phi: SignedPerm) -> CycleType:
    return CycleType(tuple(_raw_cycles(phi))).canonical()


def standard_element(ct: CycleType) -> SignedPerm:
    """The element with one cycle per block, blocks laid out consecutively."""
    images = []
    for t, (length, sign) in zip(ct.offsets(), ct.entries):
        for j in range(1, length + 1):
            images.append(t + j + 1 if j < length else sign * (t + 1))
    return SignedPerm(tuple(images))


def _omega(n, t, length):
    return SignedPerm.from_cycles(n, [tuple(range(t + 1, t + length + 1))])


def _varpi(n, t, length):
    pts = tuple(range(t + 1, t + length + 1))
    return SignedPerm.from_cycles(n, [pts + tuple(-x for x in pts)])


def _tau(n, t, length):
    return SignedPerm.from_cycles(n, [(x, -x) for x in range(t + 1, t + length + 1)])


def _swap(n, t1, t2, length):
    return SignedPerm.from_cycles(n, [(t1 + j, t2 + j) for j in range(1, length + 1)])


def centralizer_generators(ct: CycleType) -> dict[str, SignedPerm]:
    """Named generators of the centralizer of ``standard_element(ct)``.

    Negative blocks contribute varpi_i, positive blocks omega_i and tau_i.
    Blocks of equal signed length are linked by swaps: chi_j when the blocks
    j and j+1 are adjacent, ``swap_i_j`` otherwise.
    """
    n = ct.n
    gens: dict[str, SignedPerm] = {}
    offs = ct.offsets()
    for i, (t, (length, sign)) in enumerate(zip(offs, ct.entries), start=1):
        if sign < 0:
            gens[f"varpi{i}"] = _varpi(n, t, length)
        else:
            gens[f"omega{i}"] = _omega(n, t, length)
            gens[f"tau{i}"] = _tau(n, t, length)
    for i in range(ct.m):
        later = [j for j in range(i + 1, ct.m) if ct.entries[j] == ct.entries[i]]
        if later:
            j = later[0]
            name = f"chi{i + 1}" if j == i + 1 else f"swap{i + 1}_{j + 1}"
            gens[name] = _swap(n, offs[i], offs[j], ct.entries[i][0])
    return gens


def named_elements(ct: CycleType) -> dict[str, SignedPerm]:
    """Centralizer generators plus tau_i on the negative blocks."""
    out = dict(centralizer_generators(ct))
    for i, (t, (length, sign)) in enumerate(zip(ct.offsets(), ct.entries), start=1):
        if sign < 0:
            out[f"tau{i}"] = _tau(ct.n, t, length)
    return out


def element_from_word(ct: CycleType, word: str) -> SignedPerm:
    """Product of named elements, e.g. ``"varpi3 tau1"``."""
    names = named_elements(ct)
    out = SignedPerm.identity(ct.n)
    for tok in word.split():
        if tok not in names:
            raise KeyError(f"{tok} is not a centralizer element of {ct}")
        out = out * names[tok]
    return out


def group_closure(gens, identity, cap: int = 10**6) -> list:
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise RuntimeError("group closure exceeded cap")
                queue.append(y)
    return order


def centralizer_order(ct: CycleType) -> int:
    """Wreath product order: prod over equal blocks of (2 L)^b b!."""
    from math import factorial

    out = 1
    for entry in set(ct.entries):
        b = ct.entries.count(entry)
        out *= (2 * entry[0]) ** b * factorial(b)
    return out


def brute_force_centralizer(phi: SignedPerm) -> list[SignedPerm]:
    """All signed permutations commuting with phi (fine for n <= 5)."""
    n = phi.n
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            psi = SignedPerm(tuple(s * x for s, x in zip(signs, perm)))
            if psi * phi == phi * psi:
                out.append(psi)
    return out


# ---------------------------------------------------------------------------
# monomial orthogonal matrices on x0^2 + sum x_i x_{-i}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrtho:
    """x -> eps x, e_i -> alpha_i e_{phi(i)}, f_i -> alpha_i^-1 e_{-phi(i)}.

    Here e_{-j} stands for f_j.  Basis order is x, e_1..e_n, f_1..f_n.
    """

    field: GF
    eps: int
    perm: SignedPerm
    scalars: tuple

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +-1")
        if len(self.scalars) != self.perm.n or any(a == self.field.zero for a in self.scalars):
            raise ValueError("need one nonzero scalar per coordinate")

    @property
    def n(self) -> int:
        return self.perm.n

    def _coef(self, j: int):
        a = self.scalars[abs(j) - 1]
        return a if j > 0 else self.field.inv(a)

    def __mul__(self, other: "MonomialOrtho") -> "MonomialOrtho":
        F = self.field
        scal = tuple(F.mul(other._coef(i), self._coef(other.perm(i)))
                     for i in range(1, self.n + 1))
        return MonomialOrtho(F, self.eps * other.eps, self.perm * other.perm, scal)

    @classmethod
    def random(cls, F: GF, n: int, rng: random.Random, special: bool = False) -> "MonomialOrtho":
        perm = SignedPerm.random(n, rng)
        nonzero = [a for a in F.elements() if a != F.zero]
        scal = tuple(rng.choice(nonzero) for _ in range(n))
        eps = rng.choice((1, -1))
        g = cls(F, eps, perm, scal)
        if special and g.det() != F.one:
            g = cls(F, -eps, perm, scal)
        return g

    def matrix(self):
        F, n = self.field, self.n
        M = [[F.zero] * (2 * n + 1) for _ in range(2 * n + 1)]
        M[0][0] = F(self.eps)

        def idx(j):
            return j if j > 0 else n - j

        for i in range(1, n + 1):
            for j in (i, -i):
                M[idx(self.perm(j))][idx(j)] = self._coef(j)
        return M

    def det(self):
        return mat_det(self.field, self.matrix())

    def spinor_norm(self, strategy: str = "forward") -> str:
        return spinor_norm(self, strategy)


def standard_gram(F: GF, n: int):
    """Gram matrix of x0^2 + sum x_i x_{-i} in the basis x, e_*, f_*."""
    half = F.inv(F(2))
    G = [[F.zero] * (2 * n + 1) for _ in range(2 * n + 1)]
    G[0][0] = F.one
    for i in range(1, n + 1):
        G[i][n + i] = G[n + i][i] = half
    return G


def spinor_norm(g, strategy: str = "forward", gram=None, field=None) -> str:
    """Spinor norm class of g, "square" or "nonsquare".

    ``g`` is a :class:`MonomialOrtho` or a matrix with explicit ``gram`` and
    ``field``.
    """
    if isinstance(g, MonomialOrtho):
        field, gram, mat = g.field, standard_gram(g.field, g.n), g.matrix()
    else:
        if gram is None or field is None:
            raise ValueError("matrix input needs gram and field")
        mat = g
    if field.p == 2:
        raise ValueError("spinor norms need odd q")
    return "square" if spinor_norm_matrix(field, mat, gram, strategy) else "nonsquare"


def prop_element(F: GF, n: int, j: int, alpha) -> MonomialOrtho:
    """e_j -> alpha f_j, f_j -> alpha^-1 e_j, x -> -x, other basis vectors fixed."""
    perm = SignedPerm.from_cycles(n, [(j, -j)])
    scal = tuple(F(alpha) if i == j else F.one for i in range(1, n + 1))
    return MonomialOrtho(F, -1, perm, scal)


def tau_element(F: GF, n: int, k: int) -> MonomialOrtho:
    """(1,-1)...(k,-k) with x -> (-1)^k x, so that the determinant is 1."""
    perm = SignedPerm.from_cycles(n, [(i, -i) for i in range(1, k + 1)])
    return MonomialOrtho(F, (-1) ** k, perm, tuple(F.one for _ in range(n)))


# ---------------------------------------------------------------------------
# the twisted torus model over GF(q)
# ---------------------------------------------------------------------------

def _trace(F: GF, x, sub_degree: int):
    """Trace from F down to the subfield of degree ``sub_degree`` over GF(p)."""
    acc = F.zero
    y = x
    for _ in range(F.k // sub_degree):
        acc = F.add(acc, y)
        y = F.frobenius(y, sub_degree)
    return acc


def _to_prime(F: GF, x) -> int:
    if any(x[1:]):
        raise AssertionError("element not in the prime field")
    return x[0]


@dataclass
class _Block:
    length: int
    sign: int
    offset: int  # first coordinate in V
    field: GF
    modulus: int  # order of the cyclic torus factor
    gen: tuple  # field element of order ``modulus``

    @property
    def dim(self) -> int:
        return 2 * self.length


class TwistedTorusModel:
    """The orthogonal space and torus attached to a cycle type over GF(q).

    Requires q to be an odd prime so that the blocks are spaces over the
    prime field.
    """

    def __init__(self, ct: CycleType, q: int):
        from .fields import factorize

        if q % 2 == 0 or factorize(q) != {q: 1}:
            raise HypothesisError("the twisted model needs an odd prime q")
        self.ct = ct
        self.q = q
        self.Fq = gf(q, 1)
        self.blocks: list[_Block] = []
        off = 0
        for length, sign in ct.entries:
            if sign > 0:
                F = gf(q, length)
                N = q ** length - 1
            else:
                F = gf(q, 2 * length)
                N = q ** length + 1
            self.blocks.append(_Block(length, sign, off, F, N, F.element_of_order(N)))
            off += 2 * length
        self.dim = off
        self.gram = self._gram()

    # -- coordinates: a positive block is (a, b) with a, b in F_{q^L} -------
    def _block_vectors(self, b: _Block):
        """Basis of the block as field data, in coordinate order."""
        F = b.field
        zero = F.zero
        if b.sign > 0:
            basis = [tuple(1 if t == j else 0 for t in range(F.k)) for j in range(F.k)]
            return [(e, zero) for e in basis] + [(zero, e) for e in basis]
        return [tuple(1 if t == j else 0 for t in range(F.k)) for j in range(F.k)]

    def _quad_block(self, b: _Block, v):
        F = b.field
        if b.sign > 0:
            a, c = v
            val = _trace(F, F.mul(a, c), 1)
        else:
            val = _trace(F, F.pow(v, self.q ** b.length + 1), 1)
        return _to_prime(F, val)

    def _add_block(self, b: _Block, u, v):
        F = b.field
        if b.sign > 0:
            return (F.add(u[0], v[0]), F.add(u[1], v[1]))
        return F.add(u, v)

    def _gram(self):
        Fq, q = self.Fq, self.q
        G = [[Fq.zero] * self.dim for _ in range(self.dim)]
        half = pow(2, -1, q)
        for b in self.blocks:
            vecs = self._block_vectors(b)
            Qs = [self._quad_block(b, v) for v in vecs]
            for i, u in enumerate(vecs):
                for j, v in enumerate(vecs):
                    if i == j:
                        val = Qs[i]
                    else:
                        val = (self._quad_block(b, self._add_block(b, u, v)) - Qs[i] - Qs[j]) * half
                    G[b.offset + i][b.offset + j] = (val % q,)
        return G

    def _block_linear(self, b: _Block, fn):
        """Matrix (columns = images of basis vectors) of an F_q-linear block map."""
        vecs = self._block_vectors(b)
        cols = []
        for v in vecs:
            w = fn(v)
            if b.sign > 0:
                cols.append(list(w[0]) + list(w[1]))
            else:
                cols.append(list(w))
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]

    def _embed(self, pieces):
        """Assemble a full matrix from {(target_block, source_block): matrix}."""
        Fq = self.Fq
        M = [[Fq.zero] * self.dim for _ in range(self.dim)]
        for (ti, si), sub in pieces.items():
            to, so = self.blocks[ti].offset, self.blocks[si].offset
            for r, row in enumerate(sub):
                for c, val in enumerate(row):
                    M[to + r][so + c] = (val % self.q,)
        return M

    def _identity_pieces(self):
        out = {}
        for i, b in enumerate(self.blocks):
            out[(i, i)] = self._block_linear(b, lambda v: v)
        return out

    def torus_generator(self, i: int):
        """Matrix of the generator of the i-th cyclic torus factor (0-based)."""
        b = self.blocks[i]
        F = b.field
        g = b.gen
        ginv = F.inv(g)
        if b.sign > 0:
            fn = lambda v: (F.mul(g, v[0]), F.mul(ginv, v[1]))
        else:
            fn = lambda v: F.mul(g, v)
        pieces = self._identity_pieces()
        pieces[(i, i)] = self._block_linear(b, fn)
        return self._embed(pieces)

    def minus_identity(self):
        q = self.q
        return [[((-1 if r == c else 0) % q,) for c in range(self.dim)] for r in range(self.dim)]

    def realize(self, name: str):
        """Matrix of a named centralizer element (see :func:`named_elements`)."""
        import re

        mt = re.fullmatch(r"(omega|varpi|tau|chi)(\d+)|swap(\d+)_(\d+)", name)
        if not mt:
            raise KeyError(name)
        pieces = self._identity_pieces()
        if mt.group(1) in ("omega", "varpi", "tau"):
            i = int(mt.group(2)) - 1
            b = self.blocks[i]
            F = b.field
            kind = mt.group(1)
            if (kind == "omega" and b.sign < 0) or (kind == "varpi" and b.sign > 0):
                raise KeyError(f"{name} does not centralize block {i + 1}")
            if kind == "omega":
                fn = lambda v: (F.frobenius(v[0], F.k - 1), F.frobenius(v[1], F.k - 1))
            elif kind == "varpi":
                fn = lambda v: F.frobenius(v, F.k - 1)
            elif b.sign > 0:
                fn = lambda v: (v[1], v[0])
            else:
                fn = lambda v: F.frobenius(v, b.length)
            pieces[(i, i)] = self._block_linear(b, fn)
            return self._embed(pieces)
        if mt.group(1) == "chi":
            i = int(mt.group(2)) - 1
            j = i + 1
        else:
            i, j = int(mt.group(3)) - 1, int(mt.group(4)) - 1
        if self.blocks[i].length != self.blocks[j].length or self.blocks[i].sign != self.blocks[j].sign:
            raise KeyError(f"{name} swaps unequal blocks")
        ident = pieces.pop((i, i))
        pieces.pop((j, j))
        pieces[(j, i)] = ident
        pieces[(i, j)] = ident
        return self._embed(pieces)

    def theta(self, matrix) -> int:
        """Spinor norm bit: 0 for a square, 1 for a nonsquare."""
        return 0 if spinor_norm_matrix(self.Fq, matrix, self.gram) else 1

    @cached_property
    def torus_bits(self) -> tuple[int, ...]:
        return tuple(self.theta(self.torus_generator(i)) for i in range(len(self.blocks)))

    @cached_property
    def minus_identity_bit(self) -> int:
        return self.theta(self.minus_identity())

    @cached_property
    def generator_bits(self) -> dict[str, int]:
        return {name: self.theta(self.realize(name)) for name in named_elements(self.ct)}

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(b.modulus for b in self.blocks)

    def exponent_action(self, c: SignedPerm):
        """(sigma, mu): conjugation by c sends exponent x_i of block i to mu_i x_i in block sigma_i."""
        q = self.q
        blocks = self.blocks
        starts = {b.offset // 2 + 1: i for i, b in enumerate(blocks)}
        owner = {}
        for i, b in enumerate(blocks):
            t = b.offset // 2
            for j in range(b.length):
                owner[t + 1 + j] = (i, j)
        cinv = c.inverse()
        sigma, mu = [], []
        for i, b in enumerate(blocks):
            t = b.offset // 2
            target = owner[abs(c(t + 1))][0]
            t2 = blocks[target].offset // 2
            pre = cinv(t2 + 1)
            src, j = owner[abs(pre)]
            if src != i:
                raise AssertionError("element does not permute the blocks")
            sign = 1 if pre > 0 else -1
            sigma.append(target)
            mu.append(sign * pow(q, j, b.modulus) % b.modulus)
        del starts
        return tuple(sigma), tuple(mu)

    def minus_identity_exponents(self) -> tuple[int, ...]:
        return tuple(b.modulus // 2 for b in self.blocks)


# ---------------------------------------------------------------------------
# the section search
# ---------------------------------------------------------------------------

@dataclass
class SectionResult:
    """Outcome of the search for a splitting section over a subgroup K."""

    exists: bool
    group_order: int
    generators: tuple[str, ...]
    lattice_rank: int
    center_in_group: bool
    witness: tuple[int, ...] | None = None
    notes: list[str] = field(default_factory=list)


def _bfs_with_bits(gens: list[SignedPerm], bits: list[int], identity: SignedPerm):
    """Closure with a homomorphism to F_2 carried along; checks consistency."""
    val = {identity: 0}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g, b in zip(gens, bits):
            y = x * g
            v = val[x] ^ b
            if y in val:
                if val[y] != v:
                    raise AssertionError("spinor bits are not a homomorphism")
            else:
                val[y] = v
                order.append(y)
                queue.append(y)
    return order, val


def _in_lambda(vec, moduli, delta, allow_delta):
    if all(v % N == 0 for v, N in zip(vec, moduli)):
        return True
    return allow_delta and all((v - d) % N == 0 for v, d, N in zip(vec, delta, moduli))


def _f2_solve(rows: list[int], target: int):
    """Combination (bitmask over rows) with XOR equal to target, or None."""
    basis = []  # (pivot bit, vector, combination)
    for idx, r in enumerate(rows):
        comb = 1 << idx
        for piv, vec, c in basis:
            if r >> piv & 1:
                r ^= vec
                comb ^= c
        if r:
            basis.append((r.bit_length() - 1, r, comb))
    comb = 0
    for piv, vec, c in sorted(basis, key=lambda e: -e[0]):
        if target >> piv & 1:
            target ^= vec
            comb ^= c
    return comb if target == 0 else None


def section_search(model: TwistedTorusModel, gens: dict[str, SignedPerm],
                   bits: dict[str, int]) -> SectionResult:
    """Is there s: K -> N(T) in the spinor kernel, multiplicative modulo the center?

    K is generated by ``gens``; ``bits`` are the spinor bits of their standard
    lifts.  The standard lifts form a subgroup, so a section is t(c) s0(c)
    with t a cocycle into T modulo the center.  Cocycles are parametrized by
    their values X on the generators and cut out by one lattice condition per
    Cayley graph edge; the spinor condition is then linear over F_2.
    """
    names = list(gens)
    G = [gens[nm] for nm in names]
    B = [bits[nm] for nm in names]
    r, m = len(G), len(model.blocks)
    a = r * m
    Ns = model.moduli
    delta = model.minus_identity_exponents()
    allow_delta = model.minus_identity_bit == 0
    col_mod = [Ns[c % m] for c in range(a)]

    identity = SignedPerm.identity(model.ct.n)
    T = {identity: [[0] * a for _ in range(m)]}
    action_cache = {}

    def action(c):
        if c not in action_cache:
            action_cache[c] = model.exponent_action(c)
        return action_cache[c]

    # lattice of admissible X, as rows; starts as all of Z^a
    basis = [[int(i == j) for j in range(a)] for i in range(a)]
    edges = []
    queue = deque([identity])
    order = [identity]
    psi = {identity: 0}
    while queue:
        c = queue.popleft()
        sigma, mu = action(c)
        for j, g in enumerate(G):
            cand = [row[:] for row in T[c]]
            for i in range(m):
                col = j * m + i
                row = cand[sigma[i]]
                row[col] = (row[col] + mu[i]) % Ns[sigma[i]]
            y = c * g
            pv = psi[c] ^ B[j]
            if y not in T:
                T[y] = cand
                psi[y] = pv
                order.append(y)
                queue.append(y)
                continue
            if psi[y] != pv:
                raise AssertionError("spinor bits are not a homomorphism")
            diff = [[(u - v) % Ns[i] for u, v in zip(cand[i], T[y][i])] for i in range(m)]
            if not any(any(row) for row in diff):
                continue
            edges.append(diff)
            basis = _restrict(basis, diff, Ns, delta, allow_delta, col_mod)

    # spinor functional on each generator value
    theta = model.torus_bits

    def spin_bits(X):
        out = 0
        for j in range(r):
            s = sum(theta[i] * X[j * m + i] for i in range(m)) & 1
            out |= s << j
        return out

    rows = [spin_bits(bv) for bv in basis]
    target = sum(b << j for j, b in enumerate(B))
    comb = _f2_solve(rows, target)
    res = SectionResult(
        exists=comb is not None,
        group_order=len(order),
        generators=tuple(names),
        lattice_rank=len(basis),
        center_in_group=allow_delta,
    )
    if comb is not None:
        X = [0] * a
        for idx, bv in enumerate(basis):
            if comb >> idx & 1:
                X = [x + y for x, y in zip(X, bv)]
        X = [x % N for x, N in zip(X, col_mod)]
        # independent re-check of the witness on every recorded edge
        for diff in edges:
            vec = [sum(d * x for d, x in zip(row, X)) for row in diff]
            if not _in_lambda(vec, Ns, delta, allow_delta):
                raise AssertionError("witness violates a cocycle condition")
        if spin_bits(X) != target:
            raise AssertionError("witness has the wrong spinor norm")
        res.witness = tuple(X)
    return res


def _restrict(basis, diff, Ns, delta, allow_delta, col_mod):
    """Sublattice of span(basis) on which diff maps into the allowed center."""
    m = len(diff)
    imgs = [[sum(d * x for d, x in zip(row, bv)) for row in diff] for bv in basis]
    if all(_in_lambda(v, Ns, delta, allow_delta) for v in imgs):
        return basis
    # y with sum y_k img_k = sum z_i N_i e_i + z0 delta
    nb = len(basis)
    M = []
    for i in range(m):
        row = [imgs[k][i] for k in range(nb)]
        row += [-Ns[i] if t == i else 0 for t in range(m)]
        row += [-delta[i] if allow_delta else 0]
        M.append(row)
    kern = integer_kernel(M)
    gens = []
    for y in kern:
        coeffs = y[:nb]
        if any(coeffs):
            gens.append([sum(c * bv[t] for c, bv in zip(coeffs, basis)) for t in range(len(col_mod))])
    gens += [[N if t == s else 0 for t in range(len(col_mod))] for s, N in enumerate(col_mod)]
    new = hnf_basis(gens, len(col_mod))
    return [[x for x in row] for row in new]


# ---------------------------------------------------------------------------
# complement existence and the lemma obstructions
# ---------------------------------------------------------------------------

def _liftable_subgroup(model: TwistedTorusModel):
    """Elements of C_W(w) (even sign parity) that have a lift in the spinor kernel.

    Returns (elements, psi) with psi the spinor bit of the standard lift.
    """
    ct = model.ct
    gens = centralizer_generators(ct)
    bits = model.generator_bits
    identity = SignedPerm.identity(ct.n)
    elems, psi = _bfs_with_bits(list(gens.values()), [bits[k] for k in gens], identity)
    surj = any(model.torus_bits)
    keep = [c for c in elems
            if c.in_rotation_subgroup() and (surj or psi[c] == 0)]
    return keep, psi


def _greedy_generators(elems, identity):
    chosen = []
    span = {identity}
    for c in elems:
        if c not in span:
            chosen.append(c)
            span = set(group_closure(chosen, identity))
            if len(span) == len(elems):
                break
    return chosen


def complement_exists(ct, q: int) -> SectionResult:
    """Decide whether the torus of type ``ct`` splits in its normalizer (odd prime q)."""
    ct = CycleType.parse(ct)
    if ct.k % 2 == 0:
        raise HypothesisError("twisted tori need an odd number of negative cycles")
    model = TwistedTorusModel(ct, q)
    elems, psi = _liftable_subgroup(model)
    identity = SignedPerm.identity(ct.n)
    chosen = _greedy_generators(elems, identity)
    gens = {f"g{i + 1}": c for i, c in enumerate(chosen)}
    bits = {f"g{i + 1}": psi[c] for i, c in enumerate(chosen)}
    res = section_search(model, gens, bits)
    res.notes.append(f"liftable centralizer of order {len(elems)} "
                     f"inside a centralizer of order {centralizer_order(ct)}")
    if res.group_order != len(elems):
        raise AssertionError("generator choice lost elements")
    return res


# lemma shapes: (name, generator words, check on the cycle type)
def _m4_ok(ct):
    (n1, s1), (n2, s2), (n3, s3), (n4, s4) = ct.entries
    shape = (s1, s2, s3, s4) in ((-1, 1, 1, 1), (-1, -1, -1, 1))
    return shape and n1 % 2 == 0 and n4 % 2 == 0 and n2 == n3 and n2 % 2 == 1


def _m3_ok(ct):
    (n1, s1), (n2, s2), (n3, s3) = ct.entries
    shape = (s1, s2, s3) in ((1, 1, -1), (-1, -1, -1))
    return shape and n1 == n2 and n1 % 2 == 1 and n3 % 2 == 0


def _m2_ok(ct):
    (n1, s1), (n2, s2) = ct.entries
    return (s1, s2) == (-1, 1) and n1 == n2 and n1 % 2 == 0


LEMMA_CASES = {
    "m4": (4, ("chi2", "tau1", "tau4"), _m4_ok),
    "m3": (3, ("chi1", "varpi3 tau1"), _m3_ok),
    "m2": (2, ("omega2", "tau1", "tau2"), _m2_ok),
}


def lemma_case_for(ct: CycleType) -> str | None:
    for name, (m, _, ok) in LEMMA_CASES.items():
        if ct.m == m and ok(ct):
            return name
    return None


def obstruction_check(n_parts, q: int, lemma_case: str | None = None) -> bool:
    """True when no lift of the lemma subgroup can be chosen inside the spinor kernel.

    ``n_parts`` is a cycle type in block order (e.g. ``"-2,1,1,2"``).  The
    lemma subgroup is searched exhaustively for sections multiplicative
    modulo the center; the obstruction is present when none exists.
    """
    ct = CycleType.parse(n_parts)
    if lemma_case is None:
        lemma_case = lemma_case_for(ct)
    if lemma_case not in LEMMA_CASES:
        raise HypothesisError(f"{ct} does not match a lemma shape")
    m, words, ok = LEMMA_CASES[lemma_case]
    if ct.m != m or not ok(ct):
        raise HypothesisError(f"{ct} does not satisfy the hypotheses of case {lemma_case}")
    if max(ct.lengths) > 3 or q > 7:
        raise HypothesisError("instance too large for enumeration")
    model = TwistedTorusModel(ct, q)
    gbits = model.generator_bits
    gens, bits = {}, {}
    for w in words:
        elt = element_from_word(ct, w)
        if not elt.in_rotation_subgroup():
            raise AssertionError(f"{w} is not in the rotation subgroup")
        gens[w] = elt
        bits[w] = sum(gbits[tok] for tok in w.split()) & 1
    return not section_search(model, gens, bits).exists


# ---------------------------------------------------------------------------
# torus orders
# ---------------------------------------------------------------------------

def torus_order(ct, q: int) -> int:
    ct = CycleType.parse(ct)
    out = 1
    for length, sign in ct.entries:
        out *= q ** length - sign
    return out


def torus_order_bruteforce(ct, q: int) -> int:
    """Count diagonal torus elements fixed by the twisted Frobenius.

    Coordinates are exponents of a generator of a cyclic group large enough
    to hold every solution; the Weyl element is the standard one.  A point
    is fixed when e_{phi(i)} = q e_i for all i, with e_{-i} = -e_i.
    """
    from . import kernels

    ct = CycleType.parse(ct)
    phi = standard_element(ct)
    total = 1
    seen = set()
    for i in range(1, ct.n + 1):
        if i in seen:
            continue
        mults = []
        x = i
        while True:
            seen.add(abs(x))
            y = phi(x)
            mults.append(1 if (y > 0) == (x > 0) else -1)
            x = y
            if abs(x) == i:
                break
        M = q ** (2 * len(mults)) - 1
        total *= kernels.count_cycle_fixed(M, q, mults)
    return total
