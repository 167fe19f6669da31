"""Computational model of the torus normalizer and complement certificates.

An element ``H * n_w`` (H a torus element in exponent coordinates, ``n_w``
the canonical lift) is a :class:`NormalizerElement`.  The F_2 part of a Tits
element is pushed into the torus through ``h_i -> M/2`` in coordinate i,
since ``h_i = h_{r_i}(-1)`` and ``-1 = z^{M/2}``.

The Steinberg map used for a torus class with lift ``n`` is
``x -> n x^sigma n^-1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import gcd

from .chevtits import ClosureCapExceeded, TitsElement, TitsGroup, closure, tits_group
from .torus import (
    FrobConfig,
    TorusVector,
    choose_modulus,
    fixed_structure,
    is_fixed_point,
    sigma_n_matrix,
)
from .weyl import centralizer_sigma, coroot_action, sigma_classes, weyl_group

__all__ = [
    "NormalizerElement",
    "NormalizerModel",
    "ComplementCertificate",
    "Recipe",
    "norm_mult",
    "is_fixed_element",
    "verify_complement",
    "paper_complement_recipes",
    "certify",
    "RecipeError",
]


class RecipeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NormalizerElement:
    t: TorusVector
    u: TitsElement  # always with trivial F_2 part

    @property
    def w(self):
        return self.u.w


class NormalizerModel:
    """Arithmetic for one (Frobenius config, modulus) pair."""

    def __init__(self, config: FrobConfig, modulus: int):
        if modulus % 2:
            raise ValueError("modulus must be even (odd characteristic)")
        self.config = config
        self.M = modulus
        self.T: TitsGroup = tits_group(config.type_label)
        self.l = config.rank
        self.E = config.exponent_matrix
        self.twist_w = config.twist
        self._C = {}
        self.one = NormalizerElement(TorusVector((0,) * self.l, modulus), self.T.one)

    # -- embedding ----------------------------------------------------------
    def iota(self, h) -> TorusVector:
        half = self.M // 2
        return TorusVector(tuple(half * b for b in h), self.M)

    def torus(self, exps) -> NormalizerElement:
        return NormalizerElement(TorusVector(tuple(exps), self.M), self.T.one)

    def from_tits(self, u: TitsElement, t: TorusVector | None = None) -> NormalizerElement:
        base = self.iota(u.h)
        if t is not None:
            if t.modulus != self.M:
                raise ValueError("modulus mismatch")
            base = t + base
        return NormalizerElement(base, self.T.lift(u.w))

    def _coroot(self, w):
        if w not in self._C:
            self._C[w] = coroot_action(w, self.config.sys)
        return self._C[w]

    # -- group law ----------------------------------------------------------
    def mult(self, x: NormalizerElement, y: NormalizerElement) -> NormalizerElement:
        if x.t.modulus != self.M or y.t.modulus != self.M:
            raise ValueError("modulus mismatch")
        c = self.T.cocycle(x.w, y.w)
        t = x.t + y.t.apply(self._coroot(x.w)) + self.iota(c)
        return NormalizerElement(t, self.T.lift(x.w * y.w))

    def inverse(self, x: NormalizerElement) -> NormalizerElement:
        wi = x.w.inverse()
        c = self.T.cocycle(x.w, wi)
        t = (-(x.t + self.iota(c))).apply(self._coroot(wi))
        return NormalizerElement(t, self.T.lift(wi))

    def power(self, x: NormalizerElement, k: int) -> NormalizerElement:
        base = x if k >= 0 else self.inverse(x)
        out = self.one
        for _ in range(abs(k)):
            out = self.mult(out, base)
        return out

    def prod(self, *xs) -> NormalizerElement:
        out = self.one
        for x in xs:
            out = self.mult(out, x)
        return out

    # -- Frobenius ----------------------------------------------------------
    def twist(self, x: NormalizerElement) -> NormalizerElement:
        """x^sigma: torus part through E, canonical lifts through the diagram map."""
        return NormalizerElement(x.t.apply(self.E), self.T.lift(self.twist_w(x.w)))

    def sigma_n(self, x: NormalizerElement, n: NormalizerElement) -> NormalizerElement:
        return self.prod(n, self.twist(x), self.inverse(n))

    def is_fixed(self, x: NormalizerElement, n: NormalizerElement) -> bool:
        return self.sigma_n(x, n) == x


def norm_mult(x: NormalizerElement, y: NormalizerElement, model: NormalizerModel) -> NormalizerElement:
    return model.mult(x, y)


def is_fixed_element(x: NormalizerElement, model: NormalizerModel, n) -> bool:
    if isinstance(n, TitsElement):
        n = model.from_tits(n)
    return model.is_fixed(x, n)


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Recipe:
    family: str
    class_id: int
    w_word: tuple[int, ...]  # representative listed in the table
    n: str
    generators: dict  # name -> word string
    relations: tuple  # (label, word over generator names; capitals are inverses)
    structure: str
    epsilon: int | None = None


_G2_TABLE = {1: (), 2: (2,), 3: (4,), 4: (1, 6), 5: (1, 3), 6: (1, 5)}
_2G2_TABLE = {1: (), 2: (1,), 3: (3,), 4: (4,)}
_3D4_TABLE = {1: (), 2: (12,), 3: (1, 3, 4, 12, 12), 4: (12, 2), 5: (1, 3, 4, 12, 12, 2),
              6: (1, 2), 7: (1, 3, 4, 12)}

_DIHEDRAL = (("a^2", "aa"), ("b^2", "bb"), ("(ab)^6", "abababababab"))
_KLEIN = (("a^2", "aa"), ("b^2", "bb"), ("[a,b]", "ABab"))
_SL23 = (("a^4", "aaaa"), ("b^3", "bbb"), ("aba^-1bab", "abAbab"), ("(b^-1a)^3", "BaBaBa"))


def _recipes():
    out = {}
    g2 = {
        1: ("1", {"a": "h2 n1", "b": "h1 n2"}, _DIHEDRAL, "D12"),
        4: ("n0", {"a": "h2 n1", "b": "h1 n2"}, _DIHEDRAL, "D12"),
        2: ("h1 n2", {"a": "h1 n2", "b": "h1 n4"}, _KLEIN, "Z2xZ2"),
        3: ("h1 n2 n0", {"a": "h1 n2", "b": "h1 n4"}, _KLEIN, "Z2xZ2"),
        5: ("n1 n3", {"a": "n1 n3", "b": "n0"},
            (("a^3", "aaa"), ("b^2", "bb"), ("[a,b]", "ABab")), "Z6"),
        6: ("n1 n3 n0", {"a": "n1 n3", "b": "n0"},
            (("a^3", "aaa"), ("b^2", "bb"), ("[a,b]", "ABab")), "Z6"),
    }
    for cid, (n, gens, rels, st) in g2.items():
        out[("G2", cid)] = Recipe("G2", cid, _G2_TABLE[cid], n, gens, rels, st)
    ree = {
        1: ("n0", {"a": "n0"}, (("a^2", "aa"),), "Z2"),
        2: ("n1", {"a": "n1 n2"}, (("a^6", "aaaaaa"),), "Z6"),
        3: ("h2 n3", {"a": "n1 n2"}, (("a^6", "aaaaaa"),), "Z6"),
        4: ("h2 n4", {"a": "n1 n2"}, (("a^6", "aaaaaa"),), "Z6"),
    }
    for cid, (n, gens, rels, st) in ree.items():
        out[("2G2", cid)] = Recipe("2G2", cid, _2G2_TABLE[cid], n, gens, rels, st)
    d4 = {
        1: ("1", {"a": "h1 h3 h4 n2", "b": "h2 n1 n3 n4"}, _DIHEDRAL, "D12", None),
        7: ("n0", {"a": "h1 h3 h4 n2", "b": "h2 n1 n3 n4"}, _DIHEDRAL, "D12", None),
        2: ("n12", {"a": "H1 n0", "b": "H2 n12"}, _KLEIN, "Z2xZ2", -1),
        3: ("n0 n12", {"a": "H1 n0", "b": "H2 n12"}, _KLEIN, "Z2xZ2", 1),
        # the n1 n2 n3 n7 / n1 n7 lifts need these h factors to be sigma*n fixed
        4: ("n12 n2", {"a": "h2 n1 n2 n3 n7", "b": "h1 n1 n7"}, _SL23, "SL2(3)", None),
        5: ("n0 n12 n2", {"a": "h2 n1 n2 n3 n7", "b": "h1 n1 n7"}, _SL23, "SL2(3)", None),
        6: ("n1 n2", {"a": "h1 h2 h4 n1 n2 n3 n7"}, (("a^4", "aaaa"),), "Z4", None),
    }
    for cid, (n, gens, rels, st, eps) in d4.items():
        out[("3D4", cid)] = Recipe("3D4", cid, _3D4_TABLE[cid], n, gens, rels, st, eps)
    return out


_RECIPES = _recipes()

FAMILY_CLASSES = {"G2": tuple(range(1, 7)), "2G2": tuple(range(1, 5)), "3D4": tuple(range(1, 8))}


def paper_complement_recipes(family: str, class_id: int) -> Recipe:
    """Lift n and complement generators for a torus class of G2, 2G2 or 3D4."""
    if family not in FAMILY_CLASSES:
        raise RecipeError(f"no complement recipes for family {family!r}")
    key = (family, int(class_id))
    if key not in _RECIPES:
        raise RecipeError(f"unknown class {class_id} for {family}")
    return _RECIPES[key]


_TOKEN = re.compile(r"^(h|n|H)(\d+)$")


def _central_lift(T: TitsGroup) -> TitsElement:
    if T.sys.type_label == "G2":
        return T.prod(T.h_elem(1), T.n(1), T.n(6))
    return T.word(1, 3, 4, 12)


def torus_parameters(model: NormalizerModel, epsilon: int) -> dict:
    """Exponents of H1, H2 for the 3D4 classes with a Z2 x Z2 complement.

    alpha solves alpha^(((eq)^3 + 1)(eq - 1) / 2) = -1 and
    beta = alpha^(((eq)^3 + 1) / 2).
    """
    q, M = model.config.q, model.M
    eq = epsilon * q
    K = (eq ** 3 + 1) * (eq - 1) // 2
    g = gcd(K % M, M)
    half = M // 2
    if half % g:
        raise RecipeError(f"alpha^{K} = -1 has no solution modulo {M}")
    a = (half // g) * pow((K // g) % (M // g), -1, M // g) % M
    b = a * ((eq ** 3 + 1) // 2)
    shape = (1, eq ** 3 + 1, q ** 4, q ** 2)
    return {
        "alpha": a,
        "beta": b % M,
        "H1": TorusVector(tuple(a * s for s in shape), M),
        "H2": TorusVector(tuple(b * s for s in shape), M),
    }


def evaluate_word(model: NormalizerModel, word: str, params: dict | None = None) -> NormalizerElement:
    """Evaluate a word like ``"h1 h3 n2"``, ``"H1 n0"`` or ``"n1 n3 n0"``."""
    T = model.T
    out = model.one
    for tok in word.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise RecipeError(f"bad token {tok!r}")
        kind, idx = m.group(1), int(m.group(2))
        if kind == "h":
            x = model.from_tits(T.h_elem(idx))
        elif kind == "n":
            x = model.from_tits(_central_lift(T) if idx == 0 else T.n(idx))
        else:
            if not params or tok not in params:
                raise RecipeError(f"torus parameter {tok} not available")
            x = NormalizerElement(params[tok], T.one)
        out = model.mult(out, x)
    return out


def _eval_relation(model, word, values):
    out = model.one
    for ch in word:
        g = values[ch.lower()]
        out = model.mult(out, g if ch.islower() else model.inverse(g))
    return out


@dataclass
class ComplementCertificate:
    family: str
    class_id: int
    q: int
    modulus: int
    n: str
    generators: dict
    generators_fixed: dict
    group_order: int
    centralizer_order: int
    image_ok: bool
    intersection_trivial: bool
    relations_checked: list = field(default_factory=list)
    structure: str = ""
    torus_factors: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            all(self.generators_fixed.values())
            and self.image_ok
            and self.intersection_trivial
            and self.group_order == self.centralizer_order
            and all(ok for _, ok in self.relations_checked)
        )

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "class_id": self.class_id,
            "q": self.q,
            "modulus": self.modulus,
            "n": self.n,
            "generators": dict(sorted(self.generators.items())),
            "generators_fixed": dict(sorted(self.generators_fixed.items())),
            "group_order": self.group_order,
            "centralizer_order": self.centralizer_order,
            "image_ok": self.image_ok,
            "intersection_trivial": self.intersection_trivial,
            "relations": [[label, ok] for label, ok in self.relations_checked],
            "structure": self.structure,
            "torus_invariant_factors": list(self.torus_factors),
            "notes": list(self.notes),
            "valid": self.valid,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_complement(gens: dict, model: NormalizerModel, n: NormalizerElement, w=None,
                      cap: int | None = None) -> tuple[dict, int, bool, bool, int]:
    """Check that ``gens`` generate a complement to the sigma*n-fixed torus.

    Returns (fixed flags per generator, group order, image ok, intersection
    trivial, centralizer order).  Raises if a generator is not fixed or the
    closure blows past ``cap``.
    """
    fixed = {name: model.is_fixed(g, n) for name, g in gens.items()}
    bad = [name for name, ok in fixed.items() if not ok]
    if bad:
        raise RecipeError(f"generators not fixed by sigma*n: {', '.join(sorted(bad))}")
    if w is None:
        w = n.w
    group = closure(list(gens.values()), mult=model.mult, cap=cap, identity=model.one)
    W = weyl_group(model.config.type_label)
    cent = centralizer_sigma(W, model.config.twist, w)
    image = {x.w for x in group}
    image_ok = image == set(cent)
    trivial = [x for x in group if x.w.is_identity()]
    return fixed, len(group), image_ok, trivial == [model.one], len(cent)


def certify(family: str, class_id: int, q: int, n_override: str | None = None,
            cap: int | None = None) -> ComplementCertificate:
    """Run a recipe at a given q and return its certificate."""
    recipe = paper_complement_recipes(family, class_id)
    config = FrobConfig.for_family(family, q)
    T = tits_group(config.type_label)
    W = T.W
    n_word = n_override or recipe.n
    probe = NormalizerModel(config, 2)
    n_w = evaluate_word(probe, n_word).w
    A = sigma_n_matrix(config, n_w)
    M = choose_modulus(A, config.p)
    model = NormalizerModel(config, M)
    params = None
    notes = []
    if recipe.epsilon is not None:
        params = torus_parameters(model, recipe.epsilon)
    n = evaluate_word(model, n_word)
    # the lift must represent the tabulated twisted class
    rep = W.from_word(recipe.w_word)
    classes = sigma_classes(W, config.twist)
    same = next(c for c in classes if rep in c)
    if n.w not in same:
        raise RecipeError(f"lift {n_word} does not lie over the class of class {class_id}")
    if params:
        for key in ("H1", "H2"):
            if not is_fixed_point(params[key], A):
                notes.append(f"{key} not fixed by sigma*n")
    gens = {name: evaluate_word(model, word, params) for name, word in recipe.generators.items()}
    fixed, order, image_ok, trivial, corder = verify_complement(gens, model, n, cap=cap)
    rels = []
    for label, word in recipe.relations:
        rels.append((label, _eval_relation(model, word, gens) == model.one))
    return ComplementCertificate(
        family=family,
        class_id=class_id,
        q=q,
        modulus=M,
        n=n_word,
        generators=dict(recipe.generators),
        generators_fixed=fixed,
        group_order=order,
        centralizer_order=corder,
        image_ok=image_ok,
        intersection_trivial=trivial,
        relations_checked=rels,
        structure=recipe.structure,
        torus_factors=fixed_structure(A).invariant_factors,
        notes=notes,
    )


__all__ += ["torus_parameters", "evaluate_word", "FAMILY_CLASSES", "ClosureCapExceeded"]
