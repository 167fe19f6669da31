"""Acceptance criteria, one test per criterion, each with its runtime budget."""

import itertools
import random
import time
from collections import Counter

import pytest

from torus_split.chevtits import closure, tits_group
from torus_split.classify import TorusSpec, classify, split_omega_minus
from torus_split.intlat import coker_invariants
from torus_split.normlift import FAMILY_CLASSES, NormalizerModel, certify, paper_complement_recipes
from torus_split.signedperm import (LEMMA_CASES, CycleType, HypothesisError, MonomialOrtho,
                                    SignedPerm, complement_exists, cycle_type, obstruction_check,
                                    spinor_norm)
from torus_split.fields import gf
from torus_split.torus import FrobConfig, TorusVector, _det, fixed_structure, sigma_n_matrix
from torus_split.weyl import WeylTwist, centralizer_sigma, sigma_classes, weyl_group


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s > {self.seconds}s"


def _class_data(family, q):
    cfg = FrobConfig.for_family(family, q)
    W = weyl_group(cfg.type_label)
    out = {}
    for cid in FAMILY_CLASSES[family]:
        w = W.from_word(paper_complement_recipes(family, cid).w_word)
        st = fixed_structure(sigma_n_matrix(cfg, w))
        cent = centralizer_sigma(W, cfg.twist, w)
        out[cid] = (st, cent)
    return out


def _element_orders(elems):
    out = Counter()
    for x in elems:
        k, y = 1, x
        while not y.is_identity():
            y = y * x
            k += 1
        out[k] += 1
    return out


def test_c01_g2_torus_orders_and_centralizers():
    with Budget(5):
        for q in (3, 5, 7, 9, 11):
            data = _class_data("G2", q)
            want = [(q - 1) ** 2, q * q - 1, q * q - 1, (q + 1) ** 2, q * q + q + 1, q * q - q + 1]
            assert [data[c][0].order for c in range(1, 7)] == want
            assert [len(data[c][1]) for c in range(1, 7)] == [12, 4, 4, 12, 6, 6]


def test_c02_ree_torus_orders():
    with Budget(5):
        for m in (1, 2):
            q = 3 ** (2 * m + 1)
            s = 3 ** (m + 1)
            data = _class_data("2G2", q)
            orders = {c: data[c][0].order for c in data}
            assert sorted(orders.values()) == sorted([q - 1, q - s + 1, q + 1, q + s + 1])
            # per-class derivations: split torus, the two cyclic ones, and Z2 x Z_(q+1)/2
            assert orders[1] == q - 1
            assert orders[2] == q - s + 1
            assert orders[4] == q + s + 1
            assert data[3][0].invariant_factors == (2, (q + 1) // 2)


def test_c03_triality_torus_orders_and_centralizers():
    with Budget(30):
        for q in (3, 5):
            data = _class_data("3D4", q)
            want = [(q ** 3 - 1) * (q - 1), (q ** 3 - 1) * (q + 1), (q ** 3 + 1) * (q - 1),
                    (q * q + q + 1) ** 2, (q * q - q + 1) ** 2, q ** 4 - q * q + 1,
                    (q ** 3 + 1) * (q + 1)]
            assert [data[c][0].order for c in range(1, 8)] == want
            assert data[6][0].order == q ** 4 - q ** 2 + 1
            sizes = [len(data[c][1]) for c in range(1, 8)]
            assert sizes == [12, 4, 4, 24, 24, 4, 12]
            for c in range(1, 8):
                orders = _element_orders(data[c][1])
                kind = {1: "D12", 7: "D12", 2: "V4", 3: "V4", 4: "SL23", 5: "SL23", 6: "Z4"}[c]
                if kind == "D12":
                    assert orders == Counter({1: 1, 2: 7, 3: 2, 6: 2})
                elif kind == "V4":
                    assert orders == Counter({1: 1, 2: 3})
                elif kind == "SL23":
                    assert orders == Counter({1: 1, 2: 1, 3: 8, 4: 6, 6: 8})
                else:
                    assert orders == Counter({1: 1, 2: 1, 4: 2})


def test_c04_complement_certificates():
    with Budget(120):
        cases = [("G2", q) for q in (3, 5, 7)] + [("2G2", 27)] + [("3D4", q) for q in (3, 5)]
        bad = []
        for fam, q in cases:
            for cid in FAMILY_CLASSES[fam]:
                cert = certify(fam, cid, q)
                if not (cert.valid and cert.image_ok and cert.intersection_trivial
                        and cert.group_order == cert.centralizer_order
                        and all(ok for _, ok in cert.relations_checked)):
                    bad.append((fam, cid, q))
        assert bad == []


def test_c05_tits_group_invariants():
    with Budget(60):
        g2, d4 = tits_group("G2"), tits_group("D4")
        assert len(closure([g2.n(1), g2.n(2)])) == 48
        assert len(closure([d4.n(i) for i in range(1, 5)])) == 3072
        for T in (g2, d4):
            for r in T.sys.simple_indices():
                assert T.mult(T.n(r), T.n(r)) == T.h_elem(r)
        n0 = g2.prod(g2.h_elem(1), g2.n(1), g2.n(6))
        assert all(g2.mult(n0, x) == g2.mult(x, n0) for x in closure([g2.n(1), g2.n(2)]))
        assert d4.central_lifts(d4.W.from_word((1, 3, 4, 12)))
        assert g2.word(1, 2, 1, 2, 1, 2) == g2.word(2, 1, 2, 1, 2, 1)
        for i, j in itertools.combinations(range(1, 5), 2):
            if d4.sys.pairing(i, j):
                assert d4.word(i, j, i) == d4.word(j, i, j)
            else:
                assert d4.word(i, j) == d4.word(j, i)


def test_c06_smith_form_against_cokernel_enumeration():
    rng = random.Random(6)
    with Budget(60):
        matches = tried = 0
        while tried < 100:
            l = rng.randint(1, 4)
            A = [[rng.randint(-4, 4) for _ in range(l)] for _ in range(l)]
            B = [[A[i][j] - int(i == j) for j in range(l)] for i in range(l)]
            d = abs(_det(B))
            if d == 0 or d > 10 ** 4:
                continue
            tried += 1
            matches += fixed_structure(A).invariant_factors == coker_invariants(B)
        assert matches == 100


def test_c07_twisted_class_counts():
    G, D = weyl_group("G2"), weyl_group("D4")
    assert len(sigma_classes(G, WeylTwist("identity", G.sys))) == 6
    ree = sigma_classes(G, WeylTwist("ree", G.sys))
    assert sorted(map(len, ree), reverse=True) == [6, 2, 2, 2]
    assert len(sigma_classes(D, WeylTwist("triality", D.sys))) == 7


def _twisted_types(n):
    """Cycle types of n with an odd number of negative cycles."""
    def parts(n, most):
        if n == 0:
            yield ()
            return
        for k in range(min(n, most), 0, -1):
            for rest in parts(n - k, k):
                yield (k,) + rest
    seen = set()
    for p in parts(n, n):
        for signs in itertools.product((1, -1), repeat=len(p)):
            if signs.count(-1) % 2 == 0:
                continue
            ct = CycleType(tuple(zip(p, signs))).canonical()
            seen.add(ct)
    return sorted(seen, key=str)


def _lemma_ordering(ct):
    for perm in itertools.permutations(ct.entries):
        cand = CycleType(tuple(perm))
        for name, (m, _, ok) in LEMMA_CASES.items():
            if cand.m == m and ok(cand):
                return cand, name
    return None, None


def test_c08_orthogonal_verdicts_match_obstruction_search():
    with Budget(600):
        failures = []
        for q in (3, 5):
            for n in (4, 5):
                for ct in _twisted_types(n):
                    v = split_omega_minus(n, q, ct)
                    ordered, case = _lemma_ordering(ct)
                    if case is not None:
                        obstructed = obstruction_check(
                            ",".join(str(s * L) for L, s in ordered.entries), q, case)
                        if v.outcome == "not_splits" and not obstructed:
                            failures.append(f"q={q} {ct}: stated not_splits, no obstruction found")
                        if q % 4 == 1 and obstructed:
                            failures.append(f"q={q} {ct}: obstruction found")
                    elif v.outcome == "not_splits":
                        pytest.fail(f"{ct} at q={q} is outside the enumerable shapes")
                    if q % 4 == 1 and not complement_exists(ct, q).exists:
                        failures.append(f"q={q} {ct}: no complement found")
        assert not failures, "\n".join(failures)


def test_c09_property_suites():
    rng = random.Random(9)
    fails = 0
    for _ in range(100):
        F = gf(*rng.choice([(3, 1), (5, 1), (7, 1), (3, 2)]))
        n = rng.randint(1, 4)
        g, h = MonomialOrtho.random(F, n, rng), MonomialOrtho.random(F, n, rng)
        sg, sh = spinor_norm(g), spinor_norm(h)
        fails += (spinor_norm(g * h) == "square") != ((sg == "square") == (sh == "square"))
    for _ in range(100):
        F = gf(*rng.choice([(3, 1), (5, 1), (7, 1), (3, 2)]))
        g = MonomialOrtho.random(F, rng.randint(1, 4), rng)
        fails += spinor_norm(g, "forward") != spinor_norm(g, "reverse")
    for _ in range(100):
        n = rng.randint(1, 7)
        phi, psi = SignedPerm.random(n, rng), SignedPerm.random(n, rng)
        fails += cycle_type(psi * phi * psi.inverse()).canonical() != cycle_type(phi).canonical()
    for family, q in (("G2", 5), ("2G2", 27), ("3D4", 3)):
        cfg = FrobConfig.for_family(family, q)
        model = NormalizerModel(cfg, 2 * (q - 1) * (q + 1))
        els = model.T.elements()

        def rand():
            t = TorusVector(tuple(rng.randrange(model.M) for _ in range(model.l)), model.M)
            return model.from_tits(rng.choice(els), t)

        for _ in range(200):
            a, b, c = rand(), rand(), rand()
            fails += model.mult(model.mult(a, b), c) != model.mult(a, model.mult(b, c))
    assert fails == 0


def test_c10_verdicts_invariant_under_longest_element():
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        for a, b in ((1, 4), (2, 3), (5, 6)):
            va = classify(TorusSpec("G2", 0, q, 1, a))
            vb = classify(TorusSpec("G2", 0, q, 1, b))
            assert (va.outcome, va.criterion) == (vb.outcome, vb.criterion)
