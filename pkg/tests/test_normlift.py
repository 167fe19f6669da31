import pytest

from torus_split.chevtits import ClosureCapExceeded, closure
from torus_split.normlift import (FAMILY_CLASSES, NormalizerElement, NormalizerModel, RecipeError,
                                  certify, evaluate_word, is_fixed_element, norm_mult,
                                  paper_complement_recipes, verify_complement)
from torus_split.torus import FrobConfig, TorusVector
from torus_split.weyl import coroot_action


@pytest.fixture
def g2():
    return NormalizerModel(FrobConfig.split(5), 24)


def test_identity_and_torus_product(g2):
    t = g2.torus((3, 7))
    s = g2.torus((5, 20))
    assert norm_mult(g2.one, t, g2) == t
    assert norm_mult(t, s, g2) == g2.torus((8, 27))


def test_square_of_n1(g2):
    n1 = evaluate_word(g2, "n1")
    sq = norm_mult(n1, n1, g2)
    assert sq.w.is_identity()
    assert sq.t == g2.iota(g2.T.h_elem(1).h)


def test_conjugation_is_coroot_action(g2):
    n1 = evaluate_word(g2, "n1")
    t = g2.torus((5, 2))
    conj = g2.prod(n1, t, g2.inverse(n1))
    assert conj.w.is_identity()
    assert conj.t == t.t.apply(coroot_action(n1.w, g2.config.sys))


@pytest.mark.parametrize("family,q", [("G2", 5), ("2G2", 27), ("3D4", 3)])
def test_associativity(family, q, rng):
    cfg = FrobConfig.for_family(family, q)
    model = NormalizerModel(cfg, 2 * (cfg.q - 1) * (cfg.q + 1))
    T = model.T
    els = T.elements()

    def rand():
        t = TorusVector(tuple(rng.randrange(model.M) for _ in range(model.l)), model.M)
        return model.from_tits(rng.choice(els), t)

    for _ in range(200):
        a, b, c = rand(), rand(), rand()
        assert model.mult(model.mult(a, b), c) == model.mult(a, model.mult(b, c))
        assert model.mult(a, model.inverse(a)) == model.one


def test_fixed_examples():
    m = NormalizerModel(FrobConfig.split(5), 4)
    one = m.one
    assert is_fixed_element(evaluate_word(m, "h2 n1"), m, one)
    assert is_fixed_element(one, m, one)
    ree = NormalizerModel(FrobConfig.ree(1), 2 * 26 * 28 * 37)
    n = evaluate_word(ree, "n1")
    a = evaluate_word(ree, "n1 n2")
    assert is_fixed_element(a, ree, n)
    assert is_fixed_element(norm_mult(a, a, ree), ree, n)


def test_recipes():
    r = paper_complement_recipes("G2", 2)
    assert r.n == "h1 n2" and r.generators == {"a": "h1 n2", "b": "h1 n4"}
    r = paper_complement_recipes("2G2", 3)
    assert r.n == "h2 n3" and r.generators == {"a": "n1 n2"}
    r = paper_complement_recipes("G2", 5)
    assert r.generators == {"a": "n1 n3", "b": "n0"}
    with pytest.raises(RecipeError):
        paper_complement_recipes("G2", 7)
    with pytest.raises(RecipeError):
        paper_complement_recipes("F4", 1)


def test_g2_torus5_complement():
    cert = certify("G2", 5, 5)
    assert cert.valid and cert.group_order == 6 and cert.structure == "Z6"


def test_3d4_examples():
    cert = certify("3D4", 4, 3)
    assert cert.valid and cert.group_order == 24
    assert [lab for lab, ok in cert.relations_checked if ok] == ["a^4", "b^3", "aba^-1bab", "(b^-1a)^3"]
    cert = certify("3D4", 2, 3)
    assert cert.valid and cert.group_order == 4


def test_representative_independence():
    # n = h1 n2 with the listed generators; n = n2 needs torus-adjusted ones
    assert certify("G2", 2, 5).valid
    import itertools
    m = NormalizerModel(FrobConfig.split(5), 24)
    n = evaluate_word(m, "n2")

    def fixed_coset(word):
        base = evaluate_word(m, word)
        for e in itertools.product(range(m.M), repeat=2):
            g = m.mult(m.torus(e), base)
            if m.is_fixed(g, n):
                yield g

    def works(a, b):
        _, order, image_ok, trivial, corder = verify_complement({"a": a, "b": b}, m, n)
        return image_ok and trivial and order == corder

    bs = list(fixed_coset("n4"))
    assert any(works(a, b) for a in fixed_coset("n2") for b in bs)


def test_unfixed_generator_rejected():
    m = NormalizerModel(FrobConfig.split(5), 4)
    with pytest.raises(RecipeError):
        verify_complement({"a": evaluate_word(m, "n1")}, m, evaluate_word(m, "n2"))


def test_closure_cap():
    m = NormalizerModel(FrobConfig.split(5), 4)
    with pytest.raises(ClosureCapExceeded):
        closure([evaluate_word(m, "n1"), evaluate_word(m, "n2")], mult=m.mult, cap=10, identity=m.one)


def test_certificate_serialization():
    import json
    cert = certify("2G2", 1, 27)
    d = json.loads(cert.to_json())
    assert d["valid"] and d["group_order"] == 2
    assert isinstance(NormalizerElement, type)


def test_image_injective():
    for fam, q in (("G2", 7), ("3D4", 3)):
        for cid in FAMILY_CLASSES[fam]:
            cert = certify(fam, cid, q)
            assert cert.image_ok and cert.intersection_trivial
