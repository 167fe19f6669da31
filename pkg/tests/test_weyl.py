import itertools

import pytest

from torus_split.rootsys import build_root_system
from torus_split.weyl import (WeylTwist, centralizer_sigma, coroot_action, enumerate_weyl,
                              sigma_classes, weyl_group)


def test_orders():
    assert len(enumerate_weyl(build_root_system("G2"))) == 12
    assert len(enumerate_weyl(build_root_system("D4"))) == 192


def test_g2_longest_is_central_and_minus_one():
    W = weyl_group("G2")
    w0 = W.from_word((1, 6))
    assert w0 == W.longest()
    assert w0 in W.center()
    assert coroot_action(w0) == ((-1, 0), (0, -1))


def test_perm_commutes_with_negation():
    for lab in ("G2", "D4"):
        W = weyl_group(lab)
        sys = W.sys
        for w in W.elements:
            for r in sys.all_indices():
                assert W.act(w, -r) == -W.act(w, r)


def test_coroot_action_unimodular_and_homomorphic(rng):
    import numpy as np
    for lab in ("G2", "D4"):
        W = weyl_group(lab)
        els = W.elements
        for _ in range(30):
            a, b = rng.choice(els), rng.choice(els)
            A, B, AB = (np.array(coroot_action(x)) for x in (a, b, a * b))
            assert (A @ B == AB).all()
            assert round(abs(np.linalg.det(A))) == 1


def test_identity_action():
    W = weyl_group("D4")
    assert coroot_action(W.identity) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


@pytest.mark.parametrize("lab,kind,sizes", [
    ("G2", "identity", None),
    ("G2", "ree", [6, 2, 2, 2]),
    ("D4", "triality", None),
])
def test_sigma_classes(lab, kind, sizes):
    W = weyl_group(lab)
    cls = sigma_classes(W, WeylTwist(kind, W.sys))
    assert sum(map(len, cls)) == len(W.elements)
    assert len({w for c in cls for w in c}) == len(W.elements)
    if sizes:
        assert sorted(map(len, cls), reverse=True) == sizes
    assert len(cls) == {"identity": 6, "ree": 4, "triality": 7}[kind]
    # orbit-stabilizer for the twisted action
    tw = WeylTwist(kind, W.sys)
    for c in cls:
        assert len(centralizer_sigma(W, tw, c[0])) * len(c) == len(W.elements)


@pytest.mark.parametrize("lab", ["G2", "D4"])
def test_identity_twist_gives_conjugacy_classes(lab):
    W = weyl_group(lab)
    cls = sigma_classes(W, WeylTwist("identity", W.sys))
    brute = set()
    for w in W.elements:
        brute.add(frozenset(y * w * y.inverse() for y in W.elements))
    assert {frozenset(c) for c in cls} == brute


def test_twists():
    W = weyl_group("D4")
    tri = WeylTwist("triality", W.sys)
    for w in itertools.islice(W.elements, 40):
        assert tri(tri(tri(w))) == w
    assert any(tri(w) != w for w in W.elements)
    G = weyl_group("G2")
    ree = WeylTwist("ree", G.sys)
    assert ree(G.simple[1]) == G.simple[2]
    assert ree(G.simple[2]) == G.simple[1]


def test_centralizer_examples():
    G = weyl_group("G2")
    assert len(centralizer_sigma(G, WeylTwist("identity", G.sys), G.identity)) == 12
    ree = WeylTwist("ree", G.sys)
    c = centralizer_sigma(G, ree, G.simple[1])
    a = G.from_word((1, 2))
    assert set(c) == {a ** k for k in range(6)}
    D = weyl_group("D4")
    c = centralizer_sigma(D, WeylTwist("triality", D.sys), D.from_word((1, 2)))
    assert len(c) == 4
    assert any(all(x ** k != D.identity for k in (1, 2)) for x in c)  # an element of order 4
