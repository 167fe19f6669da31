import numpy as np
import pytest

from torus_split.chevtits import (TitsElement, TitsGroup, closure, compute_structure_constants,
                                  corrupted_constants, lift_consistency_order, pi, tits_group,
                                  tits_mult, DEFAULT_SIGNS)
from torus_split.rootsys import apply_symmetry, build_root_system


@pytest.fixture(params=["G2", "D4"])
def T(request):
    return tits_group(request.param)


def test_structure_constants(T):
    c = T.constants
    sys = T.sys
    allowed = {1, 2, 3} if sys.type_label == "G2" else {1}
    for (r, s), v in c.N.items():
        assert c.N[(s, r)] == -v
        assert abs(v) in allowed
    assert set(c.eta.values()) <= {1, -1}
    assert len(c.eta) == sys.rank * len(sys.all_indices())


def test_named_constants():
    g2 = tits_group("G2").constants
    for s in (2, 3, 4):
        assert g2.n(1, s) != 0
    d4 = tits_group("D4").constants
    assert abs(d4.n(1, 2)) == 1


def test_jacobi(T):
    assert T.adjoint.jacobi_holds()


def test_h_multiplication(T):
    a = T.h_elem(1)
    b = T.h_elem(2)
    assert T.mult(a, b) == TitsElement(tuple((x + y) % 2 for x, y in zip(a.h, b.h)), T.W.identity)


def test_squares_of_simple_lifts(T):
    for r in T.sys.simple_indices():
        assert T.mult(T.n(r), T.n(r)) == T.h_elem(r)
        # matrix oracle: the adjoint matrix of n_r^2 equals that of h_r
        M = T.matrix(T.n(r))
        assert np.array_equal(M @ M, T.adjoint.h(r))


def test_closure_orders():
    g2 = tits_group("G2")
    assert len(closure([g2.n(1), g2.n(2)])) == 48
    d4 = tits_group("D4")
    assert len(closure([d4.n(i) for i in range(1, 5)])) == 3072
    assert set(closure([g2.h_elem(1)])) == {g2.one, g2.h_elem(1)}


def test_pi(T):
    assert pi(T.h_elem(1)).is_identity()
    assert pi(T.mult(T.n(1), T.n(2))) == T.W.simple[1] * T.W.simple[2]
    els = closure([T.n(i) for i in T.sys.simple_indices()])
    kernel = [x for x in els if pi(x).is_identity()]
    assert len(kernel) == 2 ** T.l


def test_g2_central_element():
    T = tits_group("G2")
    n0 = T.prod(T.h_elem(1), T.n(1), T.n(6))
    assert pi(n0) == T.W.longest()
    for g in closure([T.n(1), T.n(2)]):
        assert T.mult(n0, g) == T.mult(g, n0)


def test_d4_central_lift():
    T = tits_group("D4")
    w = T.W.from_word((1, 3, 4, 12))
    lifts = T.central_lifts(w)
    assert lifts
    for z in lifts:
        assert all(T.mult(z, T.n(r)) == T.mult(T.n(r), z) for r in T.sys.all_indices())


def test_braid_relations():
    T = tits_group("G2")
    assert T.word(1, 2, 1, 2, 1, 2) == T.word(2, 1, 2, 1, 2, 1)
    D = tits_group("D4")
    cartan = {(i, j): D.sys.pairing(i, j) for i in range(1, 5) for j in range(1, 5)}
    for i in range(1, 5):
        for j in range(i + 1, 5):
            if cartan[(i, j)]:
                assert D.word(i, j, i) == D.word(j, i, j)
            else:
                assert D.word(i, j) == D.word(j, i)


def test_adjoint_oracle(T, rng):
    els = T.elements()
    for _ in range(100):
        a, b = rng.choice(els), rng.choice(els)
        assert np.array_equal(T.matrix(tits_mult(a, b)), T.matrix(a) @ T.matrix(b))


def test_root_lifts_match_matrices(T):
    for r in T.sys.all_indices():
        assert np.array_equal(T.matrix(T.n(r)), T.adjoint.n(r, 1))


def test_d4_signs_are_triality_invariant():
    d4 = build_root_system("D4")
    T = tits_group("D4")
    rho = {r: apply_symmetry(d4, d4.root(r)).index for r in d4.all_indices()}
    for (r, s), v in T.constants.N.items():
        assert T.constants.N[(rho[r], rho[s])] == v
    # conjugating the adjoint n_r by the basis permutation of rho gives n_{rho(r)}
    dim = T.adjoint.dim
    P = np.zeros((dim, dim), dtype=np.int64)
    for r in d4.all_indices():
        P[d4.position(rho[r]), d4.position(r)] = 1
    base = 2 * d4.npos
    for i in range(4):
        P[base + d4.symmetry[i + 1] - 1, base + i] = 1
    for r in d4.all_indices():
        assert np.array_equal(P @ T.adjoint.n(r, 1) @ P.T, T.adjoint.n(rho[r], 1))


def test_other_sign_choice_still_consistent():
    d4 = build_root_system("D4")
    c = compute_structure_constants(d4, {})
    assert set(c.eta.values()) <= {1, -1}
    assert DEFAULT_SIGNS["D4"] == {5: -1}


def test_fault_injection():
    g2 = build_root_system("G2")
    assert lift_consistency_order(tits_group("G2")) == 48
    assert lift_consistency_order(TitsGroup(g2, corrupted_constants(g2))) != 48
