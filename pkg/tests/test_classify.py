import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_split.classify import (EXCEPTIONAL, PRIOR_FAMILIES, SplitVerdict, TorusSpec, classify,
                                  split_exceptional, split_omega_minus, split_psu, split_su,
                                  two_part)
from torus_split.normlift import FAMILY_CLASSES, certify


def test_two_part():
    assert [two_part(x) for x in (1, 2, 12, 48, -8)] == [1, 2, 4, 16, 8]


def test_su_examples():
    assert split_su(3, 3, -1, (3,)).outcome == "splits"
    assert split_su(4, 3, -1, (2, 2)).outcome == "not_splits"
    assert split_su(4, 4, -1, (2, 2)).outcome == "splits"
    assert split_su(4, 3, 1, (1, 1, 2)).outcome == "not_splits"
    assert split_su(3, 3, 1, (1, 2)).outcome == "splits"
    with pytest.raises(ValueError):
        split_su(4, 3, 1, (2, 1))
    with pytest.raises(ValueError):
        split_su(0, 3, 1, ())


# each case is built so that the named clause is the first one to hold
PSU_CASES = [
    ((2, 2), 4, 1, "PSU(1)"),
    ((3,), 3, -1, "PSU(2)"),
    ((2, 2), 17, 1, "PSU(3)"),
    ((1, 1, 3, 3), 3, 1, "PSU(4)"),
    ((1, 1, 4), 3, 1, "PSU(5)"),
    ((1, 1, 2), 3, 1, "PSU(6)"),
    ((3, 3), 3, 1, "PSU(7)"),
    ((4, 8), 5, 1, "PSU(8)"),
    ((2, 6), 3, 1, "PSU(9)"),
    ((4, 4), 9, 1, "PSU(10)"),
    ((2, 2), 3, 1, "PSU(11)"),
    ((4,), 3, 1, "PSU(12)"),
    ((2, 2), 5, 1, "PSU:none"),
    ((2, 2), 3, -1, "PSU:none"),
]


@pytest.mark.parametrize("parts,q,eps,clause", PSU_CASES)
def test_psu_clauses(parts, q, eps, clause):
    v = split_psu(sum(parts), q, eps, parts)
    assert v.criterion == clause
    assert v.outcome == ("not_splits" if clause.endswith("none") else "splits")


def test_psu_order_of_parts_is_irrelevant():
    for parts in [(4, 1, 1), (1, 4, 1), (8, 4), (6, 2), (2, 1, 1)]:
        for q, eps in [(3, 1), (5, 1), (3, -1), (7, -1)]:
            a = split_psu(sum(parts), q, eps, parts).criterion
            b = split_psu(sum(parts), q, eps, tuple(sorted(parts))).criterion
            assert a == b


def test_psu_example_q1mod8():
    v = split_psu(4, 17, 1, (2, 2))
    assert v.criterion == "PSU(3)"
    assert split_psu(5, 3, -1, (5,)).outcome == "splits"


def test_omega_examples():
    assert split_omega_minus(4, 5, "-2,1,1").criterion == "OMEGA(1)"
    assert split_omega_minus(4, 3, "-2,1,1").outcome == "not_splits"
    assert split_omega_minus(6, 3, "-2,-2,-2").criterion == "OMEGA(3)"
    assert split_omega_minus(4, 3, "-3,1").criterion == "OMEGA(2)"
    # multiplicities are counted within each sign part
    assert split_omega_minus(4, 3, "-1,1,2").criterion == "OMEGA(2)"
    with pytest.raises(ValueError):
        split_omega_minus(4, 3, "-2,-1,1")
    with pytest.raises(ValueError):
        split_omega_minus(3, 3, "-1,1,1")


def test_exceptional():
    v = split_exceptional("G2", 5, 5)
    assert v.splits and "a=n1 n3" in v.witness and "b=n0" in v.witness
    v = split_exceptional("2G2", 4, 27)
    assert v.splits and "a=n1 n2" in v.witness
    assert split_exceptional("2B2", None, 8).splits
    assert split_exceptional("2F4", None, 2).splits
    with pytest.raises(ValueError):
        split_exceptional("G2", 9, 5)
    with pytest.raises(ValueError):
        split_exceptional("2G2", 1, 9)


def test_dispatch_and_schema():
    v = classify(TorusSpec("2A", 5, 3, -1, (5,)))
    assert v.splits
    v = classify(TorusSpec("2D", 4, 3, -1, "-2,1,1"))
    assert v.outcome == "not_splits"
    v = classify(TorusSpec("B", 3, 5))
    assert v.outcome == "resolved_elsewhere" and v.criterion == "PRIOR:B"
    d = json.loads(v.to_json())
    assert set(d) == {"family", "n", "q", "epsilon", "torus", "outcome", "criterion", "witness_ref"}
    with pytest.raises(ValueError):
        TorusSpec("Z9", 3, 5)
    with pytest.raises(ValueError):
        TorusSpec("2A", 3, 6, -1, (3,))


def test_verdicts_recheck_their_clause():
    spec = TorusSpec("PSL", 4, 3, 1, (2, 2))
    with pytest.raises(ValueError):
        SplitVerdict(spec, "splits", "PSU(3)")
    with pytest.raises(ValueError):
        SplitVerdict(spec, "not_splits", "PSU(11)")
    assert SplitVerdict(spec, "splits", "PSU(11)").splits


def test_exceptional_witnesses_certify():
    for fam, qs in (("G2", (3, 5, 7)), ("3D4", (3, 5)), ("2G2", (27,))):
        for q in qs:
            for cid in FAMILY_CLASSES[fam]:
                assert split_exceptional(fam, cid, q).splits
                assert certify(fam, cid, q).valid


def test_w_w0_verdicts_agree():
    for q in (3, 5, 7, 9, 11, 13):
        for a, b in ((1, 4), (2, 3), (5, 6)):
            va = classify(TorusSpec("G2", 0, q, 1, a))
            vb = classify(TorusSpec("G2", 0, q, 1, b))
            assert va.outcome == vb.outcome


partitions = st.lists(st.integers(1, 6), min_size=1, max_size=5)
prime_powers = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 31])


@settings(max_examples=300, deadline=None)
@given(parts=partitions, q=prime_powers, eps=st.sampled_from([1, -1]))
def test_su_implies_psu(parts, q, eps):
    n = sum(parts)
    su = split_su(n, q, eps, parts)
    psu = split_psu(n, q, eps, parts)
    if su.splits:
        assert psu.splits
    if q % 2 == 0:
        assert su.splits and psu.criterion == "PSU(1)"


@settings(max_examples=200, deadline=None)
@given(parts=partitions, q=st.sampled_from([2, 4, 8, 16, 32]),
       fam=st.sampled_from(["2A", "PSL", "PSU", "2D"] + list(PRIOR_FAMILIES)))
def test_even_q_always_splits(parts, q, fam):
    torus = parts
    if fam == "2D":
        parts = [-parts[0]] + parts[1:]
        if sum(map(abs, parts)) < 4:
            parts = parts + [4]
        torus = ",".join(map(str, parts))
    n = sum(map(abs, parts))
    assert classify(TorusSpec(fam, n, q, -1 if fam in ("2A", "PSU", "2D") else 1, torus)).splits


def test_even_q_exceptional():
    for fam in EXCEPTIONAL:
        if fam == "2G2":
            continue
        ids = FAMILY_CLASSES.get(fam, (None,))
        for cid in ids:
            assert classify(TorusSpec(fam, 0, 8, 1, cid)).splits
