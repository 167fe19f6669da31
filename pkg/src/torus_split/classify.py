"""Splitting verdicts for maximal tori of finite groups of Lie type.

Every verdict names the clause that decided it.  Clause ids are local to
this module: ``SU`` for special linear and unitary groups, ``PSU(1)`` to
``PSU(12)`` for their simple quotients, ``OMEGA(1)`` to ``OMEGA(3)`` for the
twisted orthogonal groups, ``EXC`` for G2, 2G2 and 3D4, ``CHAR2`` for even
characteristic and ``PRIOR:<family>`` for families decided elsewhere.  A
negative verdict cites ``<family>:none``.  On construction a verdict
re-evaluates its clause against its own input and refuses to exist if the
clause does not hold.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass

from .normlift import FAMILY_CLASSES, RecipeError, paper_complement_recipes
from .signedperm import CycleType, HypothesisError, complement_exists
from .torus import is_prime_power, prime_of

__all__ = [
    "TorusSpec",
    "SplitVerdict",
    "split_su",
    "split_psu",
    "split_omega_minus",
    "split_exceptional",
    "classify",
    "computed_omega_minus",
    "two_part",
    "CLAUSES",
    "FAMILIES",
]

OUTCOMES = ("splits", "not_splits", "resolved_elsewhere")
PRIOR_FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "2E6", "other")
EXCEPTIONAL = ("G2", "2G2", "3D4", "2F4", "2B2")
FAMILIES = ("2A", "PSL", "PSU", "2D") + EXCEPTIONAL + PRIOR_FAMILIES


def two_part(n: int) -> int:
    """Largest power of 2 dividing the positive integer n."""
    n = abs(n)
    if n == 0:
        raise ValueError("two_part of 0")
    return n & -n


@dataclass(frozen=True)
class TorusSpec:
    """A torus class of a named group.

    ``torus`` is a tuple of part sizes for linear and unitary groups, a
    :class:`CycleType` for 2D, or an integer class id for the exceptional
    families.
    """

    family: str
    n: int
    q: int
    epsilon: int = 1
    torus: object = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if self.family == "2G2":
            e = 0
            while 3 ** e < self.q:
                e += 1
            if 3 ** e != self.q or e % 2 == 0 or e < 3:
                raise ValueError("2G2 needs q = 3^(2m+1) with m >= 1")
        if self.family in ("2B2", "2F4") and self.q % 2:
            raise ValueError(f"{self.family} is defined in characteristic 2 only")
        if self.family in ("2A", "PSL", "PSU"):
            parts = self.partition
            if sum(parts) != self.n or min(parts) < 1:
                raise ValueError(f"partition {parts} does not sum to n = {self.n}")
        if self.family == "2D":
            ct = CycleType.parse(self.torus)
            if ct.n != self.n:
                raise ValueError(f"cycle type {ct} does not sum to n = {self.n}")
            if ct.k % 2 == 0:
                raise ValueError("2D tori need an odd number of negative cycles")
            if self.n < 4:
                raise ValueError("2D needs n >= 4")
        if self.family in FAMILY_CLASSES:
            if int(self.torus) not in FAMILY_CLASSES[self.family]:
                raise ValueError(f"invalid class id {self.torus} for {self.family}")

    @property
    def partition(self) -> tuple[int, ...]:
        if isinstance(self.torus, CycleType):
            return self.torus.lengths
        return tuple(int(x) for x in self.torus)

    @property
    def cycle_type(self) -> CycleType:
        return CycleType.parse(self.torus)

    @property
    def torus_label(self) -> str:
        if self.family == "2D":
            return str(self.cycle_type)
        if self.family in ("2A", "PSL", "PSU"):
            return "".join(f"({x})" for x in self.partition)
        return "" if self.torus is None else str(self.torus)


# ---------------------------------------------------------------------------
# clause predicates
# ---------------------------------------------------------------------------

def _a_values(parts) -> list[int]:
    cnt = Counter(parts)
    return [x * cnt[x] for x in parts]


def _su_clause(parts, q) -> bool:
    return q % 2 == 0 or any(a % 2 for a in _a_values(parts))


def _psu_clauses(parts, q, eps):
    """The twelve clauses, each a function of (parts, q, eps)."""
    n = sum(parts)
    m = len(parts)
    e2 = two_part(eps * q - 1)
    n2 = two_part(n)

    def m3(check):
        return m == 3 and any(check(p) for p in itertools.permutations(parts))

    def m2(check):
        return m == 2 and any(check(p) for p in itertools.permutations(parts))

    def c5(p):
        return p[0] == p[1] and p[0] % 2 and p[2] % 2 == 0 and two_part(p[2]) > 2 and n2 <= e2

    def c6(p):
        return p[0] == p[1] and p[0] % 2 and p[2] % 2 == 0 and two_part(p[2]) == 2 and n2 != e2

    def c8(p):
        if not (p[0] % 2 == 0 and p[1] % 2 == 0 and p[0] != p[1]):
            return False
        # the gcd of powers of two is the least of them
        d = min(two_part(p[0] // 2), two_part(p[1] // 2), e2)
        return n2 < d * e2

    def c9(p):
        return (p[0] % 2 == 0 and p[1] % 2 == 0 and p[0] != p[1]
                and two_part(p[0]) == two_part(p[1]) <= e2 and e2 * two_part(p[0]) <= n2)

    def c10(p):
        return p[0] == p[1] and p[0] % 2 == 0 and two_part(p[0]) > 2 and n2 <= e2

    def c11(p):
        return p[0] == p[1] and p[0] % 2 == 0 and two_part(p[0]) == 2 and n2 != e2

    return {
        1: q % 2 == 0,
        2: any(a % 2 for a in _a_values(parts)),
        3: n2 < e2,
        4: m == 4 and all(x % 2 for x in parts),
        5: m3(c5),
        6: m3(c6),
        7: m == 2 and all(x % 2 for x in parts),
        8: m2(c8),
        9: m2(c9),
        10: m2(c10),
        11: m2(c11),
        12: m == 1,
    }


def _omega_clauses(ct: CycleType, q: int):
    return {
        1: q % 4 != 3,
        2: any(ct.a(i) % 2 for i in range(1, ct.m + 1)),
        3: ct.k == ct.m and all(x % 2 == 0 for x in ct.lengths),
    }


def _holds(spec: TorusSpec, criterion: str) -> bool:
    fam = spec.family
    if criterion == "CHAR2":
        return spec.q % 2 == 0
    if criterion.startswith("PRIOR:"):
        return fam in PRIOR_FAMILIES and criterion == f"PRIOR:{fam}"
    if criterion == "EXC":
        return fam in EXCEPTIONAL
    if criterion == "SU":
        return fam == "2A" and _su_clause(spec.partition, spec.q)
    if criterion == "SU:none":
        return fam == "2A" and not _su_clause(spec.partition, spec.q)
    if criterion.startswith("PSU"):
        if fam not in ("PSL", "PSU"):
            return False
        eps = 1 if fam == "PSL" else -1
        cl = _psu_clauses(spec.partition, spec.q, eps)
        if criterion == "PSU:none":
            return not any(cl.values())
        return cl.get(int(criterion[4:-1]), False)
    if criterion.startswith("OMEGA"):
        if fam != "2D":
            return False
        cl = _omega_clauses(spec.cycle_type, spec.q)
        if criterion == "OMEGA:none":
            return not any(cl.values())
        return cl.get(int(criterion[6:-1]), False)
    return False


CLAUSES = (
    ["CHAR2", "EXC", "SU", "SU:none", "PSU:none", "OMEGA:none"]
    + [f"PSU({i})" for i in range(1, 13)]
    + [f"OMEGA({i})" for i in range(1, 4)]
    + [f"PRIOR:{f}" for f in PRIOR_FAMILIES]
)


@dataclass(frozen=True)
class SplitVerdict:
    spec: TorusSpec
    outcome: str
    criterion: str
    witness: str | None = None

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"bad outcome {self.outcome!r}")
        if self.criterion not in CLAUSES:
            raise ValueError(f"unknown clause {self.criterion!r}")
        negative = self.criterion.endswith(":none")
        prior = self.criterion.startswith("PRIOR:")
        expected = "not_splits" if negative else ("resolved_elsewhere" if prior else "splits")
        if self.outcome != expected:
            raise ValueError(f"clause {self.criterion} cannot give {self.outcome}")
        if not _holds(self.spec, self.criterion):
            raise ValueError(f"clause {self.criterion} does not hold for {self.spec}")

    @property
    def splits(self) -> bool:
        return self.outcome == "splits"

    def to_dict(self) -> dict:
        s = self.spec
        return {
            "family": s.family,
            "n": s.n,
            "q": s.q,
            "epsilon": "+" if s.epsilon > 0 else "-",
            "torus": s.torus_label,
            "outcome": self.outcome,
            "criterion": self.criterion,
            "witness_ref": self.witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# decision procedures
# ---------------------------------------------------------------------------

def _parts(partition) -> tuple[int, ...]:
    parts = tuple(int(x) for x in partition)
    if not parts or min(parts) < 1:
        raise ValueError(f"malformed partition {partition!r}")
    return parts


def split_su(n: int, q: int, epsilon: int, partition) -> SplitVerdict:
    """Special linear (eps=+) or unitary (eps=-) group: odd a_i or even q."""
    spec = TorusSpec("2A", n, q, epsilon, _parts(partition))
    if _su_clause(spec.partition, q):
        return SplitVerdict(spec, "splits", "SU")
    return SplitVerdict(spec, "not_splits", "SU:none")


def split_psu(n: int, q: int, epsilon: int, partition) -> SplitVerdict:
    """Simple linear/unitary quotient; reports the first clause that holds."""
    fam = "PSL" if epsilon > 0 else "PSU"
    spec = TorusSpec(fam, n, q, epsilon, _parts(partition))
    for idx, ok in _psu_clauses(spec.partition, q, epsilon).items():
        if ok:
            return SplitVerdict(spec, "splits", f"PSU({idx})")
    return SplitVerdict(spec, "not_splits", "PSU:none")


def split_omega_minus(n: int, q: int, ct) -> SplitVerdict:
    """Twisted orthogonal group of Witt defect one, by the three stated clauses."""
    ct = CycleType.parse(ct)
    if ct.k % 2 == 0:
        raise ValueError(f"{ct} has an even number of negative cycles")
    if n < 4:
        raise ValueError("need n >= 4")
    spec = TorusSpec("2D", n, q, -1, ct)
    for idx, ok in _omega_clauses(ct, q).items():
        if ok:
            return SplitVerdict(spec, "splits", f"OMEGA({idx})")
    return SplitVerdict(spec, "not_splits", "OMEGA:none")


def split_exceptional(family: str, class_id, q: int) -> SplitVerdict:
    """G2, 2G2, 3D4 (explicit complements) and the char 2 groups 2B2, 2F4."""
    if family not in EXCEPTIONAL:
        raise ValueError(f"{family} is not an exceptional family here")
    cid = None if class_id is None else int(class_id)
    spec = TorusSpec(family, 0, q, 1, cid)
    witness = None
    if family in FAMILY_CLASSES:
        try:
            r = paper_complement_recipes(family, cid)
        except RecipeError as exc:
            raise ValueError(str(exc)) from None
        gens = ", ".join(f"{k}={v}" for k, v in sorted(r.generators.items()))
        witness = f"{family}/{cid}: n={r.n}; {gens}; {r.structure}"
    return SplitVerdict(spec, "splits", "EXC", witness)


def classify(spec: TorusSpec) -> SplitVerdict:
    fam = spec.family
    if spec.q % 2 == 0 and fam not in EXCEPTIONAL:
        # complements always exist in even characteristic
        return SplitVerdict(spec, "splits", "CHAR2")
    if fam == "2A":
        return split_su(spec.n, spec.q, -1, spec.partition)
    if fam in ("PSL", "PSU"):
        return split_psu(spec.n, spec.q, 1 if fam == "PSL" else -1, spec.partition)
    if fam == "2D":
        return split_omega_minus(spec.n, spec.q, spec.cycle_type)
    if fam in EXCEPTIONAL:
        return split_exceptional(fam, spec.torus, spec.q)
    if fam in PRIOR_FAMILIES:
        return SplitVerdict(spec, "resolved_elsewhere", f"PRIOR:{fam}")
    raise ValueError(f"unknown family {fam!r}")


def computed_omega_minus(ct, q: int):
    """Exhaustive section search for a 2D torus at an odd prime q.

    Independent of the stated clauses; returns the engine's
    :class:`~torus_split.signedperm.SectionResult`.
    """
    if q % 2 == 0 or prime_of(q) != q:
        raise HypothesisError("the search runs over odd primes only")
    return complement_exists(ct, q)
