"""Inner direct-product decompositions of RRBs relative to a central element.

Throughout, the order is ``x <= y`` iff ``x*y = x`` and ``sup`` is the
partial binary supremum in that order.  An equation involving ``sup`` is
read as: if one side exists so does the other, and they are equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import AlgebraError, FiniteAlgebra, closure, is_rrb
from .congruence import (
    CongruenceWitness,
    Partition,
    are_complementary,
    complementary_factor_pairs,
    is_congruence,
)
from .relational import RelationalStructure, order_of, validate_structure

AXIOMS = ("Perm", "Mod1", "Mod2", "Abs", "Exi", "Onto", "Ori")
PAIRING_AXIOMS = ("comm", "dist", "p1", "p2", "prod")


def partial_sup(poset: RelationalStructure, x: int, y: int) -> int | None:
    report = validate_structure(poset, "poset")
    if not report:
        raise AlgebraError(f"not a poset: {report.axiom} fails at {report.witness}")
    upper = [z for z in poset.universe if poset.leq(x, z) and poset.leq(y, z)]
    least = [z for z in upper if all(poset.leq(z, u) for u in upper)]
    return least[0] if least else None


class BandOrder:
    """Order data of an RRB: the product table, ``leq`` and a supremum table."""

    def __init__(self, algebra: FiniteAlgebra):
        if not is_rrb(algebra):
            raise AlgebraError("not a right regular band")
        self.algebra = algebra
        self.m = algebra.table("mul")
        n = algebra.size
        m = self.m
        self.leq = [[m[a][b] == a for b in range(n)] for a in range(n)]
        self.sup = [[self._sup(a, b) for b in range(n)] for a in range(n)]

    def _sup(self, a, b):
        n = self.algebra.size
        leq = self.leq
        upper = [z for z in range(n) if leq[a][z] and leq[b][z]]
        for z in upper:
            if all(leq[z][u] for u in upper):
                return z
        return None

    def mul(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.m[out][x]
        return out


def _eq(a, b) -> bool:
    """Partial equation: both absent, or both present and equal."""
    return a == b


def _lmul(o: BandOrder, s, y):
    return None if s is None else o.m[s][y]


def _rmul(o: BandOrder, y, s):
    return None if s is None else o.m[y][s]


def _order(algebra):
    if isinstance(algebra, BandOrder):
        return algebra
    cached = algebra.__dict__.get("_band_order")
    if cached is None:
        cached = BandOrder(algebra)
        object.__setattr__(algebra, "_band_order", cached)
    return cached


def central_elements(algebra: FiniteAlgebra) -> list[int]:
    o = _order(algebra)
    m, n = o.m, algebra.size
    return [c for c in range(n) if all(m[x][c] == m[c][x] for x in range(n))]


def _require_central(o: BandOrder, c):
    m = o.m
    if not all(m[x][c] == m[c][x] for x in range(o.algebra.size)):
        raise AlgebraError(f"element {c} is not central")


# ---------------------------------------------------------------------------
# The pairing predicate


@dataclass(frozen=True)
class PairingWitness:
    c: int
    x1: int
    x2: int
    x: int
    checked: dict
    valid: bool
    failure: str | None = None


def _pairing(o: BandOrder, c, x1, x2, x) -> str | None:
    """First violated axiom of x = <<x1, x2>>_c, or None."""
    m, sup = o.m, o.sup
    if m[x][x1] != m[x1][x] or m[x][x2] != m[x2][x]:
        return "comm"
    if sup[m[x][x1]][m[x][x2]] != x:
        return "dist"
    if sup[m[x][x1]][m[c][x1]] != x1:
        return "p1"
    if sup[m[x][x2]][m[c][x2]] != x2:
        return "p2"
    if m[x1][x2] != m[x][c]:
        return "prod"
    return None


def check_pairing(algebra: FiniteAlgebra, c: int, x1: int, x2: int, x: int) -> PairingWitness:
    o = _order(algebra)
    _require_central(o, c)
    failure = _pairing(o, c, x1, x2, x)
    checked = {}
    for ax in PAIRING_AXIOMS:
        if failure == ax:
            checked[ax] = False
            break
        checked[ax] = True
    return PairingWitness(c, x1, x2, x, checked, failure is None, failure)


# ---------------------------------------------------------------------------
# c-direct products


@dataclass
class DecompositionCertificate:
    algebra: FiniteAlgebra
    c: int
    i1: tuple[int, ...]
    i2: tuple[int, ...]
    axioms: dict                          # axiom name -> bool (absent if not evaluated)
    witnesses: dict = field(default_factory=dict)
    pairing: dict | None = None           # (x1, x2) -> x, when valid
    diagnostics: dict = field(default_factory=dict)   # checks that do not affect validity

    @property
    def valid(self) -> bool:
        return all(self.axioms.get(a, False) for a in AXIOMS)

    def __bool__(self):
        return self.valid

    def projections(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if not self.valid:
            raise AlgebraError("projections need a valid certificate")
        pi1 = [None] * self.algebra.size
        pi2 = [None] * self.algebra.size
        for (x1, x2), x in self.pairing.items():
            pi1[x], pi2[x] = x1, x2
        return tuple(pi1), tuple(pi2)


def is_subsemigroup(algebra: FiniteAlgebra, elems) -> bool:
    s = set(elems)
    return bool(s) and closure(algebra, s) == s


def _perm(o, i1, i2):
    m = o.m
    for a in i1:
        for b in i2:
            if m[a][b] != m[b][a]:
                return (a, b)
    return None


def _mod1(o, c, i1, i2):
    m, sup, n = o.m, o.sup, o.algebra.size
    leq = o.leq
    for x in range(n):
        xc = m[x][c]
        for x1 in i1:
            for x2 in i2:
                if not leq[xc][m[x1][x2]]:
                    continue
                a, b = m[x][x1], m[x][x2]
                s = sup[a][b]
                for y in range(n):
                    if not _eq(_lmul(o, s, y), sup[m[a][y]][m[b][y]]):
                        return (x, y, x1, x2, "right")
                    if not _eq(_rmul(o, y, s), sup[m[y][a]][m[y][b]]):
                        return (x, y, x1, x2, "left")
    return None


def _mod2(o, c, i1, i2, sides=("right", "left")):
    m, sup, n = o.m, o.sup, o.algebra.size
    leq = o.leq
    for x in range(n):
        for x1 in i1:
            for x2 in i2:
                if not leq[m[x1][x2]][x]:
                    continue
                for xi in (x1, x2):
                    a, b = m[x][xi], m[c][xi]
                    s = sup[a][b]
                    for y in range(n):
                        if "right" in sides and not _eq(_lmul(o, s, y), sup[m[a][y]][m[b][y]]):
                            return (x, y, x1, x2, xi, "right")
                        if "left" in sides and not _eq(_rmul(o, y, s), sup[m[y][a]][m[y][b]]):
                            return (x, y, x1, x2, xi, "left")
    return None


def _abs(o, c, i1, i2):
    m, sup = o.m, o.sup
    for first, second in ((i1, i2), (i2, i1)):
        for x1 in first:
            for y1 in first:
                rhs = sup[x1][m[y1][c]]
                for z2 in second:
                    if not _eq(sup[x1][m[y1][z2]], rhs):
                        return (x1, y1, z2)
    return None


def _pairing_table(o, c, i1, i2):
    n = o.algebra.size
    return {(x1, x2): [x for x in range(n) if _pairing(o, c, x1, x2, x) is None]
            for x1 in i1 for x2 in i2}


def check_c_direct_product(algebra: FiniteAlgebra, c: int, i1, i2,
                           stop_early: bool = False,
                           left_mod2: bool = False) -> DecompositionCertificate:
    """Evaluate Perm, Mod1, Mod2, Abs, Exi, Onto and Ori for A = I1 x_c I2.

    Mod2 is checked in its right-multiplication form.  Its left form
    ``y*(s v t) = (y*s) v (y*t)`` already fails for the trivial split
    ``{c} x A`` of the right-zero pair with an identity adjoined, so it is
    only enforced with ``left_mod2=True``; otherwise it is evaluated and
    reported under ``cert.diagnostics``.
    """
    o = _order(algebra)
    _require_central(o, c)
    i1, i2 = tuple(sorted(set(i1))), tuple(sorted(set(i2)))
    for s in (i1, i2):
        if not is_subsemigroup(algebra, s):
            raise AlgebraError(f"{list(s)} is not a subsemigroup")
    cert = DecompositionCertificate(algebra, c, i1, i2, {})
    m = o.m

    def record(name, witness):
        cert.axioms[name] = witness is None
        if witness is not None:
            cert.witnesses[name] = witness
        return witness is None or not stop_early

    if not record("Perm", _perm(o, i1, i2)):
        return cert
    table = _pairing_table(o, c, i1, i2)
    missing = next((k for k, v in table.items() if not v), None)
    if not record("Exi", missing):
        return cert
    covered = {x for v in table.values() for x in v}
    onto = next((x for x in range(algebra.size) if x not in covered), None)
    if not record("Onto", onto):
        return cert
    ori = next(((a, b) for a in i1 for b in i2 if not o.leq[m[a][b]][c]), None)
    if not record("Ori", ori):
        return cert
    if not record("Abs", _abs(o, c, i1, i2)):
        return cert
    if not record("Mod1", _mod1(o, c, i1, i2)):
        return cert
    if left_mod2:
        record("Mod2", _mod2(o, c, i1, i2))
    else:
        record("Mod2", _mod2(o, c, i1, i2, sides=("right",)))
        cert.diagnostics["Mod2-left"] = _mod2(o, c, i1, i2, sides=("left",))
    if cert.valid:
        if any(len(v) != 1 for v in table.values()):
            raise AlgebraError("internal error: pairing is not a function on a valid certificate")
        cert.pairing = {k: v[0] for k, v in table.items()}
        if len(set(cert.pairing.values())) != algebra.size:
            raise AlgebraError("internal error: pairing is not a bijection on a valid certificate")
    return cert


# ---------------------------------------------------------------------------
# Factor congruences <-> factors


def congruences_to_factors(algebra: FiniteAlgebra, c: int, theta, delta):
    """(I_theta, I_delta), where I_theta is the theta-block of c."""
    theta = theta.partition if isinstance(theta, CongruenceWitness) else theta
    delta = delta.partition if isinstance(delta, CongruenceWitness) else delta
    _require_central(_order(algebra), c)
    if not (is_congruence(algebra, theta) and is_congruence(algebra, delta)
            and are_complementary(theta, delta)):
        raise AlgebraError("not a pair of complementary factor congruences")
    return theta.block_of(c), delta.block_of(c)


def factors_to_congruences(algebra: FiniteAlgebra, c: int, i1, i2):
    """(ker pi2, ker pi1) read off the pairing bijection."""
    cert = i1 if isinstance(i1, DecompositionCertificate) else check_c_direct_product(algebra, c, i1, i2)
    if not cert.valid:
        raise AlgebraError("not a c-direct product decomposition")
    pi1, pi2 = cert.projections()
    theta, delta = Partition.from_labels(pi2), Partition.from_labels(pi1)
    if not (is_congruence(algebra, theta) and is_congruence(algebra, delta)
            and are_complementary(theta, delta)):
        raise AlgebraError("internal error: kernels are not complementary factor congruences")
    return CongruenceWitness(algebra, theta), CongruenceWitness(algebra, delta)


def decompose_all(algebra: FiniteAlgebra, c: int, max_size: int | None = None):
    """One certificate per unordered pair of complementary factor congruences."""
    _require_central(_order(algebra), c)
    out = []
    for theta, delta in complementary_factor_pairs(algebra, max_size):
        i1, i2 = congruences_to_factors(algebra, c, theta, delta)
        cert = check_c_direct_product(algebra, c, i1, i2)
        if not cert.valid:
            raise AlgebraError(f"internal error: factors {i1}, {i2} fail {cert.witnesses}")
        t2, d2 = factors_to_congruences(algebra, c, cert, None)
        if (t2.partition, d2.partition) != (theta.partition, delta.partition):
            raise AlgebraError("internal error: factor/congruence maps are not inverse")
        out.append(cert)
    return out


def subsemigroups(algebra: FiniteAlgebra) -> list[tuple[int, ...]]:
    n = algebra.size
    out = []
    for k in range(1, n + 1):
        for s in itertools.combinations(range(n), k):
            if is_subsemigroup(algebra, s):
                out.append(s)
    return out


def decompose_direct(algebra: FiniteAlgebra, c: int, max_size: int = 6):
    """Ordered pairs (I1, I2) of subsemigroups with A = I1 x_c I2, by direct search."""
    if algebra.size > max_size:
        raise AlgebraError(f"direct search limited to size {max_size}")
    subs = subsemigroups(algebra)
    out = []
    for i1 in subs:
        for i2 in subs:
            if check_c_direct_product(algebra, c, i1, i2, stop_early=True).valid:
                out.append((i1, i2))
    return out


# ---------------------------------------------------------------------------
# Algebras with identity


def identity_element(algebra: FiniteAlgebra) -> int | None:
    m, n = algebra.table("mul"), algebra.size
    for e in range(n):
        if all(m[e][x] == x and m[x][e] == x for x in range(n)):
            return e
    return None


def is_filter(algebra: FiniteAlgebra, elems) -> bool:
    """Up-closed in the band order and closed under the product."""
    o = _order(algebra)
    s = set(elems)
    up = all(b in s for a in s for b in range(algebra.size) if o.leq[a][b])
    return up and is_subsemigroup(algebra, s)


@dataclass
class IdentityCriterionReport:
    one: int
    perm: bool
    abs: bool
    onto: bool
    filters: bool | None
    certificate_valid: bool

    @property
    def passed(self) -> bool:
        return self.perm and self.abs and self.onto

    @property
    def agrees(self) -> bool:
        return self.passed == self.certificate_valid

    def __bool__(self):
        return self.passed


def check_identity_criterion(algebra: FiniteAlgebra, i1, i2) -> IdentityCriterionReport:
    """The simplified characterisation when the band has an identity 1 (taken as c)."""
    o = _order(algebra)
    one = identity_element(algebra)
    if one is None:
        raise AlgebraError("the band has no identity element")
    i1, i2 = tuple(sorted(set(i1))), tuple(sorted(set(i2)))
    m, sup = o.m, o.sup
    perm = _perm(o, i1, i2) is None
    absorb = all(_eq(sup[x1][m[y1][z2]], sup[x1][y1])
                 for first, second in ((i1, i2), (i2, i1))
                 for x1 in first for y1 in first for z2 in second)
    onto = {m[a][b] for a in i1 for b in i2} == set(range(algebra.size))
    full = False
    if is_subsemigroup(algebra, i1) and is_subsemigroup(algebra, i2):
        full = check_c_direct_product(algebra, one, i1, i2, stop_early=True).valid
    report = IdentityCriterionReport(one, perm, absorb, onto, None, full)
    if report.passed:
        report.filters = is_filter(algebra, i1) and is_filter(algebra, i2)
    return report
