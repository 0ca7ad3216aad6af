"""Relational structures defined by conjunctions of identities, and the functor U."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import (
    LATTICE,
    MUL,
    AlgebraError,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    Term,
    check_term,
    compile_term,
    parse_term,
    variables,
)


@dataclass(frozen=True)
class IdentityScheme:
    """An ``arity``-ary relation R with R(x1..xn) iff every ``t_i = s_i`` holds."""
    signature: Signature
    arity: int
    pairs: tuple[tuple[Term, Term], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.arity < 1:
            raise AlgebraError("relation arity must be positive")
        if not self.pairs:
            raise AlgebraError("a scheme needs at least one identity")
        for t, s in self.pairs:
            check_term(t, self.signature)
            check_term(s, self.signature)
            if any(v > self.arity for v in variables(t) | variables(s)):
                raise AlgebraError(f"identity {t} = {s} uses variables beyond x{self.arity}")


def _scheme(name, signature, arity, *pairs):
    return IdentityScheme(signature, arity,
                          tuple((parse_term(a), parse_term(b)) for a, b in pairs), name)


POSEMIGROUP_ORDER = _scheme("posemigroup-order", MUL, 2, ("mul(x1,x2)", "x1"))
MUTUAL_ABSORPTION = _scheme("mutual-absorption-equivalence", MUL, 2,
                            ("mul(x1,x2)", "x2"), ("mul(x2,x1)", "x1"))
COMPLEMENTATION = _scheme("complementation", LATTICE, 2,
                          ("meet(x1,x2)", "bot"), ("join(x1,x2)", "top"))
MEET_ORDER = _scheme("meet-order", LATTICE, 2, ("meet(x1,x2)", "x1"))

SCHEMES = {s.name: s for s in (POSEMIGROUP_ORDER, MUTUAL_ABSORPTION, COMPLEMENTATION, MEET_ORDER)}


def get_scheme(scheme) -> IdentityScheme:
    if isinstance(scheme, IdentityScheme):
        return scheme
    try:
        return SCHEMES[scheme]
    except KeyError:
        raise AlgebraError(f"unknown scheme {scheme!r}; expected one of {sorted(SCHEMES)}") from None


@dataclass(frozen=True)
class RelationalStructure:
    size: int
    scheme: IdentityScheme
    tuples: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError("structures must be nonempty")
        ts = [tuple(int(e) for e in t) for t in self.tuples]
        for t in ts:
            if len(t) != self.scheme.arity or any(not 0 <= e < self.size for e in t):
                raise AlgebraError(f"tuple {t} out of range")
        if len(set(ts)) != len(ts):
            raise AlgebraError("duplicate tuples")
        object.__setattr__(self, "tuples", tuple(sorted(ts)))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise AlgebraError("one label per element required")
            object.__setattr__(self, "labels", labels)

    @property
    def tuple_set(self) -> frozenset:
        ts = self.__dict__.get("_tuple_set")
        if ts is None:
            ts = frozenset(self.tuples)
            object.__setattr__(self, "_tuple_set", ts)
        return ts

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuple_set

    @property
    def universe(self) -> range:
        return range(self.size)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else f"e{e}"

    def element(self, name) -> int:
        if isinstance(name, int):
            return name
        names = self.labels if self.labels is not None else tuple(f"e{i}" for i in self.universe)
        try:
            return names.index(str(name))
        except ValueError:
            raise AlgebraError(f"no element labelled {name!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.tuple_set


def apply_U(algebra: FiniteAlgebra, scheme) -> RelationalStructure:
    """The relational reduct: tuples where every identity of the scheme holds."""
    scheme = get_scheme(scheme)
    if scheme.signature != algebra.signature:
        raise AlgebraError(
            f"scheme signature {scheme.signature.names} does not match {algebra.signature.names}")
    compiled = [(compile_term(algebra, t), compile_term(algebra, s)) for t, s in scheme.pairs]
    tuples = [a for a in itertools.product(algebra.universe, repeat=scheme.arity)
              if all(f(a) == g(a) for f, g in compiled)]
    return RelationalStructure(algebra.size, scheme, tuple(tuples), algebra.labels)


def order_of(algebra: FiniteAlgebra) -> RelationalStructure:
    """Underlying order: ``x <= y`` iff ``x*y = x`` (or ``meet(x,y) = x`` for lattices)."""
    if "mul" in algebra.signature and algebra.signature == MUL:
        return apply_U(algebra, POSEMIGROUP_ORDER)
    if algebra.signature == LATTICE:
        return apply_U(algebra, MEET_ORDER)
    raise AlgebraError(f"no underlying order for signature {algebra.signature.names}")


def make_poset(size: int, pairs, labels=None, scheme=POSEMIGROUP_ORDER) -> RelationalStructure:
    """Reflexive-transitive closure of ``pairs`` as a poset; rejects cycles."""
    leq = [[i == j for j in range(size)] for i in range(size)]
    for a, b in pairs:
        leq[a][b] = True
    for k in range(size):
        for i in range(size):
            if leq[i][k]:
                for j in range(size):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(size):
        for j in range(i + 1, size):
            if leq[i][j] and leq[j][i]:
                raise AlgebraError(f"cycle through elements {i} and {j}: not a partial order")
    tuples = tuple((i, j) for i in range(size) for j in range(size) if leq[i][j])
    return RelationalStructure(size, get_scheme(scheme), tuples, labels)


# ---------------------------------------------------------------------------
# Validation


class ValidationReport(NamedTuple):
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def validate_structure(structure: RelationalStructure, kind: str,
                       irreflexive: bool = False) -> ValidationReport:
    if structure.scheme.arity != 2:
        return ValidationReport(False, "binary", ())
    r = structure.tuple_set
    n = structure.size
    if kind in ("poset", "equivalence"):
        for a in range(n):
            if (a, a) not in r:
                return ValidationReport(False, "reflexive", (a, a))
    if kind == "poset":
        for a, b in structure.tuples:
            if a != b and (b, a) in r:
                return ValidationReport(False, "antisymmetric", (a, b))
    if kind in ("equivalence", "graph"):
        for a, b in structure.tuples:
            if (b, a) not in r:
                return ValidationReport(False, "symmetric", (a, b))
    if kind == "graph" and irreflexive:
        for a, b in structure.tuples:
            if a == b:
                return ValidationReport(False, "irreflexive", (a, a))
    if kind in ("poset", "equivalence"):
        succ = [[] for _ in range(n)]
        for a, b in structure.tuples:
            succ[a].append(b)
        for a, b in structure.tuples:
            for c in succ[b]:
                if (a, c) not in r:
                    return ValidationReport(False, "transitive", (a, b, c))
    if kind not in ("poset", "equivalence", "graph"):
        raise AlgebraError(f"unknown structure kind {kind!r}")
    return ValidationReport(True)


def _require(structure, kind):
    report = validate_structure(structure, kind)
    if not report:
        raise AlgebraError(f"not a {kind}: {report.axiom} fails at {report.witness}")


def hasse_cover_edges(poset: RelationalStructure) -> list[tuple[int, int]]:
    _require(poset, "poset")
    lt = [(a, b) for a, b in poset.tuples if a != b]
    covers = []
    for a, b in lt:
        if not any(poset.leq(a, c) and poset.leq(c, b) for c in poset.universe if c not in (a, b)):
            covers.append((a, b))
    return covers


def connected_components(graph: RelationalStructure) -> list[tuple[int, ...]]:
    _require(graph, "graph")
    parent = list(graph.universe)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in graph.tuples:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[int, list[int]] = {}
    for e in graph.universe:
        blocks.setdefault(find(e), []).append(e)
    return [tuple(b) for _, b in sorted(blocks.items())]


def equivalence_blocks(structure: RelationalStructure) -> list[tuple[int, ...]]:
    _require(structure, "equivalence")
    seen, blocks = set(), []
    for a in structure.universe:
        if a in seen:
            continue
        block = tuple(b for b in structure.universe if structure.leq(a, b))
        seen.update(block)
        blocks.append(block)
    return blocks


# ---------------------------------------------------------------------------
# Homomorphisms


def iter_relational_homomorphisms(source: RelationalStructure, target: RelationalStructure,
                                  injective: bool = False):
    if source.scheme != target.scheme:
        raise AlgebraError("relational homomorphisms need identical schemes")
    n = source.size
    # a tuple is checked once its largest element is assigned
    ready: list[list[tuple]] = [[] for _ in range(n)]
    for t in source.tuples:
        ready[max(t)].append(t)
    tset = target.tuple_set
    h = [0] * n
    used = set()

    def search(e):
        if e == n:
            yield tuple(h)
            return
        for v in target.universe:
            if injective and v in used:
                continue
            h[e] = v
            if all(tuple(h[x] for x in t) in tset for t in ready[e]):
                if injective:
                    used.add(v)
                yield from search(e + 1)
                used.discard(v)

    yield from search(0)


def enumerate_relational_homomorphisms(source: RelationalStructure,
                                       target: RelationalStructure) -> list[Homomorphism]:
    return [Homomorphism(source, target, m) for m in iter_relational_homomorphisms(source, target)]


def find_relational_isomorphism(a: RelationalStructure, b: RelationalStructure) -> Homomorphism | None:
    if a.size != b.size or len(a.tuples) != len(b.tuples):
        return None
    # with equal tuple counts an injective tuple-preserving map is onto the tuples
    for m in iter_relational_homomorphisms(a, b, injective=True):
        return Homomorphism(a, b, m)
    return None


def product_poset(p: RelationalStructure, q: RelationalStructure) -> RelationalStructure:
    """Componentwise order on pairs, encoded ``i*|q| + j``."""
    nq = q.size
    tuples = [(a * nq + c, b * nq + d) for a, b in p.tuples for c, d in q.tuples]
    labels = None
    if p.labels is not None or q.labels is not None:
        labels = [f"({p.label(i)},{q.label(j)})" for i in p.universe for j in q.universe]
    return RelationalStructure(p.size * nq, p.scheme, tuple(tuples), labels)
