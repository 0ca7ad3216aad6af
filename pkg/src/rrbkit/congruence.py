"""Partitions, congruence generation, quotients and factor congruences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import AlgebraError, FiniteAlgebra, Homomorphism, algebra_from_function

#: Largest universe for which the full congruence lattice is enumerated.
MAX_CONGRUENCE_SIZE = 12
#: Monoliths only need the O(n^2) principal congruences, so they get more room.
MAX_MONOLITH_SIZE = 64


class SizeBoundError(AlgebraError):
    pass


@dataclass(frozen=True, order=False)
class Partition:
    """Blocks stored as ``representative[i]`` = least member of i's block."""
    representative: tuple[int, ...]

    def __post_init__(self):
        rep = tuple(int(r) for r in self.representative)
        object.__setattr__(self, "representative", rep)
        for i, r in enumerate(rep):
            if r > i or rep[r] != r:
                raise AlgebraError(f"not in canonical representative form: {rep}")

    @property
    def size(self) -> int:
        return len(self.representative)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Any block labelling, e.g. a map; blocks are the fibres."""
        first: dict = {}
        return cls(tuple(first.setdefault(x, i) for i, x in enumerate(labels)))

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        label = list(range(n))
        for b in blocks:
            b = list(b)
            for x in b:
                label[x] = ("block", min(b))
        return cls.from_labels(label)

    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.representative):
            out.setdefault(r, []).append(i)
        return [tuple(b) for b in out.values()]

    @property
    def n_blocks(self) -> int:
        return sum(1 for i, r in enumerate(self.representative) if i == r)

    def related(self, a: int, b: int) -> bool:
        return self.representative[a] == self.representative[b]

    def block_of(self, a: int) -> tuple[int, ...]:
        r = self.representative[a]
        return tuple(i for i, s in enumerate(self.representative) if s == r)

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of other."""
        return all(other.related(i, r) for i, r in enumerate(self.representative))

    def is_identity(self) -> bool:
        return self.n_blocks == self.size

    def is_full(self) -> bool:
        return self.n_blocks == 1

    def sort_key(self):
        return (-self.n_blocks, self.representative)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def partition(self) -> Partition:
        return Partition(tuple(self.find(i) for i in range(len(self.parent))))


def _translations(algebra: FiniteAlgebra):
    """Unary polynomial steps: for each (symbol, position, context) a map e -> op(..e..)."""
    steps = []
    n = algebra.size
    for name, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        table = algebra.table(name)
        if arity == 1:
            steps.append(table)
        elif arity == 2:
            for c in range(n):
                steps.append(table[c])                        # e -> op(c, e)
                steps.append(tuple(table[e][c] for e in range(n)))  # e -> op(e, c)
        else:
            for pos in range(arity):
                for ctx in itertools.product(range(n), repeat=arity - 1):
                    steps.append(tuple(
                        algebra.apply(name, ctx[:pos] + (e,) + ctx[pos:]) for e in range(n)))
    return steps


def _steps(algebra):
    steps = algebra.__dict__.get("_translation_cache")
    if steps is None:
        steps = _translations(algebra)
        object.__setattr__(algebra, "_translation_cache", steps)
    return steps


@dataclass(frozen=True, eq=False)
class CongruenceWitness:
    algebra: FiniteAlgebra
    partition: Partition

    def __post_init__(self):
        if self.partition.size != self.algebra.size:
            raise AlgebraError("partition size does not match the algebra")
        bad = incompatibility(self.algebra, self.partition)
        if bad is not None:
            raise AlgebraError(f"partition is not compatible with the operations: {bad}")

    def __eq__(self, other):
        return (isinstance(other, CongruenceWitness) and self.partition == other.partition
                and self.algebra == other.algebra)

    def __hash__(self):
        return hash(self.partition)

    def __repr__(self):
        return f"CongruenceWitness({[list(b) for b in self.partition.blocks()]})"

    def blocks(self):
        return self.partition.blocks()


def incompatibility(algebra: FiniteAlgebra, partition: Partition):
    """A witness (a, b, images) breaking compatibility, or None."""
    rep = partition.representative
    for step in _steps(algebra):
        for a, r in enumerate(rep):
            if a != r and rep[step[a]] != rep[step[r]]:
                return a, r, step[a], step[r]
    return None


def is_congruence(algebra: FiniteAlgebra, partition: Partition) -> bool:
    return incompatibility(algebra, partition) is None


def _close(algebra, uf: _UnionFind, pending) -> None:
    steps = _steps(algebra)
    while pending:
        a, b = pending.pop()
        for step in steps:
            x, y = step[a], step[b]
            if uf.union(x, y):
                pending.append((x, y))


def congruence_generated(algebra: FiniteAlgebra, pairs) -> CongruenceWitness:
    """Least congruence containing ``pairs`` (union-find closed under translations)."""
    uf = _UnionFind(algebra.size)
    pending = []
    for a, b in pairs:
        if not (0 <= a < algebra.size and 0 <= b < algebra.size):
            raise AlgebraError(f"pair ({a}, {b}) outside the universe")
        if uf.union(a, b):
            pending.append((a, b))
    _close(algebra, uf, pending)
    return CongruenceWitness(algebra, uf.partition())


def principal(algebra: FiniteAlgebra, a: int, b: int) -> Partition:
    return congruence_generated(algebra, [(a, b)]).partition


class Quotient(NamedTuple):
    algebra: FiniteAlgebra
    projection: Homomorphism


def quotient_algebra(witness: CongruenceWitness) -> Quotient:
    """Blocks re-indexed in order of least member; labels taken from least members."""
    algebra, part = witness.algebra, witness.partition
    if not is_congruence(algebra, part):
        raise AlgebraError("partition is not a congruence")
    reps = sorted(set(part.representative))
    index = {r: k for k, r in enumerate(reps)}
    proj = tuple(index[r] for r in part.representative)

    def lift(name):
        return lambda *args: proj[algebra.apply(name, [reps[k] for k in args])]

    labels = [algebra.label(r) for r in reps] if algebra.labels is not None else None
    q = algebra_from_function(algebra.signature, len(reps),
                              {n: lift(n) for n in algebra.signature.names}, labels)
    return Quotient(q, Homomorphism(algebra, q, proj))


def kernel(h: Homomorphism) -> Partition:
    return Partition.from_labels(h.map)


# ---------------------------------------------------------------------------
# Lattice operations on partitions


class Composition(NamedTuple):
    pairs: frozenset   # the relation a (theta ; delta) b
    full: bool
    empty: bool


def combine_partitions(a: Partition, b: Partition, mode: str):
    if a.size != b.size:
        raise AlgebraError("partitions of different sizes")
    n = a.size
    if mode == "meet":
        return Partition.from_labels(
            [(a.representative[i], b.representative[i]) for i in range(n)])
    if mode == "join":
        uf = _UnionFind(n)
        for p in (a, b):
            for i, r in enumerate(p.representative):
                uf.union(i, r)
        return uf.partition()
    if mode == "compose":
        rel = frozenset((x, y) for x in range(n) for z in a.block_of(x) for y in b.block_of(z))
        return Composition(rel, len(rel) == n * n, not rel)
    raise AlgebraError(f"unknown mode {mode!r}")


def composes_to_full(a: Partition, b: Partition) -> bool:
    """theta;delta = A x A, i.e. every theta-block meets every delta-block."""
    blocks_a = [set(x) for x in a.blocks()]
    blocks_b = [set(x) for x in b.blocks()]
    return all(x & y for x in blocks_a for y in blocks_b)


def are_complementary(a: Partition, b: Partition) -> bool:
    return (combine_partitions(a, b, "meet").is_identity()
            and composes_to_full(a, b) and composes_to_full(b, a))


# ---------------------------------------------------------------------------
# Enumeration


def _check_bound(algebra, max_size, default=MAX_CONGRUENCE_SIZE):
    limit = default if max_size is None else max_size
    if algebra.size > limit:
        raise SizeBoundError(
            f"algebra of size {algebra.size} exceeds the congruence enumeration bound {limit}")


def principal_congruences(algebra: FiniteAlgebra) -> dict:
    """Map (a, b) with a < b to Cg(a, b)."""
    return {(a, b): principal(algebra, a, b)
            for a in algebra.universe for b in algebra.universe if a < b}


def all_congruences(algebra: FiniteAlgebra, max_size: int | None = None) -> list[CongruenceWitness]:
    """Every congruence, as joins of principal congruences, in canonical order."""
    _check_bound(algebra, max_size)
    princ = sorted(set(principal_congruences(algebra).values()), key=Partition.sort_key)
    found = {Partition.identity(algebra.size)}
    frontier = [Partition.identity(algebra.size)]
    while frontier:
        nxt = []
        for c in frontier:
            for p in princ:
                j = combine_partitions(c, p, "join")
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return [CongruenceWitness(algebra, p) for p in sorted(found, key=Partition.sort_key)]


def complementary_factor_pairs(algebra: FiniteAlgebra, max_size: int | None = None):
    """Unordered pairs (theta, delta) of complementary factor congruences, theta first canonically."""
    cons = all_congruences(algebra, max_size)
    out = []
    for i, x in enumerate(cons):
        for y in cons[i:]:
            if are_complementary(x.partition, y.partition):
                out.append((x, y))
    return out


class MonolithResult(NamedTuple):
    monolith: CongruenceWitness | None
    subdirectly_irreducible: bool


def monolith(algebra: FiniteAlgebra, max_size: int | None = None) -> MonolithResult:
    """Intersection of all non-identity principal congruences; SI iff it is not the identity."""
    if algebra.size == 1:
        raise AlgebraError("subdirect irreducibility is undefined for the trivial algebra")
    _check_bound(algebra, max_size, MAX_MONOLITH_SIZE)
    meet = Partition.full(algebra.size)
    for p in set(principal_congruences(algebra).values()):
        meet = combine_partitions(meet, p, "meet")
    if meet.is_identity():
        return MonolithResult(None, False)
    return MonolithResult(CongruenceWitness(algebra, meet), True)
