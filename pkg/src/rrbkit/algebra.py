"""Finite algebras as operation tables, terms, identities and homomorphisms.

Elements of an algebra of size ``n`` are the integers ``0..n-1``.  A table for
a symbol of arity ``k`` is a ``k``-fold nested tuple (an ``int`` for
constants), so ``tables["mul"][a][b]`` is the product ``a*b``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence


class AlgebraError(ValueError):
    """Raised for malformed algebras, terms or mismatched signatures."""


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(n), int(a)) for n, a in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise AlgebraError("empty signature")
        names = [n for n, _ in symbols]
        if any(not n for n in names):
            raise AlgebraError("symbol names must be nonempty")
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate symbol names in {names}")
        if any(a < 0 for _, a in symbols):
            raise AlgebraError("arities must be nonnegative")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise AlgebraError(f"unknown symbol {name!r}")

    def __contains__(self, name) -> bool:
        return name in self.names

    def to_json(self) -> list:
        return [{"name": n, "arity": a} for n, a in self.symbols]

    @classmethod
    def from_json(cls, data) -> "Signature":
        return cls(tuple((d["name"], d["arity"]) for d in data))


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise AlgebraError("variable indices start at 1")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(map(str, self.args))})"


Term = Var | App


def variables(term: Term) -> set[int]:
    if isinstance(term, Var):
        return {term.index}
    out: set[int] = set()
    for a in term.args:
        out |= variables(a)
    return out


def depth(term: Term) -> int:
    if isinstance(term, Var) or not term.args:
        return 1
    return 1 + max(depth(a) for a in term.args)


def check_term(term: Term, signature: Signature) -> None:
    if isinstance(term, Var):
        return
    arity = signature.arity(term.symbol)
    if len(term.args) != arity:
        raise AlgebraError(
            f"{term.symbol} expects {arity} arguments, got {len(term.args)}")
    for a in term.args:
        check_term(a, signature)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_\-]*)|(\()|(\))|(,))")


def parse_term(text: str) -> Term:
    """Parse prefix syntax such as ``mul(x1,mul(x2,x1))``; ``x<k>`` is a variable."""
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise AlgebraError(f"bad term syntax at position {pos}: {text!r}")
        tokens.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    i = 0

    def parse():
        nonlocal i
        if i >= len(tokens) or tokens[i][0] != 1:
            where = tokens[i][2] if i < len(tokens) else len(text)
            raise AlgebraError(f"expected a symbol at position {where}: {text!r}")
        name = tokens[i][1]
        i += 1
        if re.fullmatch(r"x[1-9][0-9]*", name):
            return Var(int(name[1:]))
        args = []
        if i < len(tokens) and tokens[i][0] == 2:
            i += 1
            if i < len(tokens) and tokens[i][0] == 3:
                i += 1
                return App(name, ())
            while True:
                args.append(parse())
                if i < len(tokens) and tokens[i][0] == 4:
                    i += 1
                    continue
                if i < len(tokens) and tokens[i][0] == 3:
                    i += 1
                    break
                where = tokens[i][2] if i < len(tokens) else len(text)
                raise AlgebraError(f"expected ',' or ')' at position {where}: {text!r}")
        return App(name, tuple(args))

    term = parse()
    if i != len(tokens):
        raise AlgebraError(f"trailing input at position {tokens[i][2]}: {text!r}")
    return term


def mul(*factors: Term) -> Term:
    """Left-nested product of one or more terms."""
    out = factors[0]
    for f in factors[1:]:
        out = App("mul", (out, f))
    return out


X1, X2, X3 = Var(1), Var(2), Var(3)


# ---------------------------------------------------------------------------
# Algebras


def _freeze(table, arity: int, size: int, name: str):
    if arity == 0:
        value = int(table[0] if isinstance(table, (list, tuple)) else table)
        if not 0 <= value < size:
            raise AlgebraError(f"table {name}: entry {value} out of range")
        return value
    if len(table) != size:
        raise AlgebraError(f"table {name}: expected {size} rows, got {len(table)}")
    return tuple(_freeze(row, arity - 1, size, name) for row in table)


def _thaw(table, arity: int):
    if arity == 0:
        return table
    return [_thaw(row, arity - 1) for row in table]


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    signature: Signature
    size: int
    tables: Mapping[str, object]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError("algebras must be nonempty")
        if set(self.tables) != set(self.signature.names):
            raise AlgebraError(
                f"tables {sorted(self.tables)} do not match signature {self.signature.names}")
        frozen = {name: _freeze(self.tables[name], arity, self.size, name)
                  for name, arity in self.signature.symbols}
        object.__setattr__(self, "tables", frozen)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise AlgebraError("one label per element required")
            object.__setattr__(self, "labels", labels)

    def _key(self):
        return (self.signature, self.size, tuple(self.tables[n] for n in self.signature.names))

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size}, signature={self.signature.names})"

    @property
    def universe(self) -> range:
        return range(self.size)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else f"e{e}"

    def element(self, name) -> int:
        """Look an element up by label (or accept an index)."""
        if isinstance(name, int):
            return name
        names = self.labels if self.labels is not None else tuple(f"e{i}" for i in self.universe)
        try:
            return names.index(str(name))
        except ValueError:
            raise AlgebraError(f"no element labelled {name!r}") from None

    def table(self, name: str):
        return self.tables[name]

    def apply(self, name: str, args: Sequence[int]) -> int:
        t = self.tables[name]
        for a in args:
            t = t[a]
        return t

    def relabel(self, labels) -> "FiniteAlgebra":
        return FiniteAlgebra(self.signature, self.size, self.tables, tuple(labels))

    def tables_as_lists(self) -> dict:
        return {n: _thaw(self.tables[n], a) for n, a in self.signature.symbols}

    def arg_tuples(self, name: str) -> Iterator[tuple[int, ...]]:
        return itertools.product(self.universe, repeat=self.signature.arity(name))


def algebra_from_function(signature: Signature, size: int, ops: Mapping, labels=None) -> FiniteAlgebra:
    """Build tables by calling ``ops[name](*args)`` on every argument tuple."""
    tables = {}
    for name, arity in signature.symbols:
        f = ops[name]
        if arity == 0:
            tables[name] = f() if callable(f) else f
            continue

        def build(prefix, k):
            if k == 0:
                return f(*prefix)
            return [build(prefix + (i,), k - 1) for i in range(size)]

        tables[name] = build((), arity)
    return FiniteAlgebra(signature, size, tables, labels)


def _require_same_signature(a, b):
    if a.signature != b.signature:
        raise AlgebraError(f"signature mismatch: {a.signature.names} vs {b.signature.names}")


# ---------------------------------------------------------------------------
# Term evaluation and identities


def eval_term(algebra: FiniteAlgebra, term: Term, assignment: Sequence[int]) -> int:
    if isinstance(term, Var):
        if term.index > len(assignment):
            raise AlgebraError(f"no binding for variable x{term.index}")
        return assignment[term.index - 1]
    if term.symbol not in algebra.signature:
        raise AlgebraError(f"unknown symbol {term.symbol!r}")
    if len(term.args) != algebra.signature.arity(term.symbol):
        raise AlgebraError(f"arity mismatch at {term}")
    return algebra.apply(term.symbol, [eval_term(algebra, a, assignment) for a in term.args])


def compile_term(algebra: FiniteAlgebra, term: Term):
    """Return a function ``assignment -> value``; validates the term once."""
    check_term(term, algebra.signature)

    def build(t):
        if isinstance(t, Var):
            i = t.index - 1
            return lambda env: env[i]
        table = algebra.table(t.symbol)
        if not t.args:
            return lambda env: table
        if len(t.args) == 1:
            f = build(t.args[0])
            return lambda env: table[f(env)]
        if len(t.args) == 2:
            f, g = build(t.args[0]), build(t.args[1])
            return lambda env: table[f(env)][g(env)]
        fs = [build(a) for a in t.args]

        def app(env):
            r = table
            for h in fs:
                r = r[h(env)]
            return r
        return app

    return build(term)


class IdentityCheck(NamedTuple):
    holds: bool
    counterexample: dict | None  # variable index -> element


def holds_identity(algebra: FiniteAlgebra, lhs: Term, rhs: Term) -> IdentityCheck:
    """Check ``lhs = rhs`` under every assignment; report the lexicographically first failure."""
    f, g = compile_term(algebra, lhs), compile_term(algebra, rhs)
    vs = sorted(variables(lhs) | variables(rhs))
    width = max(vs, default=0)
    env = [0] * width
    for values in itertools.product(algebra.universe, repeat=len(vs)):
        for v, e in zip(vs, values):
            env[v - 1] = e
        if f(env) != g(env):
            return IdentityCheck(False, dict(zip(vs, values)))
    return IdentityCheck(True, None)


@dataclass(frozen=True)
class VarietySpec:
    signature: Signature
    identities: tuple[tuple[Term, Term], ...]
    registry_id: str | None = None

    def __post_init__(self):
        for lhs, rhs in self.identities:
            check_term(lhs, self.signature)
            check_term(rhs, self.signature)


def _ids(*pairs: str) -> tuple:
    return tuple((parse_term(a), parse_term(b)) for a, b in pairs)


MUL = Signature((("mul", 2),))
LATTICE = Signature((("meet", 2), ("join", 2), ("bot", 0), ("top", 0)))

RRB = VarietySpec(MUL, _ids(
    ("mul(mul(x1,x2),x3)", "mul(x1,mul(x2,x3))"),
    ("mul(x1,x1)", "x1"),
    ("mul(mul(x1,x2),x1)", "mul(x2,x1)"),
), "rrb")

SEMILATTICE = VarietySpec(MUL, _ids(
    ("mul(mul(x1,x2),x3)", "mul(x1,mul(x2,x3))"),
    ("mul(x1,x1)", "x1"),
    ("mul(x1,x2)", "mul(x2,x1)"),
), "semilattice")

_LATTICE_LAWS = (
    ("meet(meet(x1,x2),x3)", "meet(x1,meet(x2,x3))"),
    ("join(join(x1,x2),x3)", "join(x1,join(x2,x3))"),
    ("meet(x1,x2)", "meet(x2,x1)"),
    ("join(x1,x2)", "join(x2,x1)"),
    ("meet(x1,x1)", "x1"),
    ("join(x1,x1)", "x1"),
    ("meet(x1,join(x1,x2))", "x1"),
    ("join(x1,meet(x1,x2))", "x1"),
    ("meet(x1,bot)", "bot"),
    ("join(x1,top)", "top"),
)

#: Bounded lattices; not a registry variety (no free-algebra backend).
BOUNDED_LATTICE = VarietySpec(LATTICE, _ids(*_LATTICE_LAWS))

BOUNDED_DL = VarietySpec(LATTICE, _ids(
    *_LATTICE_LAWS,
    ("meet(x1,join(x2,x3))", "join(meet(x1,x2),meet(x1,x3))"),
), "bounded-dl")

VARIETIES = {v.registry_id: v for v in (RRB, SEMILATTICE, BOUNDED_DL)}


def get_variety(variety) -> VarietySpec:
    if isinstance(variety, VarietySpec):
        return variety
    try:
        return VARIETIES[variety]
    except KeyError:
        raise AlgebraError(
            f"unknown variety {variety!r}; expected one of {sorted(VARIETIES)}") from None


@dataclass
class MembershipReport:
    passed: bool
    failures: list = field(default_factory=list)  # (lhs, rhs, counterexample)

    def __bool__(self):
        return self.passed


def check_variety_membership(algebra: FiniteAlgebra, variety) -> MembershipReport:
    variety = get_variety(variety)
    _require_same_signature(algebra, variety)
    failures = []
    for lhs, rhs in variety.identities:
        res = holds_identity(algebra, lhs, rhs)
        if not res.holds:
            failures.append((lhs, rhs, res.counterexample))
    return MembershipReport(not failures, failures)


def is_rrb(algebra: FiniteAlgebra) -> bool:
    return algebra.signature == MUL and check_variety_membership(algebra, RRB).passed


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    """A total map between two algebras or two relational structures, verified on construction."""
    source: object
    target: object
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.source.size or any(not 0 <= v < self.target.size for v in m):
            raise AlgebraError("map is not a total function between the universes")
        if isinstance(self.source, FiniteAlgebra):
            _require_same_signature(self.source, self.target)
            bad = first_violation(self.source, self.target, m)
            if bad is not None:
                raise AlgebraError(f"map does not preserve {bad[0]} at {bad[1]}")
        else:
            target = self.target.tuple_set
            for t in self.source.tuples:
                if tuple(m[e] for e in t) not in target:
                    raise AlgebraError(f"map does not preserve the tuple {t}")

    def __call__(self, e: int) -> int:
        return self.map[e]

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """``other`` after ``self``."""
        return Homomorphism(self.source, other.target, tuple(other.map[v] for v in self.map))

    @property
    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.map)) == self.source.size


def first_violation(a: FiniteAlgebra, b: FiniteAlgebra, m: Sequence[int]):
    for name, arity in a.signature.symbols:
        ta, tb = a.table(name), b.table(name)
        for args in itertools.product(a.universe, repeat=arity):
            if m[a.apply(name, args)] != b.apply(name, [m[x] for x in args]):
                return name, args
    return None


def identity_homomorphism(a) -> Homomorphism:
    return Homomorphism(a, a, tuple(range(a.size)))


def _constraints(a: FiniteAlgebra):
    """Per element, the (symbol, args, result) facts whose arguments include it."""
    by_elem: list[list] = [[] for _ in a.universe]
    constants = []
    for name, arity in a.signature.symbols:
        if arity == 0:
            constants.append((name, a.table(name)))
            continue
        for args in itertools.product(a.universe, repeat=arity):
            fact = (name, args, a.apply(name, args))
            for e in set(args):
                by_elem[e].append(fact)
    return by_elem, constants


def iter_homomorphisms(source: FiniteAlgebra, target: FiniteAlgebra, injective: bool = False):
    """Yield homomorphism maps in lexicographic order.

    Backtracks over source elements in index order; every assignment is
    propagated through the tables so generated elements are forced.
    """
    _require_same_signature(source, target)
    by_elem, constants = _constraints(source)
    n = source.size
    h = [-1] * n
    used = [0] * target.size

    def assign(e, v, trail):
        stack = [(e, v)]
        while stack:
            e, v = stack.pop()
            if h[e] != -1:
                if h[e] != v:
                    return False
                continue
            if injective and used[v]:
                return False
            h[e] = v
            used[v] += 1
            trail.append(e)
            for name, args, r in by_elem[e]:
                vals = [h[x] for x in args]
                if -1 in vals:
                    continue
                want = target.apply(name, vals)
                if h[r] == -1:
                    stack.append((r, want))
                elif h[r] != want:
                    return False
        return True

    def undo(trail):
        for e in trail:
            used[h[e]] -= 1
            h[e] = -1

    root: list[int] = []
    ok = True
    for name, c in constants:
        if not assign(c, target.table(name), root):
            ok = False
            break
    if not ok:
        return

    def search(start):
        e = start
        while e < n and h[e] != -1:
            e += 1
        if e == n:
            yield tuple(h)
            return
        for v in target.universe:
            trail: list[int] = []
            if assign(e, v, trail):
                yield from search(e + 1)
            undo(trail)

    yield from search(0)


def enumerate_homomorphisms(source: FiniteAlgebra, target: FiniteAlgebra) -> list[Homomorphism]:
    return [Homomorphism(source, target, m) for m in iter_homomorphisms(source, target)]


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Homomorphism | None:
    _require_same_signature(a, b)
    if a.size != b.size:
        return None
    for m in iter_homomorphisms(a, b, injective=True):
        inverse = [0] * a.size
        for i, v in enumerate(m):
            inverse[v] = i
        if first_violation(b, a, inverse) is None:
            return Homomorphism(a, b, m)
    return None


# ---------------------------------------------------------------------------
# Products and subuniverses


class Product(NamedTuple):
    algebra: FiniteAlgebra
    proj1: Homomorphism
    proj2: Homomorphism
    decode: tuple[tuple[int, int], ...]  # element index -> (i, j)

    def encode(self, i: int, j: int) -> int:
        return i * self.proj2.target.size + j


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra) -> Product:
    _require_same_signature(a, b)
    nb = b.size
    decode = tuple((i, j) for i in a.universe for j in b.universe)

    def lift(name):
        def op(*args):
            x = a.apply(name, [decode[t][0] for t in args])
            y = b.apply(name, [decode[t][1] for t in args])
            return x * nb + y
        return op

    labels = None
    if a.labels is not None or b.labels is not None:
        labels = [f"({a.label(i)},{b.label(j)})" for i, j in decode]
    prod = algebra_from_function(a.signature, a.size * nb,
                                 {n: lift(n) for n in a.signature.names}, labels)
    p1 = Homomorphism(prod, a, tuple(i for i, _ in decode))
    p2 = Homomorphism(prod, b, tuple(j for _, j in decode))
    return Product(prod, p1, p2, decode)


class Subuniverse(NamedTuple):
    elements: tuple[int, ...]      # sorted; restriction index k corresponds to elements[k]
    algebra: FiniteAlgebra
    index: dict                    # original element -> restriction index


def closure(algebra: FiniteAlgebra, seed) -> set[int]:
    """Least subset containing ``seed`` closed under all operations."""
    out = set(seed)
    for name, arity in algebra.signature.symbols:
        if arity == 0:
            out.add(algebra.table(name))
    frontier = True
    while frontier:
        frontier = False
        current = sorted(out)
        for name, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            for args in itertools.product(current, repeat=arity):
                r = algebra.apply(name, args)
                if r not in out:
                    out.add(r)
                    frontier = True
    return out


def generated_subuniverse(algebra: FiniteAlgebra, seed) -> Subuniverse:
    seed = set(seed)
    if not seed:
        raise AlgebraError("empty seed")
    if any(not 0 <= s < algebra.size for s in seed):
        raise AlgebraError("seed outside the universe")
    elems = tuple(sorted(closure(algebra, seed)))
    return Subuniverse(elems, restrict(algebra, elems), {e: k for k, e in enumerate(elems)})


def restrict(algebra: FiniteAlgebra, elems: Sequence[int]) -> FiniteAlgebra:
    """Restriction to a closed subset, re-indexed in the given order."""
    index = {e: k for k, e in enumerate(elems)}

    def lift(name):
        return lambda *args: index[algebra.apply(name, [elems[k] for k in args])]

    labels = [algebra.label(e) for e in elems] if algebra.labels is not None else None
    return algebra_from_function(algebra.signature, len(elems),
                                 {n: lift(n) for n in algebra.signature.names}, labels)
