"""Finite free algebras for the registry varieties.

Backends:

* ``rrb`` -- injective words; ``u*v`` keeps the last occurrence of each letter
  (the letters of ``u`` missing from ``v``, in order, followed by ``v``).
* ``semilattice`` -- nonempty subsets of the generators, product = union.
* ``bounded-dl`` -- monotone Boolean functions of the generators (truth vectors).

``free_algebra_oracle`` rebuilds small free algebras from the defining
identities alone, without any normal form, to cross-check the backends.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (
    AlgebraError,
    App,
    FiniteAlgebra,
    Homomorphism,
    Term,
    Var,
    VarietySpec,
    algebra_from_function,
    eval_term,
    get_variety,
    mul,
)

BOUNDS = {"rrb": 5, "semilattice": 10, "bounded-dl": 4}
DEFAULT_LETTERS = "xyzwvutsrq"


class OracleDepthError(AlgebraError):
    """The term-depth bound was too small to close the free algebra."""


@dataclass(frozen=True, eq=False)
class FreeAlgebraResult:
    variety: str
    algebra: FiniteAlgebra
    generators: tuple[int, ...]
    normal_forms: tuple[str, ...]
    terms: tuple[Term, ...]     # a representative term per element, over x1..xn

    @property
    def n_generators(self) -> int:
        return len(self.generators)


def _names(n, names):
    if names is None:
        if n > len(DEFAULT_LETTERS):
            return [f"g{i}" for i in range(n)]
        return list(DEFAULT_LETTERS[:n])
    names = [str(s) for s in names]
    if len(names) != n:
        raise AlgebraError("one name per generator required")
    return names


def _join_names(names, sep="·"):
    return "".join(names) if all(len(s) == 1 for s in names) else sep.join(names)


def word_product(u: tuple, v: tuple) -> tuple:
    vs = set(v)
    return tuple(a for a in u if a not in vs) + tuple(v)


def _free_rrb(n, names):
    words = [w for k in range(1, n + 1) for w in itertools.permutations(range(n), k)]
    index = {w: i for i, w in enumerate(words)}
    alg = algebra_from_function(
        get_variety("rrb").signature, len(words),
        {"mul": lambda a, b: index[word_product(words[a], words[b])]},
        [_join_names([names[i] for i in w]) for w in words])
    terms = [mul(*[Var(i + 1) for i in w]) for w in words]
    return alg, tuple(index[(i,)] for i in range(n)), terms


def _free_semilattice(n, names):
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    index = {s: i for i, s in enumerate(subsets)}
    alg = algebra_from_function(
        get_variety("semilattice").signature, len(subsets),
        {"mul": lambda a, b: index[tuple(sorted(set(subsets[a]) | set(subsets[b])))]},
        [_join_names([names[i] for i in s]) for s in subsets])
    terms = [mul(*[Var(i + 1) for i in s]) for s in subsets]
    return alg, tuple(index[(i,)] for i in range(n)), terms


def _min_implicants(vec, n):
    """Minimal true points of a monotone function, as bitmasks."""
    true = [m for m in range(1 << n) if vec[m]]
    return [m for m in true if not any(t != m and t & m == t for t in true)]


def _free_bdl(n, names):
    points = range(1 << n)
    bot = tuple(0 for _ in points)
    top = tuple(1 for _ in points)
    gens = [tuple((m >> i) & 1 for m in points) for i in range(n)]
    found = {bot, top, *gens}
    frontier = True
    while frontier:
        frontier = False
        current = sorted(found)
        for u, v in itertools.combinations(current, 2):
            for w in (tuple(a & b for a, b in zip(u, v)), tuple(a | b for a, b in zip(u, v))):
                if w not in found:
                    found.add(w)
                    frontier = True
    rest = sorted(found - set(gens), key=lambda v: (sum(v), v))
    vectors = list(dict.fromkeys(gens)) + rest
    index = {v: i for i, v in enumerate(vectors)}

    def show(v):
        if v == bot:
            return "0"
        if v == top:
            return "1"
        parts = []
        for m in _min_implicants(v, n):
            parts.append("∧".join(names[i] for i in range(n) if (m >> i) & 1))
        return " ∨ ".join(parts)

    def term(v):
        if v == bot:
            return App("bot")
        if v == top:
            return App("top")
        out = None
        for m in _min_implicants(v, n):
            conj = None
            for i in range(n):
                if (m >> i) & 1:
                    conj = Var(i + 1) if conj is None else App("meet", (conj, Var(i + 1)))
            out = conj if out is None else App("join", (out, conj))
        return out

    alg = algebra_from_function(
        get_variety("bounded-dl").signature, len(vectors),
        {"meet": lambda a, b: index[tuple(x & y for x, y in zip(vectors[a], vectors[b]))],
         "join": lambda a, b: index[tuple(x | y for x, y in zip(vectors[a], vectors[b]))],
         "bot": index[bot], "top": index[top]},
        [show(v) for v in vectors])
    return alg, tuple(index[g] for g in gens), [term(v) for v in vectors]


_BACKENDS = {"rrb": _free_rrb, "semilattice": _free_semilattice, "bounded-dl": _free_bdl}


def free_algebra(variety: str, n: int, names=None) -> FreeAlgebraResult:
    """The free algebra on ``n`` generators; generator ``i`` is element ``i``."""
    if isinstance(variety, VarietySpec):
        variety = variety.registry_id
    if variety not in _BACKENDS:
        raise AlgebraError(f"no free-algebra backend for {variety!r}")
    lowest = 0 if variety == "bounded-dl" else 1
    if not lowest <= n <= BOUNDS[variety]:
        raise AlgebraError(
            f"{variety} free algebra supports {lowest}..{BOUNDS[variety]} generators, got {n}")
    names = _names(n, names)
    alg, gens, terms = _BACKENDS[variety](n, names)
    return FreeAlgebraResult(variety, alg, gens, alg.labels, tuple(terms))


def extend_to_free_morphism(f, fx: FreeAlgebraResult, fy: FreeAlgebraResult) -> Homomorphism:
    """The homomorphism F(X) -> F(Y) sending generator x to generator f(x)."""
    if fx.variety != fy.variety:
        raise AlgebraError("free algebras over different varieties")
    f = list(f)
    if len(f) != fx.n_generators or any(not 0 <= v < fy.n_generators for v in f):
        raise AlgebraError("generator map out of range")
    env = [fy.generators[v] for v in f]
    return Homomorphism(fx.algebra, fy.algebra,
                        tuple(eval_term(fy.algebra, t, env) for t in fx.terms))


# ---------------------------------------------------------------------------
# Oracle


class _EGraph:
    """Congruence-closed term graph: classes are union-find ids, nodes are hash-consed."""

    def __init__(self):
        self.parent: list[int] = []
        self.nodes: dict[tuple, int] = {}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def add(self, symbol, args) -> int:
        key = (symbol, tuple(self.find(a) for a in args))
        if key in self.nodes:
            return self.find(self.nodes[key])
        c = len(self.parent)
        self.parent.append(c)
        self.nodes[key] = c
        return c

    def lookup(self, symbol, args):
        c = self.nodes.get((symbol, tuple(self.find(a) for a in args)))
        return None if c is None else self.find(c)

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.parent[max(a, b)] = min(a, b)
        return True

    def rebuild(self):
        """Restore the hash-cons invariant, merging congruent nodes."""
        changed = True
        while changed:
            changed = False
            fresh: dict[tuple, int] = {}
            for (sym, args), c in self.nodes.items():
                key = (sym, tuple(self.find(a) for a in args))
                c = self.find(c)
                if key in fresh and fresh[key] != c:
                    self.union(fresh[key], c)
                    changed = True
                fresh[key] = self.find(c)
            self.nodes = fresh

    def classes(self):
        return sorted({self.find(c) for c in range(len(self.parent))})


def _lookup_term(eg: _EGraph, term: Term, env):
    if isinstance(term, Var):
        return env[term.index - 1]
    args = []
    for a in term.args:
        c = _lookup_term(eg, a, env)
        if c is None:
            return None
        args.append(c)
    return eg.lookup(term.symbol, args)


def free_algebra_oracle(variety, n: int, depth: int, max_terms: int = 10**6) -> FiniteAlgebra:
    """Free algebra on ``n`` generators built from the identities alone.

    Round ``k`` applies every operation to all current classes (terms of
    depth ``k``), then merges the two sides of every identity instance whose
    nodes exist, up to congruence closure.  The algebra is returned once a
    round creates no new class; if that has not happened after ``depth``
    rounds, :class:`OracleDepthError` is raised.
    """
    variety = get_variety(variety)
    sig = variety.signature
    eg = _EGraph()
    gens = [eg.add(("var", i), ()) for i in range(n)]
    for name, arity in sig.symbols:
        if arity == 0:
            eg.add(name, ())
    if not gens and all(a > 0 for _, a in sig.symbols):
        raise AlgebraError("no generators and no constants")
    max_vars = max((max((v.index for v in _vars(l) | _vars(r)), default=0)
                    for l, r in variety.identities), default=0)

    def saturate():
        while True:
            merged = False
            cls = eg.classes()
            for lhs, rhs in variety.identities:
                for env in itertools.product(cls, repeat=max_vars):
                    a = _lookup_term(eg, lhs, env)
                    if a is None:
                        continue
                    b = _lookup_term(eg, rhs, env)
                    if b is not None and eg.union(a, b):
                        merged = True
            eg.rebuild()
            if not merged:
                return

    saturate()
    for _ in range(depth):
        before = eg.classes()
        for name, arity in sig.symbols:
            if arity == 0:
                continue
            for args in itertools.product(before, repeat=arity):
                eg.add(name, args)
        if len(eg.parent) > max_terms:
            raise OracleDepthError(f"term graph exceeded {max_terms} nodes")
        saturate()
        if eg.classes() == [eg.find(c) for c in before] and _closed(eg, sig, before):
            return _to_algebra(eg, sig, gens)
    raise OracleDepthError(f"free algebra not closed within term depth {depth}")


def _vars(term):
    if isinstance(term, Var):
        return {term}
    out = set()
    for a in term.args:
        out |= _vars(a)
    return out


def _closed(eg, sig, classes):
    for name, arity in sig.symbols:
        for args in itertools.product(classes, repeat=arity):
            if eg.lookup(name, args) is None:
                return False
    return True


def _to_algebra(eg, sig, gens):
    order = []
    for g in gens:
        if eg.find(g) not in order:
            order.append(eg.find(g))
    order += [c for c in eg.classes() if c not in order]
    index = {c: i for i, c in enumerate(order)}
    ops = {}
    for name, arity in sig.symbols:
        if arity == 0:
            ops[name] = index[eg.lookup(name, ())]
        else:
            ops[name] = (lambda nm: lambda *a: index[eg.lookup(nm, [order[x] for x in a])])(name)
    return algebra_from_function(sig, len(order), ops)
