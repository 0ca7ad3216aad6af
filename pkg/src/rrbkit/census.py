"""Small structures up to isomorphism: posets, lattices and right regular bands.

Posets are grown by adding a new maximal element above a down-set of the
previous level; duplicates are removed with a Weisfeiler-Lehman hash bucket
followed by an exact isomorphism test.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx

from .algebra import LATTICE, MUL, AlgebraError, FiniteAlgebra, algebra_from_function, is_rrb

Order = tuple[tuple[bool, ...], ...]   # leq[i][j]


def _digraph(leq: Order) -> nx.DiGraph:
    g = nx.DiGraph()
    n = len(leq)
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(n) if i != j and leq[i][j])
    return g


class _IsoClasses:
    def __init__(self):
        self.buckets: dict[str, list] = {}
        self.items: list = []

    def add(self, leq: Order) -> bool:
        g = _digraph(leq)
        key = f"{len(leq)}:{nx.weisfeiler_lehman_graph_hash(g, iterations=3)}"
        bucket = self.buckets.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(g, other):
                return False
        bucket.append(g)
        self.items.append(leq)
        return True


def _downsets(leq: Order):
    n = len(leq)
    for mask in range(1 << n):
        members = [i for i in range(n) if (mask >> i) & 1]
        if all((mask >> j) & 1 for i in members for j in range(n) if leq[j][i]):
            yield members


def _extend(leq: Order, below) -> Order:
    n = len(leq)
    below = set(below)
    rows = [tuple(leq[i]) + (i in below,) for i in range(n)]
    rows.append(tuple(False for _ in range(n)) + (True,))
    return tuple(rows)


def _meet_ok(leq: Order, below) -> bool:
    """Adding a maximal element over ``below`` keeps all binary meets."""
    below = set(below)
    if not below and leq:
        return False
    for x in range(len(leq)):
        common = [z for z in below if leq[z][x]]
        if not any(all(leq[w][z] for w in common) for z in common):
            return False
    return True


@lru_cache(maxsize=None)
def _level(n: int, meet_closed: bool) -> tuple[Order, ...]:
    if n == 0:
        return ((),)
    classes = _IsoClasses()
    for leq in _level(n - 1, meet_closed):
        for below in _downsets(leq):
            if meet_closed and not _meet_ok(leq, below):
                continue
            classes.add(_extend(leq, below))
    return tuple(classes.items)


def posets(n: int) -> tuple[Order, ...]:
    """All posets on n elements up to isomorphism; indices form a linear extension."""
    return _level(n, False)


def meet_semilattices(n: int) -> tuple[Order, ...]:
    return _level(n, True)


def lattice_orders(n: int) -> tuple[Order, ...]:
    """Lattices of size n (>= 2) as orders: a meet-semilattice with a new top."""
    if n < 1:
        raise AlgebraError("lattices are nonempty")
    if n == 1:
        return (((True,),),)
    return tuple(_extend(s, range(n - 1)) for s in meet_semilattices(n - 1))


def lattice_from_order(leq, labels=None) -> FiniteAlgebra:
    """Bounded lattice {meet, join, bot, top} of a finite lattice order."""
    n = len(leq)

    def bound(candidates, lower):
        for z in candidates:
            if all((leq[w][z] if lower else leq[z][w]) for w in candidates):
                return z
        raise AlgebraError("order is not a lattice")

    def meet(a, b):
        return bound([z for z in range(n) if leq[z][a] and leq[z][b]], lower=True)

    def join(a, b):
        return bound([z for z in range(n) if leq[a][z] and leq[b][z]], lower=False)

    bot = bound(list(range(n)), lower=False)
    top = bound(list(range(n)), lower=True)
    return algebra_from_function(LATTICE, n, {"meet": meet, "join": join, "bot": bot, "top": top},
                                 labels)


def census_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    return ["0"] + [f"e{i}" for i in range(1, n - 1)] + ["1"]


def lattices(n: int) -> list[FiniteAlgebra]:
    return [lattice_from_order(o, census_labels(n)) for o in lattice_orders(n)]


def semilattice_from_order(leq, labels=None) -> FiniteAlgebra:
    """Meet-semilattice as a commutative RRB (``mul`` = meet)."""
    lat = lattice_from_order(leq, labels) if _has_top(leq) else None
    if lat is not None:
        return FiniteAlgebra(MUL, lat.size, {"mul": lat.table("meet")}, lat.labels)
    n = len(leq)

    def meet(a, b):
        common = [z for z in range(n) if leq[z][a] and leq[z][b]]
        for z in common:
            if all(leq[w][z] for w in common):
                return z
        raise AlgebraError("order is not a meet-semilattice")

    return algebra_from_function(MUL, n, {"mul": meet}, labels)


def _has_top(leq):
    n = len(leq)
    return any(all(leq[i][t] for i in range(n)) for t in range(n))


# ---------------------------------------------------------------------------
# Right regular bands


def _canonical_table(table) -> tuple:
    n = len(table)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        # relabel element i as perm[i]
        t = tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or t < best:
            best = t
    return best


def iter_band_tables(n: int, domains=None):
    """Yield every RRB table on {0..n-1} allowed by ``domains[a][b]`` (default: all)."""
    t = [[-1] * n for _ in range(n)]
    cells = []
    for a in range(n):
        for b in range(n):
            if domains is None:
                dom = [a] if a == b else list(range(n))
            else:
                dom = list(domains[a][b])
            cells.append((a, b, dom))
    # forced cells first, then the rest in row-major order
    cells.sort(key=lambda c: (len(c[2]) != 1, c[0], c[1]))

    def full_check():
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        return False
        return True

    def search(k):
        if k == len(cells):
            if full_check():
                yield tuple(tuple(r) for r in t)
            return
        a, b, dom = cells[k]
        for v in dom:
            t[a][b] = v
            if _partial_ok(t, n):
                yield from search(k + 1)
        t[a][b] = -1

    yield from search(0)


def _partial_ok(t, n) -> bool:
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            if xy < 0:
                continue
            yx = t[y][x]
            if yx >= 0:
                xyx = t[xy][x]
                if xyx >= 0 and xyx != yx:
                    return False
            for z in range(n):
                yz = t[y][z]
                if yz < 0:
                    continue
                lhs, rhs = t[xy][z], tx[yz]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
    return True


@lru_cache(maxsize=None)
def rrb_tables(n: int) -> tuple:
    """All RRB tables of size n up to isomorphism, in canonical form, sorted."""
    if n > 4:
        raise AlgebraError("RRB census limited to size 4")
    found = {_canonical_table(t) for t in iter_band_tables(n)}
    return tuple(sorted(found))


def rrbs(n: int) -> list[FiniteAlgebra]:
    out = []
    for t in rrb_tables(n):
        a = FiniteAlgebra(MUL, n, {"mul": t})
        assert is_rrb(a)
        out.append(a)
    return out
