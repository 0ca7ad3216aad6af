"""Builders for specific algebras and the searches that go with them."""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .algebra import (
    LATTICE,
    MUL,
    AlgebraError,
    FiniteAlgebra,
    algebra_from_function,
    check_variety_membership,
    is_rrb,
    BOUNDED_LATTICE,
)
from .census import iter_band_tables, lattice_from_order, lattice_orders, census_labels
from .relational import (
    COMPLEMENTATION,
    MUTUAL_ABSORPTION,
    POSEMIGROUP_ORDER,
    RelationalStructure,
    apply_U,
    equivalence_blocks,
    validate_structure,
)

#: Largest lattice size the complement-graph search will enumerate.
MAX_SEARCH_SIZE = 9
#: Largest poset handed to the RRB-structure search.
MAX_POSET_SIZE = 7


# ---------------------------------------------------------------------------
# Subdirectly irreducible family


@dataclass(frozen=True)
class SelfMapElement:
    table: tuple[int, ...]
    tag: str            # "a", "b" or "c"
    index: int

    @property
    def name(self) -> str:
        return f"{self.tag}{self.index}"


def si_elements(k: int) -> list[SelfMapElement]:
    if k < 3:
        raise AlgebraError("the self-map family needs at least 3 points")
    out = [SelfMapElement(tuple(i for _ in range(k)), "a", i) for i in range(k)]
    for tag, other in (("b", 0), ("c", 1)):
        for i in range(2, k):
            out.append(SelfMapElement(tuple(j if j == i else other for j in range(k)), tag, i))
    return out


def build_si_rrb(k: int) -> tuple[FiniteAlgebra, list[SelfMapElement]]:
    """Self-maps a_i (constant), b_i, c_i on k points with x*y = "x then y"."""
    elems = si_elements(k)
    index = {e.table: n for n, e in enumerate(elems)}

    def product(x, y):
        f, g = elems[x].table, elems[y].table
        composed = tuple(g[f[p]] for p in range(k))
        if composed not in index:
            raise AlgebraError(f"internal error: {elems[x].name}*{elems[y].name} leaves the family")
        return index[composed]

    alg = algebra_from_function(MUL, len(elems), {"mul": product}, [e.name for e in elems])
    if not is_rrb(alg):
        raise AlgebraError("internal error: self-map family is not an RRB")
    return alg, elems


# ---------------------------------------------------------------------------
# Ordered sums of right-zero bands


def rrb_from_equivalence(blocks, labels=None) -> FiniteAlgebra:
    """Right-zero band on each block; across blocks the earlier block absorbs.

    ``blocks`` lists the classes in their declared order; the universe is the
    concatenation of the blocks.  Entries may be labels or anything else
    hashable; ``labels`` overrides the element names.
    """
    blocks = [list(b) for b in blocks]
    if not blocks or any(not b for b in blocks):
        raise AlgebraError("blocks must be nonempty")
    flat = [x for b in blocks for x in b]
    if len(set(flat)) != len(flat):
        raise AlgebraError("blocks must be disjoint")
    rank = [i for i, b in enumerate(blocks) for _ in b]

    def product(a, b):
        if rank[a] == rank[b]:
            return b
        return a if rank[a] < rank[b] else b

    names = labels if labels is not None else [str(x) for x in flat]
    alg = algebra_from_function(MUL, len(flat), {"mul": product}, names)
    if not is_rrb(alg):
        raise AlgebraError("internal error: ordered sum is not an RRB")
    recovered = equivalence_blocks(apply_U(alg, MUTUAL_ABSORPTION))
    expected = []
    start = 0
    for b in blocks:
        expected.append(tuple(range(start, start + len(b))))
        start += len(b)
    if sorted(recovered) != sorted(expected):
        raise AlgebraError("internal error: equivalence not recovered")
    return alg


# ---------------------------------------------------------------------------
# Lattices and complement graphs


def _order_matrix(n, pairs):
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        leq[a][b] = True
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            leq[i][k] = changed = True
    return leq


def build_lattice(kind: str, n: int, m: int | None = None) -> FiniteAlgebra:
    """``Mn``, ``chain`` or ``bounded-parallel-sum``, certified as a bounded lattice."""
    if n < 1 or (m is not None and m < 1):
        raise AlgebraError("lattice parameters must be positive")
    if kind == "Mn":
        labels = ["0"] + [f"a{i}" for i in range(1, n + 1)] + ["1"]
        top = n + 1
        pairs = [(0, i) for i in range(1, n + 1)] + [(i, top) for i in range(1, n + 1)]
    elif kind == "chain":
        if n == 1:
            labels = ["0"]
        elif n == 3:
            labels = ["0", "x", "1"]
        else:
            labels = ["0"] + [f"x{i}" for i in range(1, n - 1)] + ["1"]
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif kind == "bounded-parallel-sum":
        if m is None:
            raise AlgebraError("bounded-parallel-sum needs two chain lengths")
        labels = (["0"] + [f"p{i}" for i in range(1, n + 1)]
                  + [f"q{i}" for i in range(1, m + 1)] + ["1"])
        top = n + m + 1
        pairs = [(0, 1), (0, n + 1), (n, top), (n + m, top)]
        pairs += [(i, i + 1) for i in range(1, n)] + [(i, i + 1) for i in range(n + 1, n + m)]
    else:
        raise AlgebraError(f"unknown lattice kind {kind!r}")
    lat = lattice_from_order(_order_matrix(len(labels), pairs), labels)
    report = check_variety_membership(lat, BOUNDED_LATTICE)
    if not report.passed:
        raise AlgebraError(f"internal error: {kind} fails {report.failures[0]}")
    return lat


def complement_graph(lattice: FiniteAlgebra) -> RelationalStructure:
    """Pairs of complements, without loops."""
    if lattice.signature != LATTICE or not check_variety_membership(lattice, BOUNDED_LATTICE).passed:
        raise AlgebraError("complement graph needs a bounded lattice")
    u = apply_U(lattice, COMPLEMENTATION)
    return RelationalStructure(u.size, u.scheme, [t for t in u.tuples if t[0] != t[1]], u.labels)


def to_networkx(graph: RelationalStructure) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(graph.universe)
    g.add_edges_from((a, b) for a, b in graph.tuples if a != b)
    return g


def graph_from_edges(n: int, edges, labels=None) -> RelationalStructure:
    """Symmetric loop-free graph as a structure over the complementation scheme."""
    tuples = set()
    for a, b in edges:
        if a == b:
            raise AlgebraError("graphs are loop-free")
        tuples |= {(a, b), (b, a)}
    return RelationalStructure(n, COMPLEMENTATION, sorted(tuples), labels)


def _component_match(host: nx.Graph, target: nx.Graph) -> bool:
    """True if some union of connected components of host is isomorphic to target."""
    host_parts = [host.subgraph(c).copy() for c in nx.connected_components(host)]
    target_parts = [target.subgraph(c).copy() for c in nx.connected_components(target)]
    used = [False] * len(host_parts)

    def place(k):
        if k == len(target_parts):
            return True
        t = target_parts[k]
        for i, h in enumerate(host_parts):
            if not used[i] and h.number_of_nodes() == t.number_of_nodes() and nx.is_isomorphic(h, t):
                used[i] = True
                if place(k + 1):
                    return True
                used[i] = False
        return False

    return place(0)


@dataclass(frozen=True, eq=False)
class GraphSearchResult:
    lattice: FiniteAlgebra | None
    graph: RelationalStructure | None
    mode: str
    max_size: int
    lattices_checked: int

    @property
    def found(self) -> bool:
        return self.lattice is not None


def search_complement_graph(target: RelationalStructure, max_size: int,
                            mode: str = "components") -> GraphSearchResult:
    """First lattice (by size, then census order) whose complement graph matches ``target``.

    ``components``: some union of components of the complement graph is
    isomorphic to the target.  ``exact``: the whole graph is.
    The one-element lattice is skipped.
    """
    if max_size > MAX_SEARCH_SIZE:
        raise AlgebraError(f"lattice search is limited to size {MAX_SEARCH_SIZE}")
    if mode not in ("components", "exact"):
        raise AlgebraError(f"unknown match mode {mode!r}")
    report = validate_structure(target, "graph", irreflexive=True)
    if not report:
        raise AlgebraError(f"target is not a graph: {report.axiom} fails at {report.witness}")
    want = to_networkx(target)
    checked = 0
    for n in range(2, max_size + 1):
        if mode == "exact" and n != target.size:
            continue
        for leq in lattice_orders(n):
            checked += 1
            lat = lattice_from_order(leq, census_labels(n))
            cg = complement_graph(lat)
            host = to_networkx(cg)
            ok = nx.is_isomorphic(host, want) if mode == "exact" else _component_match(host, want)
            if ok:
                return GraphSearchResult(lat, cg, mode, max_size, checked)
    return GraphSearchResult(None, None, mode, max_size, checked)


# ---------------------------------------------------------------------------
# RRB structures on a given poset


def _structure_domains(poset: RelationalStructure):
    n = poset.size
    leq = [[poset.leq(a, b) for b in range(n)] for a in range(n)]
    minimal = [not any(leq[z][b] and z != b for z in range(n)) for b in range(n)]
    domains = []
    for a in range(n):
        row = []
        for b in range(n):
            if leq[a][b]:
                row.append([a])
            elif leq[b][a] or minimal[b]:
                row.append([b])
            else:
                common = [z for z in range(n) if leq[z][a] and leq[z][b]]
                row.append([z for z in range(n)
                            if leq[z][b] and z != a and all(leq[w][z] for w in common)])
        domains.append(row)
    return domains


def iter_rrb_structures(poset: RelationalStructure):
    """Every RRB whose underlying order is exactly ``poset``."""
    report = validate_structure(poset, "poset")
    if not report:
        raise AlgebraError(f"input is not a poset: {report.axiom} fails at {report.witness}")
    if poset.size > MAX_POSET_SIZE:
        raise AlgebraError(f"RRB structure search is limited to {MAX_POSET_SIZE} elements")
    for table in iter_band_tables(poset.size, _structure_domains(poset)):
        alg = FiniteAlgebra(MUL, poset.size, {"mul": table}, poset.labels)
        if not is_rrb(alg) or apply_U(alg, POSEMIGROUP_ORDER).tuple_set != poset.tuple_set:
            raise AlgebraError("internal error: search produced an invalid structure")
        yield alg


def find_rrb_structure(poset: RelationalStructure) -> FiniteAlgebra | None:
    """First RRB structure on the poset, or None when the poset is not associative."""
    return next(iter_rrb_structures(poset), None)
