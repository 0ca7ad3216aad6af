"""Named small algebras and structures used by tests, scripts and the CLI."""
from __future__ import annotations

from .algebra import MUL, FiniteAlgebra, algebra_from_function
from .census import lattice_orders, posets, rrbs, semilattice_from_order
from .constructions import rrb_from_equivalence
from .relational import MUTUAL_ABSORPTION, RelationalStructure, make_poset

_FUA_ROWS = """
a b y w x y z
a b z w x y z
w x c w x y z
w x y w x y z
w x z w x y z
w x y w x y z
w x z w x y z
"""


def v_poset() -> RelationalStructure:
    """Two incomparable elements x, y above a common bottom 0."""
    return make_poset(3, [(2, 0), (2, 1)], ["x", "y", "0"])


def absorbing_pair_band() -> FiniteAlgebra:
    """3-element RRB: 0 absorbs, and a, b form a right-zero block."""
    return rrb_from_equivalence([["0"], ["a", "b"]])


def absorbing_pair_equivalence() -> RelationalStructure:
    """{a, b, 0} with classes {a, b} and {0}."""
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]
    return RelationalStructure(3, MUTUAL_ABSORPTION, pairs, ["a", "b", "0"])


def seven_element_band() -> FiniteAlgebra:
    """A 7-element band on a, b, c, w, x, y, z with three mutual-absorption classes."""
    labels = "a b c w x y z".split()
    idx = {s: i for i, s in enumerate(labels)}
    rows = [[idx[s] for s in line.split()] for line in _FUA_ROWS.strip().splitlines()]
    return FiniteAlgebra(MUL, 7, {"mul": rows}, labels)


def chain_semilattice(n: int) -> FiniteAlgebra:
    return algebra_from_function(MUL, n, {"mul": min}, [str(i) for i in range(n)])


def diamond_semilattice() -> FiniteAlgebra:
    """0 < p, q < 1 with the meet as product."""
    leq = [[i == j or i == 0 or j == 3 for j in range(4)] for i in range(4)]
    return semilattice_from_order(leq, ["0", "p", "q", "1"])


def right_zero_band(n: int) -> FiniteAlgebra:
    return algebra_from_function(MUL, n, {"mul": lambda a, b: b})


def left_zero_band(n: int) -> FiniteAlgebra:
    """Not an RRB once n >= 2; handy as a negative example."""
    return algebra_from_function(MUL, n, {"mul": lambda a, b: a})


def rrb_fixtures(max_size: int = 3) -> list[FiniteAlgebra]:
    """Every RRB of size 1..max_size up to isomorphism."""
    return [a for n in range(1, max_size + 1) for a in rrbs(n)]


def poset_fixtures(max_size: int = 3) -> list[RelationalStructure]:
    """Every poset of size 1..max_size up to isomorphism."""
    out = []
    for n in range(1, max_size + 1):
        for leq in posets(n):
            out.append(make_poset(n, [(i, j) for i in range(n) for j in range(n)
                                      if i != j and leq[i][j]]))
    return out


def semilattices_with_top(max_size: int = 6) -> list[FiniteAlgebra]:
    """Finite meet-semilattices with a top (i.e. lattices), as commutative RRBs."""
    return [semilattice_from_order(leq) for n in range(1, max_size + 1)
            for leq in lattice_orders(n)]


def non_associative_poset() -> RelationalStructure:
    """Smallest kind of poset carrying no RRB structure (5 elements).

    p, q, r are minimal; s covers p and q; t covers p, q and r.
    """
    return make_poset(5, [(0, 3), (1, 3), (0, 4), (1, 4), (2, 4)], ["p", "q", "r", "s", "t"])
