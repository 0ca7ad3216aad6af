import itertools

import pytest

from rrbkit.algebra import MUL, AlgebraError, FiniteAlgebra, find_isomorphism, is_rrb
from rrbkit.census import (
    census_labels,
    lattice_from_order,
    lattice_orders,
    lattices,
    meet_semilattices,
    posets,
    rrb_tables,
    rrbs,
    semilattice_from_order,
)
from rrbkit.relational import make_poset, validate_structure


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts(n, count):
    assert len(posets(n)) == count


@pytest.mark.parametrize("n, count", list(zip(range(1, 9), [1, 1, 1, 2, 5, 15, 53, 222])))
def test_lattice_counts(n, count):
    assert len(lattice_orders(n)) == count


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 6), (4, 23)])
def test_rrb_counts(n, count):
    assert len(rrb_tables(n)) == count


def _brute_rrb_classes(n):
    found = []
    for flat in itertools.product(range(n), repeat=n * n):
        rows = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        a = FiniteAlgebra(MUL, n, {"mul": rows})
        if is_rrb(a) and not any(find_isomorphism(a, b) for b in found):
            found.append(a)
    return found


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rrb_census_matches_brute_force(n):
    assert len(_brute_rrb_classes(n)) == len(rrbs(n))


def test_census_entries_are_valid():
    for n in range(1, 5):
        for leq in posets(n):
            p = make_poset(n, [(i, j) for i in range(n) for j in range(n) if leq[i][j] and i != j])
            assert validate_structure(p, "poset")
        for a in rrbs(n):
            assert is_rrb(a)
        classes = rrbs(n)
        assert all(find_isomorphism(a, b) is None for a, b in itertools.combinations(classes, 2))


def test_lattice_algebras():
    assert census_labels(4) == ["0", "e1", "e2", "1"]
    for n in range(1, 7):
        for lat in lattices(n):
            meet, join = lat.table("meet"), lat.table("join")
            for x, y in itertools.product(lat.universe, repeat=2):
                assert meet[x][join[x][y]] == x and join[x][meet[x][y]] == x


def test_meet_semilattices_include_lattices():
    assert len(meet_semilattices(4)) >= len(lattice_orders(5))
    for leq in meet_semilattices(4):
        s = semilattice_from_order(leq)
        assert is_rrb(s)


def test_lattice_from_order_rejects_non_lattice():
    anti = ((True, False), (False, True))
    with pytest.raises(AlgebraError):
        lattice_from_order(anti)
