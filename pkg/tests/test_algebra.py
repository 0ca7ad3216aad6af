import itertools

import pytest
from hypothesis import given, strategies as st

from rrbkit.algebra import (
    MUL,
    RRB,
    SEMILATTICE,
    AlgebraError,
    App,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    Var,
    algebra_from_function,
    check_variety_membership,
    direct_product,
    enumerate_homomorphisms,
    eval_term,
    find_isomorphism,
    first_violation,
    generated_subuniverse,
    holds_identity,
    is_rrb,
    mul,
    parse_term,
)
from rrbkit.census import rrbs
from rrbkit.fixtures import (
    chain_semilattice,
    seven_element_band,
    left_zero_band,
    right_zero_band,
)
from rrbkit.free import free_algebra
from rrbkit.relational import order_of, product_poset


def test_signature_rejects_duplicates_and_empty():
    with pytest.raises(AlgebraError):
        Signature((("mul", 2), ("mul", 1)))
    with pytest.raises(AlgebraError):
        Signature(())


def test_table_entries_checked():
    with pytest.raises(AlgebraError):
        FiniteAlgebra(MUL, 2, {"mul": [[0, 2], [0, 1]]})
    with pytest.raises(AlgebraError):
        FiniteAlgebra(MUL, 2, {"mul": [[0, 1]]})


def test_parse_term_roundtrip():
    for text in ["x1", "mul(x1,x2)", "meet(x1,join(x2,bot))", "top"]:
        assert str(parse_term(text)) == text
    assert parse_term("bot()") == App("bot")
    with pytest.raises(AlgebraError):
        parse_term("mul(x1,")


def test_eval_meet_on_two_chain():
    chain = algebra_from_function(Signature((("meet", 2),)), 2, {"meet": min})
    assert eval_term(chain, parse_term("meet(x1,x2)"), [0, 1]) == 0


def test_eval_word_product_in_free_rrb():
    fa = free_algebra("rrb", 2)
    a = fa.algebra
    xy, yx = a.element("xy"), a.element("yx")
    assert a.label(eval_term(a, parse_term("mul(x1,x2)"), [xy, yx])) == "yx"


def test_eval_variable_and_missing_binding():
    a = right_zero_band(3)
    assert eval_term(a, Var(1), [2]) == 2
    with pytest.raises(AlgebraError):
        eval_term(a, Var(2), [0])
    with pytest.raises(AlgebraError):
        eval_term(a, App("join", (Var(1), Var(1))), [0])


def test_holds_identity_examples():
    rz = right_zero_band(2)
    assert holds_identity(rz, parse_term("mul(x1,mul(x2,x1))"), parse_term("mul(x2,x1)")).holds
    free = free_algebra("rrb", 2).algebra
    res = holds_identity(free, parse_term("mul(x1,x2)"), parse_term("mul(x2,x1)"))
    assert not res.holds
    assert [free.label(res.counterexample[k]) for k in (1, 2)] == ["x", "y"]


def test_membership_examples():
    assert check_variety_membership(seven_element_band(), "rrb").passed
    report = check_variety_membership(left_zero_band(2), "rrb")
    assert not report.passed
    failed = [str(lhs) for lhs, _, _ in report.failures]
    assert failed == ["mul(mul(x1,x2),x1)"]
    with pytest.raises(AlgebraError):
        check_variety_membership(chain_semilattice(2), "bounded-dl")


def test_homomorphism_counts():
    one = right_zero_band(1)
    for a in rrbs(3):
        assert len(enumerate_homomorphisms(one, a)) == 3
    c2 = chain_semilattice(2)
    assert [h.map for h in enumerate_homomorphisms(c2, c2)] == [(0, 0), (0, 1), (1, 1)]


def test_homomorphism_rejects_bad_map():
    c2 = chain_semilattice(2)
    with pytest.raises(AlgebraError):
        Homomorphism(c2, c2, (1, 0))


def _brute_homs(a, b):
    out = []
    for m in itertools.product(range(b.size), repeat=a.size):
        if first_violation(a, b, m) is None:
            out.append(m)
    return out


def test_enumeration_matches_brute_force_on_small_rrbs():
    small = [a for n in (1, 2, 3) for a in rrbs(n)]
    for a in small:
        for b in small:
            assert [h.map for h in enumerate_homomorphisms(a, b)] == _brute_homs(a, b)


def test_find_isomorphism_examples():
    fua = seven_element_band()
    h = find_isomorphism(fua, fua)
    assert h.map == tuple(range(7))
    assert find_isomorphism(right_zero_band(2), chain_semilattice(2)) is None


def test_direct_product_of_chains_is_diamond():
    c2 = chain_semilattice(2)
    p = direct_product(c2, c2)
    assert p.algebra.size == 4
    assert p.encode(1, 0) == 2
    order = order_of(p.algebra)
    assert order.tuple_set == product_poset(order_of(c2), order_of(c2)).tuple_set
    assert set(p.proj1.map) == {0, 1} and set(p.proj2.map) == {0, 1}
    assert direct_product(c2, chain_semilattice(3)).algebra.size == 6


def test_generated_subuniverse(apband):
    a = apband
    sub = generated_subuniverse(a, [a.element("a")])
    assert sub.elements == (a.element("a"),)
    sub = generated_subuniverse(a, [a.element("b"), a.element("0")])
    assert sorted(sub.elements) == sorted([a.element("b"), a.element("0")])
    assert generated_subuniverse(a, a.universe).elements == tuple(a.universe)
    with pytest.raises(AlgebraError):
        generated_subuniverse(a, [])


def test_mul_builds_left_nested_products():
    assert mul(Var(1), Var(2), Var(3)) == App("mul", (App("mul", (Var(1), Var(2))), Var(3)))


# -- RRB laws on every small band -------------------------------------------

SMALL_RRBS = [a for n in (1, 2, 3, 4) for a in rrbs(n)]


@pytest.mark.parametrize("a", SMALL_RRBS, ids=lambda a: f"rrb{a.size}")
def test_rrb_order_laws(a):
    m = a.table("mul")
    n = a.size
    for x, y in itertools.product(range(n), repeat=2):
        xy = m[x][y]
        assert m[x][x] == x
        assert m[xy][x] == m[y][x]
        assert m[xy][y] == xy                       # x*y <= y
        if xy == x:
            assert m[y][x] == x                     # x <= y gives y*x = x
            for z in range(n):
                assert m[m[x][z]][m[y][z]] == m[x][z]
        if xy == m[y][x]:
            lower = [z for z in range(n) if m[z][x] == z and m[z][y] == z]
            assert xy in lower and all(m[z][xy] == z for z in lower)


def test_semilattice_variety_is_commutative_rrb():
    assert SEMILATTICE.signature == RRB.signature
    assert is_rrb(chain_semilattice(3))
    assert check_variety_membership(chain_semilattice(3), "semilattice").passed
    assert not check_variety_membership(right_zero_band(2), "semilattice").passed


@given(st.integers(1, 3), st.data())
def test_random_tables_membership_agrees_with_direct_check(n, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                              min_size=n, max_size=n))
    a = FiniteAlgebra(MUL, n, {"mul": rows})
    direct = all(rows[x][x] == x for x in range(n)) and all(
        rows[rows[x][y]][z] == rows[x][rows[y][z]] and rows[rows[x][y]][x] == rows[y][x]
        for x in range(n) for y in range(n) for z in range(n))
    assert is_rrb(a) == direct
