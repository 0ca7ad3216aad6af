import itertools

import pytest
from hypothesis import given, strategies as st

from rrbkit.algebra import MUL, AlgebraError, FiniteAlgebra, direct_product, is_rrb
from rrbkit.congruence import complementary_factor_pairs
from rrbkit.decomposition import (
    PAIRING_AXIOMS,
    central_elements,
    check_c_direct_product,
    check_identity_criterion,
    check_pairing,
    congruences_to_factors,
    decompose_all,
    decompose_direct,
    factors_to_congruences,
    is_filter,
    partial_sup,
    subsemigroups,
)
from rrbkit.fixtures import chain_semilattice, right_zero_band, rrb_fixtures, semilattices_with_top
from rrbkit.relational import make_poset


def _names(a, elems):
    return sorted(a.label(e) for e in elems)


def _els(a, *names):
    return [a.element(s) for s in names]


def test_partial_sup(vposet):
    x, y, z = 0, 1, 2
    assert partial_sup(vposet, x, z) == x
    assert partial_sup(vposet, x, y) is None
    assert partial_sup(make_poset(3, [(0, 1), (0, 2), (1, 2)]), 0, 1) == 1


def test_central_elements(apband, diamond):
    assert central_elements(diamond) == list(diamond.universe)
    assert central_elements(right_zero_band(2)) == []
    assert central_elements(apband) == [apband.element("0")]


def test_pairing_on_diamond(diamond):
    one = diamond.element("1")
    p, q, zero = _els(diamond, "p", "q", "0")
    w = check_pairing(diamond, one, p, q, zero)
    assert w.valid and all(w.checked[a] for a in PAIRING_AXIOMS)
    w = check_pairing(diamond, one, p, q, p)
    assert not w.valid and w.failure is not None
    with pytest.raises(AlgebraError):
        check_pairing(right_zero_band(2), 0, 0, 1, 1)


def test_diamond_axes(diamond):
    one = diamond.element("1")
    i1, i2 = _els(diamond, "p", "1"), _els(diamond, "q", "1")
    cert = check_c_direct_product(diamond, one, i1, i2)
    assert cert.valid
    for (x1, x2), x in cert.pairing.items():
        assert x == diamond.apply("mul", (x1, x2))
    bad = check_c_direct_product(diamond, one, i1, i1)
    assert not bad.valid and bad.axioms["Onto"] is False
    with pytest.raises(AlgebraError):
        check_c_direct_product(diamond, one, _els(diamond, "p", "q"), i2)


def test_trivial_decomposition_always_valid():
    for a in rrb_fixtures(3):
        for c in central_elements(a):
            assert check_c_direct_product(a, c, a.universe, [c]).valid
            assert check_c_direct_product(a, c, [c], a.universe).valid


def test_two_sided_mod2_rejects_a_trivial_split():
    # right-zero pair {0, 2} with an identity 1 adjoined
    a = FiniteAlgebra(MUL, 3, {"mul": [[0, 0, 2], [0, 1, 2], [0, 2, 2]]})
    assert is_rrb(a) and central_elements(a) == [1]
    cert = check_c_direct_product(a, 1, [1], a.universe)
    assert cert.valid
    assert cert.diagnostics["Mod2-left"] is not None
    strict = check_c_direct_product(a, 1, [1], a.universe, left_mod2=True)
    assert not strict.valid and strict.axioms["Mod2"] is False


def test_congruences_and_factors_on_diamond(diamond):
    one = diamond.element("1")
    pairs = complementary_factor_pairs(diamond)
    got = [tuple(_names(diamond, s) for s in congruences_to_factors(diamond, one, t, d))
           for t, d in pairs]
    assert (["1"], ["0", "1", "p", "q"]) in got
    axes = [g for g in got if len(g[0]) == 2][0]
    assert sorted(axes) == [["1", "p"], ["1", "q"]]
    for t, d in pairs:
        i1, i2 = congruences_to_factors(diamond, one, t, d)
        t2, d2 = factors_to_congruences(diamond, one, i1, i2)
        assert (t2, d2) == (t, d)


def test_trivial_factors_round_trip(diamond):
    one = diamond.element("1")
    theta, delta = factors_to_congruences(diamond, one, diamond.universe, [one])
    assert theta.partition.is_full() and delta.partition.is_identity()
    assert congruences_to_factors(diamond, one, theta, delta) == (tuple(diamond.universe), (one,))


def test_decompose_all_diamond(diamond):
    certs = decompose_all(diamond, diamond.element("1"))
    assert len(certs) == 2
    assert sorted(len(c.i1) * len(c.i2) for c in certs) == [4, 4]
    assert sum(1 for c in certs if len(c.i1) == 1 or len(c.i2) == 1) == 1


def test_decompose_indecomposable():
    for a in rrb_fixtures(3):
        if a.size in (2, 3):
            for c in central_elements(a):
                assert len(decompose_all(a, c)) == 1


def test_product_with_two_chain(apband):
    c2 = chain_semilattice(2)
    prod = direct_product(apband, c2)
    c = prod.encode(apband.element("0"), 1)
    certs = decompose_all(prod.algebra, c)
    want = {tuple(sorted(prod.encode(x, 1) for x in apband.universe)),
            tuple(sorted(prod.encode(apband.element("0"), y) for y in c2.universe))}
    assert any({cert.i1, cert.i2} == want for cert in certs)


def _cases(max_size=4, product_size=3):
    for a in rrb_fixtures(max_size):
        for c in central_elements(a):
            yield a, c
    small = rrb_fixtures(2)
    for x, y in itertools.product(rrb_fixtures(product_size), small):
        p = direct_product(x, y).algebra
        for c in central_elements(p):
            yield p, c


def test_direct_search_agrees_with_congruence_route():
    for a, c in _cases():
        direct = set(decompose_direct(a, c))
        via = {(cert.i1, cert.i2) for cert in decompose_all(a, c)}
        via |= {(i2, i1) for i1, i2 in via}
        assert direct == via


def test_exi_implies_ori_and_pairing_is_product_preserving():
    for a, c in _cases(3, product_size=2):
        m = a.table("mul")
        for i1, i2 in itertools.product(subsemigroups(a), repeat=2):
            cert = check_c_direct_product(a, c, i1, i2)
            if cert.axioms.get("Exi"):
                assert cert.axioms["Ori"]
                assert all(m[m[x1][x2]][c] == m[x1][x2] for x1 in i1 for x2 in i2)
            if cert.valid:
                pr = cert.pairing
                for (x1, x2), (z1, z2) in itertools.product(pr, repeat=2):
                    assert m[pr[x1, x2]][pr[z1, z2]] == pr[m[x1][z1], m[x2][z2]]


@given(st.sampled_from(semilattices_with_top(5)))
def test_semilattice_decompositions_are_swap_invariant(a):
    for c in a.universe:
        direct = set(decompose_direct(a, c))
        assert direct == {(j, i) for i, j in direct}


def test_identity_criterion_examples(diamond):
    p, q, one = _els(diamond, "p", "q", "1")
    report = check_identity_criterion(diamond, [p, one], [q, one])
    assert report.passed and report.filters and report.agrees
    assert is_filter(diamond, [p, one]) and not is_filter(diamond, [p])
    report = check_identity_criterion(diamond, [one], [one])
    assert not report.passed and not report.onto
    assert check_identity_criterion(diamond, diamond.universe, [one]).passed
    with pytest.raises(AlgebraError):
        check_identity_criterion(right_zero_band(2), [0], [1])
