import itertools

import pytest

from rrbkit.algebra import AlgebraError, enumerate_homomorphisms
from rrbkit.census import rrbs
from rrbkit.constructions import build_lattice, complement_graph, graph_from_edges
from rrbkit.fixtures import absorbing_pair_band, poset_fixtures, rrb_fixtures
from rrbkit.relational import (
    COMPLEMENTATION,
    MUTUAL_ABSORPTION,
    POSEMIGROUP_ORDER,
    SCHEMES,
    RelationalStructure,
    apply_U,
    connected_components,
    enumerate_relational_homomorphisms,
    equivalence_blocks,
    find_relational_isomorphism,
    get_scheme,
    hasse_cover_edges,
    make_poset,
    order_of,
    validate_structure,
)


def test_registry_names():
    assert sorted(SCHEMES) == ["complementation", "meet-order", "mutual-absorption-equivalence",
                               "posemigroup-order"]
    assert get_scheme("posemigroup-order") is POSEMIGROUP_ORDER
    with pytest.raises(AlgebraError):
        get_scheme("nope")


def test_apply_u_on_three_element_rrb(apband, vposet):
    order = apply_U(apband, "posemigroup-order")
    assert validate_structure(order, "poset")
    assert find_relational_isomorphism(order, vposet) is not None
    eq = apply_U(apband, MUTUAL_ABSORPTION)
    blocks = [sorted(apband.label(e) for e in b) for b in equivalence_blocks(eq)]
    assert sorted(blocks) == [["0"], ["a", "b"]]


def test_apply_u_complementation_on_three_chain():
    chain = build_lattice("chain", 3)
    g = apply_U(chain, COMPLEMENTATION)
    assert g.tuples == ((0, 2), (2, 0))
    assert all(chain.element("x") not in t for t in g.tuples)


def test_apply_u_signature_mismatch(apband):
    with pytest.raises(AlgebraError):
        apply_U(apband, COMPLEMENTATION)


def test_validate_examples(vposet):
    assert validate_structure(vposet, "poset")
    bad = RelationalStructure(2, POSEMIGROUP_ORDER, [(0, 1)])
    report = validate_structure(bad, "poset")
    assert not report and report.axiom == "reflexive" and report.witness == (0, 0)
    g = complement_graph(build_lattice("Mn", 3))
    assert validate_structure(g, "graph", irreflexive=True)
    assert not validate_structure(g, "equivalence")


def test_make_poset_rejects_cycle():
    with pytest.raises(AlgebraError):
        make_poset(2, [(0, 1), (1, 0)])


def test_hasse_covers():
    assert len(hasse_cover_edges(make_poset(3, [(0, 1), (1, 2)]))) == 2
    assert hasse_cover_edges(make_poset(3, [])) == []
    two_chains = make_poset(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    assert len(hasse_cover_edges(two_chains)) == 4


def test_relational_hom_counts():
    one = make_poset(1, [])
    for p in poset_fixtures(3):
        assert len(enumerate_relational_homomorphisms(one, p)) == p.size
    chain2 = make_poset(2, [(0, 1)])
    anti2 = make_poset(2, [])
    assert len(enumerate_relational_homomorphisms(chain2, chain2)) == 3
    assert len(enumerate_relational_homomorphisms(anti2, chain2)) == 4


def test_hom_counts_match_brute_force():
    ps = poset_fixtures(3)
    for p, q in itertools.product(ps, repeat=2):
        brute = [m for m in itertools.product(q.universe, repeat=p.size)
                 if all((m[a], m[b]) in q for a, b in p.tuples)]
        assert [h.map for h in enumerate_relational_homomorphisms(p, q)] == brute


def test_components():
    chain = build_lattice("chain", 3)
    comps = connected_components(complement_graph(chain))
    assert comps == [(0, 2), (1,)]
    m3 = build_lattice("Mn", 3)
    comps = connected_components(complement_graph(m3))
    names = sorted(sorted(m3.label(e) for e in c) for c in comps)
    assert names == [["0", "1"], ["a1", "a2", "a3"]]
    assert connected_components(graph_from_edges(3, [])) == [(0,), (1,), (2,)]


@pytest.mark.parametrize("scheme", ["posemigroup-order", "mutual-absorption-equivalence"])
def test_u_sends_homomorphisms_to_relational_maps(scheme):
    algs = rrb_fixtures(3)
    for a, b in itertools.product(algs, repeat=2):
        ua, ub = apply_U(a, scheme), apply_U(b, scheme)
        for h in enumerate_homomorphisms(a, b):
            assert all(tuple(h.map[e] for e in t) in ub for t in ua.tuples)


def test_band_relations_have_expected_kind():
    for n in range(1, 5):
        for a in rrbs(n):
            assert validate_structure(order_of(a), "poset")
            assert validate_structure(apply_U(a, MUTUAL_ABSORPTION), "equivalence")
