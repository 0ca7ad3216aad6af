import itertools

import pytest
from hypothesis import given, strategies as st

from rrbkit.algebra import AlgebraError, direct_product, find_isomorphism
from rrbkit.congruence import (
    CongruenceWitness,
    Partition,
    SizeBoundError,
    all_congruences,
    are_complementary,
    combine_partitions,
    complementary_factor_pairs,
    congruence_generated,
    is_congruence,
    kernel,
    monolith,
    principal,
    quotient_algebra,
)
from rrbkit.constructions import build_si_rrb
from rrbkit.fixtures import chain_semilattice, rrb_fixtures
from rrbkit.free import free_algebra
from rrbkit.relational import make_poset, order_of, find_relational_isomorphism


def test_partition_canonical_form():
    p = Partition.from_labels("abab")
    assert p.representative == (0, 1, 0, 1)
    assert p.blocks() == [(0, 2), (1, 3)]
    assert Partition.from_blocks(4, [[1, 3]]).representative == (0, 1, 2, 1)
    with pytest.raises(AlgebraError):
        Partition((1, 1))


def test_lattice_operations():
    a = Partition.from_labels([0, 0, 1, 1])
    b = Partition.from_labels([0, 1, 0, 1])
    assert combine_partitions(a, b, "meet").is_identity()
    assert combine_partitions(a, b, "join").is_full()
    comp = combine_partitions(a, b, "compose")
    assert comp.full and not comp.empty
    assert are_complementary(a, b)
    assert not are_complementary(a, a)


def test_generated_examples():
    c2 = chain_semilattice(2)
    assert congruence_generated(c2, []).partition.is_identity()
    assert congruence_generated(c2, [(0, 1)]).partition.is_full()
    with pytest.raises(AlgebraError):
        congruence_generated(c2, [(0, 5)])


def test_v_poset_congruence_on_free_rrb():
    fa = free_algebra("rrb", 3, ["x", "y", "0"])
    a = fa.algebra
    pairs = [(a.element("0x"), a.element("0")), (a.element("0y"), a.element("0"))]
    w = congruence_generated(a, pairs)
    blocks = sorted(sorted(a.label(e) for e in b) for b in w.blocks())
    zero_words = sorted(s for s in a.labels if "0" in s)
    assert len(zero_words) == 11
    assert blocks == sorted([["x"], ["y"], ["xy"], ["yx"], zero_words])
    q = quotient_algebra(w).algebra
    assert q.size == 5
    two_chains = make_poset(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    assert find_relational_isomorphism(order_of(q), two_chains) is not None


def test_quotient_extremes(apband):
    ident = quotient_algebra(CongruenceWitness(apband, Partition.identity(3)))
    assert find_isomorphism(ident.algebra, apband) is not None
    full = quotient_algebra(CongruenceWitness(apband, Partition.full(3)))
    assert full.algebra.size == 1
    assert kernel(full.projection).is_full()


def test_witness_rejects_incompatible(apband):
    # merging 0 with a forces 0*b = 0 ~ a*b = b
    bad = Partition.from_blocks(3, [[apband.element("0"), apband.element("a")]])
    assert not is_congruence(apband, bad)
    with pytest.raises(AlgebraError):
        CongruenceWitness(apband, bad)


def test_congruence_counts(apband):
    assert len(all_congruences(chain_semilattice(2))) == 2
    assert len(all_congruences(chain_semilattice(3))) == 4
    collapse_ab = Partition.from_labels(["0" if apband.label(e) == "0" else "ab" for e in apband.universe])
    assert collapse_ab in {w.partition for w in all_congruences(apband)}


def test_size_bound():
    a, _ = build_si_rrb(6)
    with pytest.raises(SizeBoundError):
        all_congruences(a)
    assert len(all_congruences(chain_semilattice(4), max_size=4)) == 8


def test_factor_pairs(diamond):
    pairs = complementary_factor_pairs(diamond)
    assert len(pairs) == 2
    trivial = [p for p in pairs if p[0].partition.is_identity() or p[1].partition.is_identity()]
    assert len(trivial) == 1
    (theta, delta), = [p for p in pairs if p not in trivial]
    assert theta.partition.n_blocks == 2 and delta.partition.n_blocks == 2


def test_indecomposable_has_only_trivial_pair():
    for a in rrb_fixtures(3):
        pairs = complementary_factor_pairs(a)
        if a.size == 3:
            # no three-element algebra is a nontrivial product
            assert len(pairs) == 1


def test_product_kernels_are_factor_pair():
    algs = rrb_fixtures(2)
    for c, d in itertools.product(algs, repeat=2):
        p = direct_product(c, d)
        k1, k2 = kernel(p.proj1), kernel(p.proj2)
        found = {(x.partition, y.partition) for x, y in complementary_factor_pairs(p.algebra)}
        assert (k1, k2) in found or (k2, k1) in found
        q = quotient_algebra(CongruenceWitness(p.algebra, k1)).algebra
        assert find_isomorphism(q, c) is not None


def test_monolith_examples(diamond):
    res = monolith(chain_semilattice(2))
    assert res.subdirectly_irreducible and res.monolith.partition.is_full()
    assert monolith(diamond) == (None, False)
    with pytest.raises(AlgebraError):
        monolith(chain_semilattice(1))


def test_monolith_of_si_example():
    a, _ = build_si_rrb(3)
    res = monolith(a)
    assert res.subdirectly_irreducible
    base = principal(a, a.element("a0"), a.element("a1"))
    for w in all_congruences(a):
        if not w.partition.is_identity():
            assert base.refines(w.partition)


@given(st.sampled_from(rrb_fixtures(4)), st.data())
def test_generated_congruence_is_least(a, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(0, a.size - 1), st.integers(0, a.size - 1)),
                               max_size=3))
    w = congruence_generated(a, pairs)
    assert all(w.partition.related(x, y) for x, y in pairs)
    for other in all_congruences(a):
        if all(other.partition.related(x, y) for x, y in pairs):
            assert w.partition.refines(other.partition)
