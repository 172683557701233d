import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latkit import (
    Congruence,
    InternalVerificationFailed,
    are_isomorphic,
    check_properties_PQ,
    classify,
    con_lattice,
    direct_product,
    enumerate_lattices,
    full_congruence,
    identity_congruence,
    is_algebraically_isoform,
    is_congruence_permutable,
    is_cpe,
    Embedding,
    principal,
    quotient,
    standard,
    structure_report,
)
from oracles import blocks_are_intervals, brute_congruence_set, is_congruence_partition


def test_identity_and_full_extremes():
    m3 = standard("m3")
    ident = identity_congruence(m3)
    full = full_congruence(m3)
    assert ident.is_identity() and not ident.is_full()
    assert full.is_full() and not full.is_identity()
    assert ident.refines(full) and not full.refines(ident)


def test_principal_of_equal_pair_is_identity():
    n5 = standard("n5")
    for a in range(5):
        assert principal(n5, a, a).is_identity()


def test_chain_congruences_are_interval_partitions():
    """A chain has one congruence per composition: 2^(n-1)."""
    assert len(con_lattice(standard("chain", 3)).congruences) == 4
    assert len(con_lattice(standard("chain", 4)).congruences) == 8


def test_product_of_chains_multiplies_congruences():
    b2 = standard("boolean", 2)
    assert len(con_lattice(b2).congruences) == 4
    c2c3 = direct_product(standard("chain", 2), standard("chain", 3))
    assert len(con_lattice(c2c3).congruences) == 8


def test_diamond_and_pentagon_congruence_counts():
    assert len(con_lattice(standard("m3")).congruences) == 2
    assert len(con_lattice(standard("n5")).congruences) == 5


def test_con_lattice_matches_brute_force_partition_scan():
    """Every congruence found by the engine and no other, on every lattice
    with at most 6 elements."""
    for n in range(1, 7):
        for lat in enumerate_lattices(n):
            engine = {c.block_of for c in con_lattice(lat).congruences}
            assert engine == brute_congruence_set(lat)


def test_principal_is_the_least_congruence_containing_the_pair():
    n5 = standard("n5")
    brute = brute_congruence_set(n5)
    for a in range(5):
        for b in range(5):
            theta = principal(n5, a, b)
            containing = [p for p in brute if p[a] == p[b]]
            assert theta.block_of in containing
            for other in containing:
                finer = all(
                    other[x] == other[y]
                    for x in range(5) for y in range(5)
                    if theta.block_of[x] == theta.block_of[y]
                )
                assert finer


def test_con_lattice_is_distributive_and_ordered_by_refinement():
    for name in ("n5", "m3"):
        con = con_lattice(standard(name))
        assert structure_report(con.lattice).is_distributive
        for i, ci in enumerate(con.congruences):
            for j, cj in enumerate(con.congruences):
                assert con.lattice.leq[i, j] == ci.refines(cj)


def test_congruence_rejects_incompatible_partitions():
    m3 = standard("m3")
    # collapsing one atom pair without the rest breaks compatibility
    with pytest.raises(InternalVerificationFailed):
        Congruence(m3, (0, 1, 1, 2, 3))
    # non-interval block
    with pytest.raises(InternalVerificationFailed):
        Congruence(standard("chain", 3), (0, 1, 0))


def test_quotient_of_chain_collapse():
    c3 = standard("chain", 3)
    q, block_map = quotient(c3, principal(c3, 0, 1))
    assert q.n == 2
    assert block_map == (0, 0, 1)
    assert are_isomorphic(q, standard("chain", 2)) is not None


def test_quotient_map_is_a_homomorphism():
    for name in ("n5", "m3"):
        lat = standard(name)
        for theta in con_lattice(lat).congruences:
            q, bm = quotient(lat, theta)
            assert q.n == theta.num_blocks
            for a in range(lat.n):
                for b in range(lat.n):
                    assert q.meet(bm[a], bm[b]) == bm[lat.meet(a, b)]
                    assert q.join(bm[a], bm[b]) == bm[lat.join(a, b)]


def test_classify_the_diamond_as_simple():
    cls = classify(standard("m3"))
    assert cls.is_simple and cls.is_isoform and cls.is_uniform and cls.is_regular
    assert cls.con_size == 2


def test_classify_boolean_square():
    cls = classify(standard("boolean", 2))
    assert not cls.is_simple
    assert cls.is_isoform and cls.is_uniform and cls.is_regular


def test_classify_chain_failures_carry_witnesses():
    cls = classify(standard("chain", 3))
    assert not (cls.is_regular or cls.is_uniform or cls.is_isoform or cls.is_simple)
    checks = {w["check"] for w in cls.witnesses}
    assert checks == {"regular", "uniform", "isoform"}


def test_pentagon_is_not_regular():
    # the one-element class {0} belongs to two different congruences
    cls = classify(standard("n5"))
    assert not cls.is_regular


def test_permutability_verdicts():
    assert is_congruence_permutable(standard("m3")).ok
    assert is_congruence_permutable(standard("boolean", 3)).ok
    res = is_congruence_permutable(standard("chain", 3))
    assert not res.ok
    assert res.witness == (1, 2, 0, 2)


def test_algebraic_isoform_certificates():
    res = is_algebraically_isoform(standard("boolean", 2))
    assert res.ok
    assert all(isinstance(expr, str) for expr in res.certificate.values())
    # coordinate collapses need a genuine translation, singletons a constant
    assert res.certificate[(1, 2)] == "join(x, const(2))"
    assert res.certificate[(0, 1)] == "const(1)"

    res = is_algebraically_isoform(standard("chain", 3))
    assert not res.ok and res.witness is not None


def test_atom_generation_properties():
    assert check_properties_PQ(standard("m3")) == check_properties_PQ(standard("m3"))
    res = check_properties_PQ(standard("boolean", 3))
    assert res.p_holds and res.q_holds
    res = check_properties_PQ(standard("chain", 3))
    assert not res.p_holds
    assert any(w["check"] == "P" for w in res.witnesses)


def test_cpe_identity_and_endpoint_embeddings():
    m3 = standard("m3")
    assert is_cpe(Embedding.identity(m3)).ok

    c2 = standard("chain", 2)
    res = is_cpe(Embedding(c2, standard("chain", 3), (0, 2)))
    assert not res.ok
    assert res.extension_counts == (3, 1)

    res = is_cpe(Embedding(c2, standard("boolean", 2), (0, 3)))
    assert not res.ok
    assert res.extension_counts == (3, 1)


_SMALL = [lat for n in range(2, 6) for lat in enumerate_lattices(n)]


@given(st.integers(0, len(_SMALL) - 1), st.data())
@settings(max_examples=80, deadline=None)
def test_principal_congruences_verify_against_the_definition(index, data):
    lat = _SMALL[index]
    a = data.draw(st.integers(0, lat.n - 1))
    b = data.draw(st.integers(0, lat.n - 1))
    theta = principal(lat, a, b)
    assert theta.block_of[a] == theta.block_of[b]
    assert is_congruence_partition(lat, theta.block_of)
    assert blocks_are_intervals(lat, theta.block_of)


@given(st.integers(0, len(_SMALL) - 1))
@settings(max_examples=40, deadline=None)
def test_congruence_joins_stay_congruences(index):
    lat = _SMALL[index]
    con = con_lattice(lat)
    for ci, cj in itertools.combinations(con.congruences, 2):
        k = con.lattice.join(con.index_of(ci), con.index_of(cj))
        joined = con.congruences[k]
        assert is_congruence_partition(lat, joined.block_of)
        assert ci.refines(joined) and cj.refines(joined)
