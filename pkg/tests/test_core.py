import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latkit import (
    CycleDetected,
    Embedding,
    NotALattice,
    NotAnEmbedding,
    ParameterOutOfRange,
    Poset,
    SizeOverflow,
    UnknownName,
    are_isomorphic,
    direct_product,
    downset_lattice,
    from_covers,
    interval,
    ji_poset,
    product_many,
    standard,
    structure_report,
)
from oracles import brute_bounds


def test_chain_tables_are_min_max():
    lat = standard("chain", 4)
    for a in range(4):
        for b in range(4):
            assert lat.meet(a, b) == min(a, b)
            assert lat.join(a, b) == max(a, b)


def test_boolean_tables_are_set_operations():
    lat = standard("boolean", 3)
    assert lat.n == 8
    for a in range(8):
        for b in range(8):
            assert set(lat.labels[lat.meet(a, b)]) == set(lat.labels[a]) & set(lat.labels[b])
            assert set(lat.labels[lat.join(a, b)]) == set(lat.labels[a]) | set(lat.labels[b])


def test_catalog_rejects_bad_names_and_sizes():
    with pytest.raises(UnknownName):
        standard("pentagon")
    with pytest.raises(ParameterOutOfRange):
        standard("chain", 0)
    with pytest.raises(ParameterOutOfRange):
        standard("boolean", 17)
    with pytest.raises(ParameterOutOfRange):
        standard("m3", 4)


def test_diamond_and_pentagon_shapes():
    m3 = standard("m3")
    n5 = standard("n5")
    assert m3.n == n5.n == 5
    assert len(m3.atoms()) == 3
    assert m3.atoms() == m3.coatoms()
    rep_m3 = structure_report(m3)
    rep_n5 = structure_report(n5)
    assert not rep_m3.is_distributive
    assert not rep_n5.is_distributive
    assert rep_m3.nondistributive_witness[0] == "diamond"
    assert rep_n5.nondistributive_witness[0] == "pentagon"


def test_from_covers_rejects_double_top():
    # two maximal elements, no join for them
    with pytest.raises(NotALattice):
        from_covers(3, [(0, 1), (0, 2)])


def test_from_covers_rejects_cycles():
    with pytest.raises(CycleDetected):
        from_covers(3, [(0, 1), (1, 2), (2, 0)])


def test_from_covers_rejects_join_ambiguity():
    # 0 under a and b, both under c and d: a and b have two minimal upper bounds
    with pytest.raises(NotALattice):
        from_covers(6, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)])


def test_from_covers_normalizes_any_numbering():
    # same pentagon, scrambled input indices
    lat = from_covers(5, [(3, 2), (2, 0), (0, 4), (3, 1), (1, 4)])
    assert are_isomorphic(lat, standard("n5")) is not None


@pytest.mark.parametrize("lat", [
    standard("chain", 5),
    standard("boolean", 3),
    standard("m3"),
    standard("n5"),
    direct_product(standard("m3"), standard("chain", 2)),
])
def test_tables_match_brute_force_bounds(lat):
    meet, join = brute_bounds(lat.leq)
    for a in range(lat.n):
        for b in range(lat.n):
            assert lat.meet(a, b) == meet[a][b]
            assert lat.join(a, b) == join[a][b]


def test_covers_are_the_transitive_reduction():
    chain = standard("chain", 5)
    assert chain.covers == frozenset((i, i + 1) for i in range(4))
    cube = standard("boolean", 3)
    assert len(cube.covers) == 12
    for lo, hi in cube.covers:
        assert len(set(cube.labels[hi]) - set(cube.labels[lo])) == 1


def test_direct_product_size_and_labels():
    lat = direct_product(standard("chain", 2), standard("chain", 3))
    assert lat.n == 6
    assert sorted(lat.labels) == [(a, b) for a in range(2) for b in range(3)]
    with pytest.raises(SizeOverflow):
        product_many([standard("boolean", 4)] * 3, max_elements=1000)


def test_interval_is_an_embedded_sublattice():
    cube = standard("boolean", 3)
    atom = cube.atoms()[0]
    sub, emb = interval(cube, atom, cube.top)
    assert sub.n == 4
    assert are_isomorphic(sub, standard("boolean", 2)) is not None
    assert emb.source is sub and emb.target is cube
    assert emb.map[0] == atom and emb.map[-1] == cube.top


def test_embedding_requires_operation_preservation():
    b2 = standard("boolean", 2)
    c4 = standard("chain", 4)
    # order-preserving but meet(1,2) collapses: 0 vs 1
    with pytest.raises(NotAnEmbedding):
        Embedding(b2, c4, (0, 1, 2, 3))
    with pytest.raises(NotAnEmbedding):
        Embedding(b2, b2, (0, 1, 1, 3))
    Embedding.identity(b2)


def test_isomorphism_distinguishes_same_size_lattices():
    assert are_isomorphic(standard("n5"), standard("m3")) is None
    assert are_isomorphic(standard("n5"), standard("chain", 5)) is None
    found = are_isomorphic(standard("m3"), standard("m3"))
    assert found is not None and found[0] == 0 and found[-1] == 4


def test_heights_and_extremes():
    cube = standard("boolean", 3)
    assert [int(h) for h in cube.heights()] == [len(cube.labels[x]) for x in range(8)]
    assert cube.bottom == 0 and cube.top == 7
    assert len(cube.atoms()) == 3 and len(cube.coatoms()) == 3


def test_sectional_complementation_verdicts():
    assert structure_report(standard("boolean", 3)).is_sectionally_complemented
    assert structure_report(standard("m3")).is_sectionally_complemented
    assert not structure_report(standard("n5")).is_sectionally_complemented
    assert not structure_report(standard("chain", 3)).is_sectionally_complemented


def _posets_agree(p: Poset, q: Poset) -> bool:
    import itertools

    if p.n != q.n:
        return False
    return any(
        all(p.leq[a, b] == q.leq[perm[a], perm[b]] for a in range(p.n) for b in range(p.n))
        for perm in itertools.permutations(range(p.n))
    )


def test_downsets_of_the_fence_poset():
    """Downsets of p < q, p < r: empty, {p}, {p,q}, {p,r}, all."""
    v = Poset.from_lt(3, [(0, 1), (0, 2)])
    lat = downset_lattice(v)
    assert lat.n == 5
    assert structure_report(lat).is_distributive
    assert _posets_agree(ji_poset(lat), v)


def test_join_irreducibles_of_boolean_form_an_antichain():
    poset = ji_poset(standard("boolean", 3))
    assert poset.n == 3
    assert not any(poset.leq[a, b] for a in range(3) for b in range(3) if a != b)


def test_downset_then_ji_recovers_a_chain():
    chain_poset = Poset.chain(4)
    lat = downset_lattice(chain_poset)
    assert lat.n == 5
    assert _posets_agree(ji_poset(lat), chain_poset)


@st.composite
def small_posets(draw):
    n = draw(st.integers(1, 5))
    lt = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1]),
        max_size=8))
    return Poset.from_lt(n, lt)


@given(small_posets())
@settings(max_examples=60, deadline=None)
def test_downset_lattices_are_distributive_with_total_bounds(poset):
    lat = downset_lattice(poset)
    assert structure_report(lat).is_distributive
    meet, join = brute_bounds(lat.leq)
    for a in range(lat.n):
        for b in range(lat.n):
            assert meet[a][b] is not None and join[a][b] is not None
            assert lat.meet(a, b) == meet[a][b]
            assert lat.join(a, b) == join[a][b]


@given(st.sampled_from(["m3", "n5"]), st.permutations(list(range(5))))
@settings(max_examples=40, deadline=None)
def test_isomorphism_is_relabeling_invariant(name, perm):
    base = standard(name)
    scrambled = from_covers(5, [(perm[a], perm[b]) for a, b in base.covers])
    mapping = are_isomorphic(base, scrambled)
    assert mapping is not None
    for a in range(5):
        for b in range(5):
            assert base.leq[a, b] == scrambled.leq[mapping[a], mapping[b]]
