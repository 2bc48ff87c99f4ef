"""Order-theoretic core: construction, tables, classification."""

import random

import pytest

import oracles
import stonespec as sp
from stonespec import errors as E
from stonespec.randgen import random_lattice

# brute table scans are cubic, so keep them off B5 and B6
CORPUS_SMALL = [n for n in sp.CORPUS_NAMES if n not in ("B5", "B6")]


def base(structure):
    return structure.lattice if isinstance(structure, sp.OrthoLattice) else structure


def test_corpus_names_resolve():
    for name in sp.CORPUS_NAMES:
        lat = base(sp.corpus(name))
        assert lat.n >= 2
        assert bool(lat.leq[lat.bottom, lat.top])


def test_from_covers_roundtrip_through_doc():
    lat = sp.chain(4)
    doc = lat.to_doc()
    again = sp.load_lattice(doc)
    assert again.n == lat.n
    assert (again.leq == lat.leq).all()


def test_from_leq_matches_from_covers_on_diamond():
    covers = sp.boolean_algebra(2).lattice
    direct = sp.from_leq([[int(covers.leq[i, j]) for j in range(4)]
                          for i in range(4)])
    assert (direct.meet == covers.meet).all()
    assert (direct.join == covers.join).all()


def test_rejects_cyclic_order():
    with pytest.raises(E.NotAPoset):
        sp.from_leq([[1, 1], [1, 1]])


def test_rejects_order_without_bounds():
    with pytest.raises(E.NoBounds):
        sp.from_leq([[1, 0], [0, 1]])


def test_rejects_bounded_poset_missing_joins():
    # two lower and two upper mid elements: 1 v 2 has no least upper bound
    rel = {(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (2, 3),
           (2, 4), (1, 5), (2, 5), (3, 5), (4, 5)}
    m = [[1 if i == j or (i, j) in rel else 0 for j in range(6)]
         for i in range(6)]
    with pytest.raises(E.NotALattice):
        sp.from_leq(m)


def test_default_size_cap_on_load():
    with pytest.raises(E.ParseError):
        sp.load_ortho(sp.boolean_algebra(7).to_doc())
    assert sp.load_ortho(sp.boolean_algebra(7).to_doc(), wide=True).n == 128


@pytest.mark.parametrize("name", CORPUS_SMALL)
def test_meet_join_tables_match_brute_scan(name):
    lat = base(sp.corpus(name))
    le = oracles.leq_rows(lat)
    for i in range(lat.n):
        for j in range(lat.n):
            assert lat.meet[i, j] == oracles.brute_meet(le, lat.n, i, j)
            assert lat.join[i, j] == oracles.brute_join(le, lat.n, i, j)


@pytest.mark.parametrize("name", [n for n in CORPUS_SMALL if n != "B4"])
def test_classification_matches_brute_scan(name):
    lat = base(sp.corpus(name))
    rep = sp.classify(lat)
    assert rep.is_distributive == (oracles.brute_distributive(lat) is None)
    assert rep.is_modular == (oracles.brute_modular(lat) is None)


def test_classification_witnesses_frozen():
    m3 = sp.classify(base(sp.corpus("M3")))
    assert (m3.is_distributive, m3.distributive_witness) == (False, (1, 2, 3))
    assert (m3.is_modular, m3.modular_witness) == (True, None)
    n5 = sp.classify(base(sp.corpus("N5")))
    assert (n5.is_distributive, n5.distributive_witness) == (False, (3, 1, 2))
    assert (n5.is_modular, n5.modular_witness) == (False, (1, 2, 3))


def test_classification_witness_replays():
    lat = base(sp.corpus("N5"))
    x, y, z = sp.classify(lat).distributive_witness
    lhs = lat.meet[x, lat.join[y, z]]
    rhs = lat.join[lat.meet[x, y], lat.meet[x, z]]
    assert lhs != rhs


def test_chain_is_distributive_total_order():
    lat = sp.chain(5)
    assert sp.classify(lat).is_distributive
    for i in range(5):
        for j in range(5):
            assert lat.leq[i, j] or lat.leq[j, i]


def test_atoms_are_covers_of_bottom():
    for name in ("B3", "MO3", "N5", "M3"):
        lat = base(sp.corpus(name))
        expected = tuple(a for a in range(lat.n) if a != lat.bottom
                         and bool(lat.leq[lat.bottom, a])
                         and not any(lat.leq[lat.bottom, m] and lat.leq[m, a]
                                     and m not in (lat.bottom, a)
                                     for m in range(lat.n)))
        assert lat.atoms == expected


def test_heights_increase_strictly_upward():
    lat = base(sp.corpus("B3"))
    for i in range(lat.n):
        for j in range(lat.n):
            if i != j and lat.leq[i, j]:
                assert lat.heights[i] < lat.heights[j]


def test_lattice_laws_on_seeded_random_lattices():
    rng = random.Random(7)
    for _ in range(30):
        lat = random_lattice(rng)
        for x in range(lat.n):
            assert lat.meet[x, x] == x and lat.join[x, x] == x
            for y in range(lat.n):
                assert lat.meet[x, y] == lat.meet[y, x]
                assert lat.join[x, lat.meet[x, y]] == x
                assert lat.meet[x, lat.join[x, y]] == x


def test_random_lattice_classification_against_brute():
    rng = random.Random(11)
    for _ in range(20):
        lat = random_lattice(rng, max_n=9)
        assert sp.classify(lat).is_distributive == \
            (oracles.brute_distributive(lat) is None)


def test_dot_output_is_deterministic_and_covers_hasse():
    lat = base(sp.corpus("B3"))
    d1 = sp.lattice_dot(lat)
    d2 = sp.lattice_dot(lat)
    assert d1 == d2
    assert d1.count(" -> ") == len(lat.covers)
