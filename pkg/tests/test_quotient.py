"""Boolean quotients by ideals and the induced spectrum matching."""

import random

import pytest

import stonespec as sp
from stonespec import errors as E
from stonespec.randgen import random_ideal


def test_close_ideal_adds_bottom_and_downsets():
    b3 = sp.boolean_algebra(3)
    closed = sp.close_ideal(b3, (3,))     # {1,2} pulls in 0, {1}, {2}
    assert closed == (0, 1, 2, 3)


def test_close_ideal_is_join_closed():
    b3 = sp.boolean_algebra(3)
    closed = sp.close_ideal(b3, (1, 2))
    for a in closed:
        for b in closed:
            assert b3.join[a, b] in closed


def test_validate_ideal_rejects_missing_join():
    b3 = sp.boolean_algebra(3)
    with pytest.raises(E.NotAnIdeal):
        sp.quotient_boolean(b3, (0, 1, 2), closed=True)


def test_improper_ideal_rejected():
    b3 = sp.boolean_algebra(3)
    with pytest.raises(E.ImproperIdeal):
        sp.quotient_boolean(b3, (b3.top,))


def test_non_boolean_carrier_rejected():
    with pytest.raises(E.NotBoolean):
        sp.quotient_boolean(sp.mo_lattice(2), (1,))


def test_quotient_of_b3_by_atom_ideal():
    b3 = sp.boolean_algebra(3)
    qa = sp.quotient_boolean(b3, (1,))
    assert qa.ideal == (0, 1)
    assert qa.classes == ((0, 1), (2, 3), (4, 5), (6, 7))
    assert qa.projection == (0, 0, 1, 1, 2, 2, 3, 3)
    assert qa.quotient.n == 4


def test_quotient_classes_are_symmetric_difference_orbits():
    # two elements are identified exactly when they differ inside the ideal
    b3 = sp.boolean_algebra(3)
    qa = sp.quotient_boolean(b3, (1,))
    ideal_top = 1
    for cls in qa.classes:
        for a in cls:
            for b in cls:
                diff = a ^ b     # element indices are subset masks here
                assert diff & ~ideal_top == 0


def test_projection_is_a_lattice_homomorphism():
    b3 = sp.boolean_algebra(3)
    qa = sp.quotient_boolean(b3, (1, 2))
    p = qa.projection
    q = qa.quotient
    for a in range(b3.n):
        for b in range(b3.n):
            assert p[b3.meet[a, b]] == q.meet[p[a], p[b]]
            assert p[b3.join[a, b]] == q.join[p[a], p[b]]
            assert p[b3.perp[a]] == q.perp[p[a]]


def test_correspondence_on_b3_frozen():
    rep = sp.spectrum_correspondence(sp.boolean_algebra(3), (1,))
    assert rep.forward == ((1, 0), (2, 1))
    assert rep.backward == ((1, 0), (2, 1))
    assert rep.surviving == (1, 2)
    assert rep.basis_compatible and rep.avoidance_equivalence
    assert rep.closedness_witnesses == ((0, 1),)


def test_correspondence_maps_compose_to_identities():
    rng = random.Random(17)
    for _ in range(30):
        k = rng.randint(2, 5)
        ol = sp.boolean_algebra(k)
        ideal = random_ideal(rng, ol)
        rep = sp.spectrum_correspondence(ol, ideal)
        fwd = dict(rep.forward)
        bwd = {q: b for b, q in rep.backward}
        # mutual inverses on the surviving part of the spectrum
        assert sorted(rep.forward) == sorted(rep.backward)
        assert set(fwd) == set(rep.surviving)
        assert len(set(fwd.values())) == len(fwd)
        for b, q in rep.forward:
            assert bwd[q] == b
        assert rep.basis_compatible and rep.avoidance_equivalence


def test_surviving_quasipoints_avoid_the_ideal():
    b4 = sp.boolean_algebra(4)
    ideal = sp.close_ideal(b4, (1, 2))
    rep = sp.spectrum_correspondence(b4, ideal, closed=True)
    spec = sp.quasipoints(b4.lattice)
    for i, q in enumerate(spec.quasipoints):
        avoids = not (set(q.members) & set(ideal))
        assert (i in rep.surviving) == avoids


def test_closed_flag_skips_reclosure():
    b3 = sp.boolean_algebra(3)
    pre = sp.close_ideal(b3, (1,))
    a = sp.spectrum_correspondence(b3, pre, closed=True)
    b = sp.spectrum_correspondence(b3, (1,))
    assert a.forward == b.forward
    assert a.quotient.classes == b.quotient.classes
