"""Presheaves over lattices, germs, sheafification, horizontal sums."""

import pytest

import oracles
import stonespec as sp
from stonespec import errors as E
from stonespec.presheaf import (corpus_presheaf, function_presheaf,
                                load_presheaf, make_presheaf,
                                singleton_presheaf)


def chain3_presheaf(composite):
    sets = [["x", "y"], ["u", "v"], ["p", "q"]]
    maps = {(0, 1): {"u": "x", "v": "y"}, (1, 2): {"p": "u", "q": "v"},
            (0, 2): composite}
    return make_presheaf(sp.chain(3), sets, maps)


def test_make_presheaf_accepts_consistent_composite():
    P = chain3_presheaf({"p": "x", "q": "y"})
    assert P.restrict(2, 0, 0) == 0


def test_make_presheaf_rejects_inconsistent_composite():
    with pytest.raises(E.FunctorialityViolation) as exc:
        chain3_presheaf({"p": "y", "q": "x"})
    assert exc.value.witness == (0, 1, 2)


def test_make_presheaf_requires_cover_maps():
    with pytest.raises(E.MissingMap) as exc:
        make_presheaf(sp.chain(2), [["x"], ["y"]], {})
    assert exc.value.witness == (0, 1)


def test_make_presheaf_rejects_duplicate_labels():
    with pytest.raises(E.ParseError):
        make_presheaf(sp.chain(2), [["x", "x"], ["y"]],
                      {(0, 1): {"y": "x"}})


def test_make_presheaf_rejects_partial_maps():
    with pytest.raises(E.ParseError):
        make_presheaf(sp.chain(2), [["x"], ["y", "z"]],
                      {(0, 1): {"y": "x"}})


def test_presheaf_doc_roundtrip():
    fp = function_presheaf(sp.boolean_algebra(2).lattice)
    doc = fp.to_doc()
    again = load_presheaf(fp.lattice, doc)
    assert again.sets == fp.sets
    assert again.maps == fp.maps


# ---------------------------------------------------------------------------
# completeness


def test_function_presheaf_on_boolean_carrier_is_complete():
    rep = sp.is_complete(function_presheaf(sp.boolean_algebra(2).lattice))
    assert rep.complete and rep.witness is None
    assert rep.families_checked == 4


def test_function_presheaf_on_m3_is_incomplete():
    P = function_presheaf(sp.corpus("M3"))
    rep = sp.is_complete(P)
    assert not rep.complete
    assert rep.witness == (4, (1, 2), (0, 0), 2)
    # the witness replays: two global members glue the same pair
    join, family, tup, count = rep.witness
    assert oracles.gluing_count(P, family, tup) == count
    assert count != 1


def test_corpus_presheaf_fixtures():
    rep = sp.is_complete(corpus_presheaf("C3-collapse"))
    assert rep.complete and rep.families_checked == 2
    rep = sp.is_complete(corpus_presheaf("B2-functions"))
    assert rep.complete and rep.families_checked == 4
    rep = sp.is_complete(corpus_presheaf("B2-small-top"))
    assert not rep.complete
    assert rep.witness == (3, (1, 2), (0, 1), 0)


def test_incompleteness_witness_replays_on_small_top():
    P = corpus_presheaf("B2-small-top")
    _, family, tup, count = sp.is_complete(P).witness
    assert oracles.gluing_count(P, family, tup) == count == 0


# ---------------------------------------------------------------------------
# stalks and the etale space


def test_stalks_of_function_presheaf_count_local_values():
    lat = sp.boolean_algebra(2).lattice
    fp = function_presheaf(lat)
    spec = sp.quasipoints(lat)
    st = sp.stalk(fp, spec.quasipoints[0], 0)
    assert len(st) == 2
    assert [(g.element, g.member, g.canonical) for g in st] == \
        [(1, 0, 0), (1, 1, 1)]


def test_etale_space_over_b2_functions():
    lat = sp.boolean_algebra(2).lattice
    fp = function_presheaf(lat)
    et = sp.etale_and_sections(fp)
    assert len(et.points) == 4
    assert [len(s) for s in et.stalks] == [2, 2]


def test_sections_recover_presheaf_members():
    lat = sp.boolean_algebra(2).lattice
    fp = function_presheaf(lat)
    et = sp.etale_and_sections(fp)
    spec = sp.quasipoints(lat)
    full = range(len(spec.quasipoints))
    assert len(et.sections(full)) == len(fp.sets[lat.top])


# ---------------------------------------------------------------------------
# sheafification


def test_sheafify_is_bijective_for_complete_faithful_input():
    for lat in (sp.boolean_algebra(2).lattice, sp.boolean_algebra(3).lattice):
        for build in (function_presheaf, singleton_presheaf):
            rep = sp.sheafify(build(lat))
            assert rep.input_complete and rep.basis_faithful
            assert all(inj and surj for _, inj, surj in rep.comparison)
            assert rep.sheaf_complete


def test_sheafify_comparison_on_collapsing_fixture():
    rep = sp.sheafify(corpus_presheaf("C3-collapse"))
    assert rep.input_complete and not rep.basis_faithful
    assert rep.comparison == ((0, True, True), (1, True, True),
                              (2, False, True))
    assert rep.sheaf_complete


def test_sheafify_comparison_on_incomplete_fixture():
    rep = sp.sheafify(corpus_presheaf("B2-small-top"))
    assert not rep.input_complete and rep.basis_faithful
    assert rep.comparison == ((0, True, True), (1, True, True),
                              (2, True, True), (3, True, False))
    assert rep.sheaf_complete


def test_sheafified_presheaf_passes_completeness():
    rep = sp.sheafify(function_presheaf(sp.corpus("M3")))
    assert rep.sheaf_complete
    assert sp.is_complete(rep.sheaf).complete


# ---------------------------------------------------------------------------
# horizontal sums


def test_horizontal_sum_triviality_frozen_counts():
    rep = sp.horizontal_sum_triviality(2, 1)
    assert (rep.enumerated, rep.complete_count) == (1, 1)
    assert rep.all_trivial and rep.nontrivial_complete == ()
    rep = sp.horizontal_sum_triviality(2, 2)
    assert (rep.enumerated, rep.complete_count) == (706, 1)
    assert rep.all_trivial
    rep = sp.horizontal_sum_triviality(3, 2)
    assert (rep.enumerated, rep.complete_count) == (16354, 1)
    assert rep.all_trivial


def test_horizontal_sum_budget_guard():
    with pytest.raises(E.SearchBudgetExceeded):
        sp.horizontal_sum_triviality(2, 4)
