"""Finite spaces: interior algebra, regular opens, meagre quotients."""

import pytest

import oracles
import stonespec as sp
from stonespec import errors as E
from stonespec.topology import FiniteSpace, indistinguishability_blocks


def test_space_validation_rejects_missing_union():
    with pytest.raises(E.NotATopology):
        FiniteSpace(2, (0, 1, 2))       # {0} and {1} without {0,1}


def test_space_validation_rejects_missing_bounds():
    with pytest.raises(E.NotATopology):
        FiniteSpace(2, (1, 3))


def test_builtin_spaces_resolve():
    assert sp.builtin_space("T3").opens == frozenset({0, 1, 4, 5, 7}) or \
        sorted(sp.builtin_space("T3").opens) == [0, 1, 4, 5, 7]
    assert sorted(sp.builtin_space("sierpinski").opens) == [0, 1, 3]
    assert len(sp.builtin_space("discrete3").opens) == 8
    assert sorted(sp.builtin_space("indiscrete2").opens) == [0, 3]


def test_load_space_roundtrip():
    t3 = sp.builtin_space("T3")
    again = sp.load_space(t3.to_doc())
    assert again.points == t3.points
    assert sorted(again.opens) == sorted(t3.opens)


def test_enumeration_counts_are_the_known_values():
    assert len(sp.enumerate_topologies(3)) == 29
    assert len(sp.enumerate_topologies(4)) == 355


def test_interior_closure_boundary_match_direct_scan():
    for space in (sp.builtin_space("T3"), sp.builtin_space("sierpinski")):
        for mask in range(1 << space.points):
            rep = sp.topo_ops(space, mask)
            assert rep.interior == oracles.interior_of(space, mask)
            assert rep.closure == oracles.closure_of(space, mask)
            assert rep.boundary == rep.closure & ~rep.interior


def test_t3_operator_table_frozen():
    t3 = sp.builtin_space("T3")
    table = [(sp.topo_ops(t3, m).interior, sp.topo_ops(t3, m).closure)
             for m in range(8)]
    assert table == [(0, 0), (1, 3), (0, 2), (1, 3),
                     (4, 6), (5, 7), (4, 6), (7, 7)]


def test_regular_opens_of_t3():
    rep = sp.regular_open_lattice(sp.builtin_space("T3"))
    assert rep.regular_masks == (0, 1, 4, 7)
    assert rep.open_to_regular == (0, 1, 2, 3, 3)
    assert rep.heyting_identity
    assert sp.classify(rep.ortho.lattice).is_distributive


def test_regular_opens_match_direct_scan_on_three_point_sweep():
    for space in sp.enumerate_topologies(3):
        rep = sp.regular_open_lattice(space)
        assert list(rep.regular_masks) == oracles.brute_regular_opens(space)


def test_triple_pseudocomplement_collapses_on_opens():
    for space in sp.enumerate_topologies(3):
        for o in space.opens:
            pc = oracles.pseudocomplement_of
            assert pc(space, pc(space, pc(space, o))) == pc(space, o)


def test_rho_comparison_on_t3():
    rep = sp.rho_map(sp.builtin_space("T3"))
    assert rep.pairs == ((0, 0), (1, 1))
    assert rep.basis_compatible


def test_rho_is_bijective_on_three_point_sweep():
    for space in sp.enumerate_topologies(3):
        rep = sp.rho_map(space)
        srcs = [a for a, _ in rep.pairs]
        dsts = [b for _, b in rep.pairs]
        assert len(set(srcs)) == len(srcs)
        assert len(set(dsts)) == len(dsts)
        assert len(rep.pairs) == len(rep.regular_spectrum.quasipoints)
        assert rep.basis_compatible


def test_blocks_partition_and_saturate_opens():
    for space in sp.enumerate_topologies(3):
        blocks = indistinguishability_blocks(space)
        union = 0
        for b in blocks:
            assert union & b == 0
            union |= b
        assert union == (1 << space.points) - 1
        # every open is a union of blocks
        for o in space.opens:
            assert all(b & o in (0, b) for b in blocks)


def test_generated_field_is_exactly_the_block_unions():
    for space in sp.enumerate_topologies(3):
        blocks = indistinguishability_blocks(space)
        unions = set()
        for mask in range(1 << len(blocks)):
            u = 0
            for i, b in enumerate(blocks):
                if mask >> i & 1:
                    u |= b
            unions.add(u)
        assert oracles.generated_field(space) == unions


def test_t3_meagre_quotient_frozen():
    rep = sp.meagre_baire(sp.builtin_space("T3"))
    assert rep.blocks == (1, 2, 4)
    assert rep.nowhere_dense == (0, 2)
    assert rep.ideal_point_masks == (0, 2)
    assert rep.is_baire and rep.skip_reason is None
    assert rep.regular_representatives == ((0, 0), (1, 1), (2, 4), (3, 7))
    assert rep.pi_pairs == ((0, 0), (1, 2))
    assert rep.surviving == (0, 2)


def test_sierpinski_meagre_quotient_frozen():
    rep = sp.meagre_baire(sp.builtin_space("sierpinski"))
    assert rep.blocks == (1, 2)
    assert rep.nowhere_dense == (0, 2)
    assert rep.regular_representatives == ((0, 0), (1, 3))


def test_indiscrete_pair_is_a_single_block():
    rep = sp.meagre_baire(sp.builtin_space("indiscrete2"))
    assert rep.blocks == (3,)
    assert rep.is_baire
    assert rep.regular_representatives == ((0, 0), (1, 3))


def test_every_three_point_space_is_baire():
    for space in sp.enumerate_topologies(3):
        rep = sp.meagre_baire(space)
        assert rep.is_baire
        # no nonempty open is meagre, restated through the oracle
        meagre = oracles.meagre_masks(space)
        for o in space.opens:
            if o:
                assert o not in meagre


def test_nowhere_dense_blocks_match_direct_scan():
    for space in sp.enumerate_topologies(3):
        rep = sp.meagre_baire(space)
        nd = oracles.nowhere_dense_masks(space)
        got = set(rep.nowhere_dense)
        for b in rep.blocks:
            assert (b in got) == (b in nd)


def test_unique_regular_representative_per_class():
    for space in sp.enumerate_topologies(3):
        rep = sp.meagre_baire(space)
        regs = oracles.brute_regular_opens(space)
        seen = [m for _, m in rep.regular_representatives]
        assert sorted(seen) == sorted(set(seen))
        for m in seen:
            assert m in regs
        assert len(rep.regular_representatives) == len(regs)


def test_point_bound_on_the_measurable_algebra():
    sp11 = FiniteSpace(11, (0, (1 << 11) - 1))
    with pytest.raises(E.SizeBound):
        sp.meagre_baire(sp11)


def test_t3_point_traces_frozen():
    expected = {0: (True, True, True, 3), 1: (False, False, False, 7),
                2: (True, True, True, 6)}
    t3 = sp.builtin_space("T3")
    for p, (tr, bd, alt, supp) in expected.items():
        rep = sp.quasipoint_analysis(t3, p)
        assert rep.trace_is_quasipoint == tr
        assert rep.boundary_criterion == bd
        assert rep.alternative_holds == alt
        assert rep.support == supp


def test_boundary_criterion_agrees_with_trace_on_three_point_sweep():
    for space in sp.enumerate_topologies(3):
        for p in range(space.points):
            rep = sp.quasipoint_analysis(space, p)
            assert rep.trace_is_quasipoint == rep.boundary_criterion
            assert rep.trace_is_quasipoint == rep.alternative_holds


def test_analysis_insensitive_to_block_representative():
    ind = sp.builtin_space("indiscrete2")
    a = sp.quasipoint_analysis(ind, 0)
    b = sp.quasipoint_analysis(ind, 1)
    assert a.members == b.members
    assert a.trace_is_quasipoint == b.trace_is_quasipoint


def test_explicit_member_lists_are_validated():
    t3 = sp.builtin_space("T3")
    good = sp.quasipoint_analysis(t3, 0)
    again = sp.quasipoint_analysis(t3, list(good.members))
    assert again.members == good.members
    ind = sp.builtin_space("indiscrete2")
    with pytest.raises(E.NotAQuasipoint):
        # half an indiscrete pair is not in the measurable algebra
        sp.quasipoint_analysis(ind, [3, 1])
    with pytest.raises(E.NotAQuasipoint):
        sp.quasipoint_analysis(t3, [7])     # not maximal
