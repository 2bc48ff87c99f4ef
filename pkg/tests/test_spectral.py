"""Step families, observable functions, measures, and correspondences."""

import random
from fractions import Fraction as F

import pytest

import oracles
import stonespec as sp
from stonespec import errors as E
from stonespec.randgen import random_point_function, random_spectral_family
from stonespec.spectral import points_from_sigma, sigma_from_points


def b2():
    return sp.boolean_algebra(2).lattice


# ---------------------------------------------------------------------------
# construction and validation


def test_family_canonical_form():
    fam = sp.make_spectral_family(b2(), ((F(1, 2), 1), (F(3), 3)))
    assert fam.canonical() == ((F(1, 2), 1), (F(3), 3))


def test_repeated_values_collapse_in_canonical_form():
    fam = sp.make_spectral_family(b2(), ((F(0), 1), (F(1), 1), (F(2), 3)))
    assert fam.canonical() == ((F(0), 1), (F(2), 3))


def test_unsorted_thresholds_rejected():
    with pytest.raises(E.UnsortedThresholds):
        sp.make_spectral_family(b2(), ((F(3), 1), (F(1), 3)))


def test_non_monotone_values_rejected():
    with pytest.raises(E.NotMonotone):
        sp.make_spectral_family(b2(), ((F(0), 3), (F(1), 1)))


def test_family_must_end_at_top():
    with pytest.raises(E.TopMissing):
        sp.make_spectral_family(b2(), ((F(0), 1),))


def test_scalar_parsing_is_exact():
    fam = sp.make_spectral_family(b2(), (("1/3", 1), (2, 3)))
    assert fam.thresholds == (F(1, 3), F(2))
    with pytest.raises(E.ParseError):
        sp.make_spectral_family(b2(), (("nope", 1), (2, 3)))


# ---------------------------------------------------------------------------
# observable functions and the increasing table


def test_observable_values_on_b2_family():
    fam = sp.make_spectral_family(b2(), ((F(1, 2), 1), (F(3), 3)))
    rep = sp.observable_function(fam)
    assert rep.quasipoint_values == (F(1, 2), F(3))
    assert rep.ideal_values == (F(1, 2), F(3), F(3))
    assert rep.antitone and rep.intersection_condition
    assert rep.principal_reduction


def test_observable_values_match_least_threshold_rule():
    rng = random.Random(41)
    for _ in range(25):
        lat = random.choice([b2(), sp.boolean_algebra(3).lattice,
                             sp.mo_lattice(2).lattice])
        fam = random_spectral_family(rng, lat)
        rep = sp.observable_function(fam)
        spec = sp.quasipoints(lat)
        for q, got in zip(spec.quasipoints, rep.quasipoint_values):
            assert got == oracles.observable_value(fam, q.members)


def test_increasing_table_matches_brute_rule():
    fam = sp.make_spectral_family(b2(), ((F(1, 2), 1), (F(3), 3)))
    table = sp.increasing_table(b2(), {1: F(1, 2), 2: F(3), 3: F(3)})
    assert table == oracles.brute_increasing_table(fam)


def test_increasing_table_rejects_join_law_violations():
    mo2 = sp.mo_lattice(2).lattice
    with pytest.raises(E.NotMonotone):
        sp.increasing_table(mo2, {1: F(1), 2: F(2), 3: F(3), 4: F(4),
                                  5: F(4)})


def test_family_rebuilds_from_its_table():
    fam = sp.make_spectral_family(b2(), ((F(1, 2), 1), (F(3), 3)))
    table = oracles.brute_increasing_table(fam)
    rebuilt = sp.family_from_increasing(b2(), table)
    assert rebuilt.canonical() == fam.canonical()


def test_uniqueness_scan_pruned_equals_unpruned_equals_brute():
    rng = random.Random(43)
    for _ in range(15):
        lat = random.choice([b2(), sp.mo_lattice(2).lattice, sp.chain(4)])
        fam = random_spectral_family(rng, lat)
        table = oracles.brute_increasing_table(fam)
        pruned = sp.uniqueness_scan(lat, table)
        plain = sp.uniqueness_scan(lat, table, prune=False)
        brute = oracles.brute_family_count(lat, table)
        assert pruned == plain == brute == 1


def test_roundtrip_reports_on_small_carriers():
    rep = sp.observable_roundtrip(b2())
    assert rep.families_checked == 6
    assert rep.family_cycle and rep.observable_cycle and rep.increasing_cycle
    assert rep.uniqueness_counts_all_one and rep.direct_form_agrees
    rep2 = sp.observable_roundtrip(sp.mo_lattice(2).lattice)
    assert rep2.families_checked == 10
    assert rep2.family_cycle and rep2.uniqueness_counts_all_one


# ---------------------------------------------------------------------------
# spectral measures


def test_measure_cells_on_mo2_family():
    mo2 = sp.mo_lattice(2)
    fam = sp.make_spectral_family(mo2.lattice, ((F(1, 2), 1), (F(3), 5)))
    sm = sp.spectral_measure_from_family(fam, mo2)
    assert sm.cell_bounds == ((None, F(1, 2)), (F(1, 2), F(3)), (F(3), None))
    assert sm.cell_elements == (1, 2, 0)


def test_measure_ray_and_interval_queries():
    mo2 = sp.mo_lattice(2)
    fam = sp.make_spectral_family(mo2.lattice, ((F(1, 2), 1), (F(3), 5)))
    sm = sp.spectral_measure_from_family(fam, mo2)
    assert sm.of_ray_upto(F(1, 2)) == 1
    assert sm.of_ray_upto(F(2)) == 1
    assert sm.of_ray_above(F(1, 2)) == 2
    assert sm.of_interval(F(1, 2), F(3)) == 2
    assert sm.real_line() == mo2.top
    assert sm.empty_set() == mo2.bottom


def test_measure_interval_is_meet_of_rays():
    # E((a, b]) = E(b) ^ E(a)' for every threshold pair
    mo3 = sp.mo_lattice(3)
    fam = sp.make_spectral_family(mo3.lattice, ((F(0), 1), (F(1), 7)))
    sm = sp.spectral_measure_from_family(fam, mo3)
    for a in (F(-1), F(0), F(1, 2)):
        for bnd in (F(0), F(1, 2), F(1)):
            if a >= bnd:
                continue
            lhs = sm.of_interval(a, bnd)
            rhs = mo3.meet[sm.of_ray_upto(bnd),
                           mo3.perp[sm.of_ray_upto(a)]]
            assert lhs == rhs


def test_measure_requires_orthomodular_carrier():
    o6 = sp.corpus("O6")
    fam = sp.make_spectral_family(o6.lattice, ((F(0), 1), (F(1), 5)))
    with pytest.raises(E.NotOrthomodular):
        sp.spectral_measure_from_family(fam, o6)


def test_measure_threshold_bound():
    b8 = sp.boolean_algebra(8)
    elems = [(1 << (k + 1)) - 1 for k in range(8)]
    steps = tuple((F(k), elems[k]) for k in range(8))
    fam = sp.make_spectral_family(b8.lattice, steps)
    with pytest.raises(E.SizeBound):
        sp.spectral_measure_from_family(fam, b8)


# ---------------------------------------------------------------------------
# measurable and continuous correspondences


def test_measurable_correspondence_frozen_examples():
    rep = sp.measurable_correspondence((F(0), F(1)))
    assert rep.family.canonical() == ((F(0), 1), (F(1), 3))
    assert rep.recovered_values == (F(0), F(1))
    assert rep.family_roundtrip
    assert rep.gelfand_values == (F(0), F(1))
    rep2 = sp.measurable_correspondence((F(2), F(0), F(2)))
    assert rep2.family.canonical() == ((F(0), 2), (F(2), 7))
    assert rep2.recovered_values == (F(2), F(0), F(2))


def test_measurable_roundtrips_on_seeded_functions():
    rng = random.Random(47)
    for _ in range(40):
        g = random_point_function(rng, rng.randint(1, 8))
        rep = sp.measurable_correspondence(g)
        assert rep.recovered_values == tuple(F(x) for x in g)
        assert rep.family_roundtrip
        assert rep.gelfand_values == rep.recovered_values


def test_sigma_then_points_then_sigma_is_identity():
    rng = random.Random(53)
    for _ in range(40):
        g = random_point_function(rng, rng.randint(1, 8))
        fam = sigma_from_points(g)
        again = sigma_from_points(points_from_sigma(fam))
        assert again.canonical() == fam.canonical()


def test_continuous_correspondence_on_discrete_pair():
    d2 = sp.builtin_space("discrete2")
    rep = sp.continuous_correspondence(d2, (F(1, 3), F(2, 3)))
    assert rep.values_regular_open and rep.domain_dense
    assert rep.function_roundtrip and rep.family_roundtrip
    assert rep.induced_values == (F(1, 3), F(2, 3))
    assert rep.quasipoint_values == (F(1, 3), F(2, 3))
    assert rep.supports == (1, 2)


def test_continuous_rejects_non_locally_constant_functions():
    t3 = sp.builtin_space("T3")
    with pytest.raises(E.NotContinuous):
        sp.continuous_correspondence(t3, (F(0), F(1), F(2)))


def test_continuous_accepts_constants_on_any_space():
    for name in ("T3", "sierpinski", "indiscrete2"):
        space = sp.builtin_space(name)
        vals = tuple(F(5) for _ in range(space.points))
        rep = sp.continuous_correspondence(space, vals)
        assert rep.induced_values == vals
        assert rep.function_roundtrip


# ---------------------------------------------------------------------------
# diagonal expansion


def test_gelfand_worked_example():
    rep = sp.gelfand_finite(3, ((F(2), (0, 1)), (F(3), (1, 2))))
    assert rep.vector == (F(2), F(5), F(3))
    got = [(t.coefficient, t.support) for t in rep.orthogonal_terms]
    assert got == [(F(5), 2), (F(2), 1), (F(3), 4)]
    assert rep.characters_bijective and rep.multiplicative
    assert rep.projections_two_valued


def test_gelfand_vector_matches_summation_oracle():
    rng = random.Random(59)
    from stonespec.randgen import random_diagonal
    for _ in range(50):
        dim = rng.randint(1, 6)
        terms = random_diagonal(rng, dim)
        rep = sp.gelfand_finite(dim, terms)
        assert rep.vector == oracles.gelfand_vector(dim, terms)


def test_gelfand_expansion_is_representation_invariant():
    # same element written per-coordinate gives the same expansion vector
    rep = sp.gelfand_finite(3, ((F(2), (0, 1)), (F(3), (1, 2))))
    singles = tuple((v, (i,)) for i, v in enumerate(rep.vector) if v != 0)
    again = sp.gelfand_finite(3, singles)
    assert again.vector == rep.vector
    assert sorted((t.coefficient, t.support) for t in again.orthogonal_terms) \
        == sorted((t.coefficient, t.support) for t in rep.orthogonal_terms)


def test_gelfand_quotient_by_coordinate_ideal():
    rep = sp.gelfand_finite(3, ((F(2), (0, 1)), (F(3), (1, 2))),
                            ideal_coordinates=(1,))
    assert rep.quotient_character_pairs == ((0, 0), (2, 1))


def test_gelfand_rejects_out_of_range_support():
    with pytest.raises(E.DimensionMismatch):
        sp.gelfand_finite(2, ((F(1), (0, 5)),))
