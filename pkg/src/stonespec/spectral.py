"""Step families of lattice elements and the functions they induce.

Scalars are exact rationals throughout; every infimum ranges over a
finite threshold set and is an attained minimum, so there is no
tolerance anywhere in this module.

A spectral family is a finite increasing step function from rationals
to lattice elements that ends at the top element; below its first
threshold it is the bottom element.  Three equivalent encodings are
maintained and interconverted:

* the family itself;
* its observable function on maximal filters and on all dual ideals,
  f(J) = min of the thresholds whose value lies in J;
* the completely increasing function r(a) = f of the principal filter
  at a, satisfying r(a v b) = max(r(a), r(b)).

The reconstruction of the family from r takes E at a threshold to the
join of all elements with r-value at most that threshold.  A candidate
chain of values induces the target function exactly when, at every
level, the down-set of the chain element equals the r-sublevel set;
that criterion makes the uniqueness scan prune to at most one
candidate per level while remaining an exact count of all matching
chains over the threshold set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .corpus import boolean_algebra
from .errors import (DimensionMismatch, InternalContradiction, NoThresholdInIdeal,
                     NotContinuous, NotMonotone, NotOrthomodular, ParseError,
                     SizeBound, TopMissing, UnsortedThresholds)
from .lattice import Lattice
from .ortho import OrthoLattice, is_orthomodular
from .quotient import spectrum_correspondence
from .spectrum import Filter, StoneSpectrum, dual_ideals, quasipoints
from .topology import FiniteSpace, mask_points

Scalar = Union[int, str, Fraction]


def as_scalar(x: Scalar) -> Fraction:
    """Exact rational from an int, a Fraction, or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exact scalar: {x!r}") from exc
    raise ParseError(f"not an exact scalar: {x!r}")


@dataclass(frozen=True)
class SpectralFamily:
    """Validated increasing step family; see the module docstring."""
    lattice: Lattice
    thresholds: tuple[Fraction, ...]
    values: tuple[int, ...]

    def evaluate(self, lam: Scalar) -> int:
        """The element at a rational parameter, bottom below all thresholds."""
        lam = as_scalar(lam)
        out = self.lattice.bottom
        for t, v in zip(self.thresholds, self.values):
            if t <= lam:
                out = v
            else:
                break
        return out

    def canonical(self) -> tuple[tuple[Fraction, int], ...]:
        """Steps with no-op entries removed; equal functions agree here."""
        out = []
        prev = self.lattice.bottom
        for t, v in zip(self.thresholds, self.values):
            if v != prev:
                out.append((t, v))
                prev = v
        return tuple(out)

    def left_view(self) -> tuple[tuple[Fraction, int], ...]:
        """At each threshold, the value from strictly below (a derived view)."""
        out = []
        prev = self.lattice.bottom
        for t, v in zip(self.thresholds, self.values):
            out.append((t, prev))
            prev = v
        return out and tuple(out) or tuple()

    def to_doc(self) -> dict:
        return {"steps": [{"lambda": str(t), "element": int(v)}
                          for t, v in zip(self.thresholds, self.values)]}


def make_spectral_family(lat: Lattice,
                         steps: Iterable[tuple[Scalar, int]]) -> SpectralFamily:
    """Validate thresholds and values and build the family.

    Thresholds must be strictly increasing, values must increase with
    them, and the final value must be the top element.
    """
    pairs = [(as_scalar(t), int(v)) for t, v in steps]
    if not pairs:
        raise TopMissing("a spectral family needs at least one step")
    for _, v in pairs:
        if not 0 <= v < lat.n:
            raise ParseError(f"element {v} out of range")
    for i in range(1, len(pairs)):
        if pairs[i - 1][0] >= pairs[i][0]:
            raise UnsortedThresholds(
                f"thresholds {pairs[i - 1][0]} and {pairs[i][0]} out of order",
                witness=(i - 1, i))
        if not lat.leq[pairs[i - 1][1], pairs[i][1]]:
            raise NotMonotone(
                f"value {pairs[i - 1][1]} at {pairs[i - 1][0]} is not below "
                f"value {pairs[i][1]} at {pairs[i][0]}", witness=(i - 1, i))
    if pairs[-1][1] != lat.top:
        raise TopMissing(f"final value {pairs[-1][1]} is not the top element")
    return SpectralFamily(lat, tuple(t for t, _ in pairs), tuple(v for _, v in pairs))


def load_spectral_family(lat: Lattice, doc: dict) -> SpectralFamily:
    if not isinstance(doc, dict) or "steps" not in doc:
        raise ParseError("spectral family document needs steps")
    steps = []
    for i, s in enumerate(doc["steps"]):
        if not isinstance(s, dict) or "lambda" not in s or "element" not in s:
            raise ParseError(
                f"step {i} must be an object with lambda and element")
        steps.append((s["lambda"], s["element"]))
    return make_spectral_family(lat, steps)


@dataclass(frozen=True)
class ObservableReport:
    family: SpectralFamily
    spectrum: StoneSpectrum
    quasipoint_values: tuple[Fraction, ...]
    ideals: tuple[Filter, ...]
    ideal_values: tuple[Fraction, ...]
    antitone: bool
    intersection_condition: bool
    principal_reduction: bool


def _ideal_value(fam: SpectralFamily, minimum: int) -> Fraction:
    for t, v in zip(fam.thresholds, fam.values):
        if fam.lattice.leq[minimum, v]:
            return t
    raise NoThresholdInIdeal(
        "no threshold value lies in the dual ideal; unreachable because the "
        f"final value is the top element (minimum {minimum})")


def observable_function(fam: SpectralFamily,
                        bound: Optional[int] = None) -> ObservableReport:
    """Evaluate the induced function on quasipoints and all dual ideals.

    Verified along the way: the function is antitone under ideal
    inclusion; the pairwise intersection condition f(J1 n J2) =
    max(f(J1), f(J2)), which extends to arbitrary finite families by
    folding; and the reduction f(J) = min over members P of f(H_P).
    """
    lat = fam.lattice
    spec = quasipoints(lat)
    qvals = tuple(_ideal_value(fam, qp.minimum) for qp in spec.quasipoints)
    ideals = tuple(dual_ideals(lat) if bound is None else dual_ideals(lat, bound))
    ivals = tuple(_ideal_value(fam, f.minimum) for f in ideals)
    by_min = {f.minimum: v for f, v in zip(ideals, ivals)}
    antitone = True
    intersection = True
    for i, fi in enumerate(ideals):
        for j, fj in enumerate(ideals):
            if lat.leq[fj.minimum, fi.minimum] and ivals[i] < ivals[j]:
                antitone = False
            meet_min = int(lat.join[fi.minimum, fj.minimum])
            if by_min[meet_min] != max(ivals[i], ivals[j]):
                intersection = False
    principal = all(
        v == min(by_min[p] for p in f.members)
        for f, v in zip(ideals, ivals))
    if not (antitone and intersection and principal):
        raise InternalContradiction(
            f"observable laws failed: antitone={antitone} "
            f"intersection={intersection} principal={principal}")
    return ObservableReport(fam, spec, qvals, ideals, ivals, antitone,
                            intersection, principal)


def increasing_from_observable(rep: ObservableReport) -> dict[int, Fraction]:
    """Restrict the observable to principal filters: r(a) = f(H_a).

    The completely increasing law r(a v b) = max(r(a), r(b)) is
    verified pairwise, which covers every finite family by folding.
    """
    lat = rep.family.lattice
    r = {f.minimum: v for f, v in zip(rep.ideals, rep.ideal_values)}
    if set(r) != set(range(lat.n)) - {lat.bottom}:
        raise InternalContradiction("principal filters missing from the ideal list")
    for a in r:
        for b in r:
            j = int(lat.join[a, b])
            if r[j] != max(r[a], r[b]):
                raise InternalContradiction(
                    f"completely increasing law fails at ({a}, {b})")
    return r


def increasing_table(lat: Lattice,
                     table: Mapping[int, Scalar]) -> dict[int, Fraction]:
    """Validate a table on the nonzero elements against the join law.

    The pairwise law r(a v b) = max(r(a), r(b)) is equivalent to the
    finite-family version by folding.  Tables violating it lie outside
    the conversion bijection; for instance no such table on a lattice
    where two complementary atom pairs join to the top can take four
    distinct values on the atoms, since the top's value would have to
    be the maximum of both pairs at once.
    """
    r = {int(a): as_scalar(v) for a, v in table.items()}
    if set(r) != set(range(lat.n)) - {lat.bottom}:
        raise ParseError("table must cover exactly the nonzero elements")
    for a in r:
        for b in r:
            j = int(lat.join[a, b])
            if r[j] != max(r[a], r[b]):
                raise NotMonotone(
                    f"join law fails: r({j}) = {r[j]} but elements {a}, {b} "
                    f"give max {max(r[a], r[b])}", witness=(a, b))
    return r


def family_from_increasing(lat: Lattice, r: Mapping[int, Fraction]) -> SpectralFamily:
    """Rebuild the step family: the value at t is the join of the r-sublevel set."""
    r = increasing_table(lat, r)
    thresholds = sorted(set(r.values()))
    steps = []
    for t in thresholds:
        steps.append((t, lat.family_join([a for a, v in r.items() if v <= t])))
    return make_spectral_family(lat, steps)


def uniqueness_scan(lat: Lattice, r: Mapping[int, Fraction], *,
                    prune: bool = True) -> int:
    """Count increasing chains over the threshold set inducing the table.

    With pruning, each level keeps only elements whose down-set equals
    the sublevel set of the table, which is exactly the match criterion
    level by level, so the count is unchanged; without pruning every
    monotone chain ending at top is tried (meant for small oracles).
    """
    thresholds = sorted(set(r.values()))
    sublevels = []
    for t in thresholds:
        mask = np.zeros(lat.n, dtype=bool)
        for a, v in r.items():
            if v <= t:
                mask[a] = True
        sublevels.append(mask)

    def induces(chain: list[int]) -> bool:
        for e, want in zip(chain, sublevels):
            have = lat.leq[:, e].copy()
            have[lat.bottom] = False
            if not np.array_equal(have, want):
                return False
        return True

    count = 0
    m = len(thresholds)

    def walk(level: int, chain: list[int]) -> None:
        nonlocal count
        if level == m:
            if chain[-1] == lat.top and induces(chain):
                count += 1
            return
        for e in range(lat.n):
            if chain and not lat.leq[chain[-1], e]:
                continue
            if prune:
                have = lat.leq[:, e].copy()
                have[lat.bottom] = False
                if not np.array_equal(have, sublevels[level]):
                    continue
            walk(level + 1, chain + [e])

    walk(0, [])
    return count


@dataclass(frozen=True)
class RoundtripReport:
    lattice: Lattice
    families_checked: int
    family_cycle: bool
    observable_cycle: bool
    increasing_cycle: bool
    uniqueness_counts_all_one: bool
    direct_form_agrees: bool


def observable_roundtrip(lat: Lattice) -> RoundtripReport:
    """Run the three conversions around the cycle on a canonical batch.

    The batch holds every one- and two-step family and, on small
    lattices, every comparable-pair three-step family.  For each one:
    family -> observable -> increasing table -> reconstructed family
    must close up (as step functions), the derived observable and table
    must reproduce themselves through the reconstruction, exactly one
    chain over the threshold set induces the table, and the direct form
    min over members of r agrees with the threshold form.
    """
    zero, one, two = Fraction(0), Fraction(1), Fraction(2)
    batch: list[SpectralFamily] = [make_spectral_family(lat, [(zero, lat.top)])]
    for e in range(lat.n):
        if e != lat.top:
            batch.append(make_spectral_family(lat, [(zero, e), (one, lat.top)]))
    if lat.n <= 16:
        chains = [(e, f) for e in range(lat.n) for f in range(lat.n)
                  if e != f and lat.leq[e, f] and f != lat.top]
    else:
        chains = [c for c in lat.covers if c[1] != lat.top]
    for e, f in chains:
        batch.append(make_spectral_family(
            lat, [(zero, e), (one, f), (two, lat.top)]))

    fam_ok = obs_ok = inc_ok = uniq_ok = direct_ok = True
    for fam in batch:
        rep = observable_function(fam)
        r = increasing_from_observable(rep)
        rebuilt = family_from_increasing(lat, r)
        if rebuilt.canonical() != fam.canonical():
            fam_ok = False
        rep2 = observable_function(rebuilt)
        if rep2.ideal_values != rep.ideal_values or \
           rep2.quasipoint_values != rep.quasipoint_values:
            obs_ok = False
        if increasing_from_observable(rep2) != r:
            inc_ok = False
        if uniqueness_scan(lat, r) != 1:
            uniq_ok = False
        direct = tuple(min(r[a] for a in f.members) for f in rep.ideals)
        if direct != rep.ideal_values:
            direct_ok = False
    if not all((fam_ok, obs_ok, inc_ok, uniq_ok, direct_ok)):
        raise InternalContradiction(
            f"conversion cycle broke: family={fam_ok} observable={obs_ok} "
            f"increasing={inc_ok} uniqueness={uniq_ok} direct={direct_ok}")
    return RoundtripReport(lat, len(batch), fam_ok, obs_ok, inc_ok, uniq_ok,
                           direct_ok)


MAX_MEASURE_THRESHOLDS = 7


@dataclass(frozen=True)
class SpectralMeasure:
    """Interval-algebra measure induced by a family over an ortholattice.

    Cells partition the line along the thresholds: the low ray up to
    the first, the half-open spans between neighbors, and the open ray
    beyond the last.  A finite union of intervals is a cell mask; its
    measure is the join of the cell elements.  The derived laws
    (difference, union, intersection) are verified on every pair of
    cell masks at construction; pairs extend to finite sequences by
    folding.
    """
    family: SpectralFamily
    ortho: OrthoLattice
    cell_bounds: tuple[tuple[Optional[Fraction], Optional[Fraction]], ...]
    cell_elements: tuple[int, ...]

    def of_cells(self, mask: int) -> int:
        return self.ortho.lattice.family_join(
            [e for i, e in enumerate(self.cell_elements) if mask >> i & 1])

    def real_line(self) -> int:
        return self.of_cells((1 << len(self.cell_elements)) - 1)

    def empty_set(self) -> int:
        return self.ortho.bottom

    def of_ray_upto(self, a: Scalar) -> int:
        return self.family.evaluate(a)

    def of_ray_above(self, a: Scalar) -> int:
        return int(self.ortho.perp[self.family.evaluate(a)])

    def of_interval(self, a: Scalar, b: Scalar) -> int:
        """The half-open span (a, b] via the complement-twisted meet."""
        a, b = as_scalar(a), as_scalar(b)
        if a >= b:
            return self.ortho.bottom
        eb = self.family.evaluate(b)
        ea = int(self.ortho.perp[self.family.evaluate(a)])
        return int(self.ortho.meet[eb, ea])


def spectral_measure_from_family(fam: SpectralFamily,
                                 ol: OrthoLattice) -> SpectralMeasure:
    """Induce the interval measure and verify its derived laws.

    Requires an orthomodular carrier.  Disjoint cells must land on
    orthogonal elements joining to the measure of their union; the
    difference, union and intersection laws are checked over all pairs
    of interval sets on the threshold grid.
    """
    if fam.lattice is not ol.lattice and fam.lattice != ol.lattice:
        raise ParseError("family and ortholattice disagree on the carrier")
    om, witness = is_orthomodular(ol)
    if not om:
        raise NotOrthomodular(f"orthomodularity fails at pair {witness}",
                              witness=witness)
    steps = fam.canonical() or ((Fraction(0), ol.top),)
    if len(steps) > MAX_MEASURE_THRESHOLDS:
        raise SizeBound(
            f"{len(steps)} thresholds exceeds the verification bound "
            f"{MAX_MEASURE_THRESHOLDS}")
    bounds: list[tuple[Optional[Fraction], Optional[Fraction]]] = []
    elements: list[int] = []
    prev_t: Optional[Fraction] = None
    prev_v = ol.bottom
    for t, v in steps:
        bounds.append((prev_t, t))
        elements.append(int(ol.meet[v, ol.perp[prev_v]]))
        prev_t, prev_v = t, v
    bounds.append((prev_t, None))
    elements.append(int(ol.perp[prev_v]))
    measure = SpectralMeasure(fam, ol, tuple(bounds), tuple(elements))

    k = len(elements)
    for i in range(k):
        for j in range(i + 1, k):
            if not ol.leq[elements[i], ol.perp[elements[j]]]:
                raise InternalContradiction(
                    f"cells {i} and {j} are not orthogonal")
    if measure.real_line() != ol.top:
        raise InternalContradiction("the whole line does not measure to top")
    full = (1 << k) - 1
    values = [measure.of_cells(m) for m in range(full + 1)]
    for ma in range(full + 1):
        for mb in range(full + 1):
            va, vb = values[ma], values[mb]
            if values[ma | mb] != ol.join[va, vb]:
                raise InternalContradiction(f"union law fails at ({ma}, {mb})")
            if values[ma & mb] != ol.meet[va, vb]:
                raise InternalContradiction(f"intersection law fails at ({ma}, {mb})")
            if mb & ~ma == 0 and values[ma & ~mb] != ol.meet[va, ol.perp[vb]]:
                raise InternalContradiction(f"difference law fails at ({ma}, {mb})")
    return measure


@dataclass(frozen=True)
class MeasurableReport:
    point_values: tuple[Fraction, ...]
    algebra: OrthoLattice
    family: SpectralFamily
    recovered_values: tuple[Fraction, ...]
    family_roundtrip: bool
    gelfand_values: tuple[Fraction, ...]


def sigma_from_points(g: Sequence[Scalar]) -> SpectralFamily:
    """The sublevel-set family of a point function on a finite set."""
    vals = [as_scalar(x) for x in g]
    if not vals:
        raise ParseError("need at least one point")
    algebra = boolean_algebra(len(vals))
    steps = []
    for t in sorted(set(vals)):
        mask = 0
        for x, v in enumerate(vals):
            if v <= t:
                mask |= 1 << x
        steps.append((t, mask))
    return make_spectral_family(algebra.lattice, steps)


def points_from_sigma(fam: SpectralFamily) -> tuple[Fraction, ...]:
    """Recover the point function: least threshold whose value holds the point."""
    n = fam.lattice.n
    points = n.bit_length() - 1
    if 1 << points != n:
        raise ParseError("family does not live over a powerset algebra")
    out = []
    for x in range(points):
        val = next((t for t, v in zip(fam.thresholds, fam.values)
                    if v >> x & 1), None)
        if val is None:
            raise InternalContradiction(f"point {x} missed by the top value")
        out.append(val)
    return tuple(out)


def measurable_correspondence(g: Sequence[Scalar]) -> MeasurableReport:
    """Round-trip a point function through its sublevel family, exactly.

    Also evaluates the induced function on the powerset quasipoints and
    asserts it returns the original value at each point's atom filter.
    """
    vals = tuple(as_scalar(x) for x in g)
    fam = sigma_from_points(vals)
    algebra = boolean_algebra(len(vals))
    recovered = points_from_sigma(fam)
    if recovered != vals:
        raise InternalContradiction("point function failed to round-trip")
    rebuilt = sigma_from_points(recovered)
    family_rt = rebuilt.canonical() == fam.canonical()
    if not family_rt:
        raise InternalContradiction("sublevel family failed to round-trip")
    spec = quasipoints(algebra.lattice)
    gelfand = []
    for qp in spec.quasipoints:
        value = _ideal_value(fam, qp.minimum)
        x = qp.minimum.bit_length() - 1
        if value != vals[x]:
            raise InternalContradiction(
                f"induced value {value} at the atom filter of point {x} "
                f"differs from {vals[x]}")
        gelfand.append(value)
    return MeasurableReport(vals, algebra, fam, recovered, family_rt,
                            tuple(gelfand))


@dataclass(frozen=True)
class ContinuousReport:
    space: FiniteSpace
    point_values: tuple[Fraction, ...]
    family: SpectralFamily
    regular: bool
    values_regular_open: bool
    admissible_domain: int
    domain_dense: bool
    induced_values: tuple[Fraction, ...]
    function_roundtrip: bool
    family_roundtrip: bool
    quasipoint_values: tuple[Fraction, ...]
    supports: tuple[int, ...]


def continuous_correspondence(space: FiniteSpace,
                              f: Sequence[Scalar]) -> ContinuousReport:
    """Sublevel interiors of a continuous function on a finite space.

    Continuity means constancy on each point's minimal open
    neighborhood; anything else is rejected with the offending point.
    The induced family takes each threshold to the interior of the
    sublevel set, is checked regular (closures climb into the next
    step) with regular-open values, and round-trips: the function it
    induces on the admissible domain is the original, and rebuilding
    from that function returns the family.  On maximal open filters the
    induced value must match the induced value at every admissible
    point of the filter's support.
    """
    vals = tuple(as_scalar(x) for x in f)
    if len(vals) != space.points:
        raise ParseError(f"{len(vals)} values for {space.points} points")
    for x in range(space.points):
        nbhd = space.minimal_neighborhood(x)
        for y in mask_points(nbhd):
            if vals[y] != vals[x]:
                raise NotContinuous(
                    f"not constant on the minimal neighborhood of point {x}: "
                    f"value {vals[y]} at point {y} differs from {vals[x]}",
                    witness=x)

    lat = space.lattice
    thresholds = sorted(set(vals))
    steps = []
    for t in thresholds:
        mask = 0
        for x, v in enumerate(vals):
            if v <= t:
                mask |= 1 << x
        steps.append((t, space.open_index[space.interior(mask)]))
    fam = make_spectral_family(lat, steps)

    masks = [space.opens[v] for v in fam.values]
    regular = all(space.closure(masks[i]) & ~masks[i + 1] == 0
                  for i in range(len(masks) - 1))
    values_regular = all(
        space.pseudocomplement(space.pseudocomplement(m)) == m for m in masks)

    probe = [thresholds[0] - 1] + thresholds
    domain = 0
    for x in range(space.points):
        if any(not space.opens[fam.evaluate(t)] >> x & 1 for t in probe):
            domain |= 1 << x
    dense = space.closure(domain) == space.full

    induced = []
    for x in range(space.points):
        if not domain >> x & 1:
            induced.append(None)
            continue
        t = next(t for t in thresholds if space.opens[fam.evaluate(t)] >> x & 1)
        induced.append(t)
    function_rt = all(induced[x] == vals[x] for x in mask_points(domain))
    if not function_rt:
        raise InternalContradiction(
            "induced point function differs from the input on the domain")
    rebuilt = dict(continuous_rebuild(space, induced, domain))
    original = {t: space.opens[v] & domain
                for t, v in zip(fam.thresholds, fam.values)}
    family_rt = rebuilt == original
    if not family_rt:
        raise InternalContradiction(
            "family rebuilt from the induced function differs on the domain")

    spec = quasipoints(lat)
    qvals = []
    supports = []
    for qp in spec.quasipoints:
        qvals.append(_ideal_value(fam, qp.minimum))
        support = space.full
        for u in qp.members:
            support &= space.closure(space.opens[u])
        supports.append(support)
        for x in mask_points(support & domain):
            if induced[x] != qvals[-1]:
                raise InternalContradiction(
                    f"filter value {qvals[-1]} differs from the induced value "
                    f"{induced[x]} at support point {x}")
    if not (regular and values_regular and dense):
        raise InternalContradiction(
            f"induced family lost a structural property: regular={regular} "
            f"regular_values={values_regular} dense={dense}")
    return ContinuousReport(space, vals, fam, regular, values_regular, domain,
                            dense, tuple(induced), function_rt, family_rt,
                            tuple(qvals), tuple(supports))


def continuous_rebuild(space: FiniteSpace, induced: Sequence[Optional[Fraction]],
                       domain: int) -> tuple[tuple[Fraction, int], ...]:
    """Sublevel sets of the induced function, relative to the domain."""
    present = sorted({v for v in induced if v is not None})
    out = []
    for t in present:
        mask = 0
        for x in mask_points(domain):
            if induced[x] is not None and induced[x] <= t:
                mask |= 1 << x
        out.append((t, mask))
    return tuple(out)


@dataclass(frozen=True)
class GelfandTerm:
    coefficient: Fraction
    support: int


@dataclass(frozen=True)
class GelfandReport:
    dimension: int
    input_terms: tuple[GelfandTerm, ...]
    vector: tuple[Fraction, ...]
    orthogonal_terms: tuple[GelfandTerm, ...]
    characters_bijective: bool
    multiplicative: bool
    projections_two_valued: bool
    ideal_coordinates: tuple[int, ...]
    quotient_character_pairs: Optional[tuple[tuple[int, int], ...]]


def gelfand_finite(dimension: int,
                   terms: Sequence[tuple[Scalar, Sequence[int]]],
                   ideal_coordinates: Sequence[int] = ()) -> GelfandReport:
    """Diagonal-algebra characters, orthogonal expansion, and quotients.

    Characters of the diagonal rational algebra are the coordinate
    evaluations; they are matched bijectively with the atom filters of
    the coordinate powerset, checked multiplicative on the input data
    and two-valued on projections.  The input combination of indicator
    projections is expanded over all sign patterns into its orthogonal
    form and the expansion is verified coordinatewise.  Given
    coordinates generating an ideal, the characters surviving on the
    quotient are matched with the ideal-avoiding atom filters.
    """
    if dimension < 1:
        raise DimensionMismatch("dimension must be at least 1")
    parsed = []
    for coeff, coords in terms:
        coords = sorted(set(int(c) for c in coords))
        if any(not 0 <= c < dimension for c in coords):
            raise DimensionMismatch(
                f"projection {coords} does not fit dimension {dimension}")
        mask = 0
        for c in coords:
            mask |= 1 << c
        parsed.append(GelfandTerm(as_scalar(coeff), mask))
    ideal_coords = sorted(set(int(c) for c in ideal_coordinates))
    if any(not 0 <= c < dimension for c in ideal_coords):
        raise DimensionMismatch(
            f"ideal coordinates {ideal_coords} do not fit dimension {dimension}")

    vector = tuple(
        sum((t.coefficient for t in parsed if t.support >> x & 1), Fraction(0))
        for x in range(dimension))

    algebra = boolean_algebra(dimension)
    spec = quasipoints(algebra.lattice)
    atoms = [qp.minimum for qp in spec.quasipoints]
    bijective = sorted(atoms) == [1 << x for x in range(dimension)]

    def evaluate(vec: Sequence[Fraction], x: int) -> Fraction:
        return vec[x]

    sample_vectors = [vector] + [
        tuple(Fraction(1) if t.support >> x & 1 else Fraction(0)
              for x in range(dimension)) for t in parsed]
    multiplicative = all(
        evaluate([a * b for a, b in zip(u, v)], x) == evaluate(u, x) * evaluate(v, x)
        for u in sample_vectors for v in sample_vectors
        for x in range(dimension))
    two_valued = all(
        evaluate(v, x) in (Fraction(0), Fraction(1))
        for v in sample_vectors[1:] for x in range(dimension))

    m = len(parsed)
    expansion = []
    for size in range(m, 0, -1):
        for subset in combinations(range(m), size):
            inside = set(subset)
            mask = (1 << dimension) - 1
            for i in subset:
                mask &= parsed[i].support
            for j in range(m):
                if j not in inside:
                    mask &= ~parsed[j].support
            if mask == 0:
                continue
            coeff = sum((parsed[i].coefficient for i in subset), Fraction(0))
            expansion.append(GelfandTerm(coeff, mask))
    for i, ti in enumerate(expansion):
        for tj in expansion[i + 1:]:
            if ti.support & tj.support:
                raise InternalContradiction("expansion terms overlap")
    for x in range(dimension):
        total = sum((t.coefficient for t in expansion if t.support >> x & 1),
                    Fraction(0))
        if total != vector[x]:
            raise InternalContradiction(
                f"orthogonal expansion evaluates to {total} at coordinate {x}, "
                f"expected {vector[x]}")

    quotient_pairs = None
    if ideal_coords:
        gens = [1 << c for c in ideal_coords]
        corr = spectrum_correspondence(algebra, gens)
        expect = {1 << x for x in range(dimension) if x not in ideal_coords}
        got = {spec.quasipoints[j].minimum for j in corr.surviving}
        if got != expect:
            raise InternalContradiction(
                "surviving atom filters differ from the non-ideal coordinates")
        quotient_pairs = corr.forward
    if not (bijective and multiplicative and two_valued):
        raise InternalContradiction(
            f"character checks failed: bijective={bijective} "
            f"multiplicative={multiplicative} two_valued={two_valued}")
    return GelfandReport(dimension, tuple(parsed), vector, tuple(expansion),
                         bijective, multiplicative, two_valued,
                         tuple(ideal_coords), quotient_pairs)
