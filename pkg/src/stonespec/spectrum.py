"""Maximal filters of a finite lattice and the topology they carry.

A filter here is a nonempty subset that avoids bottom, is closed under
meet and is upward closed.  The maximal ones form the spectrum; the
sets Q_a of maximal filters containing a fixed element a are a basis
for a topology on it.

The enumeration keeps two independent routes.  The generic route works
with saturated filter bases: a growing filter base is replaced by its
upward closure, which in a finite lattice is the principal filter of
its running minimum, and adjoining a compatible element b (one with
m ^ b neither bottom nor m) strictly lowers that minimum.  A state
with no compatible extension is maximal.  Every maximal filter is the
principal filter of an atom (any nonzero element below the minimum
would be comparable to all members, hence adjoinable), so seeding the
descent at each nonzero element and deduplicating reaches them all;
the atom's own seed is immediately maximal.  The fast route reads the
atoms directly.  The two routes are asserted equal on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InternalContradiction, NotOrthomodular, ParseError, SizeBound
from .lattice import Lattice, classify
from .ortho import OrthoLattice, is_orthomodular


@dataclass(frozen=True)
class Quasipoint:
    """A maximal filter; in a finite lattice, principal at an atom."""
    members: tuple[int, ...]
    minimum: int


@dataclass(frozen=True)
class Filter:
    """A proper dual ideal, tagged with its principal generator if any."""
    members: tuple[int, ...]
    minimum: int
    principal_at: Optional[int]


class StoneSpectrum:
    """The ordered quasipoint list of a lattice with its basis map.

    ``basis`` holds, for every lattice element a, the boolean row over
    quasipoint indices of the set Q_a = those containing a.  The basis
    identities Q_bottom empty, Q_top everything and Q_{a^b} equal to
    the intersection of Q_a and Q_b are verified at construction.
    """

    def __init__(self, lattice: Lattice, quasipoints: Sequence[Quasipoint]):
        self.lattice = lattice
        self.quasipoints = tuple(quasipoints)
        n, k = lattice.n, len(self.quasipoints)
        basis = np.zeros((n, k), dtype=bool)
        for j, qp in enumerate(self.quasipoints):
            basis[:, j] = lattice.leq[qp.minimum, :]
        basis.setflags(write=False)
        self.basis = basis
        if basis[lattice.bottom].any() or not basis[lattice.top].all():
            raise InternalContradiction("basis map wrong at a bound")
        for a in range(n):
            if not (basis[lattice.meet[a]] == (basis[a][None, :] & basis)).all():
                raise InternalContradiction(f"Q_(a^b) != Q_a n Q_b at a={a}")

    def basis_indices(self, a: int) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.basis[a]))

    def to_doc(self) -> dict:
        return {
            "quasipoints": [list(qp.members) for qp in self.quasipoints],
            "minima": [qp.minimum for qp in self.quasipoints],
            "basis": [list(self.basis_indices(a)) for a in range(self.lattice.n)],
        }


def _saturated_descent(lat: Lattice) -> set[int]:
    """Minima of all maximal filters, by compatible-extension descent."""
    meet, n, bottom = lat.meet, lat.n, lat.bottom
    found: set[int] = set()
    for seed in range(n):
        if seed == bottom:
            continue
        m = seed
        while True:
            lowered = False
            for b in range(n):
                mb = int(meet[m, b])
                if mb != bottom and mb != m:
                    m = mb
                    lowered = True
                    break
            if not lowered:
                break
        found.add(m)
    return found


@lru_cache(maxsize=256)
def quasipoints(lat: Lattice) -> StoneSpectrum:
    """Enumerate all maximal filters, ordered by their minimal element.

    The generic saturated-descent enumeration is asserted equal to the
    principal-filters-at-atoms fast path; the equality is the module's
    standing self-check, not an input property.  Results are cached by
    lattice content; spectra are immutable, so sharing is safe.
    """
    generic = _saturated_descent(lat)
    fast = set(lat.atoms)
    if generic != fast:
        raise InternalContradiction(
            f"maximal-filter minima {sorted(generic)} differ from atoms {sorted(fast)}")
    out = []
    for m in sorted(generic):
        members = tuple(int(x) for x in np.flatnonzero(lat.leq[m, :]))
        out.append(Quasipoint(members=members, minimum=m))
    return StoneSpectrum(lat, out)


@dataclass(frozen=True)
class BasisSetReport:
    element: int
    indices: tuple[int, ...]
    # for each quasipoint outside Q_a, an element of it disjoint from a
    separating: tuple[tuple[int, int], ...]


def basis_set(spec: StoneSpectrum, a: int) -> BasisSetReport:
    """The basis set Q_a with a clopen certificate.

    For every quasipoint outside Q_a its minimal atom p satisfies
    p ^ a = bottom, so Q_p is a basis neighborhood of it disjoint from
    Q_a; the complement of Q_a is therefore open and Q_a is clopen.
    The certificate is computed, not assumed.
    """
    lat = spec.lattice
    if not 0 <= a < lat.n:
        raise ParseError(f"element {a} out of range")
    inside = spec.basis[a]
    separating = []
    for j, qp in enumerate(spec.quasipoints):
        if inside[j]:
            continue
        b = next((x for x in qp.members if lat.meet[x, a] == lat.bottom), None)
        if b is None:
            raise InternalContradiction(
                f"quasipoint {j} outside Q_{a} has no member disjoint from {a}")
        if (spec.basis[b] & inside).any():
            raise InternalContradiction(f"separating set Q_{b} meets Q_{a}")
        separating.append((j, b))
    return BasisSetReport(a, spec.basis_indices(a), tuple(separating))


@dataclass(frozen=True)
class PointsReport:
    spectrum: StoneSpectrum
    point_indices: tuple[int, ...]
    # per non-point quasipoint index, a join landing inside without either part
    failures: tuple[tuple[int, tuple[int, int]], ...]


def points(lat: Lattice) -> PointsReport:
    """Quasipoints whose members absorb joins: a v b inside forces a or b inside.

    A maximal filter is principal at its minimum, so the family version
    of the condition reduces to the pairwise one by induction on family
    size (fold the join), and the pairwise check below is exhaustive.
    """
    spec = quasipoints(lat)
    join = lat.join
    point_indices = []
    failures = []
    for j, qp in enumerate(spec.quasipoints):
        above = lat.leq[qp.minimum]
        landed = above[join]
        covered = above[:, None] | above[None, :]
        bad = landed & ~covered
        if bad.any():
            a, b = (int(x) for x in np.argwhere(bad)[0])
            failures.append((j, (a, b)))
        else:
            point_indices.append(j)
    return PointsReport(spec, tuple(point_indices), tuple(failures))


@dataclass(frozen=True)
class DistributivityReport:
    distributive: bool
    distributive_witness: Optional[tuple[int, int, int]]
    union_law: bool
    union_law_witness: Optional[tuple[int, int]]
    complement_cover: bool
    complement_cover_witness: Optional[int]
    clopen_are_basis: bool
    clopen_witness: Optional[tuple[int, int]]
    quasidistributive: bool
    quasidistributive_witness: Optional[tuple[int, int, int]]
    clopen_note: str


_CLOPEN_NOTE = (
    "clopen subsets are rendered finitely: every union of basis sets must "
    "equal some basis set; pairwise unions suffice since any finite union "
    "folds into pairwise ones")


def distributivity_equivalences(ol: OrthoLattice) -> DistributivityReport:
    """Four spectral characterizations of distributivity, plus one more.

    Evaluated independently on an orthomodular lattice: (a) the direct
    triple scan; (b) Q_a u Q_b = Q_{a v b} on all pairs; (c) Q_a and
    Q_{a'} cover the spectrum for every a; (d) every pairwise union of
    basis sets is a basis set; (e) the weaker identity
    Q_{(a^b) v (a^c)} = Q_{a ^ (b v c)} on all triples.  All five must
    agree: (a)-(d) by the equivalence this module exists to exercise,
    and (e) because distinct elements of an orthomodular lattice have
    distinct basis sets, so the weak identity forces the strong one.
    """
    om, witness = is_orthomodular(ol)
    if not om:
        raise NotOrthomodular(f"orthomodularity fails at pair {witness}", witness=witness)
    lat = ol.lattice
    spec = quasipoints(lat)
    basis, n = spec.basis, lat.n

    rep = classify(lat)
    distributive, dist_witness = rep.is_distributive, rep.distributive_witness

    union_law, union_witness = True, None
    for a in range(n):
        merged = basis[a][None, :] | basis
        bad = (merged != basis[lat.join[a]]).any(axis=1)
        if bad.any():
            union_law = False
            union_witness = (a, int(np.flatnonzero(bad)[0]))
            break

    cover = (basis | basis[ol.perp]).all(axis=1)
    complement_cover = bool(cover.all())
    cover_witness = None if complement_cover else int(np.flatnonzero(~cover)[0])

    basis_rows = {basis[a].tobytes() for a in range(n)}
    clopen_are_basis, clopen_witness = True, None
    for a in range(n):
        merged = basis[a][None, :] | basis
        for b in range(n):
            if merged[b].tobytes() not in basis_rows:
                clopen_are_basis = False
                clopen_witness = (a, b)
                break
        if not clopen_are_basis:
            break

    quasidistributive, quasi_witness = True, None
    for a in range(n):
        weak = basis[lat.join[lat.meet[a][:, None], lat.meet[a][None, :]]]
        strong = basis[lat.meet[a, lat.join]]
        bad = (weak != strong).any(axis=2)
        if bad.any():
            quasidistributive = False
            b, c = (int(x) for x in np.argwhere(bad)[0])
            quasi_witness = (a, b, c)
            break

    verdicts = {distributive, union_law, complement_cover, clopen_are_basis,
                quasidistributive}
    if len(verdicts) != 1:
        raise InternalContradiction(
            "distributivity characterizations disagree: "
            f"direct={distributive} union={union_law} cover={complement_cover} "
            f"clopen={clopen_are_basis} quasi={quasidistributive}")
    return DistributivityReport(
        distributive, dist_witness, union_law, union_witness,
        complement_cover, cover_witness, clopen_are_basis, clopen_witness,
        quasidistributive, quasi_witness, _CLOPEN_NOTE)


@dataclass(frozen=True)
class ClosureReport:
    family: tuple[int, ...]
    closure_indices: tuple[int, ...]
    union_indices: tuple[int, ...]
    join_element: int
    join_indices: tuple[int, ...]
    closure_equals_join_set: bool
    witness: Optional[int]


def closure_union_check(lat: Lattice, family: Sequence[int]) -> ClosureReport:
    """Closure of a union of basis sets versus the basis set of the join.

    Membership of a quasipoint in the closure is decided by the filter
    criterion: every member must meet some family element above bottom.
    The criterion provably coincides with the plain union in a finite
    lattice (the minimal atom is the crucial member), and that identity
    is asserted; the reported comparison is against Q of the join,
    where a gap witnesses spectral non-distributivity.
    """
    family = [int(x) for x in family]
    if any(not 0 <= a < lat.n for a in family):
        raise ParseError(f"family {family} out of range")
    spec = quasipoints(lat)
    union = np.zeros(len(spec.quasipoints), dtype=bool)
    for a in family:
        union |= spec.basis[a]
    closure = np.zeros_like(union)
    for j, qp in enumerate(spec.quasipoints):
        closure[j] = all(
            any(lat.meet[a, b] != lat.bottom for b in family) for a in qp.members)
    if not np.array_equal(closure, union):
        raise InternalContradiction("closure criterion diverged from the plain union")
    join_elem = lat.family_join(family)
    join_set = spec.basis[join_elem]
    equal = bool(np.array_equal(closure, join_set))
    witness = None if equal else int(np.flatnonzero(closure != join_set)[0])
    if not equal and classify(lat).is_distributive:
        raise InternalContradiction("distributive lattice with a closure gap")
    idx = lambda mask: tuple(int(j) for j in np.flatnonzero(mask))
    return ClosureReport(tuple(family), idx(closure), idx(union), join_elem,
                         idx(join_set), equal, witness)


DUAL_IDEAL_BOUND = 20


def dual_ideals(lat: Lattice, bound: int = DUAL_IDEAL_BOUND) -> list[Filter]:
    """All proper dual ideals by exhaustive up-closed subset search.

    The search walks elements in descending height and may include an
    element only when everything strictly above it is already in, which
    enumerates exactly the upward-closed subsets; survivors must be
    nonempty, avoid bottom and be meet-closed.  In a finite lattice the
    result provably equals the principal filters at nonzero elements,
    and the op asserts that, tags generators, and verifies closure of
    the collection under pairwise intersection.
    """
    if lat.n > bound:
        raise SizeBound(f"{lat.n} elements exceeds the dual-ideal bound {bound}")
    order = sorted(range(lat.n), key=lambda e: -lat.heights[e])
    strictly_above = [lat.leq[e] & ~np.eye(lat.n, dtype=bool)[e] for e in range(lat.n)]
    collected: list[int] = []

    def walk(i: int, mask: int) -> None:
        if i == len(order):
            collected.append(mask)
            return
        e = order[i]
        walk(i + 1, mask)
        need = np.flatnonzero(strictly_above[e])
        if all(mask >> int(x) & 1 for x in need):
            walk(i + 1, mask | (1 << e))

    walk(0, 0)
    filters = []
    for mask in collected:
        if mask == 0 or mask >> lat.bottom & 1:
            continue
        members = [e for e in range(lat.n) if mask >> e & 1]
        if any(not mask >> int(lat.meet[a, b]) & 1 for a in members for b in members):
            continue
        mn = members[0]
        for m in members[1:]:
            mn = int(lat.meet[mn, m])
        principal = mn if all(bool(lat.leq[mn, x]) == bool(mask >> x & 1)
                              for x in range(lat.n)) else None
        filters.append(Filter(tuple(members), mn, principal))
    filters.sort(key=lambda f: f.minimum)
    expected = {tuple(int(x) for x in np.flatnonzero(lat.leq[m, :]))
                for m in range(lat.n) if m != lat.bottom}
    if {f.members for f in filters} != expected or any(
            f.principal_at is None for f in filters):
        raise InternalContradiction("a finite dual ideal failed to be principal")
    members_set = {f.members for f in filters}
    for f in filters:
        for g in filters:
            inter = tuple(x for x in f.members if x in set(g.members))
            if inter not in members_set:
                raise InternalContradiction(
                    f"intersection of dual ideals at {f.minimum}, {g.minimum} escaped the list")
    return filters


def spectrum_dot(spec: StoneSpectrum, title: str = "spectrum") -> str:
    """Bipartite membership graph: element nodes against quasipoint nodes."""
    lat = spec.lattice
    lines = [f'digraph "{title}" {{', "  rankdir=LR;"]
    for i in range(lat.n):
        lines.append(f'  e{i} [label="{lat.name(i)}" shape=box];')
    for j, qp in enumerate(spec.quasipoints):
        lines.append(f'  q{j} [label="at {lat.name(qp.minimum)}" shape=ellipse];')
    for j, qp in enumerate(spec.quasipoints):
        for a in qp.members:
            lines.append(f"  e{a} -> q{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
