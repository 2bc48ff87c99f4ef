"""Orthocomplemented and orthomodular lattices.

The commuting relation is always evaluated by its defining identity
a = (a ^ b) v (a ^ b'), never by shortcut rules; shortcut identities are
exactly what the test suite is supposed to validate.

Boolean sectors are the maximal pairwise-commuting element subsets.
These coincide with the fixed points of the commutant operator: a
maximal commuting clique M satisfies M = M^C (anything commuting with
all of M joins the clique by maximality, and members commute pairwise),
and conversely a fixed point is a clique containing everything
compatible with it.  Sector enumeration therefore runs Bron-Kerbosch on
the commuting graph, whose neighborhoods are the single-element
commutants, and verifies the fixed-point criterion on every clique;
for small lattices an exponential subset scan cross-checks the result.

Maximal pairwise-commuting filter bases admit a finite-case normal
form.  Any such set is closed under meets (meets of commuting members
commute with the rest and keep the set directed), so it has a minimum
m.  If some nonzero c < m existed, c would be comparable to every
member, hence commute with all of them, and adjoining it would extend
the set; so m is an atom, and every member lies above m because its
meet with m is a nonzero element below an atom.  Enumeration thus runs
clique search above each atom, and this generic route is cross-checked
against the per-sector Stone spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (EmptySubset, InternalContradiction, NotAnOrthocomplement,
                     NotASublattice, NotCentral, NotOrthomodular, ParseError)
from .lattice import Lattice, classify


class OrthoLattice:
    """A lattice with a validated orthocomplement permutation."""

    def __init__(self, lattice: Lattice, perp: np.ndarray):
        self.lattice = lattice
        self.perp = np.asarray(perp, dtype=np.int32)
        self.perp.setflags(write=False)

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def atoms(self) -> tuple[int, ...]:
        return self.lattice.atoms

    def name(self, i: int) -> str:
        return self.lattice.name(i)

    @cached_property
    def commuting(self) -> np.ndarray:
        """Boolean matrix of the defining identity: C[a, b] iff a = (a^b) v (a^b')."""
        meet, join, perp = self.meet, self.join, self.perp
        n = self.n
        rebuilt = join[meet, meet[:, perp]]
        return rebuilt == np.arange(n)[:, None]

    def __repr__(self) -> str:
        return f"OrthoLattice(n={self.n})"

    def to_doc(self) -> dict:
        doc = self.lattice.to_doc()
        doc["perp"] = [int(x) for x in self.perp]
        return doc


def attach_ortho(lat: Lattice, perp: Sequence[int]) -> OrthoLattice:
    """Validate an orthocomplement and wrap the lattice with it.

    Axioms are checked in definition order: complement laws, De Morgan,
    involution.  The first failing axiom is reported with a witness.
    The order-reversal and bound-swap consequences are then verified as
    internal consistency checks.
    """
    perp = np.asarray(perp, dtype=np.int32)
    n = lat.n
    if sorted(int(x) for x in perp) != list(range(n)):
        raise ParseError("perp must be a permutation of 0..n-1")
    for a in range(n):
        if lat.meet[a, perp[a]] != lat.bottom or lat.join[a, perp[a]] != lat.top:
            raise NotAnOrthocomplement(
                f"complement law fails at element {a}: "
                f"a ^ a' = {int(lat.meet[a, perp[a]])}, a v a' = {int(lat.join[a, perp[a]])}",
                witness=("complement", a))
    de_meet = perp[lat.meet] != lat.join[perp[:, None], perp[None, :]]
    de_join = perp[lat.join] != lat.meet[perp[:, None], perp[None, :]]
    bad = de_meet | de_join
    if bad.any():
        a, b = (int(x) for x in np.argwhere(bad)[0])
        raise NotAnOrthocomplement(
            f"De Morgan law fails on pair ({a}, {b})", witness=("de_morgan", a, b))
    fixed = perp[perp] != np.arange(n)
    if fixed.any():
        a = int(np.flatnonzero(fixed)[0])
        raise NotAnOrthocomplement(
            f"perp is not an involution at element {a}", witness=("involution", a))
    antitone = lat.leq & ~lat.leq[perp[:, None], perp[None, :]].T
    if antitone.any() or perp[lat.bottom] != lat.top:
        raise InternalContradiction("orthocomplement axioms passed but a consequence failed")
    return OrthoLattice(lat, perp)


def load_ortho(doc: dict, *, wide: bool = False) -> OrthoLattice:
    """Load a lattice document carrying a "perp" permutation."""
    from .lattice import load_lattice
    if "perp" not in doc:
        raise ParseError("ortho document requires perp")
    return attach_ortho(load_lattice(doc, wide=wide), doc["perp"])


def commutes(ol: OrthoLattice, a: int, b: int) -> bool:
    """Whether a = (a ^ b) v (a ^ b'), evaluated exactly as written."""
    meet, join, perp = ol.meet, ol.join, ol.perp
    return int(join[meet[a, b], meet[a, perp[b]]]) == a


def is_orthomodular(ol: OrthoLattice) -> tuple[bool, Optional[tuple[int, int]]]:
    """Pair scan of the two-variable form: y <= x implies y = x ^ (x' v y).

    Returns the flag and, when false, the lexicographically first pair
    (x, y) violating the identity.
    """
    meet, join, perp, leq = ol.meet, ol.join, ol.perp, ol.leq
    n = ol.n
    for x in range(n):
        recon = meet[x, join[perp[x]]]
        bad = leq.T[x] & (recon != np.arange(n))
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            return False, (x, y)
    return True, None


@dataclass(frozen=True)
class NakamuraReport:
    symmetric: bool
    asymmetric_pair: Optional[tuple[int, int]]
    orthomodular: bool
    orthomodular_witness: Optional[tuple[int, int]]


def nakamura_report(ol: OrthoLattice) -> NakamuraReport:
    """Symmetry of the commuting relation versus orthomodularity.

    The two verdicts are computed independently and must agree; a
    disagreement is an implementation bug, not a property of the input.
    """
    comm = ol.commuting
    asym = comm & ~comm.T
    symmetric = not asym.any()
    pair = None
    if not symmetric:
        a, b = (int(x) for x in np.argwhere(asym)[0])
        pair = (a, b)
    om, om_witness = is_orthomodular(ol)
    if symmetric != om:
        raise InternalContradiction(
            f"commutation symmetry ({symmetric}) disagrees with orthomodularity ({om})")
    return NakamuraReport(symmetric, pair, om, om_witness)


def commutant(ol: OrthoLattice, subset: Iterable[int]) -> tuple[int, ...]:
    """Elements commuting with every member of the subset.

    On orthomodular input the result is verified to contain the bounds,
    to be closed under meet, join and perp, and to absorb distribution
    of subset members over pairwise joins; binary closure extends to all
    nonempty family joins by folding, and the empty join is the bottom
    element, which commutes with everything.
    """
    members = sorted(set(int(x) for x in subset))
    if not members:
        raise EmptySubset("commutant of the empty subset is not defined here")
    if any(not 0 <= m < ol.n for m in members):
        raise ParseError(f"subset {members} out of range")
    comm = ol.commuting
    mask = np.ones(ol.n, dtype=bool)
    for a in members:
        mask &= comm[a]
    result = tuple(int(x) for x in np.flatnonzero(mask))
    if is_orthomodular(ol)[0]:
        rset = set(result)
        if ol.bottom not in rset or ol.top not in rset:
            raise InternalContradiction("commutant lost a bound")
        for b in result:
            if int(ol.perp[b]) not in rset:
                raise InternalContradiction(f"commutant not perp-closed at {b}")
            for c in result:
                if int(ol.meet[b, c]) not in rset or int(ol.join[b, c]) not in rset:
                    raise InternalContradiction(f"commutant not lattice-closed at ({b}, {c})")
        for a in members:
            for b in result:
                for c in result:
                    if ol.meet[a, ol.join[b, c]] != ol.join[ol.meet[a, b], ol.meet[a, c]]:
                        raise InternalContradiction(
                            f"subset member {a} fails to distribute over ({b}, {c})")
    return result


@dataclass(frozen=True)
class Sector:
    """A maximal pairwise-commuting sublattice (a Boolean block)."""
    elements: tuple[int, ...]


def _commuting_neighbor_masks(ol: OrthoLattice) -> list[int]:
    """Per-element bitmask of mutual commuting partners, self included."""
    comm = ol.commuting & ol.commuting.T
    masks = []
    for v in range(ol.n):
        m = 0
        for u in np.flatnonzero(comm[v]):
            m |= 1 << int(u)
        masks.append(m)
    return masks


def _bron_kerbosch(nbr: list[int], r: int, p: int, x: int, out: list[int]) -> None:
    """Pivoted maximal-clique search; nbr masks must exclude the vertex itself."""
    if p == 0 and x == 0:
        out.append(r)
        return
    best = -1
    best_deg = -1
    pool = p | x
    while pool:
        v = (pool & -pool).bit_length() - 1
        deg = (p & nbr[v]).bit_count()
        if deg > best_deg:
            best, best_deg = v, deg
        pool &= pool - 1
    cand = p & ~nbr[best]
    while cand:
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        _bron_kerbosch(nbr, r | bit, p & nbr[v], x & nbr[v], out)
        p &= ~bit
        x |= bit
        cand &= ~bit


def _strip_self(nbr: list[int]) -> list[int]:
    return [m & ~(1 << v) for v, m in enumerate(nbr)]


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def sublattice(lat: Lattice, elems: Sequence[int]) -> tuple[Lattice, dict[int, int]]:
    """Restrict to a subset closed under meet and join and containing the bounds.

    Returns the standalone lattice and the map from original indices to
    restricted ones.  Raises NotASublattice with the first failing pair.
    """
    elems = sorted(set(int(x) for x in elems))
    eset = set(elems)
    if lat.bottom not in eset or lat.top not in eset:
        raise NotASublattice("subset must contain bottom and top")
    for a in elems:
        for b in elems:
            if int(lat.meet[a, b]) not in eset or int(lat.join[a, b]) not in eset:
                raise NotASublattice(
                    f"subset not closed under meet/join at ({a}, {b})", witness=(a, b))
    index = {e: i for i, e in enumerate(elems)}
    sub_leq = lat.leq[np.ix_(elems, elems)]
    names = tuple(lat.name(e) for e in elems)
    return Lattice(sub_leq, names), index


def sector_ortholattice(ol: OrthoLattice, sector: Sector) -> tuple[OrthoLattice, dict[int, int]]:
    """A sector as a standalone ortholattice with its index map."""
    sub, index = sublattice(ol.lattice, sector.elements)
    perp = [index[int(ol.perp[e])] for e in sector.elements]
    return attach_ortho(sub, perp), index


def boolean_sectors(ol: OrthoLattice) -> list[Sector]:
    """All maximal pairwise-commuting sublattices, smallest-first order.

    Every clique from the commuting graph is verified against the
    fixed-point criterion (clique equals its own commutant) and against
    the Boolean-algebra axioms as a standalone lattice.  For lattices
    with at most 16 elements an exponential scan over all subsets
    cross-checks the enumeration.
    """
    om, witness = is_orthomodular(ol)
    if not om:
        raise NotOrthomodular(f"orthomodularity fails at pair {witness}", witness=witness)
    nbr = _commuting_neighbor_masks(ol)
    cliques: list[int] = []
    full = (1 << ol.n) - 1
    _bron_kerbosch(_strip_self(nbr), 0, full, 0, cliques)
    sectors = sorted(_mask_to_tuple(m) for m in cliques)
    for elems in sectors:
        if set(commutant(ol, elems)) != set(elems):
            raise InternalContradiction(
                f"maximal commuting set {elems} is not a commutant fixed point")
        sub_ol, _ = sector_ortholattice(ol, Sector(elems))
        if not classify(sub_ol.lattice).is_distributive:
            raise InternalContradiction(f"sector {elems} is not distributive")
    if ol.n <= 16:
        brute = _brute_force_sectors(nbr, ol.n)
        if brute != set(sectors):
            raise InternalContradiction("clique enumeration disagrees with subset scan")
    return [Sector(elems) for elems in sectors]


def _brute_force_sectors(nbr: list[int], n: int) -> set[tuple[int, ...]]:
    """Maximal pairwise-commuting subsets by scanning all 2^n subsets."""
    out: set[tuple[int, ...]] = set()
    for s in range(1, 1 << n):
        common = (1 << n) - 1
        mask = s
        ok = True
        while mask:
            v = (mask & -mask).bit_length() - 1
            if s & ~nbr[v]:
                ok = False
                break
            common &= nbr[v]
            mask &= mask - 1
        if ok and common == s:
            out.add(_mask_to_tuple(s))
    return out


@dataclass(frozen=True)
class BooleanQuasipoint:
    """A maximal pairwise-commuting filter base."""
    members: tuple[int, ...]
    minimum: int
    sector_index: int
    upward_closure: tuple[int, ...]
    commuting_majorant_closure: tuple[int, ...]
    closures_coincide: bool


@dataclass(frozen=True)
class BooleanQuasipointReport:
    sectors: list[Sector]
    quasipoints: list[BooleanQuasipoint]
    closure_divergences: list[int]


def boolean_quasipoints(ol: OrthoLattice) -> BooleanQuasipointReport:
    """Enumerate maximal pairwise-commuting filter bases with sector data.

    The generic route searches maximal commuting cliques above each
    atom (see the module docstring for why every maximal commuting
    filter base is such a clique).  Each result is assigned to its
    unique containing sector, and per sector the assigned family must
    equal the Stone spectrum of the sector as a standalone lattice.

    Two closures are recorded per filter: the plain upward closure of
    its members, and the closure under majorants that commute with the
    whole filter.  The second must reproduce the filter itself; whether
    the first does is reported, never assumed.
    """
    from .spectrum import quasipoints as stone_quasipoints

    sectors = boolean_sectors(ol)
    nbr_ex = _strip_self(_commuting_neighbor_masks(ol))
    found: set[tuple[int, ...]] = set()
    for p in ol.atoms:
        above = 0
        for x in np.flatnonzero(ol.leq[p]):
            above |= 1 << int(x)
        cliques: list[int] = []
        _bron_kerbosch(nbr_ex, 0, above, 0, cliques)
        for m in cliques:
            found.add(_mask_to_tuple(m))
    results = []
    divergences = []
    for members in sorted(found, key=lambda t: (min(t), t)):
        mset = set(members)
        minimum = members[0]
        for m in members[1:]:
            if int(ol.meet[minimum, m]) != minimum:
                minimum = int(ol.meet[minimum, m])
        up = tuple(int(x) for x in np.flatnonzero(ol.leq[minimum]))
        cm = tuple(x for x in up if all(ol.commuting[b, x] and ol.commuting[x, b]
                                        for b in members))
        if set(cm) != mset:
            raise InternalContradiction(
                f"filter {members} is not closed under commuting majorants")
        holders = [i for i, s in enumerate(sectors) if mset <= set(s.elements)]
        if len(holders) != 1:
            raise InternalContradiction(
                f"filter {members} lies in {len(holders)} sectors, expected exactly 1")
        idx = len(results)
        results.append(BooleanQuasipoint(
            members=members, minimum=minimum, sector_index=holders[0],
            upward_closure=up, commuting_majorant_closure=cm,
            closures_coincide=set(up) == mset))
        if set(up) != mset:
            divergences.append(idx)
    # cross-check: per sector, the assigned filters are the sector's spectrum
    for si, sector in enumerate(sectors):
        sub_ol, index = sector_ortholattice(ol, sector)
        spec = stone_quasipoints(sub_ol.lattice)
        expected = {tuple(sorted(sector.elements[i] for i in qp.members))
                    for qp in spec.quasipoints}
        assigned = {bq.members for bq in results if bq.sector_index == si}
        if expected != assigned:
            raise InternalContradiction(
                f"sector {sector.elements}: assigned filters differ from its spectrum")
    return BooleanQuasipointReport(sectors, results, divergences)


@dataclass(frozen=True)
class CenterSupportReport:
    center: tuple[int, ...]
    support: int
    zeta: Optional[list[tuple[tuple[int, ...], tuple[int, ...]]]]
    zeta_skipped_reason: Optional[str]
    zeta_traces_are_quasipoints: Optional[bool]


def center_and_support(ol: OrthoLattice, sub: Sequence[int], elem: int,
                       *, require_central: bool = False) -> CenterSupportReport:
    """Center, least majorant in a sublattice, and quasipoint traces.

    The support of an element P relative to a bounded sublattice A is
    the meet of all members of A above P, which is again in A and above
    P.  For the trace action a quasipoint is intersected with A; the
    identity "trace equals the support image of the quasipoint" is
    asserted.  The trace action is computed only when A lies inside the
    center (pass require_central=True to make a non-central A an
    error instead of a skip).
    """
    from .spectrum import quasipoints as stone_quasipoints

    sub_lat, _ = sublattice(ol.lattice, sub)  # raises NotASublattice
    aset = sorted(set(int(x) for x in sub))
    center = commutant(ol, range(ol.n))
    majorants = [q for q in aset if ol.leq[elem, q]]
    support = ol.lattice.family_meet(majorants)

    def support_of(p: int) -> int:
        return ol.lattice.family_meet([q for q in aset if ol.leq[p, q]])

    central = set(aset) <= set(center)
    if not central:
        if require_central:
            raise NotCentral(
                f"sublattice {aset} is not contained in the center {center}")
        return CenterSupportReport(center, support, None,
                                   "sublattice is not central", None)
    spec = stone_quasipoints(ol.lattice)
    sub_spec = stone_quasipoints(sub_lat)
    sub_members = {qp.members for qp in sub_spec.quasipoints}
    index = {e: i for i, e in enumerate(aset)}
    amembers = set(aset)
    zeta = []
    traces_ok = True
    for qp in spec.quasipoints:
        trace = tuple(x for x in qp.members if x in amembers)
        image = tuple(sorted({support_of(p) for p in qp.members}))
        if trace != image:
            raise InternalContradiction(
                f"trace {trace} differs from support image {image}")
        zeta.append((qp.members, trace))
        # the trace should itself be a maximal filter base of the sublattice
        local = tuple(sorted(index[x] for x in trace))
        if local not in sub_members:
            traces_ok = False
    return CenterSupportReport(center, support, zeta, None, traces_ok)
