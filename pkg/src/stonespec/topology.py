"""Finite topological spaces and their Boolean companions.

Point sets are bitmasks over points 0..k-1.  A space is its full open
family, validated closed under union and intersection.  The powerset
of the points doubles as the algebra of all "measurable" sets; in a
finite space that is every set, and its element indices are again the
masks themselves.

Regular opens are the opens equal to the interior of their closure,
written here through the pseudocomplement U^c = complement of the
closure; U is regular when U^cc = U.  They form a Boolean algebra
under intersection, c-twisted union and c itself, which this module
builds and revalidates from scratch.

The meagre machinery: a set is nowhere dense when the interior of its
closure is empty; the ideal these generate in the powerset algebra is
the meagre ideal.  A space is Baire when no nonempty open is in it.
On Baire spaces every ideal class holds exactly one regular open, and
the spectrum of the open-set lattice matches the ideal-avoiding part
of the powerset spectrum; both are asserted, and non-Baire spaces skip
them with an explicit reason instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .corpus import boolean_algebra
from .errors import (InternalContradiction, NotAQuasipoint, NotATopology,
                     ParseError, SizeBound)
from .lattice import Lattice
from .ortho import OrthoLattice, attach_ortho
from .quotient import QuotientAlgebra, quotient_boolean, spectrum_correspondence
from .spectrum import StoneSpectrum, quasipoints

MAX_POINTS_FOR_BOREL = 10


def mask_points(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def points_mask(pts: Iterable[int]) -> int:
    m = 0
    for p in pts:
        m |= 1 << int(p)
    return m


class FiniteSpace:
    """A finite topological space given by its complete open family."""

    def __init__(self, points: int, opens: Iterable[int]):
        if points < 1:
            raise ParseError("a space needs at least one point")
        self.points = points
        self.full = (1 << points) - 1
        opens = sorted(set(int(m) for m in opens))
        if any(not 0 <= m <= self.full for m in opens):
            raise ParseError("an open set mentions a point out of range")
        oset = set(opens)
        if 0 not in oset:
            raise NotATopology("the empty set is not open")
        if self.full not in oset:
            raise NotATopology("the full point set is not open")
        for u in opens:
            for v in opens:
                if u | v not in oset:
                    raise NotATopology(
                        f"union of {mask_points(u)} and {mask_points(v)} is missing",
                        witness=(u, v))
                if u & v not in oset:
                    raise NotATopology(
                        f"intersection of {mask_points(u)} and {mask_points(v)} is missing",
                        witness=(u, v))
        self.opens = tuple(opens)
        self.open_index = {m: i for i, m in enumerate(self.opens)}

    def interior(self, mask: int) -> int:
        out = 0
        for u in self.opens:
            if u & ~mask == 0:
                out |= u
        return out

    def closure(self, mask: int) -> int:
        return self.full ^ self.interior(self.full ^ mask)

    def boundary(self, mask: int) -> int:
        return self.closure(mask) & self.closure(self.full ^ mask)

    def pseudocomplement(self, mask: int) -> int:
        """The largest open disjoint from the closure of the argument."""
        return self.full ^ self.closure(mask)

    def minimal_neighborhood(self, point: int) -> int:
        out = self.full
        for u in self.opens:
            if u >> point & 1:
                out &= u
        return out

    @cached_property
    def lattice(self) -> Lattice:
        """The open-set family ordered by inclusion, as a lattice.

        The derived meet and join tables must be plain intersection and
        union; the topology axioms guarantee it and the construction
        asserts it.
        """
        k = len(self.opens)
        masks = np.array(self.opens)
        leq = (masks[:, None] & ~masks[None, :]) == 0
        names = tuple("{" + ",".join(str(p) for p in mask_points(m)) + "}"
                      for m in self.opens)
        lat = Lattice(leq, names)
        for i, u in enumerate(self.opens):
            for j, v in enumerate(self.opens):
                if self.opens[lat.meet[i, j]] != u & v or \
                   self.opens[lat.join[i, j]] != u | v:
                    raise InternalContradiction(
                        "open-set lattice operations differ from set operations")
        return lat

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSpace) and self.points == other.points \
            and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((self.points, self.opens))

    def __repr__(self) -> str:
        return f"FiniteSpace(points={self.points}, opens={len(self.opens)})"

    def to_doc(self) -> dict:
        return {"points": self.points,
                "opens": [list(mask_points(m)) for m in self.opens]}


def load_space(doc: dict) -> FiniteSpace:
    if not isinstance(doc, dict) or "points" not in doc or "opens" not in doc:
        raise ParseError("space document needs points and opens")
    return FiniteSpace(int(doc["points"]),
                       [points_mask(o) for o in doc["opens"]])


def builtin_space(name: str) -> FiniteSpace:
    """Named example spaces: T3, sierpinski, discreteK, indiscreteK."""
    if name == "T3":
        # three points; one of them carries no smallest open of its own
        return FiniteSpace(3, [0, 0b001, 0b100, 0b101, 0b111])
    if name == "sierpinski":
        return FiniteSpace(2, [0, 0b01, 0b11])
    for prefix in ("discrete", "indiscrete"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            k = int(name[len(prefix):])
            if not 1 <= k <= MAX_POINTS_FOR_BOREL:
                raise ParseError(f"{prefix} space size {k} out of range")
            if prefix == "discrete":
                return FiniteSpace(k, range(1 << k))
            return FiniteSpace(k, [0, (1 << k) - 1])
    raise ParseError(f"unknown space name {name!r}")


def enumerate_topologies(points: int) -> list[FiniteSpace]:
    """All topologies on a fixed small point set, in lexicographic order."""
    if points > 4:
        raise SizeBound("topology enumeration supported up to 4 points")
    full = (1 << points) - 1
    middles = [m for m in range(full + 1) if m not in (0, full)]
    out = []
    for pick in range(1 << len(middles)):
        chosen = [m for i, m in enumerate(middles) if pick >> i & 1]
        family = set(chosen) | {0, full}
        if all(u | v in family and u & v in family for u in family for v in family):
            out.append(FiniteSpace(points, sorted(family)))
    out.sort(key=lambda s: s.opens)
    return out


@dataclass(frozen=True)
class TopoReport:
    subset: int
    interior: int
    closure: int
    boundary: int


def topo_ops(space: FiniteSpace, mask: int) -> TopoReport:
    """Interior, closure and boundary of an arbitrary point set."""
    if not 0 <= mask <= space.full:
        raise ParseError("subset mentions a point out of range")
    return TopoReport(mask, space.interior(mask), space.closure(mask),
                      space.boundary(mask))


@dataclass(frozen=True)
class RegularOpenReport:
    space: FiniteSpace
    ortho: OrthoLattice
    regular_masks: tuple[int, ...]
    open_to_regular: tuple[int, ...]
    heyting_identity: bool


def regular_open_lattice(space: FiniteSpace) -> RegularOpenReport:
    """The Boolean algebra of regular opens, rebuilt and revalidated.

    Meets must be intersections and joins the double pseudocomplement
    of unions; both are asserted against the order-derived tables.  The
    triple-pseudocomplement identity is verified on every open, and the
    algebra must pass the full Boolean axioms.
    """
    pc = space.pseudocomplement
    regular = sorted(m for m in space.opens if pc(pc(m)) == m)
    heyting = all(pc(pc(pc(u))) == pc(u) for u in space.opens)
    if not heyting:
        raise InternalContradiction("triple pseudocomplement differs from single")
    masks = np.array(regular)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    names = tuple("{" + ",".join(str(p) for p in mask_points(m)) + "}"
                  for m in regular)
    lat = Lattice(leq, names)
    index = {m: i for i, m in enumerate(regular)}
    for i, u in enumerate(regular):
        for j, v in enumerate(regular):
            if regular[lat.meet[i, j]] != u & v:
                raise InternalContradiction("regular-open meet is not intersection")
            if regular[lat.join[i, j]] != pc(pc(u | v)):
                raise InternalContradiction(
                    "regular-open join is not the twisted union")
    ortho = attach_ortho(lat, [index[pc(u)] for u in regular])
    from .lattice import classify
    if not classify(lat).is_distributive:
        raise InternalContradiction("regular opens failed to form a Boolean algebra")
    open_to_regular = tuple(index[pc(pc(u))] for u in space.opens)
    return RegularOpenReport(space, ortho, tuple(regular), open_to_regular, heyting)


@dataclass(frozen=True)
class RhoReport:
    space: FiniteSpace
    open_spectrum: StoneSpectrum
    regular_spectrum: StoneSpectrum
    pairs: tuple[tuple[int, int], ...]
    basis_compatible: bool


def rho_map(space: FiniteSpace) -> RhoReport:
    """The spectral bijection between all opens and the regular opens.

    A maximal filter of opens maps to the double pseudocomplements of
    its members; the image must be a maximal filter of regular opens,
    the assignment must be a bijection, and basis sets must correspond
    in both directions.
    """
    reg = regular_open_lattice(space)
    ospec = quasipoints(space.lattice)
    rspec = quasipoints(reg.ortho.lattice)
    rindex = {qp.members: j for j, qp in enumerate(rspec.quasipoints)}
    pairs = []
    for j, qp in enumerate(ospec.quasipoints):
        image = tuple(sorted({reg.open_to_regular[u] for u in qp.members}))
        if image not in rindex:
            raise InternalContradiction(
                f"image of open-filter {j} is not a regular-open filter")
        pairs.append((j, rindex[image]))
    if len({b for _, b in pairs}) != len(rspec.quasipoints):
        raise InternalContradiction("spectral map is not a bijection")
    fwd = dict(pairs)
    for ui, u in enumerate(space.opens):
        target = reg.open_to_regular[ui]
        lhs = {fwd[j] for j in np.flatnonzero(ospec.basis[ui])}
        rhs = {int(x) for x in np.flatnonzero(rspec.basis[target])}
        if lhs != rhs:
            raise InternalContradiction(f"basis sets differ under the map at {u}")
    for ri, w in enumerate(reg.regular_masks):
        back = {j for j, b in pairs if rspec.basis[ri][b]}
        direct = {int(x) for x in np.flatnonzero(ospec.basis[space.open_index[w]])}
        if back != direct:
            raise InternalContradiction(f"basis sets differ under the inverse at {w}")
    return RhoReport(space, ospec, rspec, tuple(pairs), True)


@dataclass(frozen=True)
class MeagreBaireReport:
    """Baire analysis over the algebra of sets generated by the opens.

    ``blocks`` lists the indistinguishability classes (points contained
    in exactly the same opens) as point masks; the measurable carrier
    ``borel`` is the powerset of the blocks, whose element indices are
    block masks.  On a space where points are separated by opens every
    block is a singleton and block masks coincide with point masks.
    ``ideal`` holds borel element indices; ``ideal_point_masks`` their
    decodings.  Representatives pair a quotient class with the point
    mask of its unique regular open.
    """

    space: FiniteSpace
    borel: OrthoLattice
    blocks: tuple[int, ...]
    nowhere_dense: tuple[int, ...]
    ideal: tuple[int, ...]
    ideal_point_masks: tuple[int, ...]
    is_baire: bool
    skip_reason: Optional[str]
    quotient: Optional[QuotientAlgebra]
    regular_representatives: Optional[tuple[tuple[int, int], ...]]
    pi_pairs: Optional[tuple[tuple[int, int], ...]]
    surviving: Optional[tuple[int, ...]]


def indistinguishability_blocks(space: FiniteSpace) -> tuple[int, ...]:
    """Classes of points lying in the same opens, in first-point order.

    Two points share every open exactly when they share the minimal
    neighborhood.  The sets generated from the opens by complements and
    unions are precisely the unions of these blocks: closed sets are
    complements of opens, so blocks are preserved by every generator.
    """
    seen: dict[int, int] = {}
    masks: list[int] = []
    for x in range(space.points):
        v = space.minimal_neighborhood(x)
        if v not in seen:
            seen[v] = len(masks)
            masks.append(0)
        masks[seen[v]] |= 1 << x
    return tuple(masks)


def _borel(space: FiniteSpace) -> tuple[OrthoLattice, tuple[int, ...]]:
    if space.points > MAX_POINTS_FOR_BOREL:
        raise SizeBound(
            f"{space.points} points exceeds the measurable-algebra bound "
            f"{MAX_POINTS_FOR_BOREL}")
    blocks = indistinguishability_blocks(space)
    return boolean_algebra(len(blocks)), blocks


def meagre_baire(space: FiniteSpace) -> MeagreBaireReport:
    """The meagre ideal, the Baire verdict, and what follows on Baire spaces.

    The measurable carrier is the algebra generated by the open sets,
    the unions of indistinguishability blocks.  That restriction is
    what makes the structure below work: a member of the generated
    algebra always differs from some open set by a meagre set, whereas
    an arbitrary point set in a space with indistinguishable points
    need not (a half of an indiscrete pair differs from each open by a
    non-meagre set).

    On a Baire space: each ideal class holds a unique regular open
    (found by scanning the class), and mapping an open-filter to its
    ideal-saturation gives a bijection onto the ideal-avoiding
    quasipoints of the carrier, compatible with basis sets.  The
    saturation is computed twice, from the symmetric difference
    definition and through the quotient projection, and the two must
    agree.
    """
    borel, blocks = _borel(space)
    nblocks = len(blocks)

    def to_points(bm: int) -> int:
        out = 0
        for i in range(nblocks):
            if bm >> i & 1:
                out |= blocks[i]
        return out

    block_of = {to_points(bm): bm for bm in range(1 << nblocks)}
    nd = tuple(m for m in range(space.full + 1)
               if space.interior(space.closure(m)) == 0)
    total = 0
    for m in nd:
        total |= m
    ideal = tuple(bm for bm in range(1 << nblocks)
                  if to_points(bm) & ~total == 0)
    ideal_points = tuple(to_points(bm) for bm in ideal)
    iset = set(ideal)
    meagre_points = {m for m in range(space.full + 1) if m & ~total == 0}
    offenders = [u for u in space.opens if u != 0 and u in meagre_points]
    if offenders:
        return MeagreBaireReport(
            space, borel, blocks, nd, ideal, ideal_points, False,
            "a nonempty open set is meagre: "
            f"{{{','.join(str(p) for p in mask_points(offenders[0]))}}}",
            None, None, None, None)

    for u in space.opens:
        if u not in block_of:
            raise InternalContradiction(
                f"open set {u} is not a union of blocks")

    qa = quotient_boolean(borel, ideal, closed=True)
    pc = space.pseudocomplement
    regs = {block_of[m] for m in space.opens if pc(pc(m)) == m}
    reps = []
    for ci, cls in enumerate(qa.classes):
        inside = [m for m in cls if m in regs]
        if len(inside) != 1:
            raise InternalContradiction(
                f"ideal class {ci} holds {len(inside)} regular opens, expected 1")
        reps.append((ci, to_points(inside[0])))

    corr = spectrum_correspondence(borel, ideal, closed=True)
    ospec = quasipoints(space.lattice)
    bspec = corr.spectrum
    bindex = {qp.members: j for j, qp in enumerate(bspec.quasipoints)}
    surv = set(corr.surviving)
    pi_pairs = []
    for j, qp in enumerate(ospec.quasipoints):
        open_masks = [block_of[space.opens[u]] for u in qp.members]
        saturated = tuple(a for a in range(1 << nblocks)
                          if any(a ^ u in iset for u in open_masks))
        via_projection = tuple(a for a in range(1 << nblocks)
                               if qa.projection[a] in {qa.projection[u]
                                                       for u in open_masks})
        if saturated != via_projection:
            raise InternalContradiction(
                "ideal saturation disagrees with the projection preimage")
        if saturated not in bindex or bindex[saturated] not in surv:
            raise InternalContradiction(
                f"saturation of open-filter {j} is not an ideal-avoiding quasipoint")
        pi_pairs.append((j, bindex[saturated]))
    if {b for _, b in pi_pairs} != surv or len(pi_pairs) != len(surv):
        raise InternalContradiction("saturation map is not a bijection")
    fwd = dict(pi_pairs)
    for ui, u in enumerate(space.opens):
        lhs = {fwd[j] for j in np.flatnonzero(ospec.basis[ui])}
        rhs = {j for j in surv if bspec.basis[block_of[u]][j]}
        if lhs != rhs:
            raise InternalContradiction(
                f"basis sets differ under the saturation map at open {u}")
    return MeagreBaireReport(space, borel, blocks, nd, ideal, ideal_points,
                             True, None, qa, tuple(reps), tuple(pi_pairs),
                             tuple(sorted(surv)))


@dataclass(frozen=True)
class QuasipointAnalysis:
    space: FiniteSpace
    members: tuple[int, ...]
    trace_opens: tuple[int, ...]
    trace_is_quasipoint: bool
    boundary_criterion: bool
    boundary_witness: Optional[int]
    alternative_holds: bool
    alternative_witness: Optional[int]
    support: int
    support_is_singleton: bool


def quasipoint_analysis(space: FiniteSpace,
                        qp: Union[int, Sequence[int]]) -> QuasipointAnalysis:
    """Trace a measurable-algebra quasipoint on the opens and classify it.

    The carrier is the algebra generated by the opens, the powerset of
    the indistinguishability blocks; when the opens separate points it
    is the point powerset.  Accepts a point index (meaning the maximal
    filter of all measurable sets containing its block) or an explicit
    member list of point masks, which must consist of block unions and
    is validated as a maximal filter.  Three routes decide whether the
    trace is a maximal filter of opens: direct membership in the open
    spectrum, the boundary criterion (no open has its boundary inside
    the filter), and the alternative that every open or its
    pseudocomplement lies in the trace.  Boundaries and the
    pseudocomplements of opens are block unions themselves, so the
    routes are insensitive to the choice of representative point.  All
    three must agree.  The support is the intersection of the closures
    of the traced opens; a non-singleton support is flagged, not
    hidden.
    """
    borel, blocks = _borel(space)
    nblocks = len(blocks)

    def to_points(bm: int) -> int:
        out = 0
        for i in range(nblocks):
            if bm >> i & 1:
                out |= blocks[i]
        return out

    block_of = {to_points(bm): bm for bm in range(1 << nblocks)}
    if isinstance(qp, int):
        if not 0 <= qp < space.points:
            raise ParseError(f"point {qp} out of range")
        bi = next(i for i, b in enumerate(blocks) if b >> qp & 1)
        bmembers = tuple(a for a in range(1 << nblocks) if a >> bi & 1)
    else:
        raw = sorted(set(int(a) for a in qp))
        if not raw:
            raise NotAQuasipoint("a quasipoint is nonempty")
        if any(not 0 <= a <= space.full for a in raw):
            raise ParseError("member out of range")
        if 0 in raw:
            raise NotAQuasipoint("a quasipoint avoids the empty set")
        for a in raw:
            if a not in block_of:
                raise NotAQuasipoint(
                    f"member {a} is not a union of indistinguishability "
                    "blocks, so it is outside the measurable algebra",
                    witness=a)
        bmembers = tuple(sorted(block_of[a] for a in raw))
        mset = set(bmembers)
        for a in bmembers:
            for b in bmembers:
                if a & b not in mset:
                    raise NotAQuasipoint(
                        f"not closed under intersection at "
                        f"({to_points(a)}, {to_points(b)})",
                        witness=(to_points(a), to_points(b)))
            for c in range(1 << nblocks):
                if a & ~c == 0 and c not in mset:
                    raise NotAQuasipoint(
                        f"not upward closed: {to_points(c)} above "
                        f"{to_points(a)} is missing",
                        witness=(to_points(a), to_points(c)))
        base = bmembers[0]
        for a in bmembers:
            base &= a
        if base == 0 or base.bit_count() != 1:
            raise NotAQuasipoint(
                "filter is not maximal: its minimum is not a block")

    bspec = quasipoints(borel.lattice)
    if bmembers not in {q.members for q in bspec.quasipoints}:
        raise NotAQuasipoint(
            "member set is not a maximal filter of the measurable algebra")
    members = tuple(sorted(to_points(a) for a in bmembers))
    mset = {to_points(a) for a in bmembers}
    trace = tuple(u for u in space.opens if u in mset)

    ospec = quasipoints(space.lattice)
    trace_indices = tuple(space.open_index[u] for u in trace)
    direct = trace_indices in {q.members for q in ospec.quasipoints}

    bw = next((u for u in space.opens if space.boundary(u) in mset), None)
    criterion = bw is None

    aw = next((u for u in space.opens
               if u not in mset and space.pseudocomplement(u) not in mset), None)
    alternative = aw is None

    if len({direct, criterion, alternative}) != 1:
        raise InternalContradiction(
            f"trace routes disagree: direct={direct} boundary={criterion} "
            f"alternative={alternative}")
    support = space.full
    for u in trace:
        support &= space.closure(u)
    return QuasipointAnalysis(space, members, trace, direct, criterion, bw,
                              alternative, aw, support, support.bit_count() == 1)
