"""Ideals and quotients of finite Boolean algebras.

An ideal is a downward-closed, join-closed subset containing bottom
and missing top.  Two elements are identified modulo an ideal when
their symmetric difference (a ^ b') v (b ^ a') lies in it.  The
quotient of a Boolean algebra by an ideal is Boolean again; that is
verified on every construction, never assumed.

The spectrum correspondence restricts the base spectrum to the
quasipoints avoiding the ideal and matches them with the spectrum of
the quotient, in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (ImproperIdeal, InternalContradiction, NotAnIdeal,
                     NotBoolean, ParseError)
from .lattice import Lattice, classify
from .ortho import OrthoLattice, attach_ortho
from .spectrum import StoneSpectrum, quasipoints


def _require_boolean(ol: OrthoLattice) -> None:
    rep = classify(ol.lattice)
    if not rep.is_distributive:
        raise NotBoolean(
            f"lattice is not distributive, witness {rep.distributive_witness}",
            witness=rep.distributive_witness)


def close_ideal(ol: OrthoLattice, generators: Sequence[int]) -> tuple[int, ...]:
    """Downward and join closure of a generator set, plus bottom."""
    gens = sorted(set(int(x) for x in generators))
    if any(not 0 <= g < ol.n for g in gens):
        raise ParseError(f"generators {gens} out of range")
    # everything below the join of the generators, in a Boolean algebra
    total = ol.lattice.family_join(gens)
    members = set(int(x) for x in np.flatnonzero(ol.leq[:, total]))
    # closure by fixpoint anyway, so the shortcut above stays honest
    while True:
        extra = {int(ol.join[a, b]) for a in members for b in members} - members
        below = {int(x) for a in members for x in np.flatnonzero(ol.leq[:, a])} - members
        if not extra and not below:
            break
        members |= extra | below
    return tuple(sorted(members))


def validate_ideal(ol: OrthoLattice, members: Sequence[int]) -> tuple[int, ...]:
    """Check an explicit member set for the ideal closure properties."""
    mem = sorted(set(int(x) for x in members))
    mset = set(mem)
    if any(not 0 <= a < ol.n for a in mem):
        raise ParseError(f"members {mem} out of range")
    if ol.bottom not in mset:
        raise NotAnIdeal("ideal must contain bottom")
    for a in mem:
        for b in mem:
            if int(ol.join[a, b]) not in mset:
                raise NotAnIdeal(
                    f"join of {a} and {b} escapes the ideal", witness=(a, b))
        for x in np.flatnonzero(ol.leq[:, a]):
            if int(x) not in mset:
                raise NotAnIdeal(
                    f"{int(x)} lies below member {a} but is missing", witness=(int(x), a))
    return tuple(mem)


@dataclass(frozen=True)
class QuotientAlgebra:
    base: OrthoLattice
    generators: tuple[int, ...]
    ideal: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]
    quotient: OrthoLattice


def quotient_boolean(ol: OrthoLattice, ideal: Sequence[int], *,
                     closed: bool = False) -> QuotientAlgebra:
    """Quotient a finite Boolean algebra by an ideal.

    The ideal argument is a generator list closed automatically; pass
    closed=True to have it validated as-is instead.  Classes come from
    the symmetric-difference criterion, the class order is by smallest
    member, and the quotient is rebuilt from scratch and revalidated as
    a Boolean algebra.  Well-definedness of join, meet and complement
    on classes is checked for every element pair against the class
    representatives, which covers arbitrary pairs by transitivity.
    """
    _require_boolean(ol)
    gens = tuple(sorted(set(int(x) for x in ideal)))
    members = validate_ideal(ol, ideal) if closed else close_ideal(ol, ideal)
    if ol.top in members:
        raise ImproperIdeal("ideal contains the top element")
    mset = set(members)
    n = ol.n
    meet, join, perp = ol.meet, ol.join, ol.perp

    def related(a: int, b: int) -> bool:
        return int(join[meet[a, perp[b]], meet[b, perp[a]]]) in mset

    proj = [-1] * n
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if proj[a] >= 0:
            continue
        cls = tuple(b for b in range(n) if related(a, b))
        for b in cls:
            if proj[b] >= 0:
                raise InternalContradiction("symmetric-difference classes overlap")
            proj[b] = len(classes)
        classes.append(cls)
    if any(p < 0 for p in proj):
        raise InternalContradiction("an element escaped every class")

    k = len(classes)
    reps = [cls[0] for cls in classes]
    # well-definedness against representatives, all pairs
    for a in range(n):
        if proj[int(perp[a])] != proj[int(perp[reps[proj[a]]])]:
            raise InternalContradiction(f"complement not well-defined at {a}")
        for b in range(n):
            ra, rb = reps[proj[a]], reps[proj[b]]
            if proj[int(join[a, b])] != proj[int(join[ra, rb])] or \
               proj[int(meet[a, b])] != proj[int(meet[ra, rb])]:
                raise InternalContradiction(f"operations not well-defined at ({a}, {b})")

    qleq = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            # [a] <= [b] iff a ^ b' falls in the ideal
            qleq[i, j] = int(meet[reps[i], perp[reps[j]]]) in mset
    names = tuple("[" + ol.name(r) + "]" for r in reps)
    qlat = Lattice(qleq, names)
    qperp = [proj[int(perp[r])] for r in reps]
    qol = attach_ortho(qlat, qperp)
    qrep = classify(qlat)
    if not qrep.is_distributive:
        raise InternalContradiction("quotient of a Boolean algebra is not Boolean")
    # projection is a surjective homomorphism preserving the complement
    for a in range(n):
        for b in range(n):
            if proj[int(join[a, b])] != int(qol.join[proj[a], proj[b]]) or \
               proj[int(meet[a, b])] != int(qol.meet[proj[a], proj[b]]):
                raise InternalContradiction(f"projection not a homomorphism at ({a}, {b})")
        if proj[int(perp[a])] != int(qol.perp[proj[a]]):
            raise InternalContradiction(f"projection ignores the complement at {a}")
    return QuotientAlgebra(ol, gens, members, tuple(classes), tuple(proj), qol)


@dataclass(frozen=True)
class CorrespondenceReport:
    quotient: QuotientAlgebra
    spectrum: StoneSpectrum
    quotient_spectrum: StoneSpectrum
    surviving: tuple[int, ...]
    forward: tuple[tuple[int, int], ...]
    backward: tuple[tuple[int, int], ...]
    basis_compatible: bool
    avoidance_equivalence: bool
    closedness_witnesses: tuple[tuple[int, int], ...]


def spectrum_correspondence(ol: OrthoLattice, ideal: Sequence[int], *,
                            closed: bool = False) -> CorrespondenceReport:
    """Match ideal-avoiding quasipoints of the base with the quotient spectrum.

    The surviving set holds the quasipoints disjoint from the ideal.
    Pushing one forward through the projection must give a quasipoint
    of the quotient; pulling a quotient quasipoint back must give a
    surviving one; the two maps must be mutually inverse.  Also checked:
    basis compatibility (for every representative A, pulling back the
    basis set of [A] cuts the same surviving set as Q_A does), the
    equivalence "disjoint from the ideal iff containing every member
    complement", and closedness of the surviving set (each discarded
    quasipoint holds an ideal member A whose basis set misses all
    survivors).
    """
    qa = quotient_boolean(ol, ideal, closed=closed)
    spec = quasipoints(ol.lattice)
    qspec = quasipoints(qa.quotient.lattice)
    mset = set(qa.ideal)
    surviving = tuple(j for j, qp in enumerate(spec.quasipoints)
                      if not (set(qp.members) & mset))

    qp_index = {qp.members: j for j, qp in enumerate(qspec.quasipoints)}
    forward = []
    for j in surviving:
        image = tuple(sorted({qa.projection[a] for a in spec.quasipoints[j].members}))
        if image not in qp_index:
            raise InternalContradiction(
                f"projected quasipoint {j} is not a quotient quasipoint")
        forward.append((j, qp_index[image]))
    base_index = {qp.members: j for j, qp in enumerate(spec.quasipoints)}
    backward = []
    for c, qp in enumerate(qspec.quasipoints):
        cset = set(qp.members)
        pulled = tuple(a for a in range(ol.n) if qa.projection[a] in cset)
        if pulled not in base_index or base_index[pulled] not in surviving:
            raise InternalContradiction(
                f"pulled-back quasipoint {c} is not a surviving base quasipoint")
        backward.append((base_index[pulled], c))
    if sorted(forward) != sorted(backward):
        raise InternalContradiction("correspondence maps are not mutually inverse")

    fwd_map = dict(forward)
    basis_compatible = True
    for a in range(ol.n):
        qset = qspec.basis[qa.projection[a]]
        for j in surviving:
            if bool(qset[fwd_map[j]]) != bool(spec.basis[a][j]):
                basis_compatible = False
    if not basis_compatible:
        raise InternalContradiction("basis sets do not correspond")

    perp_members = {int(ol.perp[a]) for a in qa.ideal}
    avoidance = True
    for j, qp in enumerate(spec.quasipoints):
        avoid = not (set(qp.members) & mset)
        contain = perp_members <= set(qp.members)
        if avoid != contain:
            avoidance = False
    if not avoidance:
        raise InternalContradiction(
            "ideal avoidance differs from containing the member complements")

    closedness = []
    surv_mask = np.zeros(len(spec.quasipoints), dtype=bool)
    for j in surviving:
        surv_mask[j] = True
    for j, qp in enumerate(spec.quasipoints):
        if surv_mask[j]:
            continue
        a = next(x for x in qp.members if x in mset)
        if (spec.basis[a] & surv_mask).any():
            raise InternalContradiction(
                f"separating basis set at {a} still meets the surviving set")
        closedness.append((j, a))
    return CorrespondenceReport(qa, spec, qspec, surviving, tuple(forward),
                                tuple(backward), True, True, tuple(closedness))
