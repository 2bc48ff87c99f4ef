"""Presheaves on finite lattices: gluing, germs, etale space, sheafification.

A presheaf assigns a finite labeled set S(a) to every element and a
restriction map S(b) -> S(a) to every comparable pair a <= b, with
identities on the diagonal and composition along chains.  Restriction
maps may be supplied for cover pairs only; composites are derived and
the full functoriality square is then checked over every triple, so a
bad supplied composite is always caught.

Completeness (the sheaf condition) asks that for every family with
join j, every compatible choice of local members glues to exactly one
member of S(j).  Compatibility only constrains pairs whose meet is
nonzero.  The implementation quantifies over nonempty antichains of
nonzero elements, which loses nothing:

* dropping a member a dominated by another member b changes nothing,
  because a ^ b = a is nonzero and compatibility then forces the
  member at a to be the restriction of the member at b, while any
  gluing over the smaller family restricts correctly to a
  automatically by functoriality;
* pairwise meets of the dominating members are nonzero wherever the
  dropped constraints were, so compatibility transfers both ways;
* a family member 0 never constrains a gluing beyond |S(0)| = 1, the
  convention recorded in reports, and the 0-meet guard makes it
  invisible to compatibility.

Germs at a maximal filter are classes of pairs (a, f) with f in S(a),
two pairs being identified when they restrict equally to some common
member below both.  Every member sits above the filter's minimum m, so
restriction to m is a complete invariant; the generic class
construction is still run and asserted against that oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (FunctorialityViolation, InternalContradiction, MissingMap,
                     ParseError, SearchBudgetExceeded, SizeBound)
from .lattice import Lattice
from .corpus import boolean_algebra, corpus, mo_lattice
from .spectrum import Quasipoint, StoneSpectrum, quasipoints
from .topology import FiniteSpace

MAX_COMPLETENESS_ELEMENTS = 20
MAX_FAMILY_TUPLES = 1 << 14
MAX_SECTIONS = 1 << 14


class Presheaf:
    """Validated contravariant assignment; construct via make_presheaf."""

    def __init__(self, lattice: Lattice, sets: Sequence[Sequence[str]],
                 maps: Mapping[tuple[int, int], Sequence[int]]):
        self.lattice = lattice
        self.sets = tuple(tuple(s) for s in sets)
        self.maps = {k: tuple(v) for k, v in maps.items()}

    def restrict(self, b: int, a: int, member: int) -> int:
        """Image in S(a) of member index of S(b), for a <= b."""
        return self.maps[(a, b)][member]

    def labels(self, a: int) -> tuple[str, ...]:
        return self.sets[a]

    def to_doc(self) -> dict:
        lat = self.lattice
        maps = {}
        for (a, b), table in sorted(self.maps.items()):
            if a == b:
                continue
            maps[f"{b}->{a}"] = {self.sets[b][i]: self.sets[a][t]
                                 for i, t in enumerate(table)}
        return {"sets": {str(a): list(s) for a, s in enumerate(self.sets)},
                "maps": maps}


def make_presheaf(lat: Lattice, sets: Sequence[Sequence[str]],
                  maps: Mapping[tuple[int, int], Mapping[str, str]]) -> Presheaf:
    """Assemble and validate a presheaf from labeled sets and maps.

    ``maps`` is keyed by (a, b) with a <= b and sends labels of S(b) to
    labels of S(a).  Cover pairs must all be present; other pairs are
    derived by composing down cover chains and any supplied composite
    is checked against the derived ones through the triple scan.
    """
    sets = tuple(tuple(str(x) for x in s) for s in sets)
    if len(sets) != lat.n:
        raise ParseError(f"{len(sets)} sets for {lat.n} elements")
    for a, s in enumerate(sets):
        if not s:
            raise ParseError(f"S({a}) is empty")
        if len(set(s)) != len(s):
            raise ParseError(f"S({a}) has duplicate labels")
    index = [{lbl: i for i, lbl in enumerate(s)} for s in sets]

    tables: dict[tuple[int, int], tuple[int, ...]] = {}
    for (a, b), table in maps.items():
        if not lat.leq[a, b]:
            raise ParseError(f"map for ({a}, {b}) but {a} is not below {b}")
        if set(table) != set(sets[b]):
            raise ParseError(f"map ({a}, {b}) is not total on S({b})")
        try:
            tables[(a, b)] = tuple(index[a][table[lbl]] for lbl in sets[b])
        except KeyError as err:
            raise ParseError(
                f"map ({a}, {b}) targets unknown label {err.args[0]!r}")
    for a in range(lat.n):
        ident = tuple(range(len(sets[a])))
        if tables.setdefault((a, a), ident) != ident:
            raise FunctorialityViolation(
                f"map at ({a}, {a}) is not the identity", witness=(a, a, a))

    below_covers: dict[int, list[int]] = {b: [] for b in range(lat.n)}
    for lo, hi in lat.covers:
        below_covers[hi].append(lo)
        if (lo, hi) not in tables:
            raise MissingMap(f"no map for cover pair ({lo}, {hi})",
                             witness=(lo, hi))
    order = sorted(range(lat.n), key=lambda e: lat.heights[e])
    for b in order:
        for a in range(lat.n):
            if not lat.leq[a, b] or (a, b) in tables:
                continue
            x = next(x for x in sorted(below_covers[b]) if lat.leq[a, x])
            tables[(a, b)] = tuple(tables[(a, x)][t] for t in tables[(x, b)])

    for a in range(lat.n):
        for b in range(lat.n):
            if not lat.leq[a, b]:
                continue
            for c in range(lat.n):
                if not lat.leq[b, c]:
                    continue
                composed = tuple(tables[(a, b)][t] for t in tables[(b, c)])
                if composed != tables[(a, c)]:
                    raise FunctorialityViolation(
                        f"restriction along ({a}, {b}, {c}) disagrees with "
                        f"the direct map", witness=(a, b, c))
    return Presheaf(lat, sets, tables)


def load_presheaf(lat: Lattice, doc: dict) -> Presheaf:
    """Build from the document form {"sets": ..., "maps": {"b->a": ...}}."""
    if not isinstance(doc, dict) or "sets" not in doc:
        raise ParseError("presheaf document needs sets")
    try:
        sets = [doc["sets"][str(a)] for a in range(lat.n)]
    except KeyError as err:
        raise ParseError(f"no set for element {err.args[0]}")
    maps = {}
    for key, table in doc.get("maps", {}).items():
        parts = str(key).split("->")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise ParseError(f"bad map key {key!r}; expected 'b->a'")
        b, a = (int(p) for p in parts)
        if not (0 <= a < lat.n and 0 <= b < lat.n):
            raise ParseError(f"map key {key!r} names unknown elements")
        maps[(a, b)] = dict(table)
    return make_presheaf(lat, sets, maps)


def singleton_presheaf(lat: Lattice) -> Presheaf:
    """All sets singletons, all maps forced."""
    sets = [("*",) for _ in range(lat.n)]
    maps = {(lo, hi): {"*": "*"} for lo, hi in lat.covers}
    return make_presheaf(lat, sets, maps)


def function_presheaf(lat: Lattice) -> Presheaf:
    """S(a) = two-valued functions on the atoms below a; restriction drops.

    On a powerset algebra this is complete: local functions agreeing on
    shared atoms patch together over any cover of the atom set.
    """
    def atom_list(a: int) -> list[int]:
        return [p for p in lat.atoms if lat.leq[p, a]]

    def label(assign: dict[int, int]) -> str:
        if not assign:
            return "*"
        return ",".join(f"{lat.name(p)}={assign[p]}" for p in sorted(assign))

    sets = []
    members: list[list[dict[int, int]]] = []
    for a in range(lat.n):
        ats = atom_list(a)
        here = [dict(zip(ats, bits)) for bits in product((0, 1), repeat=len(ats))]
        members.append(here)
        sets.append(tuple(label(m) for m in here))
    maps = {}
    for lo, hi in lat.covers:
        keep = set(atom_list(lo))
        maps[(lo, hi)] = {
            label(m): label({p: v for p, v in m.items() if p in keep})
            for m in members[hi]}
    return make_presheaf(lat, sets, maps)


def corpus_presheaf(name: str) -> Presheaf:
    """Small named presheaves used in tests and demos."""
    if name == "C3-collapse":
        lat = corpus("C3")
        return make_presheaf(
            lat, [("*",), ("z",), ("x", "y")],
            {(0, 1): {"z": "*"}, (1, 2): {"x": "z", "y": "z"}})
    if name == "B2-functions":
        return function_presheaf(boolean_algebra(2).lattice)
    if name == "B2-small-top":
        lat = boolean_algebra(2).lattice
        return make_presheaf(
            lat, [("*",), ("0", "1"), ("0", "1"), ("t",)],
            {(0, 1): {"0": "*", "1": "*"}, (0, 2): {"0": "*", "1": "*"},
             (1, 3): {"t": "0"}, (2, 3): {"t": "0"}})
    raise ParseError(f"unknown presheaf name {name!r}")


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    witness: Optional[tuple[int, tuple[int, ...], tuple[int, ...], int]]
    families_checked: int
    note: str


_COMPLETENESS_NOTE = (
    "families quantified over nonempty antichains of nonzero elements; "
    "equivalent to all families of nonzero elements (see module docstring); "
    "members 0 excluded under the singleton-S(0) convention, "
    "recorded here when the instance deviates: |S(0)| = {size}")


def _antichains(lat: Lattice) -> Iterable[tuple[int, ...]]:
    elems = [e for e in range(lat.n) if e != lat.bottom]

    def walk(start: int, chosen: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
        for i in range(start, len(elems)):
            e = elems[i]
            if any(lat.leq[c, e] or lat.leq[e, c] for c in chosen):
                continue
            yield chosen + (e,)
            yield from walk(i + 1, chosen + (e,))

    yield from walk(0, ())


def is_complete(P: Presheaf) -> CompletenessReport:
    """Check unique gluing of every compatible family over every antichain.

    The witness on failure is (join, family, member tuple, gluing
    count) with a count of zero (no gluing) or at least two (ambiguous).
    """
    lat = P.lattice
    if lat.n > MAX_COMPLETENESS_ELEMENTS:
        raise SizeBound(
            f"{lat.n} elements exceeds the completeness bound "
            f"{MAX_COMPLETENESS_ELEMENTS}")
    note = _COMPLETENESS_NOTE.format(size=len(P.sets[lat.bottom]))
    checked = 0
    for family in _antichains(lat):
        sizes = 1
        for a in family:
            sizes *= len(P.sets[a])
        if sizes > MAX_FAMILY_TUPLES:
            raise SizeBound(
                f"family {family} spans {sizes} member tuples, over the "
                f"bound {MAX_FAMILY_TUPLES}")
        j = lat.family_join(family)
        checked += 1
        for tup in product(*(range(len(P.sets[a])) for a in family)):
            compatible = True
            for i in range(len(family)):
                for k in range(i + 1, len(family)):
                    w = int(lat.meet[family[i], family[k]])
                    if w == lat.bottom:
                        continue
                    if P.restrict(family[i], w, tup[i]) != \
                       P.restrict(family[k], w, tup[k]):
                        compatible = False
                        break
                if not compatible:
                    break
            if not compatible:
                continue
            gluings = [g for g in range(len(P.sets[j]))
                       if all(P.restrict(j, a, g) == f
                              for a, f in zip(family, tup))]
            if len(gluings) != 1:
                return CompletenessReport(False, (j, family, tup, len(gluings)),
                                          checked, note)
    return CompletenessReport(True, None, checked, note)


@dataclass(frozen=True)
class Germ:
    """One stalk class: canonical member is the restriction to the minimum."""
    quasipoint: int
    element: int
    member: int
    canonical: int


def stalk(P: Presheaf, qp: Quasipoint, qp_index: int = 0) -> tuple[Germ, ...]:
    """Classes of local members at a maximal filter, one germ per class.

    Two pairs are related when they restrict equally to some common
    lower member of the filter.  The raw relation is checked to be an
    equivalence outright, and its classes are asserted to biject with
    S(minimum) via restriction, the finite-scale oracle.
    """
    lat = P.lattice
    m = qp.minimum
    pairs = [(a, f) for a in qp.members for f in range(len(P.sets[a]))]
    k = len(pairs)
    related = np.zeros((k, k), dtype=bool)
    for i, (a, f) in enumerate(pairs):
        for j, (b, g) in enumerate(pairs):
            related[i, j] = any(
                lat.leq[w, int(lat.meet[a, b])] and
                P.restrict(a, w, f) == P.restrict(b, w, g)
                for w in qp.members)
    if not related.diagonal().all():
        raise InternalContradiction("germ relation is not reflexive")
    if not np.array_equal(related, related.T):
        raise InternalContradiction("germ relation is not symmetric")
    for i in range(k):
        for j in range(k):
            if related[i, j] and not (related[j, :] <= related[i, :]).all():
                raise InternalContradiction(
                    f"germ relation is not transitive through pair {j}")
    canon = [P.restrict(a, m, f) for a, f in pairs]
    for i in range(k):
        for j in range(k):
            if related[i, j] != (canon[i] == canon[j]):
                raise InternalContradiction(
                    f"germ relation at {pairs[i]} vs {pairs[j]} disagrees "
                    "with the restriction invariant")
    if sorted(set(canon)) != list(range(len(P.sets[m]))):
        raise InternalContradiction(
            f"stalk at minimum {m} does not biject with S({m})")
    return tuple(Germ(qp_index, m, c, c) for c in sorted(set(canon)))


def _union_closure(masks: Iterable[int]) -> tuple[int, ...]:
    family = {0} | set(masks)
    while True:
        fresh = {a | b for a in family for b in family} - family
        if not fresh:
            return tuple(sorted(family))
        family |= fresh


class EtaleSpace:
    """Disjoint union of stalks with the germ basis over the spectrum.

    Points are (quasipoint index, canonical member) pairs; the
    projection sends a germ to its quasipoint.  The basis set of a pair
    (U, f) holds the germ of f at every maximal filter containing U;
    the projection is verified bijective from each basis set onto the
    filters containing U.  Spectra of finite lattices are discrete
    (the basis set of an atom is the singleton of its filter), which
    the section enumeration checks rather than assumes.
    """

    def __init__(self, P: Presheaf):
        self.presheaf = P
        lat = P.lattice
        self.spectrum = quasipoints(lat)
        qps = self.spectrum.quasipoints
        self.stalks = tuple(stalk(P, qp, i) for i, qp in enumerate(qps))
        self.points = tuple((g.quasipoint, g.canonical)
                            for st in self.stalks for g in st)
        self._point_index = {p: i for i, p in enumerate(self.points)}
        self.basis: dict[tuple[int, int], tuple[int, ...]] = {}
        for u in range(lat.n):
            holders = [i for i, qp in enumerate(qps) if u in qp.members]
            for f in range(len(P.sets[u])):
                here = tuple(
                    self._point_index[(i, P.restrict(u, qps[i].minimum, f))]
                    for i in holders)
                self.basis[(u, f)] = here
                landed = [self.points[p][0] for p in here]
                if sorted(landed) != sorted(holders) or \
                   len(set(landed)) != len(landed):
                    raise InternalContradiction(
                        f"projection is not bijective on the basis set of "
                        f"({u}, {f})")
        self.space = FiniteSpace(
            len(self.points),
            _union_closure([_mask(idx) for idx in self.basis.values()] +
                           [(1 << len(self.points)) - 1]))
        self.spectrum_space = FiniteSpace(
            len(qps),
            _union_closure(
                [_mask(i for i, qp in enumerate(qps) if u in qp.members)
                 for u in range(lat.n)] +
                [(1 << len(qps)) - 1]))

    def germ_of(self, u: int, f: int, qp_index: int) -> int:
        """Point index of the germ of f in S(u) at a filter containing u."""
        m = self.spectrum.quasipoints[qp_index].minimum
        return self._point_index[(qp_index, self.presheaf.restrict(u, m, f))]

    def sections(self, domain: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        """All continuous sections over a set of quasipoints.

        Each section lists one point index per domain quasipoint in
        ascending quasipoint order.  Every preimage of a basis set is
        checked open in the subspace topology of the domain; at this
        scale the spectrum is discrete, so every choice function must
        pass, and a failure is a contradiction, not a verdict.
        """
        dom = sorted(set(domain))
        if any(not 0 <= i < len(self.spectrum.quasipoints) for i in dom):
            raise ParseError(f"domain {dom} names unknown quasipoints")
        dmask = _mask(dom)
        if dmask not in self.spectrum_space.opens:
            raise ParseError(f"domain {dom} is not open in the spectrum")
        total = 1
        for i in dom:
            total *= len(self.stalks[i])
        if total > MAX_SECTIONS:
            raise SizeBound(f"{total} candidate sections exceed the bound "
                            f"{MAX_SECTIONS}")
        subspace = {o & dmask for o in self.spectrum_space.opens}
        out = []
        for choice in product(*(range(len(self.stalks[i])) for i in dom)):
            section = tuple(self._point_index[(i, self.stalks[i][c].canonical)]
                            for i, c in zip(dom, choice))
            for members in self.basis.values():
                hit = set(members) & set(section)
                pre = _mask(q for q, p in zip(dom, section) if p in hit)
                if pre not in subspace:
                    raise InternalContradiction(
                        f"section {section} has a non-open basis preimage")
            out.append(section)
        return tuple(out)


def etale_and_sections(P: Presheaf) -> EtaleSpace:
    """Construct the verified etale space; sections come from its method."""
    return EtaleSpace(P)


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class SheafifyReport:
    sheaf: Presheaf
    etale: EtaleSpace
    opens: tuple[int, ...]
    comparison: tuple[tuple[int, bool, bool], ...]
    input_complete: bool
    basis_faithful: bool
    sheaf_complete: bool


def sheafify(P: Presheaf) -> SheafifyReport:
    """Sections of the etale space, packaged over the spectrum topology.

    The new presheaf assigns to each open set of the spectrum its
    continuous sections, with restriction dropping quasipoints; its
    completeness is verified, and the canonical comparison, sending a
    member of S(U) to its germ section over the filters containing U,
    is reported elementwise.

    When distinct elements have distinct basis sets, which for a finite
    lattice is the same as every element being the join of its atoms, a
    complete input must compare bijectively everywhere: the atoms below
    U form a family joining to U whose members pairwise meet at 0, so
    unique gluing of its member tuples says precisely that S(U) maps
    one-to-one onto the full product of stalks.  Off that hypothesis
    the comparison can honestly collapse, as on a three-element chain
    where the top and middle carry the same basis set; the report then
    simply records the failure.
    """
    et = EtaleSpace(P)
    lat = P.lattice
    qps = et.spectrum.quasipoints
    space = et.spectrum_space
    opens = space.opens

    labels: list[tuple[str, ...]] = []
    sections_by_open: list[tuple[tuple[int, ...], ...]] = []
    for mask in opens:
        dom = [i for i in range(len(qps)) if mask >> i & 1]
        secs = et.sections(dom)
        sections_by_open.append(secs)
        labels.append(tuple(_section_label(et, dom, s) for s in secs))
    maps = {}
    for i, small in enumerate(opens):
        for j, big in enumerate(opens):
            if small & ~big:
                continue
            dom_small = [q for q in range(len(qps)) if small >> q & 1]
            dom_big = [q for q in range(len(qps)) if big >> q & 1]
            keep = [pos for pos, q in enumerate(dom_big) if small >> q & 1]
            table = {}
            for s, lbl in zip(sections_by_open[j], labels[j]):
                restricted = tuple(s[pos] for pos in keep)
                table[lbl] = _section_label(et, dom_small, restricted)
            maps[(i, j)] = table
    sheaf = make_presheaf(space.lattice, labels, maps)
    sheaf_complete = is_complete(sheaf).complete
    if not sheaf_complete:
        raise InternalContradiction("sheafified presheaf failed the gluing check")

    input_complete = is_complete(P).complete
    basis_masks = [_mask(i for i, qp in enumerate(qps) if u in qp.members)
                   for u in range(lat.n)]
    basis_faithful = len(set(basis_masks)) == lat.n
    atomistic = all(
        lat.family_join([p for p in lat.atoms if lat.leq[p, u]]) == u
        for u in range(lat.n) if u != lat.bottom)
    if basis_faithful != atomistic:
        raise InternalContradiction(
            "basis-set injectivity must coincide with atoms joining up")
    comparison = []
    open_index = {m: i for i, m in enumerate(opens)}
    for u in range(lat.n):
        holders = [i for i in range(len(qps)) if basis_masks[u] >> i & 1]
        target = open_index[basis_masks[u]]
        images = []
        for f in range(len(P.sets[u])):
            images.append(tuple(et.germ_of(u, f, i) for i in holders))
        injective = len(set(images)) == len(images)
        surjective = set(images) == set(sections_by_open[target])
        comparison.append((u, injective, surjective))
        if input_complete and basis_faithful and not (injective and surjective):
            raise InternalContradiction(
                f"complete input over a faithful basis compares "
                f"non-bijectively at element {u}")
    return SheafifyReport(sheaf, et, opens, tuple(comparison), input_complete,
                          basis_faithful, sheaf_complete)


def _section_label(et: EtaleSpace, dom: Sequence[int], section: Sequence[int]) -> str:
    if not dom:
        return "()"
    P = et.presheaf
    parts = []
    for q, p in zip(dom, section):
        qp, canon = et.points[p]
        parts.append(f"{q}:{P.sets[et.spectrum.quasipoints[qp].minimum][canon]}")
    return "|".join(parts)


@dataclass(frozen=True)
class TrivialityReport:
    pairs: int
    max_size: int
    enumerated: int
    complete_count: int
    nontrivial_complete: tuple[dict, ...]
    all_trivial: bool
    note: str


HSUM_BUDGET = 200000

_TRIVIALITY_NOTE = (
    "S(0) fixed to a singleton; compatibility between distinct atoms is "
    "vacuous because their meet is 0, so completeness forces the top set "
    "to map bijectively onto every product of two atom sets")


def horizontal_sum_triviality(pairs: int, max_size: int,
                              budget: int = HSUM_BUDGET) -> TrivialityReport:
    """Exhaust all small presheaves on a horizontal sum of complement pairs.

    Enumerates every presheaf on the 2*pairs-atom sum with set sizes
    between 1 and max_size (S(0) a singleton) and every choice of
    restriction maps, tests completeness, and reports whether every
    complete one is trivial, meaning all sets are singletons.  A
    counterexample would be emitted verbatim, never suppressed.

    The scan prefilters with the two-atom gluing condition: summing the
    gluing counts of all member pairs of S(p) x S(q) gives |S(top)|,
    since each top member restricts to exactly one pair, so all counts
    equal one precisely when the restriction pair map is a bijection.
    Survivors get the full antichain check.
    """
    if pairs < 2:
        raise ParseError("need at least two complement pairs")
    if max_size < 1:
        raise ParseError("set sizes must be at least 1")
    ol = mo_lattice(pairs)
    lat = ol.lattice
    atoms = list(lat.atoms)
    top = lat.top

    total = 0
    for s1 in range(1, max_size + 1):
        per_atom = sum(sp ** s1 for sp in range(1, max_size + 1))
        total += per_atom ** len(atoms)
    if total > budget:
        raise SearchBudgetExceeded(
            f"{total} presheaves exceed the search budget {budget}")

    enumerated = 0
    complete_count = 0
    nontrivial = []
    for s1 in range(1, max_size + 1):
        atom_choices = [(sp, assign)
                        for sp in range(1, max_size + 1)
                        for assign in product(range(sp), repeat=s1)]
        for combo in product(atom_choices, repeat=len(atoms)):
            enumerated += 1
            ok = True
            for i in range(len(atoms)):
                si, mi = combo[i]
                for j in range(i + 1, len(atoms)):
                    sj, mj = combo[j]
                    restricted = {(mi[g], mj[g]) for g in range(s1)}
                    if len(restricted) != s1 or s1 != si * sj:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            P = _assemble_mo_presheaf(lat, atoms, top, s1, combo)
            report = is_complete(P)
            if not report.complete:
                continue
            complete_count += 1
            if s1 > 1 or any(sp > 1 for sp, _ in combo):
                nontrivial.append(P.to_doc())
    return TrivialityReport(pairs, max_size, enumerated, complete_count,
                            tuple(nontrivial), not nontrivial, _TRIVIALITY_NOTE)


def etale_dot(et: EtaleSpace, title: str = "etale") -> str:
    """Germs above their filters, with projection edges; deterministic."""
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for i, qp in enumerate(et.spectrum.quasipoints):
        label = et.presheaf.lattice.name(qp.minimum)
        lines.append(f'  q{i} [shape=box, label="filter at {label}"];')
    P = et.presheaf
    for p, (qp, canon) in enumerate(et.points):
        m = et.spectrum.quasipoints[qp].minimum
        lines.append(f'  g{p} [label="{P.sets[m][canon]}"];')
        lines.append(f"  g{p} -> q{qp};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _assemble_mo_presheaf(lat: Lattice, atoms: Sequence[int], top: int,
                          s1: int, combo) -> Presheaf:
    sets: list[tuple[str, ...]] = [("*",)] * lat.n
    sets[top] = tuple(f"t{g}" for g in range(s1))
    maps: dict[tuple[int, int], dict[str, str]] = {}
    for i, p in enumerate(atoms):
        sp, assign = combo[i]
        sets[p] = tuple(f"a{p}_{v}" for v in range(sp))
        maps[(p, top)] = {f"t{g}": f"a{p}_{assign[g]}" for g in range(s1)}
        maps[(lat.bottom, p)] = {lbl: "*" for lbl in sets[p]}
    return make_presheaf(lat, sets, maps)
