"""Command line front end over the library's report operations.

Every subcommand resolves its input (a ``corpus:NAME`` lattice, a
``builtin:NAME`` space, or a JSON document path), runs the relevant
module operations, and emits a report: the command echo, a list of named
checks with pass flags and witnesses, and a payload of derived data.

Output is deterministic by construction.  JSON reports are canonical
(sorted keys, fixed separators, exact rationals rendered as strings),
so two runs with the same command line produce byte-identical bytes;
wall-clock timing appears in text mode only.  DOT renderings list nodes
and cover edges in index order for the same reason.

Exit codes: 0 when every check passes, 1 when a check fails or an
internal coherence assertion fires, 2 when the input cannot be parsed
or violates a structural precondition.

Witnesses attached to failing verdicts are re-validated here through
the owning module's public tables before they are reported, so a
report never carries a witness that does not actually exhibit the
failure it claims.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from .corpus import CORPUS_NAMES, boolean_algebra, corpus, mo_lattice
from .errors import (CheckFailed, InputError, InternalContradiction,
                     ParseError, StonespecError, UnknownName)
from .lattice import Lattice, classify, lattice_dot, load_lattice
from .ortho import (OrthoLattice, boolean_quasipoints, commutes,
                    is_orthomodular, load_ortho, nakamura_report)
from .presheaf import (EtaleSpace, Presheaf, corpus_presheaf, etale_dot,
                       function_presheaf, horizontal_sum_triviality,
                       is_complete, load_presheaf, sheafify,
                       singleton_presheaf)
from .quotient import spectrum_correspondence
from .randgen import (random_diagonal, random_ideal, random_lattice,
                      random_ortholattice, random_point_function,
                      random_spectral_family)
from .spectral import (SpectralFamily, family_from_increasing, gelfand_finite,
                       increasing_from_observable, load_spectral_family,
                       measurable_correspondence, observable_function,
                       observable_roundtrip, spectral_measure_from_family,
                       uniqueness_scan)
from .spectrum import (StoneSpectrum, distributivity_equivalences, points,
                       quasipoints, spectrum_dot)
from .topology import (FiniteSpace, builtin_space, enumerate_topologies,
                       load_space, meagre_baire, quasipoint_analysis,
                       regular_open_lattice, rho_map)


# ---------------------------------------------------------------------------
# serialization

def _plain(x: Any) -> Any:
    """Report values as JSON-ready data with deterministic ordering."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, SpectralFamily):
        return x.to_doc()
    if isinstance(x, Lattice):
        return {"kind": "lattice", "elements": x.n}
    if isinstance(x, OrthoLattice):
        return {"kind": "ortholattice", "elements": x.n}
    if isinstance(x, FiniteSpace):
        return {"kind": "space", "points": x.points, "opens": list(x.opens)}
    if isinstance(x, StoneSpectrum):
        return {"kind": "spectrum",
                "minima": [int(q.minimum) for q in x.quasipoints]}
    if isinstance(x, Presheaf):
        return {"kind": "presheaf", "sizes": [len(s) for s in x.sets]}
    if isinstance(x, EtaleSpace):
        return {"kind": "etale", "points": len(x.points)}
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: _plain(getattr(x, f.name))
                for f in dataclasses.fields(x)}
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): _plain(x[k]) for k in sorted(x, key=str)}
    if isinstance(x, (set, frozenset)):
        return [_plain(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


class Checks:
    """Ordered named verdicts; the exit code is their conjunction."""

    def __init__(self) -> None:
        self.items: list[dict] = []

    def add(self, name: str, ok: Any, witness: Any = None) -> None:
        self.items.append({"name": name, "pass": bool(ok),
                           "witness": _plain(witness)})

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.items)


# ---------------------------------------------------------------------------
# input resolution

def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}")


def resolve_structure(token: str) -> Any:
    """``corpus:NAME``, ``builtin:NAME`` or a JSON document path."""
    if token.startswith("corpus:"):
        return corpus(token[len("corpus:"):])
    if token.startswith("builtin:"):
        return builtin_space(token[len("builtin:"):])
    doc = _read_json(token)
    if isinstance(doc, dict) and "opens" in doc:
        return load_space(doc)
    if isinstance(doc, dict) and "perp" in doc:
        return load_ortho(doc)
    return load_lattice(doc)


def _as_lattice(obj: Any) -> Lattice:
    if isinstance(obj, OrthoLattice):
        return obj.lattice
    if isinstance(obj, Lattice):
        return obj
    raise ParseError("this command needs a lattice input, not a space")


def _as_ortho(obj: Any) -> OrthoLattice:
    if isinstance(obj, OrthoLattice):
        return obj
    raise ParseError("this command needs an orthocomplemented input")


def _as_space(obj: Any) -> FiniteSpace:
    if isinstance(obj, FiniteSpace):
        return obj
    raise ParseError("this command needs a topological space input")


def _parse_elements(token: str, lat: Lattice) -> list[int]:
    """Comma-separated element indices or names."""
    out = []
    for part in token.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            idx = int(part)
        except ValueError:
            if not lat.names or part not in lat.names:
                raise UnknownName(f"no element named {part!r}")
            idx = lat.names.index(part)
        if not 0 <= idx < lat.n:
            raise ParseError(f"element index {idx} out of range")
        out.append(idx)
    if not out:
        raise ParseError("empty element list")
    return out


# ---------------------------------------------------------------------------
# witness re-validation through the owning tables

def _distributive_fails_at(lat: Lattice, w) -> bool:
    a, b, c = w
    return int(lat.meet[a, lat.join[b, c]]) != int(
        lat.join[lat.meet[a, b], lat.meet[a, c]])


def _modular_fails_at(lat: Lattice, w) -> bool:
    a, b, c = w
    return bool(lat.leq[a, c]) and int(lat.join[a, lat.meet[b, c]]) != int(
        lat.meet[lat.join[a, b], c])


def _orthomodular_fails_at(ol: OrthoLattice, w) -> bool:
    x, y = w
    return bool(ol.leq[y, x]) and y != int(
        ol.meet[x, ol.join[ol.perp[x], y]])


def _classification_checks(lat: Lattice, checks: Checks) -> Any:
    rep = classify(lat)
    if rep.distributive_witness is not None:
        checks.add("distributive-witness-revalidates",
                   _distributive_fails_at(lat, rep.distributive_witness),
                   rep.distributive_witness)
    if rep.modular_witness is not None:
        checks.add("modular-witness-revalidates",
                   _modular_fails_at(lat, rep.modular_witness),
                   rep.modular_witness)
    return rep


def _equivalence_checks(ol: OrthoLattice, spec: StoneSpectrum,
                        checks: Checks) -> Any:
    eq = distributivity_equivalences(ol)
    flags = (eq.distributive, eq.union_law, eq.complement_cover,
             eq.clopen_are_basis, eq.quasidistributive)
    checks.add("spectral-characterizations-agree", len(set(flags)) == 1, flags)
    lat, basis = ol.lattice, spec.basis
    if eq.distributive_witness is not None:
        checks.add("triple-witness-revalidates",
                   _distributive_fails_at(lat, eq.distributive_witness),
                   eq.distributive_witness)
    if eq.union_law_witness is not None:
        a, b = eq.union_law_witness
        merged = basis[a] | basis[b]
        checks.add("union-law-witness-revalidates",
                   bool((merged != basis[lat.join[a, b]]).any()), (a, b))
    if eq.complement_cover_witness is not None:
        a = eq.complement_cover_witness
        checks.add("complement-cover-witness-revalidates",
                   bool((~(basis[a] | basis[ol.perp[a]])).any()), a)
    if eq.clopen_witness is not None:
        a, b = eq.clopen_witness
        merged = basis[a] | basis[b]
        checks.add("basis-union-witness-revalidates",
                   all(bool((merged != basis[c]).any())
                       for c in range(lat.n)), (a, b))
    if eq.quasidistributive_witness is not None:
        a, b, c = eq.quasidistributive_witness
        lhs = basis[lat.join[lat.meet[a, b], lat.meet[a, c]]]
        rhs = basis[lat.meet[a, lat.join[b, c]]]
        checks.add("weak-identity-witness-revalidates",
                   bool((lhs != rhs).any()), (a, b, c))
    return eq


# ---------------------------------------------------------------------------
# subcommands

Handler = Callable[[argparse.Namespace],
                   tuple[dict, Checks, Optional[Callable[[], str]]]]


def cmd_check(args: argparse.Namespace):
    obj = resolve_structure(args.input)
    checks = Checks()
    if isinstance(obj, FiniteSpace):
        checks.add("topology-axioms", True)
        lat = obj.lattice
        cls = _classification_checks(lat, checks)
        payload = {"kind": "space", "points": obj.points,
                   "opens": list(obj.opens),
                   "open_lattice": {"elements": lat.n,
                                    "classification": _plain(cls)}}
        return payload, checks, lambda: lattice_dot(lat, "opens")
    lat = _as_lattice(obj)
    checks.add("lattice-axioms", True)
    cls = _classification_checks(lat, checks)
    payload = {"kind": "lattice", "elements": lat.n,
               "atoms": len(lat.atoms),
               "bottom": lat.name(lat.bottom), "top": lat.name(lat.top),
               "classification": _plain(cls)}
    if isinstance(obj, OrthoLattice):
        checks.add("ortholattice-axioms", True)
        om, wit = is_orthomodular(obj)
        payload["kind"] = "ortholattice"
        payload["orthomodular"] = om
        if wit is not None:
            checks.add("orthomodular-witness-revalidates",
                       _orthomodular_fails_at(obj, wit), wit)
        nk = nakamura_report(obj)
        payload["commuting_symmetric"] = nk.symmetric
        checks.add("commuting-symmetry-matches-orthomodular-law",
                   nk.symmetric == nk.orthomodular,
                   nk.asymmetric_pair or nk.orthomodular_witness)
    return payload, checks, lambda: lattice_dot(lat)


def cmd_spectrum(args: argparse.Namespace):
    obj = resolve_structure(args.input)
    lat = _as_lattice(obj)
    spec = quasipoints(lat)
    pts = points(lat)
    checks = Checks()
    checks.add("basis-meet-compatibility", True)
    checks.add("one-quasipoint-per-atom",
               len(spec.quasipoints) == len(lat.atoms),
               (len(spec.quasipoints), len(lat.atoms)))
    # join absorption can fail off the distributive case; the witnesses
    # must still exhibit the failure they claim
    revalidated = all(
        bool(lat.leq[spec.quasipoints[j].minimum, lat.join[a, b]])
        and not lat.leq[spec.quasipoints[j].minimum, a]
        and not lat.leq[spec.quasipoints[j].minimum, b]
        for j, (a, b) in pts.failures)
    checks.add("non-point-witnesses-revalidate", revalidated,
               pts.failures or None)
    if classify(lat).is_distributive:
        checks.add("distributive-forces-join-absorption", not pts.failures,
                   pts.failures or None)
    payload = {
        "elements": lat.n,
        "quasipoints": [{"index": j, "minimum": lat.name(q.minimum),
                         "members": list(q.members)}
                        for j, q in enumerate(spec.quasipoints)],
        "points": list(pts.point_indices),
        "basis": {lat.name(a): [int(j) for j in np.flatnonzero(spec.basis[a])]
                  for a in range(lat.n)},
    }
    if isinstance(obj, OrthoLattice):
        om, _ = is_orthomodular(obj)
        payload["orthomodular"] = om
        if om:
            eq = _equivalence_checks(obj, spec, checks)
            payload["equivalences"] = _plain(eq)
        else:
            payload["equivalences"] = None
    return payload, checks, lambda: spectrum_dot(spec)


def cmd_sectors(args: argparse.Namespace):
    ol = _as_ortho(resolve_structure(args.input))
    rep = boolean_quasipoints(ol)
    nk = nakamura_report(ol)
    checks = Checks()
    checks.add("closure-routes-coincide", not rep.closure_divergences,
               rep.closure_divergences or None)
    checks.add("every-quasipoint-lands-in-a-sector",
               all(q.sector_index is not None for q in rep.quasipoints))
    checks.add("commuting-symmetry-matches-orthomodular-law",
               nk.symmetric == nk.orthomodular,
               nk.asymmetric_pair or nk.orthomodular_witness)
    if nk.asymmetric_pair is not None:
        a, b = nk.asymmetric_pair
        checks.add("asymmetric-pair-revalidates",
                   commutes(ol, a, b) != commutes(ol, b, a), (a, b))
    per_sector: dict[int, int] = {}
    for q in rep.quasipoints:
        per_sector[q.sector_index] = per_sector.get(q.sector_index, 0) + 1
    payload = {
        "sectors": [{"index": i,
                     "elements": [ol.lattice.name(e) for e in s.elements],
                     "quasipoints": per_sector.get(i, 0)}
                    for i, s in enumerate(rep.sectors)],
        "quasipoints": [{"minimum": ol.lattice.name(q.minimum),
                         "sector": q.sector_index,
                         "closures_coincide": q.closures_coincide}
                        for q in rep.quasipoints],
        "commuting_symmetric": nk.symmetric,
        "orthomodular": nk.orthomodular,
    }
    return payload, checks, lambda: lattice_dot(ol.lattice)


def cmd_quotient(args: argparse.Namespace):
    ol = _as_ortho(resolve_structure(args.input))
    gens = _parse_elements(args.ideal, ol.lattice)
    rep = spectrum_correspondence(ol, gens)
    checks = Checks()
    # both directions record (base, quotient) pairs; agreeing as sets
    # and being one-to-one in each coordinate makes them inverse
    fwd, bwd = sorted(rep.forward), sorted(rep.backward)
    one_to_one = (len({p[0] for p in fwd}) == len(fwd)
                  and len({p[1] for p in fwd}) == len(fwd))
    checks.add("correspondence-mutually-inverse", fwd == bwd and one_to_one)
    checks.add("correspondence-covers-quotient-spectrum",
               len(fwd) == len(rep.quotient_spectrum.quasipoints),
               (len(fwd), len(rep.quotient_spectrum.quasipoints)))
    checks.add("basis-compatible", rep.basis_compatible)
    checks.add("avoidance-matches-survival", rep.avoidance_equivalence)
    q = rep.quotient
    payload = {
        "ideal": [ol.lattice.name(e) for e in q.ideal],
        "generators": [ol.lattice.name(e) for e in q.generators],
        "classes": [list(c) for c in q.classes],
        "quotient_elements": q.quotient.n,
        "surviving_quasipoints": list(rep.surviving),
        "forward": [list(p) for p in rep.forward],
        "backward": [list(p) for p in rep.backward],
    }
    return payload, checks, lambda: lattice_dot(q.quotient.lattice, "quotient")


def cmd_topology(args: argparse.Namespace):
    sp = _as_space(resolve_structure(args.input))
    ro = regular_open_lattice(sp)
    rm = rho_map(sp)
    mb = meagre_baire(sp)
    checks = Checks()
    checks.add("pseudocomplement-absorption-identity", ro.heyting_identity)
    checks.add("regular-opens-form-boolean-algebra",
               classify(ro.ortho.lattice).is_distributive)
    checks.add("spectrum-comparison-bijective", rm.basis_compatible
               and len(rm.pairs) == len(rm.open_spectrum.quasipoints)
               and len(rm.pairs) == len(rm.regular_spectrum.quasipoints))
    analyses = [quasipoint_analysis(sp, x) for x in range(sp.points)]
    agree = [a.trace_is_quasipoint == a.boundary_criterion
             == a.alternative_holds for a in analyses]
    checks.add("boundary-criterion-three-route-agreement", all(agree),
               None if all(agree) else agree.index(False))
    if mb.is_baire:
        reps = dict(mb.regular_representatives)
        checks.add("one-regular-representative-per-class",
                   len(reps) == len(set(reps)) and len(mb.pi_pairs)
                   == len(mb.surviving))
    payload = {
        "points": sp.points,
        "opens": list(sp.opens),
        "regular_opens": list(ro.regular_masks),
        "is_baire": mb.is_baire,
        "blocks": list(mb.blocks),
        "nowhere_dense": list(mb.nowhere_dense),
        "meagre_ideal": list(mb.ideal_point_masks),
        "spectrum_pairs": [list(p) for p in rm.pairs],
        "point_traces": [{"point": x,
                          "is_quasipoint": a.trace_is_quasipoint,
                          "support": a.support,
                          "support_is_singleton": a.support_is_singleton}
                         for x, a in enumerate(analyses)],
    }
    if mb.is_baire:
        payload["regular_representatives"] = [
            list(p) for p in mb.regular_representatives]
        payload["projection_pairs"] = [list(p) for p in mb.pi_pairs]
    return payload, checks, lambda: lattice_dot(sp.lattice, "opens")


def cmd_spectral(args: argparse.Namespace):
    obj = resolve_structure(args.input)
    lat = _as_lattice(obj)
    checks = Checks()
    if args.family is None:
        rt = observable_roundtrip(lat)
        checks.add("family-cycle-closes", rt.family_cycle)
        checks.add("observable-cycle-closes", rt.observable_cycle)
        checks.add("table-cycle-closes", rt.increasing_cycle)
        checks.add("inducing-family-unique", rt.uniqueness_counts_all_one)
        checks.add("direct-form-matches-threshold-form", rt.direct_form_agrees)
        payload = {"mode": "roundtrip", "families_checked": rt.families_checked}
        return payload, checks, None
    token = args.family
    doc = json.loads(token) if token.lstrip().startswith("{") \
        else _read_json(token)
    fam = load_spectral_family(lat, doc)
    rep = observable_function(fam)
    checks.add("observable-antitone", rep.antitone)
    checks.add("join-intersection-condition", rep.intersection_condition)
    checks.add("principal-reduction-agrees", rep.principal_reduction)
    table = increasing_from_observable(rep)
    rebuilt = family_from_increasing(lat, table)
    checks.add("reconstruction-identity",
               rebuilt.canonical() == fam.canonical())
    count = uniqueness_scan(lat, table)
    checks.add("inducing-family-unique", count == 1, count)
    canonical_steps = fam.canonical()
    payload = {
        "mode": "family",
        "canonical": {"steps": [{"lambda": str(t), "element": int(e)}
                                for t, e in canonical_steps]},
        "observable": {lat.name(q.minimum): str(v) for q, v in zip(
            rep.spectrum.quasipoints, rep.quasipoint_values)},
        "table": {lat.name(a): str(v) for a, v in table.items()},
    }
    if isinstance(obj, OrthoLattice):
        om, _ = is_orthomodular(obj)
        if om and len(canonical_steps) <= 7:
            sm = spectral_measure_from_family(fam, obj)
            checks.add("measure-laws-hold", True)
            payload["measure_cells"] = [
                {"lower": None if lo is None else str(lo),
                 "upper": None if hi is None else str(hi),
                 "element": lat.name(e)}
                for (lo, hi), e in zip(sm.cell_bounds, sm.cell_elements)]
    return payload, checks, None


def cmd_sheafify(args: argparse.Namespace):
    token = args.presheaf or "functions"
    if token in ("C3-collapse", "B2-functions", "B2-small-top"):
        P = corpus_presheaf(token)
    else:
        lat = _as_lattice(resolve_structure(args.input))
        if token == "functions":
            P = function_presheaf(lat)
        elif token == "singleton":
            P = singleton_presheaf(lat)
        else:
            P = load_presheaf(lat, _read_json(token))
    rep = sheafify(P)
    checks = Checks()
    checks.add("sheafification-is-complete", rep.sheaf_complete)
    bij = all(inj and surj for _, inj, surj in rep.comparison)
    if rep.input_complete and rep.basis_faithful:
        checks.add("comparison-bijective-for-complete-faithful-input", bij,
                   [list(t) for t in rep.comparison if not (t[1] and t[2])]
                   or None)
    payload = {
        "presheaf": token,
        "input_complete": rep.input_complete,
        "basis_faithful": rep.basis_faithful,
        "comparison": [{"element": e, "injective": i, "surjective": s}
                       for e, i, s in rep.comparison],
        "etale_points": len(rep.etale.points),
        "stalk_sizes": [len(st) for st in rep.etale.stalks],
        "sheaf_sections": [len(s) for s in rep.sheaf.sets],
    }
    return payload, checks, lambda: etale_dot(rep.etale)


# ---------------------------------------------------------------------------
# the deterministic batch runner

def _suite_corpus(checks: Checks) -> None:
    for name in CORPUS_NAMES:
        obj = corpus(name)
        ortho = isinstance(obj, OrthoLattice)
        lat = obj.lattice if ortho else obj
        spec = quasipoints(lat)
        pts = points(lat)
        checks.add(f"corpus:{name}:atomic-principal-spectrum",
                   len(spec.quasipoints) == len(lat.atoms)
                   and (not classify(lat).is_distributive
                        or not pts.failures))
        if not ortho:
            continue
        nk = nakamura_report(obj)
        checks.add(f"corpus:{name}:commuting-symmetry",
                   nk.symmetric == nk.orthomodular)
        if nk.orthomodular:
            eq = distributivity_equivalences(obj)
            flags = {eq.distributive, eq.union_law, eq.complement_cover,
                     eq.clopen_are_basis, eq.quasidistributive}
            checks.add(f"corpus:{name}:spectral-characterizations",
                       len(flags) == 1)
    for name in ("sierpinski", "T3", "discrete2", "discrete3", "indiscrete2"):
        sp = builtin_space(name)
        ro = regular_open_lattice(sp)
        rm = rho_map(sp)
        mb = meagre_baire(sp)
        checks.add(f"space:{name}:battery",
                   ro.heyting_identity and rm.basis_compatible
                   and mb.skip_reason is None)
    sweep_ok, sweep_witness = True, None
    for i, sp in enumerate(enumerate_topologies(3)):
        ro = regular_open_lattice(sp)
        rm = rho_map(sp)
        analyses = [quasipoint_analysis(sp, x) for x in range(sp.points)]
        ok = (ro.heyting_identity and rm.basis_compatible
              and classify(ro.ortho.lattice).is_distributive
              and all(a.trace_is_quasipoint == a.boundary_criterion
                      == a.alternative_holds for a in analyses))
        if not ok:
            sweep_ok, sweep_witness = False, i
            break
    checks.add("space:three-point-sweep", sweep_ok, sweep_witness)
    rep = sheafify(corpus_presheaf("B2-functions"))
    checks.add("presheaf:B2-functions:comparison-bijective",
               all(i and s for _, i, s in rep.comparison))
    rep = sheafify(corpus_presheaf("C3-collapse"))
    checks.add("presheaf:C3-collapse:off-hypothesis-collapse",
               rep.input_complete and not rep.basis_faithful
               and any(not i for _, i, _ in rep.comparison))
    checks.add("presheaf:B2-small-top:incomplete",
               not is_complete(corpus_presheaf("B2-small-top")).complete)
    for pairs, size in ((2, 1), (2, 2), (3, 2)):
        tri = horizontal_sum_triviality(pairs, size)
        checks.add(f"presheaf:horizontal-sum-{pairs}-{size}:trivial",
                   tri.all_trivial and tri.complete_count == 1)


def _first_bad(n: int, probe: Callable[[int], bool]) -> Optional[int]:
    for i in range(n):
        if not probe(i):
            return i
    return None


def _suite_random(checks: Checks, seed: int, max_n: int,
                  exhaustive: bool) -> None:
    rng = random.Random(seed)

    lats = [random_lattice(rng, max_n) for _ in range(25)]

    def spectra_ok(i: int) -> bool:
        spec = quasipoints(lats[i])
        if len(spec.quasipoints) != len(lats[i].atoms):
            return False
        return (not classify(lats[i]).is_distributive
                or not points(lats[i]).failures)

    bad = _first_bad(25, spectra_ok)
    checks.add("random:spectra:atomic-principal-routes", bad is None, bad)

    ols = [random_ortholattice(rng, max_n) for _ in range(15)]

    def nakamura_ok(i: int) -> bool:
        nk = nakamura_report(ols[i])
        return nk.symmetric == nk.orthomodular

    bad = _first_bad(15, nakamura_ok)
    checks.add("random:ortho:commuting-symmetry", bad is None, bad)

    quots = [(boolean_algebra(rng.randint(2, 4)),) for _ in range(10)]
    quots = [(ol, random_ideal(rng, ol)) for (ol,) in quots]

    def quotient_ok(i: int) -> bool:
        ol, gens = quots[i]
        rep = spectrum_correspondence(ol, gens)
        return rep.basis_compatible and rep.avoidance_equivalence

    bad = _first_bad(10, quotient_ok)
    checks.add("random:quotient:correspondence", bad is None, bad)

    carriers = (boolean_algebra(3).lattice, mo_lattice(2).lattice,
                mo_lattice(3).lattice)
    fams = [random_spectral_family(rng, carriers[i % 3]) for i in range(12)]

    def cycle_ok(i: int) -> bool:
        fam = fams[i]
        rep = observable_function(fam)
        table = increasing_from_observable(rep)
        rebuilt = family_from_increasing(fam.lattice, table)
        if rebuilt.canonical() != fam.canonical():
            return False
        if uniqueness_scan(fam.lattice, table) != 1:
            return False
        if exhaustive and uniqueness_scan(fam.lattice, table,
                                          prune=False) != 1:
            return False
        return True

    bad = _first_bad(12, cycle_ok)
    checks.add("random:spectral:roundtrip", bad is None, bad)

    gs = [random_point_function(rng, rng.randint(2, 6)) for _ in range(10)]

    def measurable_ok(i: int) -> bool:
        rep = measurable_correspondence(gs[i])
        return (rep.family_roundtrip and rep.recovered_values == gs[i]
                and rep.gelfand_values == gs[i])

    bad = _first_bad(10, measurable_ok)
    checks.add("random:measurable:roundtrip", bad is None, bad)

    diags = [(d, random_diagonal(rng, d))
             for d in (rng.randint(2, 4) for _ in range(10))]

    def gelfand_ok(i: int) -> bool:
        dim, terms = diags[i]
        rep = gelfand_finite(dim, terms)
        if not (rep.characters_bijective and rep.multiplicative
                and rep.projections_two_valued):
            return False
        # same element, different presentation: one term per coordinate
        alt = [(v, (x,)) for x, v in enumerate(rep.vector) if v != 0]
        return gelfand_finite(dim, alt).vector == rep.vector

    bad = _first_bad(10, gelfand_ok)
    checks.add("random:gelfand:expansion-and-invariance", bad is None, bad)

    if exhaustive:
        sweep = enumerate_topologies(4)
        ok = all(rho_map(sp).basis_compatible
                 and regular_open_lattice(sp).heyting_identity
                 for sp in sweep)
        checks.add("exhaustive:four-point-spaces", ok, len(sweep))


def cmd_suite(args: argparse.Namespace):
    target = args.input
    if target not in ("all", "corpus", "random"):
        raise ParseError("suite target must be all, corpus or random")
    checks = Checks()
    max_n = args.max_size if args.max_size is not None else 12
    if max_n < 4:
        raise ParseError("suite needs --max-size of at least 4")
    if target in ("all", "corpus"):
        _suite_corpus(checks)
    if target in ("all", "random"):
        _suite_random(checks, args.seed, max_n, args.exhaustive)
    payload = {"target": target, "checks_run": len(checks.items)}
    return payload, checks, None


HANDLERS: dict[str, Handler] = {
    "check": cmd_check,
    "spectrum": cmd_spectrum,
    "sectors": cmd_sectors,
    "quotient": cmd_quotient,
    "topology": cmd_topology,
    "spectral": cmd_spectral,
    "sheafify": cmd_sheafify,
    "suite": cmd_suite,
}


# ---------------------------------------------------------------------------
# argument parsing and report rendering

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stonespec",
        description="maximal-filter spectra of finite lattices: "
                    "reports, quotients, topologies and sheaves")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("json", "dot", "text"),
                        default="text", help="report rendering")
        sp.add_argument("--out", default=None, metavar="FILE",
                        help="write the report to a file instead of stdout")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized batteries")
        sp.add_argument("--max-size", type=int, default=None, dest="max_size",
                        help="cap on generated structure sizes")
        sp.add_argument("--exhaustive", action="store_true",
                        help="add brute-force cross-checks")
        return sp

    sp = add("check", "validate a structure and classify it")
    sp.add_argument("input", help="corpus:NAME, builtin:NAME or a JSON file")
    sp = add("spectrum", "maximal filters, basis sets and equivalences")
    sp.add_argument("input")
    sp = add("sectors", "maximal commuting blocks and their quasipoints")
    sp.add_argument("input")
    sp = add("quotient", "factor a Boolean algebra and match spectra")
    sp.add_argument("input")
    sp.add_argument("ideal", help="comma-separated ideal generators")
    sp = add("topology", "open-set lattice, regular opens, Baire analysis")
    sp.add_argument("input", help="builtin:NAME or a space JSON file")
    sp = add("spectral", "step families, observables and their roundtrips")
    sp.add_argument("input")
    sp.add_argument("family", nargs="?", default=None,
                    help="family JSON (file or inline); default: roundtrip "
                         "battery")
    sp = add("sheafify", "compare a presheaf with its spectral sheaf")
    sp.add_argument("input")
    sp.add_argument("presheaf", nargs="?", default=None,
                    help="functions (default), singleton, a fixture name or "
                         "a JSON file")
    sp = add("suite", "deterministic check battery")
    sp.add_argument("input", metavar="target", help="all, corpus or random")
    return parser


def _render_text(report: dict, elapsed_ms: float) -> str:
    lines = [f"stonespec {report['command']} {report['input']}"]
    for c in report["checks"]:
        mark = "PASS" if c["pass"] else "FAIL"
        line = f"{mark} {c['name']}"
        if c["witness"] is not None:
            line += f"  witness={json.dumps(c['witness'], sort_keys=True)}"
        lines.append(line)
    lines.append("payload: " + json.dumps(report["payload"], sort_keys=True))
    verdict = "pass" if all(c["pass"] for c in report["checks"]) else "FAIL"
    lines.append(f"result: {verdict}  elapsed: {elapsed_ms:.1f} ms")
    return "\n".join(lines) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        payload, checks, dot = HANDLERS[args.command](args)
        if args.format == "dot" and dot is None:
            raise ParseError(f"{args.command} has no dot rendering")
    except InputError as exc:
        print(f"stonespec: input error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailed, InternalContradiction) as exc:
        print(f"stonespec: check failure: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    config = {"format": args.format, "seed": args.seed,
              "max_size": args.max_size, "exhaustive": args.exhaustive}
    for extra in ("ideal", "family", "presheaf"):
        if hasattr(args, extra):
            config[extra] = getattr(args, extra)
    report = {"command": args.command, "input": args.input,
              "config": config, "checks": checks.items,
              "payload": _plain(payload)}
    if args.format == "dot":
        text = dot()
    elif args.format == "json":
        text = json.dumps(report, sort_keys=True,
                          separators=(",", ":")) + "\n"
    else:
        text = _render_text(report, elapsed_ms)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if checks.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
