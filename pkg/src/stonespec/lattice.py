"""Finite bounded lattices over dense element indices 0..n-1.

A lattice is stored as its full order relation, an n x n boolean matrix
``leq`` with ``leq[i, j]`` meaning element i is below element j.  Meet
and join tables are computed once during validation and cached; every
pairwise greatest lower bound and least upper bound must exist and be
unique or construction fails.  Bottom and top are discovered from the
order, not declared.

Element order is preserved from the input document, so witnesses and
reports are reproducible.  Documents are capped at 64 elements by
default because several consumers run exponential enumerations; pass
``wide=True`` to lift the cap for large but cheap structures such as
powerset algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InternalContradiction, NoBounds, NotALattice, NotAPoset, ParseError

DEFAULT_MAX_ELEMENTS = 64


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


class Lattice:
    """Validated finite bounded lattice with cached meet/join tables."""

    def __init__(self, leq: np.ndarray, names: Optional[Sequence[str]] = None,
                 meet: Optional[np.ndarray] = None, join: Optional[np.ndarray] = None):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ParseError("order relation must be a square matrix")
        self.n = leq.shape[0]
        self.leq = leq
        _check_poset(leq)
        self.bottom, self.top = _find_bounds(leq)
        if meet is None or join is None:
            meet, join = _build_tables(leq)
        self.meet = np.asarray(meet, dtype=np.int32)
        self.join = np.asarray(join, dtype=np.int32)
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != self.n:
                raise ParseError(f"{len(names)} names for {self.n} elements")
        self.names = names
        for arr in (self.leq, self.meet, self.join):
            arr.setflags(write=False)

    # -- basic queries ------------------------------------------------

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def up_set(self, a: int) -> np.ndarray:
        """Boolean mask of elements above a (inclusive)."""
        return self.leq[a, :]

    def down_set(self, a: int) -> np.ndarray:
        """Boolean mask of elements below a (inclusive)."""
        return self.leq[:, a]

    def family_meet(self, elems: Iterable[int]) -> int:
        """Meet of a family; the empty meet is the top element."""
        out = self.top
        for e in elems:
            out = int(self.meet[out, e])
        return out

    def family_join(self, elems: Iterable[int]) -> int:
        """Join of a family; the empty join is the bottom element."""
        out = self.bottom
        for e in elems:
            out = int(self.join[out, e])
        return out

    # -- derived structure --------------------------------------------

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (lo, hi) of the order, lexicographically sorted."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        cov = lt & ~_bool_matmul(lt, lt)
        return tuple((int(i), int(j)) for i, j in np.argwhere(cov))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of a longest chain from bottom to each element."""
        h = [0] * self.n
        order = np.argsort(self.leq.sum(axis=0), kind="stable")
        above = {lo: [] for lo in range(self.n)}
        for lo, hi in self.covers:
            above[lo].append(hi)
        for e in order:
            for hi in above[int(e)]:
                h[hi] = max(h[hi], h[int(e)] + 1)
        return tuple(h)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        """Elements covering bottom."""
        return tuple(hi for lo, hi in self.covers if lo == self.bottom)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.n == other.n and bool(
            np.array_equal(self.leq, other.leq))

    def __hash__(self) -> int:
        return hash((self.n, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"Lattice(n={self.n})"

    # -- serialization ------------------------------------------------

    def to_doc(self) -> dict:
        doc = {"n": self.n, "covers": [list(c) for c in self.covers]}
        if self.names:
            doc["names"] = list(self.names)
        return doc


def _check_poset(leq: np.ndarray) -> None:
    n = leq.shape[0]
    for i in range(n):
        if not leq[i, i]:
            raise NotAPoset(f"order not reflexive at element {i}", witness=(i,))
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        i, j = (int(x) for x in np.argwhere(sym)[0])
        raise NotAPoset(f"antisymmetry fails: {i} <= {j} and {j} <= {i}", witness=(i, j))
    closure = _bool_matmul(leq, leq)
    gap = closure & ~leq
    if gap.any():
        i, j = (int(x) for x in np.argwhere(gap)[0])
        raise NotAPoset(f"transitivity fails: {i} <= {j} is missing", witness=(i, j))


def _find_bounds(leq: np.ndarray) -> tuple[int, int]:
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bottoms) != 1 or len(tops) != 1:
        minimal = [int(i) for i in np.flatnonzero(leq.sum(axis=0) == 1)]
        maximal = [int(i) for i in np.flatnonzero(leq.sum(axis=1) == 1)]
        raise NoBounds(
            f"no global bounds: minimal elements {minimal}, maximal elements {maximal}",
            witness=(minimal, maximal))
    return int(bottoms[0]), int(tops[0])


def _build_tables(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = leq.shape[0]
    meet = np.zeros((n, n), dtype=np.int32)
    join = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(i, n):
            low = np.flatnonzero(leq[:, i] & leq[:, j])
            # the glb is the member of low lying above every member of low
            ok = low[leq[np.ix_(low, low)].all(axis=0)]
            if len(ok) != 1:
                raise NotALattice(
                    f"elements {i} and {j} have no greatest lower bound",
                    witness=(i, j))
            meet[i, j] = meet[j, i] = ok[0]
            high = np.flatnonzero(leq[i, :] & leq[j, :])
            ok = high[leq[np.ix_(high, high)].all(axis=1)]
            if len(ok) != 1:
                raise NotALattice(
                    f"elements {i} and {j} have no least upper bound",
                    witness=(i, j))
            join[i, j] = join[j, i] = ok[0]
    return meet, join


def _check_cap(n: int, wide: bool) -> None:
    if n > DEFAULT_MAX_ELEMENTS and not wide:
        raise ParseError(
            f"{n} elements exceeds the default cap of {DEFAULT_MAX_ELEMENTS}; "
            "pass wide=True to lift it")


def from_covers(n: int, covers: Sequence[Sequence[int]],
                names: Optional[Sequence[str]] = None, *, wide: bool = False) -> Lattice:
    """Build a lattice from a Hasse diagram given as (lo, hi) cover pairs."""
    _check_cap(n, wide)
    rel = np.eye(n, dtype=bool)
    for pair in covers:
        if len(pair) != 2:
            raise ParseError(f"cover pair {pair!r} is not a pair")
        lo, hi = int(pair[0]), int(pair[1])
        if not (0 <= lo < n and 0 <= hi < n) or lo == hi:
            raise ParseError(f"cover pair {pair!r} out of range for n={n}")
        rel[lo, hi] = True
    # reachability by repeated squaring; a cycle shows up as an
    # antisymmetry failure in the closure
    while True:
        nxt = rel | _bool_matmul(rel, rel)
        if np.array_equal(nxt, rel):
            break
        rel = nxt
    return Lattice(rel, names)


def from_leq(matrix, names: Optional[Sequence[str]] = None, *, wide: bool = False) -> Lattice:
    """Build a lattice from a full boolean order relation."""
    matrix = np.asarray(matrix, dtype=bool)
    if matrix.ndim != 2:
        raise ParseError("leq must be a square matrix")
    _check_cap(matrix.shape[0], wide)
    return Lattice(matrix, names)


def load_lattice(doc: dict, *, wide: bool = False) -> Lattice:
    """Load a lattice document.

    Accepted shapes: ``{"n": int, "covers": [[lo, hi], ...], "names":
    [...]?}`` or ``{"leq": [[bool, ...], ...], "names": [...]?}``.
    """
    if not isinstance(doc, dict):
        raise ParseError("lattice document must be an object")
    names = doc.get("names")
    if "leq" in doc:
        return from_leq(doc["leq"], names, wide=wide)
    if "covers" in doc:
        if "n" not in doc:
            raise ParseError("cover-form document requires n")
        return from_covers(int(doc["n"]), doc["covers"], names, wide=wide)
    raise ParseError("lattice document needs either covers or leq")


def family_meet_join(lat: Lattice, elems: Iterable[int]) -> tuple[int, int]:
    """Meet and join of a family; the empty family yields (top, bottom)."""
    elems = list(elems)
    return lat.family_meet(elems), lat.family_join(elems)


def atoms(lat: Lattice) -> tuple[int, ...]:
    return lat.atoms


@dataclass(frozen=True)
class ClassificationReport:
    is_distributive: bool
    distributive_witness: Optional[tuple[int, int, int]]
    is_modular: bool
    modular_witness: Optional[tuple[int, int, int]]


def classify(lat: Lattice) -> ClassificationReport:
    """Exhaustive triple scan for the distributive and modular laws.

    Both distributive laws are scanned; a lattice satisfies one for all
    triples exactly when it satisfies the other, and that equivalence is
    asserted rather than assumed.  The reported witness is the
    lexicographically first triple violating the meet-over-join law
    (respectively the modular law with its side condition).
    """
    n, meet, join, leq = lat.n, lat.meet, lat.join, lat.leq
    idx = np.arange(n)
    dist_witness = None
    dist_ok = True
    dual_ok = True
    for a in range(n):
        # meet-over-join: a ^ (b v c) == (a ^ b) v (a ^ c)
        lhs = meet[a, join]
        rhs = join[meet[a][:, None], meet[a][None, :]]
        bad = lhs != rhs
        if bad.any():
            dist_ok = False
            if dist_witness is None:
                b, c = (int(x) for x in np.argwhere(bad)[0])
                dist_witness = (a, b, c)
        # join-over-meet: a v (b ^ c) == (a v b) ^ (a v c)
        if not (join[a, meet] == meet[join[a][:, None], join[a][None, :]]).all():
            dual_ok = False
    if dist_ok != dual_ok:
        raise InternalContradiction(
            "the two distributive laws disagree on an exhaustive scan")
    mod_witness = None
    mod_ok = True
    for x in range(n):
        # x <= z implies x v (y ^ z) == (x v y) ^ z
        lhs = join[x, meet]
        rhs = meet[join[x][:, None], idx[None, :]]
        bad = (lhs != rhs) & leq[x][None, :]
        if bad.any():
            mod_ok = False
            y, z = (int(v) for v in np.argwhere(bad)[0])
            mod_witness = (x, y, z)
            break
    if dist_ok and not mod_ok:
        raise InternalContradiction("distributive lattice failed the modular law")
    return ClassificationReport(dist_ok, dist_witness, mod_ok, mod_witness)


def lattice_dot(lat: Lattice, title: str = "lattice") -> str:
    """DOT rendering of the Hasse diagram: cover edges only, ranked by height."""
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for i in range(lat.n):
        lines.append(f'  n{i} [label="{lat.name(i)}"];')
    by_height: dict[int, list[int]] = {}
    for i, h in enumerate(lat.heights):
        by_height.setdefault(h, []).append(i)
    for h in sorted(by_height):
        row = " ".join(f"n{i};" for i in by_height[h])
        lines.append(f"  {{ rank=same; {row} }}")
    for lo, hi in lat.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
