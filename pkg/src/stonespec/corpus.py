"""Named example lattices used across tests, demos and the CLI.

Available names:

``C2``, ``C3``
    Chains with two and three elements.  ``C3`` carries no
    orthocomplement: its middle element has no complement at all.
``B1`` .. ``B6``
    Powerset algebras of 1..6 generators.  Element index equals the
    subset bitmask, so the bottom is 0 and the top is 2^k - 1, and the
    orthocomplement is the bitwise complement.
``M3``, ``N5``
    The diamond and the pentagon, the minimal non-distributive and
    non-modular lattices.  Neither admits an orthocomplement: in M3 no
    involutive assignment leaves every element a complement, and in N5
    the doubly-covered element has none that reverses order.
``MO1`` .. ``MO4``
    Horizontal sums of two-element antichains: k incomparable pairs
    (a_i, a_i') glued at shared bounds.  Element order is bottom,
    a_1, a_1', a_2, a_2', ..., top.
``O6``
    The benzene ring: two three-element chains glued at the bounds,
    with the orthocomplement exchanging them.  The smallest
    orthocomplemented lattice that is not orthomodular.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import ParseError, UnknownName
from .lattice import Lattice, from_covers
from .ortho import OrthoLattice, attach_ortho

CORPUS_NAMES = ("C2", "C3", "B1", "B2", "B3", "B4", "B5", "B6",
                "M3", "N5", "MO1", "MO2", "MO3", "MO4", "O6")


def chain(k: int, names: Sequence[str] | None = None) -> Lattice:
    """A linear order with k elements, 0 at the bottom."""
    if k < 1:
        raise ParseError("a chain needs at least one element")
    leq = np.triu(np.ones((k, k), dtype=bool))
    return Lattice(leq, names)


def _subset_name(mask: int, full: int) -> str:
    if mask == 0:
        return "0"
    if mask == full:
        return "1"
    members = [str(i + 1) for i in range(full.bit_length()) if mask >> i & 1]
    return "{" + ",".join(members) + "}"


@lru_cache(maxsize=None)
def boolean_algebra(k: int) -> OrthoLattice:
    """The powerset algebra of k generators, indexed by subset bitmask."""
    if not 1 <= k <= 16:
        raise ParseError("boolean_algebra supports 1..16 generators")
    n = 1 << k
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    meet = masks[:, None] & masks[None, :]
    join = masks[:, None] | masks[None, :]
    names = tuple(_subset_name(m, n - 1) for m in range(n))
    lat = Lattice(leq, names, meet=meet, join=join)
    return attach_ortho(lat, [(n - 1) ^ m for m in range(n)])


@lru_cache(maxsize=None)
def mo_lattice(k: int) -> OrthoLattice:
    """k incomparable complement pairs glued at shared bottom and top."""
    if k < 1:
        raise ParseError("mo_lattice needs at least one pair")
    n = 2 * k + 2
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    names = ["0"]
    perp = [n - 1]
    for i in range(1, k + 1):
        names += [f"a{i}", f"a{i}'"]
        perp += [2 * i, 2 * i - 1]
    names.append("1")
    perp.append(0)
    return attach_ortho(Lattice(leq, names), perp)


def horizontal_sum(blocks: Sequence[OrthoLattice],
                   names: Sequence[str] | None = None) -> OrthoLattice:
    """Glue ortholattices at a shared bottom and top.

    Interior elements of distinct blocks are incomparable; each block
    keeps its own order and orthocomplement.  Blocks must have at least
    one interior element, otherwise they contribute nothing.  Element
    order is bottom, then the interiors block by block, then top.
    """
    interiors = []
    for bi, block in enumerate(blocks):
        inner = [e for e in range(block.n) if e not in (block.bottom, block.top)]
        if not inner:
            raise ParseError(f"block {bi} has no interior elements")
        interiors.append(inner)
    n = 2 + sum(len(inner) for inner in interiors)
    offset = []
    pos = 1
    for inner in interiors:
        offset.append(pos)
        pos += len(inner)
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    perp = np.zeros(n, dtype=np.int32)
    perp[0], perp[n - 1] = n - 1, 0
    out_names = ["0"]
    for bi, (block, inner) in enumerate(zip(blocks, interiors)):
        local = {e: offset[bi] + i for i, e in enumerate(inner)}
        for e in inner:
            out_names.append(f"h{bi}.{block.name(e)}")
            for f in inner:
                leq[local[e], local[f]] = block.leq[e, f]
            perp[local[e]] = local[int(block.perp[e])]
    out_names.append("1")
    if names is None:
        names = out_names
    return attach_ortho(Lattice(leq, names), perp)


@lru_cache(maxsize=None)
def corpus(name: str) -> Union[Lattice, OrthoLattice]:
    """Look up a named example; see the module docstring for the list."""
    if name == "C2":
        lat = chain(2, ("0", "1"))
        return attach_ortho(lat, [1, 0])
    if name == "C3":
        return chain(3, ("0", "m", "1"))
    if name.startswith("B") and name[1:].isdigit():
        k = int(name[1:])
        if 1 <= k <= 6:
            return boolean_algebra(k)
    if name == "M3":
        return from_covers(5, [[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]],
                           ("0", "a", "b", "c", "1"))
    if name == "N5":
        return from_covers(5, [[0, 1], [0, 2], [1, 3], [2, 4], [3, 4]],
                           ("0", "a", "b", "c", "1"))
    if name.startswith("MO") and name[2:].isdigit():
        k = int(name[2:])
        if 1 <= k <= 4:
            return mo_lattice(k)
    if name == "O6":
        lat = from_covers(6, [[0, 1], [1, 2], [2, 5], [0, 3], [3, 4], [4, 5]],
                          ("0", "a", "b", "b'", "a'", "1"))
        return attach_ortho(lat, [5, 4, 3, 2, 1, 0])
    raise UnknownName(f"unknown corpus name {name!r}; available: {', '.join(CORPUS_NAMES)}")
