"""Seeded random structures for stress tests and the batch runner.

Every generator takes an explicit ``random.Random`` instance and draws
from it deterministically, so a fixed seed reproduces the exact same
structure on every run and platform.  Nothing here reads global state.

Random lattices come from intersection-closed set families over a small
universe: meets are intersections, and the join of two members is the
intersection of all members containing their union, which exists because
the full set is a member.  ``Lattice`` re-validates the order on
construction, so a bug here cannot leak an invalid table downstream.

Random ortholattices are horizontal sums of small blocks glued at the
bounds.  Boolean blocks keep the sum orthomodular; a hexagon block
breaks the orthomodular law, so mixing it in produces both kinds.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .corpus import boolean_algebra, corpus, horizontal_sum
from .errors import ParseError
from .lattice import Lattice
from .ortho import OrthoLattice
from .spectral import SpectralFamily, make_spectral_family


def random_lattice(rng: random.Random, max_n: int = 12) -> Lattice:
    """Intersection-closed family over a 3..5 point universe."""
    if max_n < 2:
        raise ParseError("need room for at least two elements")
    universe = rng.randint(3, 5)
    full = (1 << universe) - 1
    target = rng.randint(2, max_n)
    pool = list(range(full))
    rng.shuffle(pool)
    family = {full}
    for cand in pool:
        if len(family) >= target:
            break
        trial = set(family)
        trial.add(cand)
        # close under pairwise intersection to a fixpoint
        while True:
            fresh = {a & b for a in trial for b in trial} - trial
            if not fresh:
                break
            trial |= fresh
        if len(trial) <= max_n:
            family = trial
    masks = sorted(family, key=lambda m: (bin(m).count("1"), m))
    n = len(masks)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            leq[i, j] = a & b == a
    return Lattice(leq)


_BLOCK_KEYS = ("B2", "B2", "B3", "O6")


def random_ortholattice(rng: random.Random, max_n: int = 12,
                        allow_hexagon: bool = True) -> OrthoLattice:
    """Horizontal sum of Boolean and (optionally) hexagon blocks."""
    if max_n < 4:
        raise ParseError("need room for one two-atom block")
    pool = {"B2": boolean_algebra(2), "B3": boolean_algebra(3),
            "O6": corpus("O6")}
    keys = _BLOCK_KEYS if allow_hexagon else ("B2", "B2", "B3")
    budget = max_n - 2
    blocks: list[OrthoLattice] = []
    while True:
        fits = [k for k in keys if pool[k].n - 2 <= budget]
        if not fits or (blocks and rng.random() < 0.3):
            break
        pick = pool[rng.choice(fits)]
        blocks.append(pick)
        budget -= pick.n - 2
    return horizontal_sum(blocks)


def random_spectral_family(rng: random.Random, lat: Lattice) -> SpectralFamily:
    """One to three steps; elements form a chain ending at the top."""
    m = rng.randint(1, 3)
    levels: set[Fraction] = set()
    while len(levels) < m:
        levels.add(Fraction(rng.randint(-8, 8), rng.choice((1, 2, 3))))
    chain = [lat.top]
    for _ in range(m - 1):
        below = [e for e in range(lat.n) if lat.leq[e, chain[0]]]
        chain.insert(0, rng.choice(below))
    steps = list(zip(sorted(levels), chain))
    return make_spectral_family(lat, steps)


def random_ideal(rng: random.Random, ol: OrthoLattice) -> tuple[int, ...]:
    """Generators of a proper ideal; sometimes two, sometimes just zero."""
    proper = [e for e in range(ol.n) if e != ol.top]
    a = rng.choice(proper)
    if rng.random() < 0.5:
        for _ in range(20):
            b = rng.choice(proper)
            if ol.join[a, b] != ol.top:
                return (a, int(b))
    return (a,)


def random_point_function(rng: random.Random,
                          size: int) -> tuple[Fraction, ...]:
    """Exact rational values; repeats are deliberate."""
    return tuple(Fraction(rng.randint(-4, 8), rng.choice((1, 2, 4)))
                 for _ in range(size))


def random_diagonal(rng: random.Random,
                    dimension: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Coefficient and coordinate-list pairs; supports may overlap."""
    if dimension < 1:
        raise ParseError("dimension must be positive")
    terms = []
    for _ in range(rng.randint(1, 3)):
        coeff = Fraction(0)
        while coeff == 0:
            coeff = Fraction(rng.randint(-5, 9), rng.choice((1, 2, 3)))
        mask = rng.randint(1, (1 << dimension) - 1)
        coords = tuple(i for i in range(dimension) if mask >> i & 1)
        terms.append((coeff, coords))
    return terms


def random_subset(rng: random.Random, lat: Lattice,
                  k: int | None = None) -> tuple[int, ...]:
    """Distinct elements, ascending, for closure-operator checks."""
    if k is None:
        k = rng.randint(1, lat.n)
    return tuple(sorted(rng.sample(range(lat.n), k)))
