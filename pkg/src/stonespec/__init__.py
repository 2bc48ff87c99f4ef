"""Finite lattice spectra: quasipoints, sectors, quotients and observables.

The package studies bounded finite lattices through their maximal
filters.  Construction and classification live in ``lattice`` and
``ortho``; the filter spectrum with its basis sets in ``spectrum``;
Boolean-quotient correspondences in ``quotient``; finite spaces, their
regular opens and Baire structure in ``topology``; step families,
observable functions and diagonal-algebra characters in ``spectral``;
presheaves, stalks and sheafification in ``presheaf``.  Seeded random
structures are in ``randgen``; the ``stonespec`` console script fronts
the whole thing.

The names re-exported below are the stable surface; everything else is
reachable through the submodules.
"""

from .corpus import CORPUS_NAMES, boolean_algebra, chain, corpus, \
    horizontal_sum, mo_lattice
from .errors import (CheckFailed, InputError, InternalContradiction,
                     ParseError, StonespecError)
from .lattice import Lattice, classify, from_covers, from_leq, lattice_dot, \
    load_lattice
from .ortho import (OrthoLattice, attach_ortho, boolean_quasipoints,
                    boolean_sectors, center_and_support, commutant, commutes,
                    is_orthomodular, load_ortho, nakamura_report)
from .presheaf import (Presheaf, etale_and_sections, horizontal_sum_triviality,
                       is_complete, make_presheaf, sheafify, stalk)
from .quotient import close_ideal, quotient_boolean, spectrum_correspondence
from .spectral import (SpectralFamily, continuous_correspondence,
                       family_from_increasing, gelfand_finite,
                       increasing_table, make_spectral_family,
                       measurable_correspondence, observable_function,
                       observable_roundtrip, spectral_measure_from_family,
                       uniqueness_scan)
from .spectrum import (basis_set, closure_union_check,
                       distributivity_equivalences, dual_ideals, points,
                       quasipoints, spectrum_dot)
from .topology import (FiniteSpace, builtin_space, enumerate_topologies,
                       load_space, meagre_baire, quasipoint_analysis,
                       regular_open_lattice, rho_map, topo_ops)

__version__ = "0.1.0"

__all__ = [
    "CORPUS_NAMES", "CheckFailed", "FiniteSpace", "InputError",
    "InternalContradiction", "Lattice", "OrthoLattice", "ParseError",
    "Presheaf", "SpectralFamily", "StonespecError", "attach_ortho",
    "basis_set", "boolean_algebra", "boolean_quasipoints", "boolean_sectors",
    "builtin_space", "center_and_support", "chain", "classify", "close_ideal",
    "closure_union_check", "commutant", "commutes",
    "continuous_correspondence", "corpus", "distributivity_equivalences",
    "dual_ideals", "enumerate_topologies", "etale_and_sections",
    "family_from_increasing", "from_covers", "from_leq", "gelfand_finite",
    "horizontal_sum", "horizontal_sum_triviality", "increasing_table",
    "is_complete", "is_orthomodular", "lattice_dot", "load_lattice",
    "load_ortho", "load_space", "make_presheaf", "make_spectral_family",
    "meagre_baire", "measurable_correspondence", "mo_lattice",
    "nakamura_report", "observable_function", "observable_roundtrip",
    "points", "quasipoint_analysis", "quasipoints", "quotient_boolean",
    "regular_open_lattice", "rho_map", "sheafify",
    "spectral_measure_from_family", "spectrum_correspondence", "spectrum_dot",
    "stalk", "topo_ops", "uniqueness_scan",
]
