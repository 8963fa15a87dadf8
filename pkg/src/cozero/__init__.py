"""Cozero-divisor graphs of Z_n[x]/(x^2) and their Laplacian spectra."""

from .eigen import EigensolverError, jacobi_eigh
from .families import DegenerateParameterError, UnsupportedFamilyError, family_of
from .graph import CozeroGraph, build_graph, connectivity_report, laplacian, oracle_spectrum
from .lattice import IdealLattice, IdealRecord, class_of, enumerate_ideals, reduced_graph
from .multiset import SpectrumMultiset
from .ring import (
    EnumerationCapError,
    PolyElement,
    RingContext,
    crt_split,
    in_ideal,
    is_unit,
    mul,
    principal_ideal,
)
from .spectrum import (
    JoinInstance,
    build_quotient_matrix,
    closed_form_spectrum,
    compare_multisets,
    extremes,
    join_spectrum,
    structural_spectrum,
)

__version__ = "0.1.0"
