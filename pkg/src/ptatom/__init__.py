"""Exact asymptotic energy levels of second-period iso-electronic atoms.

The package builds the projected Hamiltonian on the degenerate ground space of
the non-interacting atom for N = 1..10 electrons and diagonalizes it exactly,
giving levels of the form ``a Z^2 + (b + c sqrt(d)) Z``.
"""

from .determinant_algebra import (
    DeterminantExpansion,
    DomainError,
    GaussianRational,
    OrbitalMap,
    annihilate,
    apply_one_body,
    apply_two_body_product,
    create,
    dual,
)
from .hamiltonian import SectorBlock, SymbolicElement, php_block, sector_vee_matrix, slater_condon
from .integrals import IntegralSymbol, UnknownIntegralError, derived_value, exact_value, oracle_value
from .spectra import (
    EnergyLevel,
    compare_experiment,
    diagonalize_block,
    gap_curves,
    ground_state_report,
    hund_counterexample_report,
    level_list,
    load_experiment,
    symmetric_eigenpairs,
)
from .surd import QuadraticSurd, ScaledSurd
from .symmetry import (
    SymmetrySector,
    TermSymbol,
    assemble_operator,
    eliminate_core,
    simultaneous_eigenspaces,
    term_symbol,
)

__all__ = [
    "DeterminantExpansion",
    "DomainError",
    "EnergyLevel",
    "GaussianRational",
    "IntegralSymbol",
    "OrbitalMap",
    "QuadraticSurd",
    "ScaledSurd",
    "SectorBlock",
    "SymbolicElement",
    "SymmetrySector",
    "TermSymbol",
    "UnknownIntegralError",
    "annihilate",
    "apply_one_body",
    "apply_two_body_product",
    "assemble_operator",
    "compare_experiment",
    "create",
    "derived_value",
    "diagonalize_block",
    "dual",
    "eliminate_core",
    "exact_value",
    "gap_curves",
    "ground_state_report",
    "hund_counterexample_report",
    "level_list",
    "load_experiment",
    "oracle_value",
    "php_block",
    "sector_vee_matrix",
    "simultaneous_eigenspaces",
    "slater_condon",
    "symmetric_eigenpairs",
    "term_symbol",
]
