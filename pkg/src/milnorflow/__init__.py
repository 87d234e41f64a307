"""Curvature, algebraic solitons and flows of left-invariant metrics on 3D unimodular Lie groups."""

from .algebra import (
    DiagOperator,
    GroupKind,
    MilnorMetric,
    StructureConstants,
    bracket,
    derivation_residual,
    e11_canonical_form,
    is_diagonal_derivation,
    is_nice_basis,
    nonzero_brackets,
    normalize_metric,
    structure_of,
)
from .curvature import (
    CurvatureReport,
    DiagTensor,
    Variance,
    connection_coefficients,
    cross_curvature,
    cross_curvature_via_einstein,
    curvature_report,
    raise_index,
    rg2_tensor,
    ricci,
    ricci_signature,
    rm_squared,
    scalar_curvature,
    scale_metric,
    sectional_curvatures,
    tilde_constants,
)
from .errors import DomainError, SingularEinsteinError, SingularTimeError, VarianceError

__version__ = "0.1.0"

__all__ = [
    "DiagOperator",
    "GroupKind",
    "MilnorMetric",
    "StructureConstants",
    "bracket",
    "derivation_residual",
    "e11_canonical_form",
    "is_diagonal_derivation",
    "is_nice_basis",
    "nonzero_brackets",
    "normalize_metric",
    "structure_of",
    "CurvatureReport",
    "DiagTensor",
    "Variance",
    "connection_coefficients",
    "cross_curvature",
    "cross_curvature_via_einstein",
    "curvature_report",
    "raise_index",
    "rg2_tensor",
    "ricci",
    "ricci_signature",
    "rm_squared",
    "scalar_curvature",
    "scale_metric",
    "sectional_curvatures",
    "tilde_constants",
    "DomainError",
    "SingularEinsteinError",
    "SingularTimeError",
    "VarianceError",
]
