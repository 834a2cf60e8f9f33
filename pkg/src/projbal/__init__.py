"""Numerical laboratory for balanced metrics on projectivized bundles."""

__version__ = "0.1.0"

from .errors import (
    AmbiguityError,
    ConditioningError,
    DomainError,
    EmptySectionSpaceError,
    PrecisionError,
    ProjbalError,
    SchemaError,
    ThresholdError,
    UnsupportedInputError,
    UnsupportedInputWarning,
)
from .fibercalc import (
    FiberOperatorMatrix,
    FixedSpaceDecomposition,
    HomogeneousFiberFunction,
    c_constant,
    c_effective,
    delta_tilde,
    f_of_phi,
    fiber_integral,
    fixed_space_projector,
    hat_inner_integral,
    homogeneous_integral,
    monomial_fiber_integral,
    pairing_matrix,
    pushforward_endo,
    t_operator,
)
from .scalars import QC, PiScalar
from .sympower import (
    HermitianForm,
    MultiIndex,
    SymEndomorphism,
    lambda_d,
    monomial_matrix,
    multi_indices,
    sym_dim,
    sym_lie,
    sym_metric,
    sym_rep,
)

__all__ = [
    "__version__",
    "AmbiguityError",
    "ConditioningError",
    "DomainError",
    "EmptySectionSpaceError",
    "PrecisionError",
    "ProjbalError",
    "SchemaError",
    "ThresholdError",
    "UnsupportedInputError",
    "UnsupportedInputWarning",
    "QC",
    "PiScalar",
    "FiberOperatorMatrix",
    "FixedSpaceDecomposition",
    "HomogeneousFiberFunction",
    "c_constant",
    "c_effective",
    "delta_tilde",
    "f_of_phi",
    "fiber_integral",
    "fixed_space_projector",
    "hat_inner_integral",
    "homogeneous_integral",
    "monomial_fiber_integral",
    "pairing_matrix",
    "pushforward_endo",
    "t_operator",
    "HermitianForm",
    "MultiIndex",
    "SymEndomorphism",
    "lambda_d",
    "monomial_matrix",
    "multi_indices",
    "sym_dim",
    "sym_lie",
    "sym_metric",
    "sym_rep",
]
