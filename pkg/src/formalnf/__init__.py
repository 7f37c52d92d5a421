"""Exact Poincaré–Dulac and second-order normal forms of formal germs."""

__version__ = "0.1.0"

from .exactnum import GaussianRational, Rational, parse_gaussian, sqrt_if_exact
from .series import (
    FormalTransformation,
    HomogeneousMap,
    LinearMap,
    compose_truncated,
    homogeneous_term,
    invert_truncated,
    polarize_directional,
    polarize_full,
)
from .operators import (
    FischerMetric,
    LLambda,
    LPLambda,
    OperatorMatrix,
    SubspaceBasis,
    fischer_inner,
    image_complement,
    is_resonant,
    kernel_basis,
    l_lambda,
    l_p_lambda,
    operator_matrix,
    resonant_basis,
)
from .renormalizer import (
    NormalFormResult,
    infinite_order_condition,
    normalize,
    pd_normalize,
    second_order_normalize,
    verify_conjugacy,
)
from .catalog import CaseId, expected_complement, quadratic_case, resonance_sets, shape_check

__all__ = [
    "__version__",
    "GaussianRational",
    "Rational",
    "parse_gaussian",
    "sqrt_if_exact",
    "FormalTransformation",
    "HomogeneousMap",
    "LinearMap",
    "compose_truncated",
    "homogeneous_term",
    "invert_truncated",
    "polarize_directional",
    "polarize_full",
    "FischerMetric",
    "LLambda",
    "LPLambda",
    "OperatorMatrix",
    "SubspaceBasis",
    "fischer_inner",
    "image_complement",
    "is_resonant",
    "kernel_basis",
    "l_lambda",
    "l_p_lambda",
    "operator_matrix",
    "resonant_basis",
    "NormalFormResult",
    "infinite_order_condition",
    "normalize",
    "pd_normalize",
    "second_order_normalize",
    "verify_conjugacy",
    "CaseId",
    "expected_complement",
    "quadratic_case",
    "resonance_sets",
    "shape_check",
]
