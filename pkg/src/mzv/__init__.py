"""Exact regularized values of generalized Euler-Zagier multiple zeta-functions
at non-positive integers, with a numerical continuation oracle for cross-checks.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .arith import GaussianRational, bernoulli_number, bernoulli_polynomial, modified_bernoulli_number
from .closed_form import (
    EvaluationReport,
    SpecialValueQuery,
    YClosedFormQuery,
    a_coefficient,
    theorem1_value,
    theorem1_via_raabe_identity,
    y_closed_form,
    y_theta_value,
)
from .combinatorics import GLimitInput, IndexSubset, compute_K, compute_L, enumerate_J, g_at_zero, g_sample
from .errors import CapacityError, DomainError, MZVError, NearPoleError, OracleError, PoleError
from .oracle import (
    BlockedSeriesSpec,
    ContinuationConfig,
    LaurentExpansion,
    continue_eval,
    eval_in_domain,
    laurent_along_direction,
    quadrature_Y,
    reduce_once,
)
from .raabe import bernoulli_lift, cube_average

__all__ = [
    "__version__",
    "GaussianRational",
    "bernoulli_number",
    "bernoulli_polynomial",
    "modified_bernoulli_number",
    "EvaluationReport",
    "SpecialValueQuery",
    "YClosedFormQuery",
    "a_coefficient",
    "theorem1_value",
    "theorem1_via_raabe_identity",
    "y_closed_form",
    "y_theta_value",
    "GLimitInput",
    "IndexSubset",
    "compute_K",
    "compute_L",
    "enumerate_J",
    "g_at_zero",
    "g_sample",
    "CapacityError",
    "DomainError",
    "MZVError",
    "NearPoleError",
    "OracleError",
    "PoleError",
    "BlockedSeriesSpec",
    "ContinuationConfig",
    "LaurentExpansion",
    "continue_eval",
    "eval_in_domain",
    "laurent_along_direction",
    "quadrature_Y",
    "reduce_once",
    "bernoulli_lift",
    "cube_average",
]
