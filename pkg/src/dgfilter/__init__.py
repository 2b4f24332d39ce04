"""Stable modal filtering for nodal discontinuous Galerkin methods on LGL grids."""

from .equations import (
    ProblemSpec,
    State,
    energy,
    initial_state,
    llf_flux,
    make_rhs,
    rhs_burgers_skew,
    rhs_conservative,
    rhs_variable_advection,
)
from .filters import (
    FilterMatrices,
    FilterSpec,
    auxiliary_filter,
    build_filter,
    contraction_check,
    contractivity_spectrum,
    cutoff_matrix,
    filter_matrix,
    quadrature_gram,
    sigma_exponential,
    verify_filter,
)
from .kernels import BACKEND, NUMBA_ENABLED
from .operators import (
    OperatorSet,
    build_operators,
    derivative_matrix,
    discrete_inner,
    discrete_norm,
    interpolation_matrix,
    legendre_normalized,
    lgl_nodes_weights,
    sbp_residual,
    vandermonde,
)
from .timestepping import FilterSchedule, RunConfig, Trajectory, integrate, rk3_step

__version__ = "0.1.0"
