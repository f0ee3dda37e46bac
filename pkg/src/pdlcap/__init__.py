"""Coherent information and capacity lower bounds for lossy polarization channels."""

from .channel import (
    ChannelParams,
    Classification,
    apply_gamma,
    apply_gamma_complement,
    apply_tensor_power,
    apply_tensor_power_blocked,
    classify,
    coherent_information_oracle,
    kraus_operators,
)
from .closedform import (
    Q1Solution,
    SuperadditivityReport,
    asymptotic_benefit,
    asymptotic_rate_benefit,
    benefit_n,
    doubling_series_bound,
    ic_diagonal,
    ic_rho2,
    ic_xi4,
    n_threshold,
    q4_modified_benefit,
    report,
    solve_q1,
    w_asymptotic,
    w_n,
)
from .errors import DomainError, PSDViolationError, ResourceLimitError, ValidationError
from .qmatrix import BasisLabel, DensityMatrix, kron, partial_trace, von_neumann_entropy
from .states import DiagonalQubitState, product_power, rho2, rho_n, w_state, xi4, xi_2n

__version__ = "0.1.0"
