"""Toolkit for the jammed two-sender binary channel with shared modulation resources.

Closed-form capacities, the CHSH-derived modulation statistics, admissible
jammer strategies, block simulation and Monte Carlo coding experiments.
"""

__version__ = "0.1.0"

from .capacity import (
    CLASSICAL_BASE_FLIP,
    EPR_BASE_FLIP,
    PR_BASE_FLIP,
    CapacityQuery,
    CompoundClassQuery,
    SweepRow,
    SymmetrizerFamily,
    avcei_capacity,
    capacity_monotonicity_check,
    compound_capacity,
    effective_noise_level,
    rate_endpoint,
    separation_sweep,
    symmetrizability_cost,
)
from .channel import BlockTrace, effective_kernel, exact_output_distribution, transmit_block
from .coding import (
    Code,
    SuccessEstimate,
    analytic_majority_success,
    estimate_success,
    exact_success,
    repetition_code,
    wilson_interval,
)
from .correlations import (
    BoxStrength,
    Correlation,
    DeterministicModulator,
    LocalCorrelationSpec,
    QuantumModulation,
    all_deterministic_modulators,
    chsh_win_probability,
    deterministic_correlation,
    deterministic_flip_fraction,
    effective_flip_prob,
    epr_correlation,
    epr_modulation,
    is_nonsignalling,
    local_correlation,
    measurement_probability,
    pr_box,
)
from .info import (
    UNIFORM,
    BinaryChannel,
    BitDistribution,
    DeltaTypicalSet,
    MacKernel,
    TypeClass,
    adder,
    binary_entropy,
    bsc,
    compose,
    mutual_information,
    sample_iid,
    type_class,
    weight,
)
from .jamming import (
    BudgetViolationError,
    GreedyJammer,
    JammerBudget,
    NoiseProfile,
    SizingError,
    TypicalJammer,
    TypicalJammerParams,
    check_admissible,
    chi,
    greedy_jammer,
    induced_state_distribution,
    lambda_weights,
    noise_profile,
    type_mixture,
    typical_jammer,
    typical_params_from_rates,
)
from .rng import stream

__all__ = [name for name in dir() if not name.startswith("_")]
