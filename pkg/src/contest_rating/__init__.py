"""Rating-protocol design for a two-worker crowdsourcing contest platform.

The package models two long-lived workers who repeatedly compete for a
requester's task, may sabotage each other, and are disciplined only
through a binary public rating updated from noisy observations of their
play. It provides the stage-game closed forms, monitored expected
payoffs, rating-chain analysis, sustainability (one-shot deviation)
checks, the requester's protocol optimizer with a brute-force oracle, a
seeded Monte-Carlo simulator, and a CLI around all of it.
"""

from .designer import (
    BasePriceReport,
    CASE_ALPHA_ONE,
    CASE_BETA_ONE,
    CaseResult,
    DesignerConfig,
    DesignOutcome,
    OUTCOME_CSV_HEADER,
    OracleResult,
    boundary_case_optimum,
    brute_force_oracle,
    closed_form_case_utility,
    optimize,
    outcome_csv_row,
    zero_base_price_check,
)
from .errors import (
    ConfigError,
    DegenerateChain,
    DegenerateDenominator,
    DomainError,
    Infeasible,
    UnsupportedStrategy,
)
from .incentives import (
    ConstraintCoefficients,
    FeasibilityBand,
    LifetimeValues,
    SustainabilityReport,
    compliance_margins,
    constraint_coefficients,
    deviation_value,
    feasibility_band,
    is_sustainable,
    lifetime_values,
    lifetime_values_iterative,
    one_period_values,
    rating_gap,
)
from .params import (
    DesignParams,
    IntrinsicParams,
    Rating,
    STRATEGIES,
    Strategy,
    ValidationReport,
    default_params,
    design_violations,
    error_aggregate,
    load_config,
    parse_config,
    validate,
    with_params,
)
from .payoffs import (
    against_compliant,
    expected_payoff,
    payoff_line,
    perfect_monitoring_matrix,
    rating_payoff,
    realized_mix,
)
from .ratings import (
    StationaryDistribution,
    evolve,
    observed_compliant_prob,
    rating_update_rule,
    stationary_distribution,
    transition_kernel,
)
from .requester import (
    SocialUtility,
    iso_utility_slope,
    pair_utility,
    per_winner_utility,
    social_utility,
    social_utility_closed,
)
from .simulate import Estimate, SimConfig, SimResult, run_chain, run_utility
from .stage_game import (
    CASES,
    McStagePayoffs,
    even_match_payoff,
    first_stage_matrix,
    first_stage_payoffs,
    productivity_mc,
    solo_effort_payoff,
)

__all__ = [name for name in dir() if not name.startswith("_")]
