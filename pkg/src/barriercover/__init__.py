"""Energy-optimal displacement of random sensors covering a unit barrier.

Exact expected displacement costs to an arbitrary power, the coverage
strategies achieving them, supporting combinatorial identities, a
grid-based minimum-cost oracle, and a reproducible experiment harness.
"""

__version__ = "0.1.0"

from .combinatorics import (CombTable, ExactScalar, beta_exact, binomial,
                            eulerian2, falling_factorial,
                            finite_difference_power, rising_factorial,
                            stirling1_unsigned, stirling2, verify_identities)
from .coverage import (CoverageParams, Deployment, PartitionParams,
                       StrategyOutcome, anchor_strategy, displacement_cost,
                       is_covered, partition_params, partition_strategy,
                       sample_deployment, stretched_anchor_strategy)
from .expectation import (AnchorCostResult, OrderStatSpec, anchor_position,
                          expected_anchor_cost_even,
                          expected_anchor_cost_integer,
                          expected_anchor_cost_numeric, holder_chain_check,
                          leading_constant, orderstat_moment)
from .experiments import (ExperimentSpec, SummaryStats, mc_summary,
                          run_convergence, run_occupancy_bound, run_partition,
                          run_scaling_check, run_threshold)
from .oracle import GridSpec, OracleResult, brute_force_small, min_cost_coverage_dp

__all__ = [
    "CombTable", "ExactScalar", "beta_exact", "binomial", "eulerian2",
    "falling_factorial", "finite_difference_power", "rising_factorial",
    "stirling1_unsigned", "stirling2", "verify_identities",
    "CoverageParams", "Deployment", "PartitionParams", "StrategyOutcome",
    "anchor_strategy", "displacement_cost", "is_covered", "partition_params",
    "partition_strategy", "sample_deployment", "stretched_anchor_strategy",
    "AnchorCostResult", "OrderStatSpec", "anchor_position",
    "expected_anchor_cost_even", "expected_anchor_cost_integer",
    "expected_anchor_cost_numeric", "holder_chain_check", "leading_constant",
    "orderstat_moment",
    "ExperimentSpec", "SummaryStats", "mc_summary", "run_convergence",
    "run_occupancy_bound", "run_partition", "run_scaling_check", "run_threshold",
    "GridSpec", "OracleResult", "brute_force_small", "min_cost_coverage_dp",
]
