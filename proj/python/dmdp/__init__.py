"""Exact mean-payoff policy iteration for deterministic MDPs.

Thin python surface over the C++ core: instance parsing and generation,
exact policy evaluation, the improvement loop with trace access, the
independent optimal-value oracles, and the hard-family verification
helpers. All rational quantities cross the boundary as "p/q" strings;
``fractions.Fraction`` parses them directly.
"""

__version__ = "0.1.0"

from dmdp._core import (
    Dmdp,
    DmdpParseError,
    bellman,
    brute_force_values,
    check_weight_inequalities,
    decompose,
    evaluate,
    expected_iterations,
    expected_policy_sequence,
    funnel_policy,
    initial_policy,
    lane_policy,
    lane_weight,
    loop_weight,
    optimal_values,
    random_dmdp,
    run_howard,
    takeover_policy,
    verify_trajectory,
    verify_transitions,
    worst_case_instance,
)

__all__ = [
    "Dmdp",
    "DmdpParseError",
    "bellman",
    "brute_force_values",
    "check_weight_inequalities",
    "decompose",
    "evaluate",
    "expected_iterations",
    "expected_policy_sequence",
    "funnel_policy",
    "initial_policy",
    "lane_policy",
    "lane_weight",
    "loop_weight",
    "optimal_values",
    "random_dmdp",
    "run_howard",
    "solve",
    "takeover_policy",
    "verify_trajectory",
    "verify_transitions",
    "worst_case_instance",
]


def solve(dmdp, init="lowest", max_iterations=None):
    """Run policy iteration from a named initialization and return the
    summary dict (iterations, final_policy, val, pot)."""
    return run_howard(dmdp, initial_policy(dmdp, init), max_iterations)
