#ifndef DMDP_ORACLES_HPP
#define DMDP_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "dmdp/dmdp.hpp"
#include "dmdp/rational.hpp"

namespace dmdp {

struct OptimalValues {
    std::vector<Rational> val;  // per vertex: best achievable mean payoff
};

struct RandomSpec {
    int n = 1;
    int out_degree_min = 1;
    int out_degree_max = 1;
    Weight weight_min = 0;
    Weight weight_max = 0;
    std::uint64_t seed = 0;
};

/// Strongly connected components, listed so that every edge between distinct
/// components goes from a later-listed component to an earlier-listed one
/// (reverse topological order of the condensation).
std::vector<std::vector<Vertex>> strongly_connected_components(const Dmdp& d);

/// Exact maximum cycle mean within one strongly connected component, via the
/// maximum-weight-walk recurrence from a virtual source with zero-weight
/// edges to every member. Throws std::invalid_argument if the component has
/// no cycle (a single vertex without a self-loop).
Rational karp_max_mean_cycle(const Dmdp& d, const std::vector<Vertex>& component);

/// Per-vertex optimum: the best mean over all cyclic components reachable
/// from the vertex, each scored by karp_max_mean_cycle.
OptimalValues optimal_values(const Dmdp& d);

/// Exhaustive reference: enumerates every positional policy and takes the
/// per-vertex maximum of its values. Throws std::runtime_error when the
/// policy space exceeds `policy_space_limit`.
OptimalValues brute_force_values(const Dmdp& d, std::int64_t policy_space_limit = 1000000);

/// Seeded instance generator; a pure function of its parameters, identical
/// across platforms. Out-degrees are uniform in range, successors sampled
/// without replacement (self-loops allowed), weights uniform in range.
Dmdp random_dmdp(const RandomSpec& spec);

}  // namespace dmdp

#endif
