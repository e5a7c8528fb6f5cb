#ifndef DMDP_WORSTCASE_HPP
#define DMDP_WORSTCASE_HPP

#include <optional>
#include <string>
#include <vector>

#include "dmdp/howard.hpp"

namespace dmdp {

/// Vertex layout of the hard family: 2n vertices named t1..tn (top row,
/// each carrying a self-loop) and b1..bn (the deceleration lane), ordered
/// (t1, b1, ..., bn, t2, ..., tn). The order doubles as the tie-breaking
/// index, so it is load-bearing.
struct WorstCaseLayout {
    int n;

    explicit WorstCaseLayout(int n);

    Vertex top(int i) const;   // t_i, 1-based
    Vertex lane(int k) const;  // b_k, 1-based
};

/// Heavy weight carried by every lane-entering edge: (n+1)^2.
Weight lane_weight(int n);

/// Self-loop weight of t_i: n(n+1) + i.
Weight loop_weight(int n, int i);

/// Number of edges the construction actually produces: (5n^2+n)/2.
std::int64_t edge_count_closed_form(int n);

/// Alternative closed form (3n^2+n)/2 that circulates for this family; it
/// does not match the construction, and verify reports surface both.
std::int64_t edge_count_alt_closed_form(int n);

/// The 2n-vertex instance on which policy iteration needs a quadratic
/// number of steps. Top-row self-loops are the only profitable cycles and
/// their rewards increase with the index; the lane edges are heavier than
/// any loop, which is what keeps luring the improvement step away.
Dmdp worst_case_instance(int n);

/// Every run funnels straight into loop i; t_{i-1} still sits on its own
/// loop and the lower top vertices enter the lane at their own position.
Policy funnel_policy(int n, int i);

/// Lane built up to depth j while everything drains into loop i. Top
/// vertices keep the lane edge to their own position once they have it
/// (k <= i-2); ties favor the incumbent choice, so those edges persist
/// through the whole lane-advance chain.
Policy lane_policy(int n, int i, int j);

/// Loop i+1 has just been taken while the lane is at full depth; the next
/// improvement step discards all lane progress.
Policy takeover_policy(int n, int i);

/// The exact policy sequence the improvement loop visits when started from
/// the lowest-index policy; its length is expected_iterations(n).
std::vector<Policy> expected_policy_sequence(int n);

/// (n^2 + 7n - 6) / 2, checked to be integral.
std::int64_t expected_iterations(int n);

struct InequalityReport {
    int n = 0;
    bool all_hold = false;
    std::vector<std::string> violations;
};

/// The weight-order facts the trajectory relies on: the lane weight beats
/// every loop reward, loop rewards increase with the index, and k lane
/// edges are never worth k+1 loop steps.
InequalityReport check_weight_inequalities(int n);

struct TransitionCheck {
    std::string name;
    int checked = 0;
    bool pass = true;
    std::string counterexample;  // empty when pass
};

struct TransitionReport {
    int n = 0;
    bool all_pass = false;
    std::vector<TransitionCheck> items;
};

/// Applies the improvement step to every policy of the three families over
/// its full index range and checks it yields the expected successor policy.
TransitionReport verify_transitions(int n);

struct SequenceReport {
    struct Divergence {
        std::int64_t step = 0;
        Policy expected;
        Policy actual;
    };

    int n = 0;
    InitMode init = InitMode::LowestIndex;
    bool matched = false;
    std::int64_t iterations = 0;
    std::int64_t expected = 0;
    std::optional<Divergence> first_divergence;

    /// {"n":…,"init":…,"matched":…,"iterations":…,"expected":…,
    ///  "first_divergence":…}
    std::string json() const;
};

/// Runs the full iteration from the given initialization and compares the
/// whole visited trace against the expected sequence (greedy mode expects
/// one fewer iteration, entering the sequence at its third policy).
/// Greedy mode requires n >= 2.
SequenceReport verify_trajectory(int n, InitMode mode);

}  // namespace dmdp

#endif
