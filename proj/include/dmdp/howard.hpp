#ifndef DMDP_HOWARD_HPP
#define DMDP_HOWARD_HPP

#include <optional>
#include <string>
#include <vector>

#include "dmdp/eval.hpp"

namespace dmdp {

/// Rank of an edge under a fixed evaluation: (val of the successor,
/// weight - val + pot of the successor), compared lexicographically.
struct Appraisal {
    Rational gain;
    Rational bias;

    friend bool operator==(const Appraisal&, const Appraisal&) = default;
    friend bool operator<(const Appraisal& a, const Appraisal& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.bias < b.bias;
    }
    friend bool operator>(const Appraisal& a, const Appraisal& b) { return b < a; }
    friend bool operator<=(const Appraisal& a, const Appraisal& b) { return !(b < a); }
    friend bool operator>=(const Appraisal& a, const Appraisal& b) { return !(a < b); }
};

/// Appraises the edge (from, to) under evaluation `e`.
/// Throws std::invalid_argument if the edge does not exist.
Appraisal appraise(const Dmdp& d, const Evaluation& e, Vertex from, Vertex to);

struct BellmanResult {
    Policy policy;
    std::vector<Vertex> switched;  // ascending vertex indices that changed
};

/// One policy-improvement step: every vertex moves to its appraisal-maximal
/// successor. Ties keep the incumbent choice when it is among the maximizers
/// and otherwise go to the least-index maximizer.
BellmanResult bellman(const Dmdp& d, const Policy& s);

/// Same step with the evaluation of `s` already at hand.
BellmanResult bellman(const Dmdp& d, const Policy& s, const Evaluation& e);

enum class InitMode { LowestIndex, GreedyWeight };

/// LowestIndex: each vertex takes its least-index successor.
/// GreedyWeight: each vertex takes a maximum-weight edge, ties to the
/// least index.
Policy initial_policy(const Dmdp& d, InitMode mode);

struct TraceStep {
    Policy policy;
    Evaluation eval;
    std::vector<Vertex> switched;  // empty exactly at the final step
};

/// History of a policy-iteration run. `iterations` counts every Bellman
/// application including the final one that confirms the fixpoint, so it
/// equals steps.size().
struct IterationTrace {
    std::vector<TraceStep> steps;
    std::int64_t iterations = 0;

    const TraceStep& final_step() const { return steps.back(); }
};

class IterationLimitError : public std::runtime_error {
  public:
    IterationLimitError(std::int64_t limit, IterationTrace partial_trace)
        : std::runtime_error("iteration limit of " + std::to_string(limit) +
                             " exceeded without reaching a fixpoint"),
          partial(std::move(partial_trace)) {}

    IterationTrace partial;
};

/// Runs Howard's policy iteration from `start` until the Bellman operator
/// returns the policy unchanged. The default iteration guard is 4*n*m.
IterationTrace run_howard(const Dmdp& d, Policy start,
                          std::optional<std::int64_t> max_iterations = std::nullopt);

/// One JSON object per step:
/// {"k":.., "policy":[..], "val":["p/q",..], "pot":[..], "switched":[..]}
std::string trace_to_jsonl(const IterationTrace& trace);

}  // namespace dmdp

#endif
