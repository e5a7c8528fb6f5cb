#ifndef DMDP_EVAL_HPP
#define DMDP_EVAL_HPP

#include <vector>

#include "dmdp/dmdp.hpp"
#include "dmdp/rational.hpp"

namespace dmdp {

/// The run induced by a policy from a start vertex: a repetition-free path
/// ending just before `head`, then the simple cycle starting at `head`.
/// `head` is the least-index vertex of the cycle, and its first occurrence
/// in the run is at position path.size().
struct LassoRun {
    std::vector<Vertex> path;
    std::vector<Vertex> cycle;
    Vertex head;
};

/// Exact per-vertex mean payoff (val) and potential (pot) of a policy.
/// Invariants: val is constant along policy edges; the (weight - val) sum
/// around each policy cycle is zero; pot is zero at each cycle head and
/// satisfies pot(v) = (w(v, s(v)) - val(v)) + pot(s(v)) everywhere else.
struct Evaluation {
    std::vector<Rational> val;
    std::vector<Rational> pot;
};

LassoRun decompose(const Dmdp& d, const Policy& s, Vertex start);

/// Evaluates all vertices in one pass over the policy's functional graph:
/// locate each cycle, rotate it to its least-index head, then push val
/// forward and pot backward along policy edges.
Evaluation evaluate(const Dmdp& d, const Policy& s);

/// Exact equality of all val and pot entries (as reduced rationals).
/// Throws std::invalid_argument when the vertex sets differ in size.
bool values_equal(const Evaluation& a, const Evaluation& b);

}  // namespace dmdp

#endif
