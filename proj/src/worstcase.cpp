#include "dmdp/worstcase.hpp"

#include <json.hpp>

namespace dmdp {

namespace {

void require_n(int n) {
    if (n < 1) throw std::invalid_argument("family parameter must be positive");
}

}  // namespace

WorstCaseLayout::WorstCaseLayout(int n) : n(n) { require_n(n); }

Vertex WorstCaseLayout::top(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("top index out of range");
    return i == 1 ? 0 : static_cast<Vertex>(n + i - 1);
}

Vertex WorstCaseLayout::lane(int k) const {
    if (k < 1 || k > n) throw std::invalid_argument("lane index out of range");
    return static_cast<Vertex>(k);
}

Weight lane_weight(int n) {
    require_n(n);
    return checked_mul(n + 1, n + 1);
}

Weight loop_weight(int n, int i) {
    require_n(n);
    if (i < 1 || i > n) throw std::invalid_argument("loop index out of range");
    return checked_add(checked_mul(n, n + 1), i);
}

std::int64_t edge_count_closed_form(int n) {
    require_n(n);
    return (5LL * n * n + n) / 2;
}

std::int64_t edge_count_alt_closed_form(int n) {
    require_n(n);
    return (3LL * n * n + n) / 2;
}

Dmdp worst_case_instance(int n) {
    require_n(n);
    WorstCaseLayout ly(n);
    std::vector<std::string> names(static_cast<std::size_t>(2 * n));
    for (int i = 1; i <= n; ++i) {
        names[static_cast<std::size_t>(ly.top(i))] = "t" + std::to_string(i);
        names[static_cast<std::size_t>(ly.lane(i))] = "b" + std::to_string(i);
    }
    Weight heavy = lane_weight(n);
    std::vector<std::tuple<Vertex, Vertex, Weight>> edges;
    edges.reserve(static_cast<std::size_t>(edge_count_closed_form(n)));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j < i; ++j) edges.emplace_back(ly.lane(i), ly.lane(j), heavy);
        for (int j = 1; j <= n; ++j) edges.emplace_back(ly.lane(i), ly.top(j), 0);
        for (int j = 1; j <= i; ++j) edges.emplace_back(ly.top(i), ly.lane(j), heavy);
        for (int j = 1; j < i; ++j) edges.emplace_back(ly.top(i), ly.top(j), 0);
        edges.emplace_back(ly.top(i), ly.top(i), loop_weight(n, i));
    }
    return Dmdp(std::move(names), edges);
}

Policy funnel_policy(int n, int i) {
    require_n(n);
    if (i < 1 || i > n) throw std::invalid_argument("funnel index out of range");
    WorstCaseLayout ly(n);
    Policy p(static_cast<std::size_t>(2 * n));
    for (int k = 1; k <= n; ++k) {
        Vertex v = ly.top(k);
        if (k <= i - 2)
            p[static_cast<std::size_t>(v)] = ly.lane(k);
        else if (k == i - 1 || k == i)
            p[static_cast<std::size_t>(v)] = v;
        else
            p[static_cast<std::size_t>(v)] = ly.top(i);
    }
    for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(ly.lane(k))] = ly.top(i);
    return p;
}

Policy lane_policy(int n, int i, int j) {
    require_n(n);
    if (i < 1 || i > n) throw std::invalid_argument("lane-policy loop index out of range");
    if (j < 1 || j > i + 1) throw std::invalid_argument("lane-policy depth out of range");
    WorstCaseLayout ly(n);
    Policy p(static_cast<std::size_t>(2 * n));
    for (int k = 1; k <= n; ++k) {
        Vertex v = ly.top(k);
        if (k == i)
            p[static_cast<std::size_t>(v)] = v;
        else if (k <= j || k <= i - 2)
            // Once a top vertex holds the lane edge to its own position it
            // keeps it: the edge stays among the appraisal maximizers and
            // ties favor the incumbent. Hence k <= i-2 at every depth.
            p[static_cast<std::size_t>(v)] = ly.lane(k);
        else
            p[static_cast<std::size_t>(v)] = ly.lane(j);
    }
    for (int k = 1; k <= n; ++k) {
        Vertex v = ly.lane(k);
        if (k == 1)
            p[static_cast<std::size_t>(v)] = ly.top(i);
        else if (k <= j)
            p[static_cast<std::size_t>(v)] = ly.lane(k - 1);
        else
            p[static_cast<std::size_t>(v)] = ly.lane(j);
    }
    return p;
}

Policy takeover_policy(int n, int i) {
    require_n(n);
    if (i < 1 || i > n - 1) throw std::invalid_argument("takeover index out of range");
    WorstCaseLayout ly(n);
    Policy p(static_cast<std::size_t>(2 * n));
    for (int k = 1; k <= n; ++k) {
        Vertex v = ly.top(k);
        if (k == i || k == i + 1)
            p[static_cast<std::size_t>(v)] = v;
        else if (k < i)
            p[static_cast<std::size_t>(v)] = ly.lane(k);
        else
            p[static_cast<std::size_t>(v)] = ly.lane(i + 2);
    }
    for (int k = 1; k <= n; ++k) {
        Vertex v = ly.lane(k);
        if (k == 1)
            p[static_cast<std::size_t>(v)] = ly.top(i);
        else if (k <= i + 2)  // clamped by k <= n; b_{n+1} does not exist
            p[static_cast<std::size_t>(v)] = ly.lane(k - 1);
        else
            p[static_cast<std::size_t>(v)] = ly.lane(i + 2);
    }
    return p;
}

std::vector<Policy> expected_policy_sequence(int n) {
    require_n(n);
    std::vector<Policy> seq;
    seq.reserve(static_cast<std::size_t>(expected_iterations(n)));
    for (int i = 1; i < n; ++i) {
        seq.push_back(funnel_policy(n, i));
        for (int j = 1; j <= i + 1; ++j) seq.push_back(lane_policy(n, i, j));
        seq.push_back(takeover_policy(n, i));
    }
    seq.push_back(funnel_policy(n, n));
    for (int j = 1; j <= n - 1; ++j) seq.push_back(lane_policy(n, n, j));
    return seq;
}

std::int64_t expected_iterations(int n) {
    require_n(n);
    std::int64_t q = checked_add(checked_mul(n, n), checked_sub(checked_mul(7, n), 6));
    if (q % 2 != 0) throw std::logic_error("iteration formula must be even");
    return q / 2;
}

InequalityReport check_weight_inequalities(int n) {
    require_n(n);
    InequalityReport report;
    report.n = n;
    const Weight heavy = lane_weight(n);
    auto note = [&](const std::string& s) { report.violations.push_back(s); };

    // heavy > loop(n) > ... > loop(1) > 0
    if (!(heavy > loop_weight(n, n)))
        note("lane weight does not exceed the largest loop reward");
    for (int i = n; i >= 2; --i)
        if (!(loop_weight(n, i) > loop_weight(n, i - 1)))
            note("loop rewards not strictly increasing at i=" + std::to_string(i));
    if (!(loop_weight(n, 1) > 0)) note("smallest loop reward not positive");

    // k*heavy < (k+1)*loop(i) for 0 <= k <= n
    for (int k = 0; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            if (!(checked_mul(k, heavy) < checked_mul(k + 1, loop_weight(n, i))))
                note("k lane edges beat k+1 loop steps at k=" + std::to_string(k) +
                     ", i=" + std::to_string(i));

    // (k-1)*heavy - k*loop(i) < k*heavy - (k+1)*loop(i) for k <= n+1
    for (int k = 0; k <= n + 1; ++k)
        for (int i = 1; i <= n; ++i) {
            auto lhs = checked_sub(checked_mul(k - 1, heavy), checked_mul(k, loop_weight(n, i)));
            auto rhs = checked_sub(checked_mul(k, heavy), checked_mul(k + 1, loop_weight(n, i)));
            if (!(lhs < rhs))
                note("lane gain not monotone at k=" + std::to_string(k) + ", i=" + std::to_string(i));
        }

    report.all_hold = report.violations.empty();
    return report;
}

namespace {

std::string policy_to_string(const Dmdp& d, const Policy& p) {
    std::string out;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (!out.empty()) out += " ";
        out += d.name(static_cast<Vertex>(v)) + ">" + d.name(p[v]);
    }
    return out;
}

}  // namespace

TransitionReport verify_transitions(int n) {
    require_n(n);
    TransitionReport report;
    report.n = n;
    Dmdp d = worst_case_instance(n);

    auto run_item = [&](const std::string& name, auto&& cases) {
        TransitionCheck check;
        check.name = name;
        for (const auto& [label, from, to] : cases) {
            ++check.checked;
            Policy got = bellman(d, from).policy;
            if (got != to) {
                check.pass = false;
                check.counterexample = label + ": got " + policy_to_string(d, got) +
                                       ", expected " + policy_to_string(d, to);
                break;
            }
        }
        report.items.push_back(std::move(check));
    };

    using Case = std::tuple<std::string, Policy, Policy>;

    if (n == 1) {
        // The only policy in the sequence is its own fixpoint.
        run_item("terminal-fixpoint", std::vector<Case>{
                     {"i=1", funnel_policy(1, 1), funnel_policy(1, 1)}});
        report.all_pass = report.items[0].pass;
        return report;
    }

    std::vector<Case> cases;
    for (int i = 1; i <= n; ++i)
        cases.emplace_back("i=" + std::to_string(i), funnel_policy(n, i), lane_policy(n, i, 1));
    run_item("funnel-to-lane", cases);

    cases.clear();
    for (int i = 1; i <= n; ++i) {
        int jmax = (i <= n - 1) ? i : n - 2;
        for (int j = 1; j <= jmax; ++j)
            cases.emplace_back("i=" + std::to_string(i) + ",j=" + std::to_string(j),
                               lane_policy(n, i, j), lane_policy(n, i, j + 1));
    }
    run_item("lane-advance", cases);

    cases.clear();
    for (int i = 1; i <= n - 1; ++i)
        cases.emplace_back("i=" + std::to_string(i), lane_policy(n, i, i + 1), takeover_policy(n, i));
    run_item("lane-to-takeover", cases);

    cases.clear();
    for (int i = 1; i <= n - 1; ++i)
        cases.emplace_back("i=" + std::to_string(i), takeover_policy(n, i), funnel_policy(n, i + 1));
    run_item("takeover-to-funnel", cases);

    run_item("terminal-fixpoint", std::vector<Case>{
                 {"i=n", lane_policy(n, n, n - 1), lane_policy(n, n, n - 1)}});

    report.all_pass = true;
    for (const auto& item : report.items) report.all_pass = report.all_pass && item.pass;
    return report;
}

SequenceReport verify_trajectory(int n, InitMode mode) {
    require_n(n);
    if (mode == InitMode::GreedyWeight && n < 2)
        throw std::invalid_argument("greedy-weight trajectory check needs n >= 2");

    Dmdp d = worst_case_instance(n);
    std::vector<Policy> expected_seq = expected_policy_sequence(n);
    std::int64_t expected = expected_iterations(n);
    if (mode == InitMode::GreedyWeight) {
        // One step from the greedy policy lands at the sequence's third
        // entry, so the whole run is one iteration shorter.
        std::vector<Policy> tail(expected_seq.begin() + 2, expected_seq.end());
        expected_seq = std::move(tail);
        expected_seq.insert(expected_seq.begin(), initial_policy(d, InitMode::GreedyWeight));
        expected -= 1;
    }

    IterationTrace trace = run_howard(d, initial_policy(d, mode));

    SequenceReport report;
    report.n = n;
    report.init = mode;
    report.iterations = trace.iterations;
    report.expected = expected;
    report.matched = true;
    std::size_t steps = std::max(trace.steps.size(), expected_seq.size());
    for (std::size_t k = 0; k < steps; ++k) {
        const Policy* actual = k < trace.steps.size() ? &trace.steps[k].policy : nullptr;
        const Policy* want = k < expected_seq.size() ? &expected_seq[k] : nullptr;
        if (!actual || !want || *actual != *want) {
            report.matched = false;
            SequenceReport::Divergence div;
            div.step = static_cast<std::int64_t>(k);
            if (want) div.expected = *want;
            if (actual) div.actual = *actual;
            report.first_divergence = std::move(div);
            break;
        }
    }
    if (trace.iterations != expected) report.matched = false;
    return report;
}

std::string SequenceReport::json() const {
    nlohmann::json j;
    j["n"] = n;
    j["init"] = init == InitMode::LowestIndex ? "lowest" : "greedy";
    j["matched"] = matched;
    j["iterations"] = iterations;
    j["expected"] = expected;
    if (first_divergence) {
        j["first_divergence"] = {{"step", first_divergence->step},
                                 {"expected", first_divergence->expected},
                                 {"actual", first_divergence->actual}};
    } else {
        j["first_divergence"] = nullptr;
    }
    return j.dump();
}

}  // namespace dmdp
