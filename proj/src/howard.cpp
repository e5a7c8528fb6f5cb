#include "dmdp/howard.hpp"

#include <json.hpp>

namespace dmdp {

Appraisal appraise(const Dmdp& d, const Evaluation& e, Vertex from, Vertex to) {
    auto w = d.edge_weight(from, to);
    if (!w) throw std::invalid_argument("no edge " + d.name(from) + " -> " + d.name(to));
    const auto& val = e.val[static_cast<std::size_t>(to)];
    const auto& pot = e.pot[static_cast<std::size_t>(to)];
    return Appraisal{val, (pot - val).plus_int(*w)};
}

BellmanResult bellman(const Dmdp& d, const Policy& s) {
    return bellman(d, s, evaluate(d, s));
}

BellmanResult bellman(const Dmdp& d, const Policy& s, const Evaluation& e) {
    validate_policy(d, s);
    const auto n = d.num_vertices();
    // pot(u) - val(u) is shared by every edge into u; precomputing it keeps
    // the per-edge work to one checked multiply-add.
    std::vector<Rational> base(n);
    for (std::size_t u = 0; u < n; ++u) base[u] = e.pot[u] - e.val[u];

    BellmanResult out;
    out.policy.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& edges = d.out(static_cast<Vertex>(v));
        Vertex best = edges.front().to;
        Appraisal best_ap{e.val[static_cast<std::size_t>(best)],
                          base[static_cast<std::size_t>(best)].plus_int(edges.front().weight)};
        for (std::size_t i = 1; i < edges.size(); ++i) {
            Vertex u = edges[i].to;
            Appraisal ap{e.val[static_cast<std::size_t>(u)],
                         base[static_cast<std::size_t>(u)].plus_int(edges[i].weight)};
            // strict > keeps the least-index maximizer (edges are ascending)
            if (ap > best_ap) {
                best = u;
                best_ap = ap;
            }
        }
        Vertex incumbent = s[v];
        Appraisal inc_ap = appraise(d, e, static_cast<Vertex>(v), incumbent);
        Vertex choice = (inc_ap == best_ap) ? incumbent : best;
        out.policy[v] = choice;
        if (choice != incumbent) out.switched.push_back(static_cast<Vertex>(v));
    }
    return out;
}

Policy initial_policy(const Dmdp& d, InitMode mode) {
    const auto n = d.num_vertices();
    Policy p(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& edges = d.out(static_cast<Vertex>(v));
        if (mode == InitMode::LowestIndex) {
            p[v] = edges.front().to;
        } else {
            Edge best = edges.front();
            for (std::size_t i = 1; i < edges.size(); ++i)
                if (edges[i].weight > best.weight) best = edges[i];
            p[v] = best.to;
        }
    }
    return p;
}

IterationTrace run_howard(const Dmdp& d, Policy start, std::optional<std::int64_t> max_iterations) {
    validate_policy(d, start);
    std::int64_t limit = max_iterations.value_or(
        4 * static_cast<std::int64_t>(d.num_vertices()) * static_cast<std::int64_t>(d.num_edges()));
    IterationTrace trace;
    Policy current = std::move(start);
    while (true) {
        if (trace.iterations >= limit) throw IterationLimitError(limit, std::move(trace));
        Evaluation e = evaluate(d, current);
        BellmanResult step = bellman(d, current, e);
        ++trace.iterations;
        trace.steps.push_back({current, std::move(e), step.switched});
        if (step.switched.empty()) return trace;
        current = std::move(step.policy);
    }
}

std::string trace_to_jsonl(const IterationTrace& trace) {
    std::string out;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const TraceStep& step = trace.steps[k];
        nlohmann::json j;
        j["k"] = k;
        j["policy"] = step.policy;
        auto strings = [](const std::vector<Rational>& xs) {
            std::vector<std::string> out;
            out.reserve(xs.size());
            for (const auto& x : xs) out.push_back(x.str());
            return out;
        };
        j["val"] = strings(step.eval.val);
        j["pot"] = strings(step.eval.pot);
        j["switched"] = step.switched;
        out += j.dump();
        out += "\n";
    }
    return out;
}

}  // namespace dmdp
