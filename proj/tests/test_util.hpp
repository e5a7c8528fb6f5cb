#ifndef DMDP_TEST_UTIL_HPP
#define DMDP_TEST_UTIL_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "dmdp/howard.hpp"
#include "dmdp/oracles.hpp"

namespace dmdp::test {

inline Dmdp make_dmdp(std::vector<std::string> names,
                      std::vector<std::tuple<Vertex, Vertex, Weight>> edges) {
    return Dmdp(std::move(names), edges);
}

inline Policy random_policy(const Dmdp& d, std::mt19937_64& rng) {
    Policy p(d.num_vertices());
    for (std::size_t v = 0; v < p.size(); ++v) {
        const auto& edges = d.out(static_cast<Vertex>(v));
        p[v] = edges[rng() % edges.size()].to;
    }
    return p;
}

/// Exhaustive maximum simple-cycle mean over the subgraph induced by
/// `members` (independent reference for the walk-table algorithm).
inline std::optional<Rational> enumerate_max_cycle_mean(const Dmdp& d,
                                                        const std::vector<Vertex>& members) {
    std::vector<bool> in_set(d.num_vertices(), false);
    for (Vertex v : members) in_set[static_cast<std::size_t>(v)] = true;

    std::optional<Rational> best;
    std::vector<bool> on_path(d.num_vertices(), false);
    std::vector<std::pair<Vertex, std::int64_t>> stack;  // (vertex, weight so far)

    // Only cycles whose smallest vertex is the root are expanded, so each
    // simple cycle is found exactly once.
    for (Vertex root : members) {
        struct Item {
            Vertex v;
            std::int64_t acc;
            std::size_t depth;
        };
        std::vector<Item> work{{root, 0, 0}};
        std::vector<Vertex> path;
        while (!work.empty()) {
            auto [v, acc, depth] = work.back();
            work.pop_back();
            while (path.size() > depth) {
                on_path[static_cast<std::size_t>(path.back())] = false;
                path.pop_back();
            }
            path.push_back(v);
            on_path[static_cast<std::size_t>(v)] = true;
            for (const Edge& e : d.out(v)) {
                if (!in_set[static_cast<std::size_t>(e.to)] || e.to < root) continue;
                if (e.to == root) {
                    Rational mean(checked_add(acc, e.weight),
                                  static_cast<std::int64_t>(path.size()));
                    if (!best || mean > *best) best = mean;
                } else if (!on_path[static_cast<std::size_t>(e.to)]) {
                    work.push_back({e.to, checked_add(acc, e.weight), path.size()});
                }
            }
        }
        while (!path.empty()) {
            on_path[static_cast<std::size_t>(path.back())] = false;
            path.pop_back();
        }
    }
    return best;
}

inline bool trace_vals_nondecreasing(const IterationTrace& trace) {
    for (std::size_t k = 1; k < trace.steps.size(); ++k) {
        const auto& prev = trace.steps[k - 1].eval.val;
        const auto& cur = trace.steps[k].eval.val;
        for (std::size_t v = 0; v < cur.size(); ++v)
            if (cur[v] < prev[v]) return false;
    }
    return true;
}

inline bool trace_policies_distinct(const IterationTrace& trace) {
    for (std::size_t a = 0; a < trace.steps.size(); ++a)
        for (std::size_t b = a + 1; b < trace.steps.size(); ++b)
            if (trace.steps[a].policy == trace.steps[b].policy) return false;
    return true;
}

}  // namespace dmdp::test

#endif
