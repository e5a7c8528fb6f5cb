#include "dmdp/oracles.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "dmdp/eval.hpp"

namespace dmdp {

std::vector<std::vector<Vertex>> strongly_connected_components(const Dmdp& d) {
    const auto n = d.num_vertices();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> components;
    int counter = 0;

    // Iterative Tarjan; each frame tracks how many successors were expanded.
    struct Frame {
        Vertex v;
        std::size_t next_edge;
    };
    std::vector<Frame> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        frames.push_back({static_cast<Vertex>(root), 0});
        while (!frames.empty()) {
            auto& [v, next_edge] = frames.back();
            auto sv = static_cast<std::size_t>(v);
            if (next_edge == 0) {
                index[sv] = low[sv] = counter++;
                stack.push_back(v);
                on_stack[sv] = true;
            }
            const auto& edges = d.out(v);
            bool descended = false;
            while (next_edge < edges.size()) {
                Vertex u = edges[next_edge++].to;
                auto su = static_cast<std::size_t>(u);
                if (index[su] < 0) {
                    frames.push_back({u, 0});
                    descended = true;
                    break;
                }
                if (on_stack[su]) low[sv] = std::min(low[sv], index[su]);
            }
            if (descended) continue;
            if (low[sv] == index[sv]) {
                std::vector<Vertex> comp;
                Vertex u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(u)] = false;
                    comp.push_back(u);
                } while (u != v);
                components.push_back(std::move(comp));
            }
            frames.pop_back();
            if (!frames.empty()) {
                auto pv = static_cast<std::size_t>(frames.back().v);
                low[pv] = std::min(low[pv], low[sv]);
            }
        }
    }
    return components;
}

Rational karp_max_mean_cycle(const Dmdp& d, const std::vector<Vertex>& component) {
    const auto size = component.size();
    if (size == 0) throw std::invalid_argument("empty component");
    if (size == 1) {
        auto loop = d.edge_weight(component[0], component[0]);
        if (!loop) throw std::invalid_argument("acyclic component has no cycle mean");
        return Rational(*loop);
    }

    std::vector<std::int64_t> local(d.num_vertices(), -1);
    for (std::size_t i = 0; i < size; ++i) local[static_cast<std::size_t>(component[i])] = static_cast<std::int64_t>(i);

    // In-edges restricted to the component, in local indices.
    std::vector<std::vector<std::pair<std::int64_t, Weight>>> in_edges(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (const Edge& e : d.out(component[i])) {
            std::int64_t j = local[static_cast<std::size_t>(e.to)];
            if (j >= 0) in_edges[static_cast<std::size_t>(j)].emplace_back(static_cast<std::int64_t>(i), e.weight);
        }
    }

    // Walk-weight table from the virtual source. The augmented graph has
    // size+1 vertices, so rows 0..size+1 are needed; row 1 is the source's
    // zero-weight fan-out.
    const std::size_t rows = size + 2;
    constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::min();
    std::vector<std::vector<std::int64_t>> walk(rows, std::vector<std::int64_t>(size, kUnreachable));
    for (std::size_t v = 0; v < size; ++v) walk[1][v] = 0;
    for (std::size_t k = 2; k < rows; ++k) {
        for (std::size_t v = 0; v < size; ++v) {
            std::int64_t best = kUnreachable;
            for (const auto& [u, w] : in_edges[v]) {
                std::int64_t prev = walk[k - 1][static_cast<std::size_t>(u)];
                if (prev == kUnreachable) continue;
                best = std::max(best, checked_add(prev, w));
            }
            walk[k][v] = best;
        }
    }

    const std::size_t full = rows - 1;  // = size + 1 edges
    bool found = false;
    Rational best_mean;
    for (std::size_t v = 0; v < size; ++v) {
        if (walk[full][v] == kUnreachable) continue;
        bool have_min = false;
        Rational vmin;
        for (std::size_t k = 0; k < full; ++k) {
            if (walk[k][v] == kUnreachable) continue;
            Rational mean(checked_sub(walk[full][v], walk[k][v]),
                          static_cast<std::int64_t>(full - k));
            if (!have_min || mean < vmin) {
                vmin = mean;
                have_min = true;
            }
        }
        if (have_min && (!found || vmin > best_mean)) {
            best_mean = vmin;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("acyclic component has no cycle mean");
    return best_mean;
}

OptimalValues optimal_values(const Dmdp& d) {
    const auto n = d.num_vertices();
    auto components = strongly_connected_components(d);
    std::vector<std::int64_t> comp_of(n, -1);
    for (std::size_t c = 0; c < components.size(); ++c)
        for (Vertex v : components[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(c);

    auto is_cyclic = [&](const std::vector<Vertex>& comp) {
        return comp.size() > 1 || d.has_edge(comp[0], comp[0]);
    };

    // Components come out with successors first, so one forward pass gives
    // the best reachable cycle mean per component.
    std::vector<bool> has_best(components.size(), false);
    std::vector<Rational> best(components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (is_cyclic(components[c])) {
            best[c] = karp_max_mean_cycle(d, components[c]);
            has_best[c] = true;
        }
        for (Vertex v : components[c]) {
            for (const Edge& e : d.out(v)) {
                auto tc = static_cast<std::size_t>(comp_of[static_cast<std::size_t>(e.to)]);
                if (tc == c) continue;
                if (has_best[tc] && (!has_best[c] || best[tc] > best[c])) {
                    best[c] = best[tc];
                    has_best[c] = true;
                }
            }
        }
        if (!has_best[c])
            throw std::logic_error("component cannot reach any cycle despite out-degrees >= 1");
    }

    OptimalValues out;
    out.val.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.val[v] = best[static_cast<std::size_t>(comp_of[v])];
    return out;
}

OptimalValues brute_force_values(const Dmdp& d, std::int64_t policy_space_limit) {
    const auto n = d.num_vertices();
    std::int64_t space = 1;
    for (std::size_t v = 0; v < n; ++v) {
        auto deg = static_cast<std::int64_t>(d.out(static_cast<Vertex>(v)).size());
        if (space > policy_space_limit / deg)
            throw std::runtime_error("policy space exceeds limit of " + std::to_string(policy_space_limit));
        space *= deg;
    }

    std::vector<std::size_t> pick(n, 0);
    Policy p(n);
    OptimalValues out;
    out.val.resize(n);
    bool first = true;
    while (true) {
        for (std::size_t v = 0; v < n; ++v) p[v] = d.out(static_cast<Vertex>(v))[pick[v]].to;
        Evaluation e = evaluate(d, p);
        if (first) {
            out.val = e.val;
            first = false;
        } else {
            for (std::size_t v = 0; v < n; ++v)
                if (e.val[v] > out.val[v]) out.val[v] = e.val[v];
        }
        // odometer over per-vertex choice indices
        std::size_t v = 0;
        while (v < n) {
            if (++pick[v] < d.out(static_cast<Vertex>(v)).size()) break;
            pick[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    return out;
}

namespace {

// Rejection sampling keeps generation identical across standard libraries;
// std::uniform_int_distribution is not portable bit-for-bit.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % range;
}

std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    // unsigned arithmetic: hi - lo may not fit in a signed 64-bit value
    std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    std::uint64_t offset = range == 0 ? rng() : bounded(rng, range);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

}  // namespace

Dmdp random_dmdp(const RandomSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("vertex count must be positive");
    if (spec.out_degree_min < 1 || spec.out_degree_min > spec.out_degree_max)
        throw std::invalid_argument("invalid out-degree range");
    if (spec.out_degree_max > spec.n)
        throw std::invalid_argument("out-degree above vertex count: cannot sample successors without replacement");
    if (spec.weight_min > spec.weight_max) throw std::invalid_argument("invalid weight range");
    if (spec.weight_max > kMaxWeightMagnitude || spec.weight_min < -kMaxWeightMagnitude)
        throw std::invalid_argument("weight range over limit");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(spec.n));
    for (int v = 0; v < spec.n; ++v) names.push_back("v" + std::to_string(v));

    std::vector<std::tuple<Vertex, Vertex, Weight>> edges;
    std::vector<Vertex> pool(static_cast<std::size_t>(spec.n));
    for (int v = 0; v < spec.n; ++v) {
        auto deg = static_cast<std::size_t>(uniform_in(rng, spec.out_degree_min, spec.out_degree_max));
        for (int u = 0; u < spec.n; ++u) pool[static_cast<std::size_t>(u)] = u;
        // partial Fisher-Yates: the first `deg` entries are the successors
        for (std::size_t i = 0; i < deg; ++i) {
            std::size_t j = i + static_cast<std::size_t>(bounded(rng, static_cast<std::uint64_t>(pool.size() - i)));
            std::swap(pool[i], pool[j]);
            Weight w = uniform_in(rng, spec.weight_min, spec.weight_max);
            edges.emplace_back(v, pool[i], w);
        }
    }
    return Dmdp(std::move(names), edges);
}

}  // namespace dmdp
