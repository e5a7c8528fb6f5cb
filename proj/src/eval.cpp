#include "dmdp/eval.hpp"

#include <algorithm>

namespace dmdp {

namespace {

Weight policy_weight(const Dmdp& d, const Policy& s, Vertex v) {
    auto w = d.edge_weight(v, s[static_cast<std::size_t>(v)]);
    if (!w) throw std::invalid_argument("policy uses nonexistent edge from '" + d.name(v) + "'");
    return *w;
}

}  // namespace

LassoRun decompose(const Dmdp& d, const Policy& s, Vertex start) {
    validate_policy(d, s);
    const auto n = d.num_vertices();
    std::vector<std::int64_t> pos(n, -1);
    std::vector<Vertex> run;
    Vertex v = start;
    while (pos[static_cast<std::size_t>(v)] < 0) {
        pos[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(run.size());
        run.push_back(v);
        v = s[static_cast<std::size_t>(v)];
    }
    auto entry = static_cast<std::size_t>(pos[static_cast<std::size_t>(v)]);
    // run[entry..] is the simple cycle; the head is its least-index member.
    Vertex head = run[entry];
    for (std::size_t i = entry; i < run.size(); ++i) head = std::min(head, run[i]);
    auto head_pos = static_cast<std::size_t>(pos[static_cast<std::size_t>(head)]);

    LassoRun out;
    out.head = head;
    out.path.assign(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(head_pos));
    out.cycle.reserve(run.size() - entry);
    for (std::size_t i = head_pos; i < run.size(); ++i) out.cycle.push_back(run[i]);
    for (std::size_t i = entry; i < head_pos; ++i) out.cycle.push_back(run[i]);
    return out;
}

Evaluation evaluate(const Dmdp& d, const Policy& s) {
    validate_policy(d, s);
    const auto n = d.num_vertices();
    std::vector<Weight> w(n);
    for (std::size_t v = 0; v < n; ++v) w[v] = policy_weight(d, s, static_cast<Vertex>(v));

    Evaluation e;
    e.val.resize(n);
    e.pot.resize(n);
    // 0 = unvisited, 1 = on the current probe, 2 = finished
    std::vector<unsigned char> state(n, 0);
    std::vector<Vertex> probe;
    for (std::size_t root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        probe.clear();
        Vertex v = static_cast<Vertex>(root);
        while (state[static_cast<std::size_t>(v)] == 0) {
            state[static_cast<std::size_t>(v)] = 1;
            probe.push_back(v);
            v = s[static_cast<std::size_t>(v)];
        }
        if (state[static_cast<std::size_t>(v)] == 1) {
            // New cycle discovered along this probe.
            auto it = std::find(probe.begin(), probe.end(), v);
            std::vector<Vertex> cycle(it, probe.end());
            auto head_it = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), head_it, cycle.end());

            std::int64_t total = 0;
            for (Vertex c : cycle) total = checked_add(total, w[static_cast<std::size_t>(c)]);
            Rational mean(total, static_cast<std::int64_t>(cycle.size()));

            Vertex head = cycle.front();
            e.val[static_cast<std::size_t>(head)] = mean;
            e.pot[static_cast<std::size_t>(head)] = Rational(0);
            // Walk the cycle backwards from the head so each pot entry is
            // the (weight - val) sum along the arc to the head.
            for (auto rit = cycle.rbegin(); rit != cycle.rend() - 1; ++rit) {
                Vertex c = *rit;
                e.val[static_cast<std::size_t>(c)] = mean;
                e.pot[static_cast<std::size_t>(c)] =
                    (e.pot[static_cast<std::size_t>(s[static_cast<std::size_t>(c)])] - mean)
                        .plus_int(w[static_cast<std::size_t>(c)]);
            }
            for (Vertex c : cycle) state[static_cast<std::size_t>(c)] = 2;
        }
        // Unwind the probe's tree part back-to-front; each vertex's successor
        // is already finished when it is popped.
        for (auto rit = probe.rbegin(); rit != probe.rend(); ++rit) {
            Vertex u = *rit;
            if (state[static_cast<std::size_t>(u)] == 2) continue;
            Vertex next = s[static_cast<std::size_t>(u)];
            e.val[static_cast<std::size_t>(u)] = e.val[static_cast<std::size_t>(next)];
            e.pot[static_cast<std::size_t>(u)] =
                (e.pot[static_cast<std::size_t>(next)] - e.val[static_cast<std::size_t>(u)])
                    .plus_int(w[static_cast<std::size_t>(u)]);
            state[static_cast<std::size_t>(u)] = 2;
        }
    }
    return e;
}

bool values_equal(const Evaluation& a, const Evaluation& b) {
    if (a.val.size() != b.val.size() || a.pot.size() != b.pot.size())
        throw std::invalid_argument("evaluations over mismatched vertex sets");
    return a.val == b.val && a.pot == b.pot;
}

}  // namespace dmdp
