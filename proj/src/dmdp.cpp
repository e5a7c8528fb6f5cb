#include "dmdp/dmdp.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dmdp/rational.hpp"

namespace dmdp {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

std::int64_t bit_contribution(Weight w) {
    std::uint64_t mag = w < 0 ? static_cast<std::uint64_t>(-(w + 1)) + 1 : static_cast<std::uint64_t>(w);
    if (mag <= 1) return 0;  // ceil(log2 1) = 0; the 0 case is taken as 0 too
    return static_cast<std::int64_t>(std::bit_width(mag - 1));
}

}  // namespace

Dmdp::Dmdp(std::vector<std::string> names, const std::vector<std::tuple<Vertex, Vertex, Weight>>& edges)
    : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("a DMDP needs at least one vertex");
    std::unordered_map<std::string, Vertex> seen;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_name(names_[i]))
            throw std::invalid_argument("invalid vertex name '" + names_[i] + "'");
        if (!seen.emplace(names_[i], static_cast<Vertex>(i)).second)
            throw std::invalid_argument("duplicate vertex name '" + names_[i] + "'");
    }
    adjacency_.resize(names_.size());
    auto n = static_cast<Vertex>(names_.size());
    for (const auto& [from, to, w] : edges) {
        if (from < 0 || from >= n || to < 0 || to >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (w > kMaxWeightMagnitude || w < -kMaxWeightMagnitude)
            throw std::invalid_argument("weight magnitude over limit on edge " + names_[from] + " -> " + names_[to]);
        adjacency_[static_cast<std::size_t>(from)].push_back({to, w});
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& a = adjacency_[v];
        std::sort(a.begin(), a.end(), [](const Edge& x, const Edge& y) { return x.to < y.to; });
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (a[i - 1].to == a[i].to)
                throw std::invalid_argument("duplicate edge " + names_[v] + " -> " + names_[a[i].to]);
        }
        if (a.empty())
            throw std::invalid_argument("vertex '" + names_[v] + "' has no outgoing edge");
        num_edges_ += a.size();
        for (const Edge& e : a) max_abs_weight_ = std::max(max_abs_weight_, e.weight < 0 ? -e.weight : e.weight);
    }
}

std::int64_t Dmdp::size_bits() const {
    std::int64_t bits = checked_add(static_cast<std::int64_t>(num_vertices()),
                                    static_cast<std::int64_t>(num_edges_));
    for (const auto& a : adjacency_)
        for (const Edge& e : a) bits = checked_add(bits, bit_contribution(e.weight));
    return bits;
}

std::optional<Vertex> Dmdp::find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Vertex>(i);
    return std::nullopt;
}

std::optional<Weight> Dmdp::edge_weight(Vertex from, Vertex to) const {
    const auto& a = adjacency_.at(static_cast<std::size_t>(from));
    auto it = std::lower_bound(a.begin(), a.end(), to,
                               [](const Edge& e, Vertex t) { return e.to < t; });
    if (it != a.end() && it->to == to) return it->weight;
    return std::nullopt;
}

Dmdp Dmdp::parse(const std::string& text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, Vertex> index;
    std::vector<std::tuple<Vertex, Vertex, Weight>> edges;
    std::unordered_set<std::uint64_t> edge_keys;
    std::vector<int> decl_line;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "vertex") {
            std::string name, extra;
            if (!(ls >> name) || (ls >> extra))
                throw ParseError(lineno, "expected 'vertex <name>'");
            if (!valid_name(name))
                throw ParseError(lineno, "invalid vertex name '" + name + "'");
            if (index.count(name))
                throw ParseError(lineno, "duplicate vertex name '" + name + "'");
            index.emplace(name, static_cast<Vertex>(names.size()));
            names.push_back(name);
            decl_line.push_back(lineno);
        } else if (kw == "edge") {
            std::string src, dst, wtext, extra;
            if (!(ls >> src >> dst >> wtext) || (ls >> extra))
                throw ParseError(lineno, "expected 'edge <src> <dst> <weight>'");
            auto si = index.find(src);
            if (si == index.end()) throw ParseError(lineno, "unknown vertex name '" + src + "'");
            auto di = index.find(dst);
            if (di == index.end()) throw ParseError(lineno, "unknown vertex name '" + dst + "'");
            Weight w = 0;
            const char* first = wtext.data();
            const char* last = wtext.data() + wtext.size();
            auto [ptr, ec] = std::from_chars(first, last, w);
            if (ec == std::errc::result_out_of_range)
                throw ParseError(lineno, "weight magnitude over limit");
            if (ec != std::errc() || ptr != last)
                throw ParseError(lineno, "invalid weight '" + wtext + "'");
            if (w > kMaxWeightMagnitude || w < -kMaxWeightMagnitude)
                throw ParseError(lineno, "weight magnitude over limit");
            std::uint64_t key = (static_cast<std::uint64_t>(si->second) << 32) |
                                static_cast<std::uint32_t>(di->second);
            if (!edge_keys.insert(key).second)
                throw ParseError(lineno, "duplicate edge " + src + " -> " + dst);
            edges.emplace_back(si->second, di->second, w);
        } else {
            throw ParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (names.empty()) throw ParseError(0, "no vertices declared");

    std::vector<bool> has_out(names.size(), false);
    for (const auto& [f, t, w] : edges) has_out[static_cast<std::size_t>(f)] = true;
    for (std::size_t v = 0; v < names.size(); ++v)
        if (!has_out[v])
            throw ParseError(decl_line[v], "vertex '" + names[v] + "' has no outgoing edge");

    return Dmdp(std::move(names), edges);
}

std::string Dmdp::serialize() const {
    std::ostringstream out;
    for (const auto& n : names_) out << "vertex " << n << "\n";
    for (std::size_t v = 0; v < adjacency_.size(); ++v)
        for (const Edge& e : adjacency_[v])
            out << "edge " << names_[v] << " " << names_[e.to] << " " << e.weight << "\n";
    return out.str();
}

std::string Dmdp::to_dot(const Policy* highlight) const {
    if (highlight) validate_policy(*this, *highlight);
    std::ostringstream out;
    out << "digraph dmdp {\n";
    out << "  rankdir=LR;\n";
    for (const auto& n : names_) out << "  \"" << n << "\";\n";
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        for (const Edge& e : adjacency_[v]) {
            out << "  \"" << names_[v] << "\" -> \"" << names_[e.to] << "\" [label=\"" << e.weight << "\"";
            if (highlight && (*highlight)[v] == e.to) out << ", style=bold";
            out << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

void validate_policy(const Dmdp& d, const Policy& p) {
    if (p.size() != d.num_vertices())
        throw std::invalid_argument("policy size does not match vertex count");
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (!d.has_edge(static_cast<Vertex>(v), p[v]))
            throw std::invalid_argument("policy uses nonexistent edge from '" + d.name(static_cast<Vertex>(v)) + "'");
    }
}

}  // namespace dmdp
