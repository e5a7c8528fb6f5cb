#ifndef DMDP_DMDP_HPP
#define DMDP_DMDP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace dmdp {

using Vertex = std::int32_t;
using Weight = std::int64_t;

/// Largest accepted |weight|. Inputs are capped here so that downstream
/// exact arithmetic can promote to 128-bit intermediates safely.
inline constexpr Weight kMaxWeightMagnitude = static_cast<Weight>(1) << 62;

/// A positional policy: one chosen successor per vertex, indexed by vertex.
using Policy = std::vector<Vertex>;

struct Edge {
    Vertex to;
    Weight weight;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// A deterministic MDP: a finite directed graph with integer edge weights
/// where every vertex has at least one outgoing edge. Vertices are ordered
/// by declaration; that order is also the tie-breaking index. Immutable
/// after construction, so instances can be shared freely across threads.
class Dmdp {
  public:
    /// Builds and validates. Adjacency lists are sorted by successor index.
    /// Throws std::invalid_argument on: empty vertex set, bad or duplicate
    /// names, out-of-range endpoints, duplicate edges, vertices without
    /// outgoing edges, or weights beyond kMaxWeightMagnitude.
    Dmdp(std::vector<std::string> names, const std::vector<std::tuple<Vertex, Vertex, Weight>>& edges);

    std::size_t num_vertices() const { return names_.size(); }
    std::size_t num_edges() const { return num_edges_; }
    Weight max_abs_weight() const { return max_abs_weight_; }

    /// n + m + sum of ceil(log2 |w|) over edges, with the |w| <= 1 term
    /// contributing 0 bits.
    std::int64_t size_bits() const;

    const std::string& name(Vertex v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Vertex> find_vertex(const std::string& name) const;

    const std::vector<Edge>& out(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

    bool has_edge(Vertex from, Vertex to) const { return edge_weight(from, to).has_value(); }
    std::optional<Weight> edge_weight(Vertex from, Vertex to) const;

    static Dmdp parse(const std::string& text);
    std::string serialize() const;

    /// GraphViz digraph; edges chosen by `highlight` are rendered bold.
    /// Throws std::invalid_argument if the policy uses a nonexistent edge.
    std::string to_dot(const Policy* highlight = nullptr) const;

    friend bool operator==(const Dmdp& a, const Dmdp& b) {
        return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
    }

  private:
    std::vector<std::string> names_;
    std::vector<std::vector<Edge>> adjacency_;
    std::size_t num_edges_ = 0;
    Weight max_abs_weight_ = 0;
};

/// Throws std::invalid_argument unless `p` maps every vertex to one of its
/// successors.
void validate_policy(const Dmdp& d, const Policy& p);

}  // namespace dmdp

#endif
