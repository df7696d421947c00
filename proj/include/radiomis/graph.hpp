#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace radiomis {

using NodeId = std::uint32_t;

/// Undirected edge, always stored with first < second.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised for invalid graphs. `line()` is the 1-based input line for errors
/// found while parsing an edge list, 0 otherwise.
class GraphError : public std::invalid_argument {
 public:
  explicit GraphError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line == 0 ? what
                                        : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph over dense ids [0, n) with CSR adjacency.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph; rejects self-loops, duplicates and out-of-range endpoints.
  /// Edge orientation in the input does not matter.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted edge set, each edge with u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted neighbor ids of `v`.
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

/// Maximum number of incident edges over all nodes; 0 for edgeless graphs.
std::size_t max_degree(const Graph& g) noexcept;

// Generators.

/// n/4 disjoint edges {2i, 2i+1} plus n/2 isolated nodes [n/2, n).
Graph generate_matching_lower_bound(std::size_t n);

/// Erdos-Renyi G(n, p); deterministic for a fixed seed.
Graph generate_gnp(std::size_t n, double p, std::uint64_t seed);

/// Node 0 joined to nodes 1..n-1.
Graph generate_star(std::size_t n);
Graph generate_clique(std::size_t n);
Graph generate_path(std::size_t n);

/// Colon-delimited generator spec: gnp:n:p | matching:n | star:n | clique:n | path:n.
struct GeneratorSpec {
  enum class Family { kGnp, kMatching, kStar, kClique, kPath };
  Family family = Family::kPath;
  std::size_t n = 0;
  double p = 0.0;

  static GeneratorSpec parse(std::string_view text);
  std::string to_string() const;
  /// Whether the generated graph depends on the seed.
  bool randomized() const noexcept { return family == Family::kGnp; }
  Graph generate(std::uint64_t seed) const;
};

// Edge-list text format: "n m" header, then m lines "u v" with u < v.

Graph load_edge_list(std::string_view text);
std::string save_edge_list(const Graph& g);

Graph load_edge_list_file(const std::string& path);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace radiomis
