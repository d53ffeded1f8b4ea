#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace sgp {

using Vertex = std::size_t;

struct Edge {
  Vertex i;
  Vertex j;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class DegreeMode { SignedSum, AbsoluteSum };

/// Undirected graph with real, possibly negative, edge weights.
///
/// Edges are stored once, as the strict upper triangle (i < j), sorted
/// lexicographically. Self-loops and zero weights are not representable.
/// Instances are immutable; use graph_from_edges to build one.
class SignedGraph {
 public:
  SignedGraph() = default;

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_negative_edges() const noexcept;
  double total_negative_weight() const noexcept;

  /// Connected when every edge is treated as present regardless of sign.
  bool is_connected() const;
  std::size_t component_count() const;

  Eigen::MatrixXd dense_adjacency() const;

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

 private:
  friend SignedGraph graph_from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Validates and canonicalizes. Throws Error with IndexOutOfRange,
/// DuplicateEdge, SelfLoop, NonfiniteWeight or ZeroWeight.
SignedGraph graph_from_edges(std::size_t n, std::vector<Edge> edges);

Eigen::VectorXd degrees(const SignedGraph& g, DegreeMode mode);

SignedGraph negate_weights(const SignedGraph& g);

/// Drops every negative edge, i.e. the adjacency max(W, 0).
SignedGraph nullify_negative(const SignedGraph& g);

/// Multiplies all weights by c (c must be finite and nonzero).
SignedGraph scale_weights(const SignedGraph& g, double c);

/// Relabels vertex v as perm[v].
SignedGraph permute_vertices(const SignedGraph& g, std::span<const Vertex> perm);

}  // namespace sgp
