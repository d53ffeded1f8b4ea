#include "sgp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgp/error.hpp"

namespace sgp {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
}

}  // namespace

SignedGraph graph_from_edges(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.i >= n || e.j >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge " + edge_text(e) + " outside [0, " + std::to_string(n) + ")");
    }
    if (e.i == e.j) throw Error(ErrorCode::SelfLoop, "edge " + edge_text(e));
    if (!std::isfinite(e.w)) throw Error(ErrorCode::NonfiniteWeight, "edge " + edge_text(e));
    if (e.w == 0.0) throw Error(ErrorCode::ZeroWeight, "edge " + edge_text(e));
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i == b.i && a.j == b.j;
  });
  if (dup != edges.end()) throw Error(ErrorCode::DuplicateEdge, "edge " + edge_text(*dup));

  SignedGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  return g;
}

bool SignedGraph::has_negative_edges() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w < 0.0; });
}

double SignedGraph::total_negative_weight() const noexcept {
  double total = 0.0;
  for (const auto& e : edges_) {
    if (e.w < 0.0) total -= e.w;
  }
  return total;
}

std::size_t SignedGraph::component_count() const {
  std::vector<std::size_t> parent(n_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::size_t components = n_;
  for (const auto& e : edges_) {
    auto a = find(e.i);
    auto b = find(e.j);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

bool SignedGraph::is_connected() const { return n_ > 0 && component_count() == 1; }

Eigen::MatrixXd SignedGraph::dense_adjacency() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges_) {
    w(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = e.w;
    w(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = e.w;
  }
  return w;
}

Eigen::VectorXd degrees(const SignedGraph& g, DegreeMode mode) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  for (const auto& e : g.edges()) {
    const double w = mode == DegreeMode::SignedSum ? e.w : std::abs(e.w);
    d[static_cast<Eigen::Index>(e.i)] += w;
    d[static_cast<Eigen::Index>(e.j)] += w;
  }
  return d;
}

SignedGraph negate_weights(const SignedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.w = -e.w;
  return graph_from_edges(g.vertex_count(), std::move(edges));
}

SignedGraph nullify_negative(const SignedGraph& g) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (e.w > 0.0) edges.push_back(e);
  }
  return graph_from_edges(g.vertex_count(), std::move(edges));
}

SignedGraph scale_weights(const SignedGraph& g, double c) {
  if (!std::isfinite(c) || c == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and nonzero");
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.w *= c;
  return graph_from_edges(g.vertex_count(), std::move(edges));
}

SignedGraph permute_vertices(const SignedGraph& g, std::span<const Vertex> perm) {
  const auto n = g.vertex_count();
  if (perm.size() != n) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.push_back({perm[e.i], perm[e.j], e.w});
  return graph_from_edges(n, std::move(edges));
}

}  // namespace sgp
