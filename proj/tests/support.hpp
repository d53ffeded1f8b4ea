#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sgp/graph.hpp"

namespace sgp::test {

// Random graph for property tests. Weights have magnitude in [0.1, 2] and are
// negative with probability neg_fraction. With connected = true a random
// spanning tree is laid down first.
inline SignedGraph random_signed_graph(std::mt19937_64& rng, std::size_t n, double density, double neg_fraction,
                                       bool connected = true) {
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<Edge> edges;
  auto add = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (i == j || !used.insert({i, j}).second) return;
    const double w = mag(rng) * (unit(rng) < neg_fraction ? -1.0 : 1.0);
    edges.push_back({i, j, w});
  };
  if (connected) {
    for (std::size_t v = 1; v < n; ++v) add(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) < density) add(i, j);
    }
  }
  return graph_from_edges(n, std::move(edges));
}

// Laplacians built straight from the edge list, independent of the library.
inline Eigen::MatrixXd oracle_standard(const SignedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
    l(i, i) += e.w;
    l(j, j) += e.w;
    l(i, j) -= e.w;
    l(j, i) -= e.w;
  }
  return l;
}

inline Eigen::MatrixXd oracle_signed(const SignedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
    l(i, i) += std::abs(e.w);
    l(j, j) += std::abs(e.w);
    l(i, j) -= e.w;
    l(j, i) -= e.w;
  }
  return l;
}

// Angle between the lines spanned by a and b.
inline double line_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::acos(std::min(1.0, c));
}

inline std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> r;
  for (auto v = lo; v < hi; ++v) r.push_back(v);
  return r;
}

}  // namespace sgp::test
