#include "sgp/generators.hpp"

#include <cmath>
#include <string>

#include "sgp/error.hpp"
#include "sgp/random.hpp"

namespace sgp {

SignedGraph path_string(const StringSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::InvalidArgument, "a string needs at least two vertices");
  std::vector<double> weights(spec.n - 1, 1.0);
  for (const auto& o : spec.overrides) {
    if (o.index >= spec.n - 1) {
      throw Error(ErrorCode::BadOverrideIndex,
                  "edge index " + std::to_string(o.index) + " outside [0, " + std::to_string(spec.n - 1) + ")");
    }
    if (o.w == 0.0) throw Error(ErrorCode::ZeroWeight, "override weight must be nonzero");
    weights[o.index] = o.w;
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (std::size_t i = 0; i + 1 < spec.n; ++i) edges.push_back({i, i + 1, weights[i]});
  return graph_from_edges(spec.n, std::move(edges));
}

SignedGraph noisy_string(std::size_t n, EdgeOverride edge, double noise_amp, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "noisy string needs at least three vertices");
  if (!(noise_amp >= 0.0) || !std::isfinite(noise_amp)) {
    throw Error(ErrorCode::InvalidArgument, "noise amplitude must be finite and nonnegative");
  }
  if (edge.index >= n - 1) {
    throw Error(ErrorCode::BadEdgeIndex,
                "edge index " + std::to_string(edge.index) + " outside [0, " + std::to_string(n - 1) + ")");
  }

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wi = i == edge.index ? edge.w : 1.0;
    w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = wi;
    w(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = wi;
  }

  Eigen::MatrixXd noise(w.rows(), w.cols());
  UniformSource rng(seed);
  for (Eigen::Index i = 0; i < noise.rows(); ++i) {
    for (Eigen::Index j = 0; j < noise.cols(); ++j) noise(i, j) = rng.uniform(0.0, noise_amp);
  }
  noise.diagonal().setZero();
  w += 0.5 * (noise + noise.transpose());

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double wij = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (wij != 0.0) edges.push_back({i, j, wij});
    }
  }
  return graph_from_edges(n, std::move(edges));
}

SignedGraph cobra() {
  return graph_from_edges(6, {
                                 {0, 1, 1.0},
                                 {0, 2, -1.0},
                                 {1, 3, 1.0},
                                 {2, 3, 1.0},
                                 {3, 4, 0.2},
                                 {4, 5, 1.0},
                             });
}

SignedGraph dumbbell() {
  std::vector<Edge> edges;
  auto clique = [&edges](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t j = i + 1; j < last; ++j) edges.push_back({i, j, 1.0});
    }
  };
  clique(0, 6);
  clique(6, 13);
  // 1-based (3,9), (4,10) attract; (1,7), (2,8) repel.
  edges.push_back({2, 8, 1.0});
  edges.push_back({3, 9, 1.0});
  edges.push_back({0, 6, -1.0});
  edges.push_back({1, 7, -1.0});
  return graph_from_edges(13, std::move(edges));
}

}  // namespace sgp
