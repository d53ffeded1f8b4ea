#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgp/graph.hpp"

namespace sgp {

/// Reassigns the weight of path edge (index, index + 1).
struct EdgeOverride {
  std::size_t index;
  double w;
};

/// Path ("string") of n unit springs, some of them reweighted.
struct StringSpec {
  std::size_t n = 0;
  std::vector<EdgeOverride> overrides;
};

inline constexpr std::size_t kDefaultStringLength = 75;
/// Edge between vertices 37 and 38 in 1-based labels.
inline constexpr std::size_t kDefaultCutEdge = 36;
inline constexpr double kDefaultNegativeWeight = -0.05;
inline constexpr double kDefaultWeakLinkWeight = 0.05;

/// Throws BadOverrideIndex (index >= n - 1), ZeroWeight, InvalidArgument (n < 2).
SignedGraph path_string(const StringSpec& spec);

/// Unit path with one reweighted edge plus symmetric uniform noise on every
/// off-diagonal pair: R_ij ~ U(0, noise_amp) drawn row-major from the seeded
/// source, diagonal zeroed, (R + R^T) / 2 added to the adjacency.
/// Throws BadEdgeIndex, InvalidArgument.
SignedGraph noisy_string(std::size_t n, EdgeOverride edge, double noise_amp, std::uint64_t seed);

/// Six vertices: a 4-cycle 1-2-4-3 whose (1,3) spring is repulsive (-1),
/// and a tail 4-5-6 attached through the weak (4,5) edge of weight 0.2.
SignedGraph cobra();

/// Complete graphs on {1..6} and {7..13} with cross edges (3,9) and (4,10)
/// of weight +1 and (1,7), (2,8) of weight -1.
SignedGraph dumbbell();

}  // namespace sgp
