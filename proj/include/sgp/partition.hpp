#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sgp/eigensolver.hpp"
#include "sgp/graph.hpp"
#include "sgp/laplacian.hpp"

namespace sgp {

enum class SolverMethod { Dense, Lobpcg };

struct SolverOptions {
  SolverMethod method = SolverMethod::Dense;
  /// Used by Lobpcg; k and deflate_ones are overridden per Laplacian kind.
  SolverConfig lobpcg;
};

/// Eigenvector chosen for sign-based bisection.
struct FiedlerResult {
  Eigen::VectorXd vector;  // unit norm, largest-magnitude entry positive
  double eigenvalue = 0.0;
  LaplacianKind kind = LaplacianKind::Standard;
  /// Signed kind only: the leading eigenvector was the constant vector.
  bool skipped_constant = false;
  double gap = 0.0;
  double spread = 0.0;
  /// gap <= 1e-6 * spread: the eigenvector is not numerically determined.
  bool clustered_warning = false;
  bool converged = true;
  /// Spectrum the vector was taken from (deflated for Standard).
  Spectrum spectrum;
  std::size_t index = 0;
};

inline constexpr double kClusteredGapFraction = 1e-6;

/// Standard: smallest eigenpair of L on the complement of ones.
/// Signed: smallest eigenpair of the signed Laplacian, skipping a leading
/// constant eigenvector. Throws MultiComponent for graphs that are not
/// connected, InvalidArgument for n < 2, SolverFailed if LOBPCG breaks down.
FiedlerResult fiedler(const SignedGraph& g, LaplacianKind kind, const SolverOptions& solver = {});

enum class Side : std::uint8_t { A = 0, B = 1 };
enum class ZeroPolicy { PositiveSide, NegativeSide };

/// Entries with |v_i| <= kZeroSnap * max|v| count as zero when bisecting.
inline constexpr double kZeroSnap = 1e-12;

struct Partition {
  std::vector<Side> side;
  /// Label holding the nonnegative components.
  Side positive_set_is = Side::A;

  std::size_t size() const noexcept { return side.size(); }
  std::size_t count(Side s) const noexcept;
  std::vector<std::size_t> members(Side s) const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Builds a partition from 0/1 labels (0 = A).
Partition partition_from_labels(const std::vector<int>& labels);

/// True if both describe the same split of the vertex set, ignoring labels.
bool same_split(const Partition& a, const Partition& b);

/// Sign split of v after normalizing its global sign. Throws
/// DegenerateVector if one side ends up empty.
Partition bisect(const Eigen::Ref<const Eigen::VectorXd>& v, ZeroPolicy zero_policy = ZeroPolicy::PositiveSide);
Partition bisect(const FiedlerResult& f, ZeroPolicy zero_policy = ZeroPolicy::PositiveSide);

/// Squared components of a unit vector.
Eigen::VectorXd confidence(const Eigen::Ref<const Eigen::VectorXd>& v);
Eigen::VectorXd confidence(const FiedlerResult& f);

struct CutMetrics {
  double cut = 0.0;              // sum of cross-edge weights
  double cut_plus = 0.0;         // positive cross edges
  double cut_minus_cross = 0.0;  // |negative| cross edges
  double cut_minus_within_a = 0.0;
  double cut_minus_within_b = 0.0;
  double signed_cut = 0.0;
  double ratio_cut = 0.0;
  double signed_ratio_cut = 0.0;
  double total_negative = 0.0;
};

/// Throws DimensionMismatch or EmptySide.
CutMetrics cut_metrics(const SignedGraph& g, const Partition& p);

/// For a vector indexed along a path: the edge (i, i + 1) where the sign
/// flips with the largest jump |v_i - v_{i+1}|, if the sign flips at all.
/// Entries are snapped to zero as in bisect and zeros count as positive.
std::optional<std::size_t> dominant_sign_change(const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace sgp
