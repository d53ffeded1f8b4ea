#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sgp/graph.hpp"

namespace sgp {

enum class LaplacianKind {
  Standard,  // D - W, D from signed row sums
  Signed,    // |D| - W, D from absolute row sums
};

std::string_view to_string(LaplacianKind kind) noexcept;
LaplacianKind parse_laplacian_kind(std::string_view name);

/// Largest dimension for which dense materialization is allowed.
inline constexpr std::size_t kDenseThreshold = 2048;

/// Symmetric matrix held as a diagonal plus off-diagonal entries (i < j)
/// and accessed through matrix-vector products. Applying it costs
/// O(n + m) per vector and visits entries in a fixed order, so results are
/// bitwise reproducible.
class SymmetricOperator {
 public:
  SymmetricOperator() = default;
  SymmetricOperator(Eigen::VectorXd diagonal, std::vector<Edge> off_diagonal);

  /// Any symmetric dense matrix (symmetry of the input is checked).
  static SymmetricOperator from_dense(const Eigen::MatrixXd& a);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(diagonal_.size()); }
  const Eigen::VectorXd& diagonal() const noexcept { return diagonal_; }
  const std::vector<Edge>& off_diagonal() const noexcept { return off_; }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd apply_block(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  /// Throws DimensionTooLarge above kDenseThreshold.
  Eigen::MatrixXd dense() const;

 private:
  Eigen::VectorXd diagonal_;
  std::vector<Edge> off_;
};

/// Off-diagonal entries are -w for every edge, so the operator's matrix is
/// diag(d) - W with d chosen by kind.
SymmetricOperator laplacian(const SignedGraph& g, LaplacianKind kind);

/// The adjacency W as an operator (zero diagonal).
SymmetricOperator adjacency(const SignedGraph& g);

/// <x, A x>. Throws DimensionMismatch.
double quadratic_form(const SymmetricOperator& op, const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace sgp
