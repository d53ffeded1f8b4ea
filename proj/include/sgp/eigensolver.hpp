#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sgp/laplacian.hpp"

namespace sgp {

/// Ascending eigenvalues with an orthonormal block of eigenvectors.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // n x k
  Eigen::VectorXd residual_norms;
  std::vector<bool> converged;
  /// Eigenpairs live in the complement of the all-ones vector.
  bool deflated_ones = false;
  /// Upper estimate of the largest eigenvalue, set by iterative solvers.
  std::optional<double> lambda_max_estimate;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(eigenvectors.rows()); }
  bool is_full() const noexcept { return size() + (deflated_ones ? 1 : 0) == dimension(); }
  bool all_converged() const noexcept;
};

struct SolverConfig {
  std::size_t k = 1;
  std::size_t block_size = 1;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::uint64_t seed = 0;
  /// Keep every iterate orthogonal to the all-ones vector.
  bool deflate_ones = false;

  void validate() const;
};

struct IterationTrace {
  struct Step {
    Eigen::VectorXd ritz_values;  // ascending, locked and active columns together
    double max_residual = 0.0;
  };
  std::vector<Step> steps;
};

struct LobpcgResult {
  Spectrum spectrum;
  IterationTrace trace;
  double norm_estimate = 0.0;
};

/// Full eigendecomposition through the dense matrix. Throws
/// DimensionTooLarge above kDenseThreshold.
Spectrum dense_spectrum(const SymmetricOperator& op);

/// Eigendecomposition of the operator compressed to the complement of the
/// all-ones vector: n - 1 eigenpairs, every eigenvector orthogonal to ones.
Spectrum dense_spectrum_deflated(const SymmetricOperator& op);

/// Smallest eigenpairs by unpreconditioned LOBPCG. Columns that fail to
/// converge within max_iter are returned with converged = false; only a
/// collapse of the search basis is an error (BasisDegenerate).
LobpcgResult lobpcg_smallest(const SymmetricOperator& op, const SolverConfig& cfg);

/// ||A||_2 estimate from `iterations` power steps with a seeded start.
double estimate_operator_norm(const SymmetricOperator& op, std::uint64_t seed,
                              std::size_t iterations = 20);

/// Index of the trivial eigenpair: |lambda| <= 1e-8 * spread and the
/// normalized ones vector lies in the eigenspace of such eigenvalues
/// (correlation > 1 - 1e-6). Deflated spectra never have one.
std::optional<std::size_t> find_trivial(const Spectrum& s);

/// Distance from eigenvalue `target` (index into s) to the nearest other
/// retained eigenvalue. Throws InsufficientSpectrum.
double spectral_gap(const Spectrum& s, std::size_t target, bool exclude_trivial);

/// Spread of the retained spectrum over the gap at `target`; +infinity when
/// the gap is below 1e-14 * spread. Partial spectra need lambda_max (or the
/// spectrum's own estimate).
double eigenvector_condition_number(const Spectrum& s, std::size_t target,
                                    bool exclude_trivial,
                                    std::optional<double> lambda_max = std::nullopt);

/// Flips v in place so that its largest-magnitude entry (first on ties) is positive.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace sgp
