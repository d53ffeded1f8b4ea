#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sgp/eigensolver.hpp"
#include "sgp/error.hpp"

namespace sgp {

namespace {

constexpr double kTrivialValueFraction = 1e-8;
constexpr double kTrivialCorrelation = 1.0 - 1e-6;
constexpr double kZeroGapFraction = 1e-14;

double largest_eigenvalue(const Spectrum& s) {
  double hi = s.eigenvalues.maxCoeff();
  if (!s.is_full() && s.lambda_max_estimate) hi = std::max(hi, *s.lambda_max_estimate);
  return hi;
}

std::vector<std::size_t> retained_indices(const Spectrum& s, std::size_t target, bool exclude_trivial) {
  if (target >= s.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "target " + std::to_string(target) + " outside spectrum of size " + std::to_string(s.size()));
  }
  std::optional<std::size_t> trivial;
  if (exclude_trivial) trivial = find_trivial(s);
  if (trivial && *trivial == target) throw Error(ErrorCode::InvalidArgument, "target is the trivial eigenpair");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!trivial || i != *trivial) kept.push_back(i);
  }
  if (kept.size() < 2) throw Error(ErrorCode::InsufficientSpectrum, "need at least two retained eigenvalues");
  return kept;
}

double gap_over(const Spectrum& s, std::size_t target, const std::vector<std::size_t>& kept) {
  double gap = std::numeric_limits<double>::infinity();
  for (auto i : kept) {
    if (i != target) gap = std::min(gap, std::abs(s.eigenvalues[static_cast<Eigen::Index>(i)] - s.eigenvalues[static_cast<Eigen::Index>(target)]));
  }
  return gap;
}

}  // namespace

std::optional<std::size_t> find_trivial(const Spectrum& s) {
  if (s.deflated_ones || s.size() == 0 || s.dimension() == 0) return std::nullopt;
  const double spread = largest_eigenvalue(s) - s.eigenvalues.minCoeff();
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s.dimension()),
                                                         1.0 / std::sqrt(static_cast<double>(s.dimension())));
  // With several (near) zero eigenvalues the ones vector can be spread over
  // their eigenspace, so test the projection onto all of them at once.
  double captured = 0.0;
  std::optional<std::size_t> best;
  double best_corr = -1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    if (std::abs(s.eigenvalues[c]) > kTrivialValueFraction * spread) continue;
    const double corr = std::abs(s.eigenvectors.col(c).dot(ones));
    captured += corr * corr;
    if (corr > best_corr) {
      best_corr = corr;
      best = i;
    }
  }
  if (best && std::sqrt(captured) > kTrivialCorrelation) return best;
  return std::nullopt;
}

double spectral_gap(const Spectrum& s, std::size_t target, bool exclude_trivial) {
  const auto kept = retained_indices(s, target, exclude_trivial);
  return gap_over(s, target, kept);
}

double eigenvector_condition_number(const Spectrum& s, std::size_t target, bool exclude_trivial,
                                    std::optional<double> lambda_max) {
  const auto kept = retained_indices(s, target, exclude_trivial);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (auto i : kept) {
    lo = std::min(lo, s.eigenvalues[static_cast<Eigen::Index>(i)]);
    hi = std::max(hi, s.eigenvalues[static_cast<Eigen::Index>(i)]);
  }
  if (lambda_max) {
    hi = std::max(hi, *lambda_max);
  } else if (!s.is_full()) {
    if (!s.lambda_max_estimate) {
      throw Error(ErrorCode::InsufficientSpectrum, "partial spectrum needs a largest-eigenvalue estimate");
    }
    hi = std::max(hi, *s.lambda_max_estimate);
  }
  const double spread = hi - lo;
  const double gap = gap_over(s, target, kept);
  if (gap <= kZeroGapFraction * spread) return std::numeric_limits<double>::infinity();
  return spread / gap;
}

}  // namespace sgp
