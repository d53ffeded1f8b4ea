#include "sgp/eigensolver.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "sgp/error.hpp"

namespace sgp {

namespace {

// Orthonormal basis of the complement of the ones vector: the trailing
// n - 1 columns of the Householder reflector exchanging e_1 and ones/sqrt(n).
Eigen::MatrixXd ones_complement_basis(Eigen::Index n) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  v[0] -= 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  const double vv = v.squaredNorm();
  if (vv > 0.0) h -= (2.0 / vv) * v * v.transpose();
  return h.rightCols(n - 1);
}

Spectrum finish(const SymmetricOperator& op, Eigen::VectorXd values, Eigen::MatrixXd vectors, bool deflated) {
  Spectrum s;
  s.deflated_ones = deflated;
  const auto k = values.size();
  for (Eigen::Index c = 0; c < k; ++c) normalize_sign(vectors.col(c));
  Eigen::MatrixXd r = op.apply_block(vectors) - vectors * values.asDiagonal();
  if (deflated && r.rows() > 0) r.rowwise() -= r.colwise().mean();
  s.residual_norms = r.colwise().norm().transpose();
  s.converged.assign(static_cast<std::size_t>(k), true);
  s.eigenvalues = std::move(values);
  s.eigenvectors = std::move(vectors);
  return s;
}

}  // namespace

bool Spectrum::all_converged() const noexcept {
  for (bool c : converged) {
    if (!c) return false;
  }
  return true;
}

void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) v = -v;
}

Spectrum dense_spectrum(const SymmetricOperator& op) {
  const Eigen::MatrixXd a = op.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverFailed, "dense eigensolver did not converge");
  return finish(op, es.eigenvalues(), es.eigenvectors(), false);
}

Spectrum dense_spectrum_deflated(const SymmetricOperator& op) {
  const Eigen::MatrixXd a = op.dense();
  const auto n = a.rows();
  if (n < 2) {
    return finish(op, Eigen::VectorXd(0), Eigen::MatrixXd(n, 0), true);
  }
  const Eigen::MatrixXd q = ones_complement_basis(n);
  const Eigen::MatrixXd compressed = q.transpose() * a * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (compressed + compressed.transpose()));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverFailed, "dense eigensolver did not converge");
  Eigen::MatrixXd vectors = q * es.eigenvectors();
  return finish(op, es.eigenvalues(), std::move(vectors), true);
}

}  // namespace sgp
