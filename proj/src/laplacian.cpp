#include "sgp/laplacian.hpp"

#include <cmath>
#include <string>

#include "sgp/error.hpp"

namespace sgp {

std::string_view to_string(LaplacianKind kind) noexcept {
  return kind == LaplacianKind::Standard ? "standard" : "signed";
}

LaplacianKind parse_laplacian_kind(std::string_view name) {
  if (name == "standard") return LaplacianKind::Standard;
  if (name == "signed") return LaplacianKind::Signed;
  throw Error(ErrorCode::InvalidArgument, "unknown Laplacian kind '" + std::string(name) + "'");
}

SymmetricOperator::SymmetricOperator(Eigen::VectorXd diagonal, std::vector<Edge> off_diagonal)
    : diagonal_(std::move(diagonal)), off_(std::move(off_diagonal)) {
  const auto n = dimension();
  for (const auto& e : off_) {
    if (e.i >= n || e.j >= n || e.i == e.j) {
      throw Error(ErrorCode::IndexOutOfRange, "off-diagonal entry outside the operator");
    }
  }
}

SymmetricOperator SymmetricOperator::from_dense(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  std::vector<Edge> off;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-14 * scale) {
        throw Error(ErrorCode::Asymmetric, "matrix is not symmetric");
      }
      if (a(i, j) != 0.0) {
        off.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, j)});
      }
    }
  }
  return SymmetricOperator(a.diagonal(), std::move(off));
}

Eigen::VectorXd SymmetricOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match operator");
  }
  Eigen::VectorXd y = diagonal_.cwiseProduct(x);
  for (const auto& e : off_) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    y[i] += e.w * x[j];
    y[j] += e.w * x[i];
  }
  return y;
}

Eigen::MatrixXd SymmetricOperator::apply_block(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (static_cast<std::size_t>(x.rows()) != dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "block row count does not match operator");
  }
  Eigen::MatrixXd y = diagonal_.asDiagonal() * x;
  for (const auto& e : off_) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    y.row(i) += e.w * x.row(j);
    y.row(j) += e.w * x.row(i);
  }
  return y;
}

Eigen::MatrixXd SymmetricOperator::dense() const {
  const auto n = dimension();
  if (n > kDenseThreshold) {
    throw Error(ErrorCode::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds dense threshold " + std::to_string(kDenseThreshold));
  }
  Eigen::MatrixXd a = diagonal_.asDiagonal();
  for (const auto& e : off_) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    a(i, j) += e.w;
    a(j, i) += e.w;
  }
  return a;
}

SymmetricOperator laplacian(const SignedGraph& g, LaplacianKind kind) {
  const auto mode = kind == LaplacianKind::Standard ? DegreeMode::SignedSum : DegreeMode::AbsoluteSum;
  std::vector<Edge> off;
  off.reserve(g.edge_count());
  for (const auto& e : g.edges()) off.push_back({e.i, e.j, -e.w});
  return SymmetricOperator(degrees(g, mode), std::move(off));
}

SymmetricOperator adjacency(const SignedGraph& g) {
  return SymmetricOperator(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count())),
                           std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

double quadratic_form(const SymmetricOperator& op, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return x.dot(op.apply(x));
}

}  // namespace sgp
