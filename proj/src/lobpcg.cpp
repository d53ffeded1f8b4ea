#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "sgp/eigensolver.hpp"
#include "sgp/error.hpp"
#include "sgp/random.hpp"

namespace sgp {

namespace {

// Columns whose component outside the current span falls below this
// fraction of their length are treated as linearly dependent.
constexpr double kDropTolerance = 1e-10;

/// Growing orthonormal basis with an optional fixed block of constraint
/// vectors (ones, locked eigenvectors) that every column stays orthogonal to.
class OrthoBasis {
 public:
  OrthoBasis(const Eigen::MatrixXd& constraints, Eigen::Index capacity)
      : constraints_(constraints), basis_(constraints.rows(), capacity) {}

  Eigen::Index size() const noexcept { return used_; }
  void truncate(Eigen::Index size) { used_ = size; }
  auto columns() const { return basis_.leftCols(used_); }

  /// Appends v if it is independent of everything already held; CGS with
  /// reorthogonalization until the norm stops dropping by more than half.
  bool append(Eigen::VectorXd v) {
    const double norm0 = v.norm();
    if (!(norm0 > 0.0) || !std::isfinite(norm0)) return false;
    v /= norm0;
    double remaining = 1.0;
    for (int pass = 0; pass < 3; ++pass) {
      const double before = v.norm();
      if (constraints_.cols() > 0) v -= constraints_ * (constraints_.transpose() * v);
      if (used_ > 0) v -= basis_.leftCols(used_) * (basis_.leftCols(used_).transpose() * v);
      const double after = v.norm();
      remaining *= before > 0.0 ? after / before : 0.0;
      if (remaining < kDropTolerance) return false;
      if (after > 0.5 * before) break;
    }
    basis_.col(used_++) = v / v.norm();
    return true;
  }

 private:
  const Eigen::MatrixXd& constraints_;
  Eigen::MatrixXd basis_;
  Eigen::Index used_ = 0;
};

Eigen::MatrixXd remove_columns(const Eigen::MatrixXd& m, const std::vector<bool>& drop) {
  Eigen::Index kept = 0;
  for (bool d : drop) kept += d ? 0 : 1;
  Eigen::MatrixXd out(m.rows(), kept);
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (!drop[static_cast<std::size_t>(j)]) out.col(c++) = m.col(j);
  }
  return out;
}

Eigen::VectorXd remove_entries(const Eigen::VectorXd& v, const std::vector<bool>& drop) {
  std::vector<double> kept;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!drop[static_cast<std::size_t>(j)]) kept.push_back(v[j]);
  }
  return Eigen::Map<const Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
}

void append_column(Eigen::MatrixXd& m, const Eigen::Ref<const Eigen::VectorXd>& v) {
  m.conservativeResize(v.size(), m.cols() + 1);
  m.col(m.cols() - 1) = v;
}

void append_entry(Eigen::VectorXd& v, double x) {
  v.conservativeResize(v.size() + 1);
  v[v.size() - 1] = x;
}

Eigen::VectorXd sorted(Eigen::VectorXd a, const Eigen::VectorXd& b) {
  const auto na = a.size();
  a.conservativeResize(na + b.size());
  a.tail(b.size()) = b;
  std::sort(a.data(), a.data() + a.size());
  return a;
}

}  // namespace

void SolverConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (block_size < k) throw Error(ErrorCode::InvalidArgument, "block_size must be at least k");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
}

double estimate_operator_norm(const SymmetricOperator& op, std::uint64_t seed, std::size_t iterations) {
  const auto n = static_cast<Eigen::Index>(op.dimension());
  if (n == 0) return 0.0;
  UniformSource rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
  x.normalize();
  double estimate = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = op.apply(x);
    const double ny = y.norm();
    estimate = std::max(estimate, ny);
    if (ny == 0.0) break;
    x = y / ny;
  }
  return estimate;
}

LobpcgResult lobpcg_smallest(const SymmetricOperator& op, const SolverConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(op.dimension());
  const auto m = static_cast<Eigen::Index>(cfg.block_size);
  const auto k = static_cast<Eigen::Index>(cfg.k);
  const Eigen::Index search_dim = n - (cfg.deflate_ones ? 1 : 0);
  if (n == 0 || m > search_dim) {
    throw Error(ErrorCode::InvalidArgument,
                "block_size " + std::to_string(m) + " exceeds search space dimension " + std::to_string(std::max<Eigen::Index>(search_dim, 0)));
  }

  LobpcgResult result;
  result.norm_estimate = estimate_operator_norm(op, cfg.seed);
  const double threshold = cfg.tol * std::max(1.0, result.norm_estimate);

  Eigen::MatrixXd ones(n, cfg.deflate_ones ? 1 : 0);
  if (cfg.deflate_ones) ones.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  auto project = [&](Eigen::MatrixXd& block) {
    if (cfg.deflate_ones) block -= ones * (ones.transpose() * block);
  };

  // Random start, orthonormalized in the admissible space.
  UniformSource rng(cfg.seed);
  Eigen::MatrixXd start(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) start(i, c) = rng.uniform(-1.0, 1.0);
  }
  OrthoBasis initial(ones, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    if (!initial.append(start.col(c))) throw Error(ErrorCode::BasisDegenerate, "initial block is rank deficient");
  }

  Eigen::MatrixXd x = initial.columns();
  Eigen::MatrixXd ax = op.apply_block(x);
  {
    Eigen::MatrixXd h = x.transpose() * ax;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    x = x * es.eigenvectors();
    ax = ax * es.eigenvectors();
  }
  Eigen::VectorXd theta = (x.transpose() * ax).diagonal();
  Eigen::MatrixXd p(n, 0);

  // Locked (converged) pairs, removed from the active search.
  Eigen::MatrixXd locked(n, 0);
  Eigen::VectorXd locked_theta(0);
  Eigen::VectorXd locked_res(0);

  auto residuals = [&](const Eigen::MatrixXd& xs, const Eigen::MatrixXd& axs, const Eigen::VectorXd& th) {
    Eigen::MatrixXd r = axs - xs * th.asDiagonal();
    project(r);
    return r;
  };

  Eigen::MatrixXd r = residuals(x, ax, theta);
  std::size_t iterations = 0;
  while (true) {
    Eigen::VectorXd res = r.colwise().norm().transpose();

    // Stop once the k smallest Ritz values, locked or active, have converged.
    {
      std::vector<std::pair<double, bool>> all;
      for (Eigen::Index c = 0; c < locked_theta.size(); ++c) all.emplace_back(locked_theta[c], true);
      for (Eigen::Index c = 0; c < theta.size(); ++c) all.emplace_back(theta[c], res[c] <= threshold);
      std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      const bool done = std::all_of(all.begin(), all.begin() + k, [](const auto& e) { return e.second; });
      if (done || iterations == cfg.max_iter) break;
    }

    std::vector<bool> lock(static_cast<std::size_t>(theta.size()), false);
    bool any_lock = false;
    for (Eigen::Index c = 0; c < theta.size(); ++c) {
      if (res[c] <= threshold) {
        lock[static_cast<std::size_t>(c)] = true;
        any_lock = true;
        append_column(locked, x.col(c));
        append_entry(locked_theta, theta[c]);
        append_entry(locked_res, res[c]);
      }
    }
    if (any_lock) {
      x = remove_columns(x, lock);
      ax = remove_columns(ax, lock);
      r = remove_columns(r, lock);
      theta = remove_entries(theta, lock);
      if (p.cols() > 0) p = remove_columns(p, lock);
    }
    const Eigen::Index active = x.cols();

    Eigen::MatrixXd constraints(n, ones.cols() + locked.cols());
    constraints << ones, locked;
    OrthoBasis basis(constraints, 3 * active);
    for (Eigen::Index c = 0; c < active; ++c) {
      if (!basis.append(x.col(c))) throw Error(ErrorCode::BasisDegenerate, "Ritz block lost rank");
    }
    for (Eigen::Index c = 0; c < active; ++c) basis.append(r.col(c));
    const Eigen::Index without_p = basis.size();
    bool restart = false;
    for (Eigen::Index c = 0; c < p.cols() && !restart; ++c) restart = !basis.append(p.col(c));
    if (restart) basis.truncate(without_p);

    const Eigen::MatrixXd s = basis.columns();
    const Eigen::MatrixXd as = op.apply_block(s);
    Eigen::MatrixXd h = s.transpose() * as;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    if (es.info() != Eigen::Success) throw Error(ErrorCode::BasisDegenerate, "Rayleigh-Ritz failed");
    const Eigen::MatrixXd coeffs = es.eigenvectors().leftCols(active);
    theta = es.eigenvalues().head(active);
    x = s * coeffs;
    ax = as * coeffs;
    const Eigen::Index extra = s.cols() - active;
    if (extra > 0) {
      p = s.rightCols(extra) * coeffs.bottomRows(extra);
    } else {
      p.resize(n, 0);
    }
    r = residuals(x, ax, theta);
    ++iterations;

    IterationTrace::Step step;
    step.ritz_values = sorted(theta, locked_theta);
    step.max_residual = std::max(locked_res.size() > 0 ? locked_res.maxCoeff() : 0.0,
                                 r.cols() > 0 ? r.colwise().norm().maxCoeff() : 0.0);
    result.trace.steps.push_back(std::move(step));
  }

  // Gather locked and active pairs, keep the k smallest.
  Eigen::MatrixXd vectors(n, locked.cols() + x.cols());
  vectors << locked, x;
  Eigen::VectorXd values(locked_theta.size() + theta.size());
  values << locked_theta, theta;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

  Spectrum& spec = result.spectrum;
  spec.deflated_ones = cfg.deflate_ones;
  spec.lambda_max_estimate = result.norm_estimate;
  spec.eigenvalues.resize(k);
  spec.eigenvectors.resize(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    spec.eigenvalues[c] = values[order[static_cast<std::size_t>(c)]];
    spec.eigenvectors.col(c) = vectors.col(order[static_cast<std::size_t>(c)]);
    normalize_sign(spec.eigenvectors.col(c));
  }
  Eigen::MatrixXd final_r = residuals(spec.eigenvectors, op.apply_block(spec.eigenvectors), spec.eigenvalues);
  spec.residual_norms = final_r.colwise().norm().transpose();
  spec.converged.resize(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c) spec.converged[static_cast<std::size_t>(c)] = spec.residual_norms[c] <= threshold;
  return result;
}

}  // namespace sgp
