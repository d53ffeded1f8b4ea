#include "sgp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgp/error.hpp"

namespace sgp {

namespace {

constexpr double kConstantCorrelation = 1.0 - 1e-6;

bool is_constant_vector(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double n = static_cast<double>(v.size());
  const double norm = v.norm();
  if (norm == 0.0) return false;
  return std::abs(v.sum()) / (std::sqrt(n) * norm) > kConstantCorrelation;
}

Spectrum solve(const SymmetricOperator& op, LaplacianKind kind, const SolverOptions& solver) {
  const auto n = op.dimension();
  if (solver.method == SolverMethod::Dense) {
    return kind == LaplacianKind::Standard ? dense_spectrum_deflated(op) : dense_spectrum(op);
  }
  SolverConfig cfg = solver.lobpcg;
  // Standard works in the ones complement; Signed may have to step over a
  // constant leading vector, so it asks for one extra pair.
  const std::size_t dim = kind == LaplacianKind::Standard ? n - 1 : n;
  const std::size_t wanted = kind == LaplacianKind::Standard ? 2 : 3;
  cfg.deflate_ones = kind == LaplacianKind::Standard;
  cfg.k = std::min(dim, std::max(cfg.k, wanted));
  cfg.block_size = std::min(dim, std::max(cfg.block_size, cfg.k));
  try {
    return lobpcg_smallest(op, cfg).spectrum;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BasisDegenerate) throw Error(ErrorCode::SolverFailed, e.what());
    throw;
  }
}

}  // namespace

FiedlerResult fiedler(const SignedGraph& g, LaplacianKind kind, const SolverOptions& solver) {
  const auto n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two vertices");
  if (!g.is_connected()) {
    throw Error(ErrorCode::MultiComponent,
                "graph has " + std::to_string(g.component_count()) + " components; the Fiedler vector is not unique");
  }

  FiedlerResult f;
  f.kind = kind;
  f.spectrum = solve(laplacian(g, kind), kind, solver);
  const Spectrum& s = f.spectrum;

  std::optional<std::size_t> skipped;
  if (kind == LaplacianKind::Signed && s.size() > 1 && is_constant_vector(s.eigenvectors.col(0))) {
    skipped = 0;
    f.skipped_constant = true;
  }
  f.index = skipped ? 1 : 0;
  const auto idx = static_cast<Eigen::Index>(f.index);
  f.eigenvalue = s.eigenvalues[idx];
  f.vector = s.eigenvectors.col(idx).normalized();
  normalize_sign(f.vector);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  f.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (skipped && i == *skipped) continue;
    const double lambda = s.eigenvalues[static_cast<Eigen::Index>(i)];
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
    if (i != f.index) f.gap = std::min(f.gap, std::abs(lambda - f.eigenvalue));
  }
  if (!s.is_full() && s.lambda_max_estimate) hi = std::max(hi, *s.lambda_max_estimate);
  f.spread = hi - lo;
  f.clustered_warning = f.gap <= kClusteredGapFraction * f.spread;
  f.converged = true;
  for (std::size_t i = 0; i <= f.index; ++i) f.converged = f.converged && s.converged[i];
  return f;
}

std::size_t Partition::count(Side s) const noexcept {
  return static_cast<std::size_t>(std::count(side.begin(), side.end(), s));
}

std::vector<std::size_t> Partition::members(Side s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (side[i] == s) out.push_back(i);
  }
  return out;
}

Partition partition_from_labels(const std::vector<int>& labels) {
  Partition p;
  p.side.reserve(labels.size());
  for (int label : labels) {
    if (label != 0 && label != 1) throw Error(ErrorCode::InvalidArgument, "side labels must be 0 or 1");
    p.side.push_back(label == 0 ? Side::A : Side::B);
  }
  return p;
}

bool same_split(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  if (a.side == b.side) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.side[i] == b.side[i]) return false;
  }
  return true;
}

Partition bisect(const Eigen::Ref<const Eigen::VectorXd>& v, ZeroPolicy zero_policy) {
  Eigen::VectorXd x = v;
  const double scale = x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
  if (!(scale > 0.0)) throw Error(ErrorCode::DegenerateVector, "zero vector");
  normalize_sign(x);

  Partition p;
  p.side.resize(static_cast<std::size_t>(x.size()));
  const Side zero_side = zero_policy == ZeroPolicy::PositiveSide ? Side::A : Side::B;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto& s = p.side[static_cast<std::size_t>(i)];
    if (std::abs(x[i]) <= kZeroSnap * scale) {
      s = zero_side;
    } else {
      s = x[i] > 0.0 ? Side::A : Side::B;
    }
  }
  if (p.count(Side::A) == 0 || p.count(Side::B) == 0) {
    throw Error(ErrorCode::DegenerateVector, "all components have the same sign");
  }
  return p;
}

Partition bisect(const FiedlerResult& f, ZeroPolicy zero_policy) { return bisect(f.vector, zero_policy); }

Eigen::VectorXd confidence(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double sq = v.squaredNorm();
  if (!(sq > 0.0)) throw Error(ErrorCode::DegenerateVector, "zero vector");
  return v.array().square() / sq;
}

Eigen::VectorXd confidence(const FiedlerResult& f) { return confidence(f.vector); }

CutMetrics cut_metrics(const SignedGraph& g, const Partition& p) {
  if (p.size() != g.vertex_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "partition covers " + std::to_string(p.size()) + " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  const auto size_a = p.count(Side::A);
  const auto size_b = p.count(Side::B);
  if (size_a == 0 || size_b == 0) throw Error(ErrorCode::EmptySide, "both sides must be nonempty");

  CutMetrics m;
  for (const auto& e : g.edges()) {
    const Side a = p.side[e.i];
    const Side b = p.side[e.j];
    if (e.w < 0.0) m.total_negative -= e.w;
    if (a != b) {
      m.cut += e.w;
      if (e.w > 0.0) {
        m.cut_plus += e.w;
      } else {
        m.cut_minus_cross -= e.w;
      }
    } else if (e.w < 0.0) {
      (a == Side::A ? m.cut_minus_within_a : m.cut_minus_within_b) -= e.w;
    }
  }
  m.signed_cut = 2.0 * m.cut_plus + m.cut_minus_within_a + m.cut_minus_within_b;
  const double balance = 1.0 / static_cast<double>(size_a) + 1.0 / static_cast<double>(size_b);
  m.ratio_cut = m.cut * balance;
  m.signed_ratio_cut = m.signed_cut * balance;
  return m;
}

}  // namespace sgp

namespace sgp {

std::optional<std::size_t> dominant_sign_change(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() < 2) return std::nullopt;
  const double scale = v.cwiseAbs().maxCoeff();
  auto positive = [&](Eigen::Index i) { return std::abs(v[i]) <= kZeroSnap * scale || v[i] > 0.0; };
  std::optional<std::size_t> best;
  double best_jump = -1.0;
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
    if (positive(i) == positive(i + 1)) continue;
    const double jump = std::abs(v[i] - v[i + 1]);
    if (jump > best_jump) {
      best_jump = jump;
      best = static_cast<std::size_t>(i);
    }
  }
  return best;
}

}  // namespace sgp
