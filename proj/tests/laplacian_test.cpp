#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "sgp/error.hpp"
#include "sgp/generators.hpp"
#include "sgp/laplacian.hpp"
#include "support.hpp"

using namespace sgp;

namespace {

Eigen::VectorXd eigenvalues_of(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("unit path n=3 standard Laplacian") {
  const auto l = laplacian(path_string({3, {}}), LaplacianKind::Standard).dense();
  Eigen::Matrix3d expected;
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(l == expected);
}

TEST_CASE("unit path tridiagonal pattern") {
  for (std::size_t n : {3u, 4u, 20u, 75u}) {
    const auto l = laplacian(path_string({n, {}}), LaplacianKind::Standard).dense();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double expected = 0.0;
        if (i == j) expected = (i == 0 || i == n - 1) ? 1.0 : 2.0;
        if (i + 1 == j || j + 1 == i) expected = -1.0;
        CHECK(l(i, j) == expected);
      }
    }
  }
}

TEST_CASE("single negative edge") {
  const auto g = graph_from_edges(2, {{0, 1, -1.0}});
  const auto l = laplacian(g, LaplacianKind::Standard).dense();
  CHECK(l == (Eigen::Matrix2d() << -1, 1, 1, -1).finished());
  CHECK(eigenvalues_of(l).isApprox(Eigen::Vector2d(-2, 0)));

  const auto s = laplacian(g, LaplacianKind::Signed).dense();
  CHECK(s == (Eigen::Matrix2d() << 1, 1, 1, 1).finished());
  CHECK(eigenvalues_of(s).isApprox(Eigen::Vector2d(0, 2)));
}

TEST_CASE("matches the edge-list oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto g = test::random_signed_graph(rng, 2 + t % 30, 0.3, 0.4, t % 2 == 0);
    CHECK(laplacian(g, LaplacianKind::Standard).dense() == test::oracle_standard(g));
    CHECK(laplacian(g, LaplacianKind::Signed).dense() == test::oracle_signed(g));
  }
}

TEST_CASE("quadratic form equals the edge sums") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    const auto g = test::random_signed_graph(rng, 2 + t % 40, 0.25, 0.4, false);
    const auto std_op = laplacian(g, LaplacianKind::Standard);
    const auto sgn_op = laplacian(g, LaplacianKind::Signed);
    for (int r = 0; r < 10; ++r) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(g.vertex_count()));
      for (auto& v : x) v = normal(rng);
      double q_std = 0.0, q_sgn = 0.0, scale = 0.0;
      for (const auto& e : g.edges()) {
        const double d = x[e.i] - x[e.j];
        const double s = x[e.i] - (e.w > 0 ? 1.0 : -1.0) * x[e.j];
        q_std += e.w * d * d;
        q_sgn += std::abs(e.w) * s * s;
        scale += std::abs(e.w) * (x[e.i] * x[e.i] + x[e.j] * x[e.j]);
      }
      CHECK(std::abs(quadratic_form(std_op, x) - q_std) <= 1e-12 * (1.0 + scale));
      CHECK(std::abs(quadratic_form(sgn_op, x) - q_sgn) <= 1e-12 * (1.0 + scale));
    }
  }
}

TEST_CASE("ones vector is in the kernel of the standard Laplacian") {
  const auto op = laplacian(path_string({3, {}}), LaplacianKind::Standard);
  CHECK(quadratic_form(op, Eigen::Vector3d::Ones()) == 0.0);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto g = test::random_signed_graph(rng, 25, 0.3, 0.5);
    const auto ones = Eigen::VectorXd::Ones(25);
    CHECK(laplacian(g, LaplacianKind::Standard).apply(ones).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("signed Laplacian is positive semidefinite") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const auto g = test::random_signed_graph(rng, 3 + t, 0.3, 0.5);
    const auto ev = eigenvalues_of(laplacian(g, LaplacianKind::Signed).dense());
    CHECK(ev[0] >= -1e-12 * ev[ev.size() - 1]);
  }
}

TEST_CASE("signed and standard differ by twice the negative degrees") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto g = test::random_signed_graph(rng, 20, 0.3, 0.5);
    const Eigen::MatrixXd diff =
        laplacian(g, LaplacianKind::Signed).dense() - laplacian(g, LaplacianKind::Standard).dense();
    const Eigen::VectorXd shift = degrees(g, DegreeMode::AbsoluteSum) - degrees(g, DegreeMode::SignedSum);
    CHECK((diff - Eigen::MatrixXd(shift.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(shift.minCoeff() >= 0.0);
  }
}

TEST_CASE("negation duality") {
  for (const auto& g : {path_string({75, {{36, -0.05}}}), cobra(), dumbbell(), noisy_string(12, {7, -0.5}, 1e-2, 4)}) {
    CHECK(laplacian(negate_weights(g), LaplacianKind::Standard).dense() ==
          -laplacian(g, LaplacianKind::Standard).dense());
  }
  CHECK(laplacian(negate_weights(cobra()), LaplacianKind::Signed).dense() !=
        -laplacian(cobra(), LaplacianKind::Signed).dense());
}

TEST_CASE("operator plumbing") {
  const auto op = laplacian(dumbbell(), LaplacianKind::Signed);
  Eigen::MatrixXd block = Eigen::MatrixXd::Random(13, 3);
  const Eigen::MatrixXd ab = op.apply_block(block);
  for (int c = 0; c < 3; ++c) CHECK(ab.col(c) == op.apply(block.col(c)));
  CHECK(SymmetricOperator::from_dense(op.dense()).dense() == op.dense());

  Eigen::Matrix2d asym;
  asym << 1, 2, 3, 4;
  CHECK_THROWS_AS(SymmetricOperator::from_dense(asym), Error);
  CHECK(to_string(LaplacianKind::Signed) == "signed");
  CHECK(parse_laplacian_kind("standard") == LaplacianKind::Standard);
  CHECK_THROWS_AS(parse_laplacian_kind("normalized"), Error);
  CHECK(adjacency(cobra()).dense() == cobra().dense_adjacency());
}

TEST_CASE("dense materialization is bounded") {
  const auto big = path_string({kDenseThreshold + 1, {}});
  const auto op = laplacian(big, LaplacianKind::Standard);
  try {
    (void)op.dense();
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionTooLarge);
  }
}
