#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sgp/error.hpp"
#include "sgp/generators.hpp"
#include "sgp/graph.hpp"
#include "support.hpp"

using namespace sgp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("graph_from_edges canonicalizes") {
  const auto g = graph_from_edges(3, {{2, 1, 1.0}, {1, 0, 1.0}});
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.edge_count() == 2);
  CHECK(g.edges()[0] == Edge{0, 1, 1.0});
  CHECK(g.edges()[1] == Edge{1, 2, 1.0});
  CHECK(g.is_connected());
}

TEST_CASE("graph_from_edges rejects bad input") {
  CHECK(code_of([] { graph_from_edges(2, {{0, 1, 1.0}, {1, 0, 2.0}}); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { graph_from_edges(2, {{0, 2, 1.0}}); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { graph_from_edges(2, {{1, 1, 1.0}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { graph_from_edges(2, {{0, 1, 0.0}}); }) == ErrorCode::ZeroWeight);
  CHECK(code_of([] { graph_from_edges(2, {{0, 1, std::nan("")}}); }) == ErrorCode::NonfiniteWeight);
  CHECK(code_of([] { graph_from_edges(2, {{0, 1, std::numeric_limits<double>::infinity()}}); }) ==
        ErrorCode::NonfiniteWeight);
}

TEST_CASE("cobra from its six edges") {
  const auto g = graph_from_edges(6, {{0, 1, 1}, {0, 2, -1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 0.2}, {4, 5, 1}});
  CHECK(g == cobra());
  CHECK(g.has_negative_edges());
  CHECK(g.total_negative_weight() == 1.0);
}

TEST_CASE("degrees") {
  const auto path = graph_from_edges(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(degrees(path, DegreeMode::SignedSum) == Eigen::Vector3d(1, 2, 1));

  const auto g = graph_from_edges(3, {{0, 1, 1}, {1, 2, -1}});
  CHECK(degrees(g, DegreeMode::SignedSum) == Eigen::Vector3d(1, 0, -1));
  CHECK(degrees(g, DegreeMode::AbsoluteSum) == Eigen::Vector3d(1, 2, 1));
}

TEST_CASE("negate_weights") {
  const auto path = graph_from_edges(3, {{0, 1, 1}, {1, 2, 1}});
  const auto neg = negate_weights(path);
  for (const auto& e : neg.edges()) CHECK(e.w == -1.0);

  const auto c = negate_weights(cobra());
  CHECK(c.edges()[1] == Edge{0, 2, 1.0});
  CHECK(c.edges()[0].w == -1.0);
  CHECK(c.edges()[4].w == -0.2);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto g = test::random_signed_graph(rng, 15, 0.3, 0.4);
    CHECK(negate_weights(negate_weights(g)) == g);
  }
}

TEST_CASE("nullify_negative") {
  const auto c = nullify_negative(cobra());
  CHECK(c.edge_count() == 5);
  CHECK_FALSE(c.has_negative_edges());
  CHECK(c.vertex_count() == 6);

  const auto path = graph_from_edges(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}});
  CHECK(nullify_negative(path) == path);
  CHECK(nullify_negative(negate_weights(path)).edge_count() == 0);
}

TEST_CASE("connectivity ignores sign") {
  const auto g = graph_from_edges(4, {{0, 1, -1}, {2, 3, 1}});
  CHECK_FALSE(g.is_connected());
  CHECK(g.component_count() == 2);
  CHECK(graph_from_edges(1, {}).is_connected());
}

TEST_CASE("scale and permute") {
  const auto g = cobra();
  const auto s = scale_weights(g, 2.0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) CHECK(s.edges()[e].w == 2.0 * g.edges()[e].w);
  CHECK(code_of([&] { scale_weights(g, 0.0); }) == ErrorCode::InvalidArgument);

  const std::vector<Vertex> perm{5, 4, 3, 2, 1, 0};
  const auto p = permute_vertices(g, perm);
  const auto a = g.dense_adjacency();
  const auto b = p.dense_adjacency();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(b(5 - i, 5 - j) == a(i, j));

  const std::vector<Vertex> bad{0, 0, 1, 2, 3, 4};
  CHECK(code_of([&] { permute_vertices(g, bad); }) == ErrorCode::InvalidArgument);
}
