#include <doctest.h>

#include "forge/error.hpp"
#include "forge/graph.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

Graph random_graph(std::mt19937_64& rng, std::size_t n, unsigned density) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 100 < density) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("small graphs with known tree-depth") {
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(tree_depth(path).value == 3u);
  Graph k5(5);
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  CHECK(tree_depth(k5).value == 5u);
  CHECK(tree_depth(k5, 3).exceeds_budget());
  CHECK(tree_depth(k5, 5).value == 5u);
  Graph star(6);
  for (std::size_t v = 1; v < 6; ++v) star.add_edge(0, v);
  CHECK(tree_depth(star).value == 2u);
  CHECK(tree_depth(Graph(3)).value == 1u);
}

TEST_CASE("graph construction errors and duplicates") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), Error);
  CHECK_THROWS_AS(g.add_edge(0, 3), Error);
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.edges()[0] == Graph::Edge{0, 2});
  CHECK(g.components().size() == 2);
}

TEST_CASE("tree-depth matches the recursive definition") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 1 + rng() % 10;
    const Graph g = random_graph(rng, n, 20 + static_cast<unsigned>(rng() % 60));
    const auto res = tree_depth(g);
    REQUIRE(res.value);
    CHECK(*res.value == oracle::td(n, g.edges()));
    CHECK(forest_certifies(g, res.witness));
    CHECK(res.witness.height() == *res.value);
  }
}

TEST_CASE("forest_certifies rejects a forest missing an edge") {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  const RootedForest ok({RootedForest::kNoParent, 0, 1});
  CHECK(forest_certifies(g, ok));
  // 2 hangs off 0, so the edge 1-2 joins unrelated vertices.
  const RootedForest bad({RootedForest::kNoParent, 0, 0});
  CHECK_FALSE(forest_certifies(g, bad));
  CHECK_THROWS_AS(forest_certifies(g, RootedForest({RootedForest::kNoParent})), Error);
}

TEST_CASE("primal, dual and incidence graphs") {
  const RatMatrix a = matrix_from_ints(fixtures::band());
  CHECK(primal_graph(a).num_edges() == 2);
  CHECK(dual_graph(a).num_edges() == 1);
  CHECK(incidence_graph(a).num_edges() == 4);
  CHECK(primal_tree_depth(a) == 2);
  CHECK(dual_tree_depth(a) == 2);
  CHECK(incidence_tree_depth(a) == 3);
}

TEST_CASE("worked examples: dual tree-depth 5 and incidence tree-depth 4") {
  CHECK(dual_tree_depth(matrix_from_ints(fixtures::left_example())) == 5);
  CHECK(incidence_tree_depth(matrix_from_ints(fixtures::incidence_t5())) == 4);
}
