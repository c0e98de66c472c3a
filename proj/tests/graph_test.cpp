#include <doctest.h>

#include "mstc/graph.hpp"
#include "test_util.hpp"

using namespace mstc;

TEST_CASE("union-find basic contract") {
  UnionFind uf(4);
  CHECK(uf.components() == 4);
  CHECK(uf.unite(0, 1));
  CHECK(uf.find(0) == uf.find(1));
  CHECK_FALSE(uf.unite(0, 1));  // already joined
  CHECK(uf.components() == 3);

  // n singletons, n-1 successful unions -> one component
  UnionFind chain(6);
  for (int i = 0; i + 1 < 6; ++i) CHECK(chain.unite(i, i + 1));
  CHECK(chain.components() == 1);
  CHECK(chain.find(0) == chain.find(5));
}

TEST_CASE("graph construction rejects bad edges") {
  Graph g(3);
  g.add_edge(2, 0, 4);  // canonicalized
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 2);
  CHECK_THROWS_AS(g.add_edge(1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(-1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2, 5), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(g.add_edge(0, 1, -2), std::invalid_argument);
  CHECK(g.find_edge(2, 0).value() == 0);
  CHECK_FALSE(g.find_edge(1, 2).has_value());
  CHECK_THROWS_AS(g.edge(7), std::invalid_argument);
}

TEST_CASE("kruskal on the 7-node example") {
  const Instance inst = test::example7();

  auto tree = kruskal_mst(inst.graph);
  REQUIRE(tree.has_value());
  // The six cheapest edges contain a cycle, so the MST costs 13, not 12;
  // confirmed by the independent enumeration oracle.
  CHECK(tree->total_cost == 13);
  CHECK(tree->total_cost == test::brute_force_mst_cost(inst.graph).value());
  CHECK(tree->edge_ids == test::example7_optimal_edges());
  CHECK(is_spanning_tree(inst.graph, tree->edge_ids));

  SUBCASE("deterministic output") {
    auto again = kruskal_mst(inst.graph);
    CHECK(tree == again);
  }

  SUBCASE("forcing out key edges matches the oracle") {
    // forced_out = {a-b, a-c, f-a} in the example's ids
    const std::vector<EdgeId> out = {4, 2, 0};
    auto constrained = kruskal_mst(inst.graph, {}, out);
    auto expected = test::brute_force_mst_cost(inst.graph, {}, out);
    REQUIRE(constrained.has_value() == expected.has_value());
    if (constrained) CHECK(constrained->total_cost == *expected);
  }
}

TEST_CASE("kruskal path graph has the unique spanning tree") {
  Graph g(3);
  g.add_edge(0, 1, 7);
  g.add_edge(1, 2, 9);
  auto tree = kruskal_mst(g);
  REQUIRE(tree.has_value());
  CHECK(tree->edge_ids == std::vector<EdgeId>{0, 1});
  CHECK(tree->total_cost == 16);
}

TEST_CASE("kruskal infeasible outcomes and input errors") {
  Graph g(4);
  const EdgeId e01 = g.add_edge(0, 1, 1);
  const EdgeId e12 = g.add_edge(1, 2, 1);
  const EdgeId e02 = g.add_edge(0, 2, 1);
  g.add_edge(2, 3, 1);

  SUBCASE("forced cycle is absent, not an error") {
    const std::vector<EdgeId> in = {e01, e12, e02};
    CHECK_FALSE(kruskal_mst(g, in, {}).has_value());
  }
  SUBCASE("disconnection is absent") {
    const std::vector<EdgeId> out = {3};
    CHECK_FALSE(kruskal_mst(g, {}, out).has_value());
  }
  SUBCASE("invalid ids and overlapping sets throw") {
    const std::vector<EdgeId> bad = {11};
    const std::vector<EdgeId> e = {e01};
    CHECK_THROWS_AS(kruskal_mst(g, bad, {}), std::invalid_argument);
    CHECK_THROWS_AS(kruskal_mst(g, {}, bad), std::invalid_argument);
    CHECK_THROWS_AS(kruskal_mst(g, e, e), std::invalid_argument);
  }
}

TEST_CASE("single-node graph has the empty spanning tree") {
  Graph g(1);
  auto tree = kruskal_mst(g);
  REQUIRE(tree.has_value());
  CHECK(tree->edge_ids.empty());
  CHECK(tree->total_cost == 0);
  CHECK(is_spanning_tree(g, tree->edge_ids));
}

TEST_CASE("kruskal equals the enumeration oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    auto tree = kruskal_mst(inst.graph);
    auto oracle = test::brute_force_mst_cost(inst.graph);
    REQUIRE(tree.has_value());
    REQUIRE(oracle.has_value());
    CHECK(tree->total_cost == *oracle);
  }
}

TEST_CASE("forcing never lowers the relaxation cost") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    const EdgeId m = inst.graph.edge_count();
    Rng rng(seed, 5);
    const EdgeId a = static_cast<EdgeId>(rng.below(m));
    EdgeId b = static_cast<EdgeId>(rng.below(m));
    if (b == a) b = (b + 1) % m;

    const auto base = kruskal_mst(inst.graph);
    REQUIRE(base.has_value());
    const std::vector<EdgeId> in = {a};
    const std::vector<EdgeId> out = {b};
    if (auto forced = kruskal_mst(inst.graph, in, {})) {
      CHECK(forced->total_cost >= base->total_cost);
    }
    if (auto banned = kruskal_mst(inst.graph, {}, out)) {
      CHECK(banned->total_cost >= base->total_cost);
    }
  }
}
