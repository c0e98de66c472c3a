#include <doctest.h>

#include "mstc/bounds.hpp"
#include "test_util.hpp"

using namespace mstc;

TEST_CASE("relaxation bound on the 7-node example") {
  const Instance inst = test::example7();
  auto lower = mst_lower_bound(inst);
  REQUIRE(lower.has_value());
  // The example's conflicts are non-binding at the MST: the relaxation is
  // tight at 13 (enumeration-verified in graph_test).
  CHECK(lower->value == 13);
  CHECK(lower->kind == BoundKind::Lower);
  REQUIRE(lower->witness.has_value());
  CHECK(lower->witness->total_cost == 13);
}

TEST_CASE("relaxation is strictly below the optimum when conflicts bind") {
  const Instance inst = test::triangle_binding_conflict();
  auto lower = mst_lower_bound(inst);
  REQUIRE(lower.has_value());
  CHECK(lower->value == 2);  // {e0, e1}, ignoring their conflict
  auto upper = greedy_upper_bound(inst);
  REQUIRE(upper.has_value());
  CHECK(upper->value == 6);  // must take the cost-5 edge
  CHECK(is_feasible(inst, *upper->witness));
}

TEST_CASE("conflict-free instances: bounds collapse onto the MST") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = test::small_random_instance(seed, true);
    auto mst = kruskal_mst(inst.graph);
    auto lower = mst_lower_bound(inst);
    auto upper = greedy_upper_bound(inst);
    REQUIRE(mst.has_value());
    REQUIRE(lower.has_value());
    REQUIRE(upper.has_value());
    CHECK(lower->value == mst->total_cost);
    CHECK(upper->value == mst->total_cost);
    CHECK(upper->witness->edge_ids == mst->edge_ids);
  }
}

TEST_CASE("disconnecting forced_out certifies branch infeasibility") {
  Graph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  Instance inst{std::move(g), ConflictSet(2), "path3"};
  const std::vector<EdgeId> out = {1};
  CHECK_FALSE(mst_lower_bound(inst, {}, out).has_value());
}

TEST_CASE("greedy on the 7-node example returns a feasible tree") {
  const Instance inst = test::example7();
  auto upper = greedy_upper_bound(inst);
  REQUIRE(upper.has_value());
  CHECK(upper->kind == BoundKind::Upper);
  REQUIRE(upper->witness.has_value());
  CHECK(is_feasible(inst, *upper->witness));
  CHECK(is_spanning_tree(inst.graph, upper->witness->edge_ids));
  CHECK(upper->value >= 13);  // optimum, oracle-verified elsewhere
}

TEST_CASE("greedy gives up on the fully conflicting triangle") {
  const Instance inst = test::triangle_all_conflicts();
  CHECK_FALSE(greedy_upper_bound(inst).has_value());
  // ...but the relaxation still has a spanning tree
  auto lower = mst_lower_bound(inst);
  REQUIRE(lower.has_value());
  CHECK(lower->value == 2);
}

TEST_CASE("bound sandwich and witness feasibility on random instances") {
  int both = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    auto lower = mst_lower_bound(inst);
    auto upper = greedy_upper_bound(inst, {32, seed});
    REQUIRE(lower.has_value());  // generated instances are connected
    if (!upper) continue;
    ++both;
    CHECK(lower->value <= upper->value);
    CHECK(is_feasible(inst, *upper->witness));
    CHECK(is_spanning_tree(inst.graph, upper->witness->edge_ids));
    CHECK(upper->witness->total_cost == upper->value);
    CHECK(upper->witness->total_cost ==
          total_cost(inst.graph, upper->witness->edge_ids));
  }
  CHECK(both > 30);  // the sweep must actually exercise the sandwich
}
