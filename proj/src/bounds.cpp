#include "mstc/bounds.hpp"

#include <algorithm>

#include "mstc/rng.hpp"

namespace mstc {

std::optional<BoundResult> mst_lower_bound(const Instance& instance,
                                           std::span<const EdgeId> forced_in,
                                           std::span<const EdgeId> forced_out) {
  auto tree = kruskal_mst(instance.graph, forced_in, forced_out);
  if (!tree) return std::nullopt;
  BoundResult result;
  result.kind = BoundKind::Lower;
  result.value = tree->total_cost;
  result.witness = std::move(tree);
  return result;
}

namespace {

// One conflict-aware scan over `order`; nullopt when stuck.
std::optional<SpanningTree> greedy_scan(const Instance& instance,
                                        std::span<const EdgeId> order) {
  const Graph& graph = instance.graph;
  const NodeId n = graph.node_count();
  UnionFind uf(n);
  std::vector<std::uint8_t> blocked(
      static_cast<std::size_t>(graph.edge_count()), 0);
  SpanningTree tree;
  tree.edge_ids.reserve(static_cast<std::size_t>(n) - 1);

  for (EdgeId e : order) {
    if (uf.components() == 1) break;
    if (blocked[static_cast<std::size_t>(e)]) continue;
    const Edge& edge = graph.edge(e);
    if (!uf.unite(edge.u, edge.v)) continue;
    tree.edge_ids.push_back(e);
    tree.total_cost += edge.cost;
    for (EdgeId f : instance.conflicts.conflicting(e)) {
      blocked[static_cast<std::size_t>(f)] = 1;
    }
  }
  if (uf.components() != 1) return std::nullopt;
  std::sort(tree.edge_ids.begin(), tree.edge_ids.end());
  return tree;
}

}  // namespace

std::optional<BoundResult> greedy_upper_bound(const Instance& instance,
                                              const GreedyOptions& options) {
  auto order = sorted_edge_order(instance.graph);
  auto make_result = [](SpanningTree tree) {
    BoundResult result;
    result.kind = BoundKind::Upper;
    result.value = tree.total_cost;
    result.witness = std::move(tree);
    return result;
  };

  if (auto tree = greedy_scan(instance, order)) {
    return make_result(std::move(*tree));
  }

  // Repair: tie positions are order indices i with cost[i] == cost[i+1];
  // swapping there keeps the order cost-sorted.
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (instance.graph.edge(order[i]).cost ==
        instance.graph.edge(order[i + 1]).cost) {
      ties.push_back(i);
    }
  }
  if (ties.empty()) return std::nullopt;

  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(options.seed, static_cast<std::uint64_t>(r));
    const std::size_t at = ties[static_cast<std::size_t>(
        rng.below(static_cast<std::uint64_t>(ties.size())))];
    std::swap(order[at], order[at + 1]);
    if (auto tree = greedy_scan(instance, order)) {
      return make_result(std::move(*tree));
    }
  }
  return std::nullopt;
}

}  // namespace mstc
