#include "mstc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mstc {

namespace {

std::uint64_t endpoint_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

Graph::Graph(NodeId node_count) : n_(node_count) {
  if (node_count < 1) {
    throw std::invalid_argument("graph needs at least one node");
  }
}

EdgeId Graph::add_edge(NodeId u, NodeId v, Cost cost) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw std::invalid_argument("edge endpoint out of range: (" +
                                std::to_string(u) + ", " + std::to_string(v) +
                                ")");
  }
  if (u == v) {
    throw std::invalid_argument("self-loop on node " + std::to_string(u));
  }
  if (cost < 0) {
    throw std::invalid_argument("negative edge cost");
  }
  if (u > v) std::swap(u, v);
  const EdgeId id = static_cast<EdgeId>(edges_.size());
  if (!by_endpoints_.emplace(endpoint_key(u, v), id).second) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " +
                                std::to_string(v) + ")");
  }
  edges_.push_back(Edge{id, u, v, cost});
  return id;
}

const Edge& Graph::edge(EdgeId id) const {
  if (id < 0 || id >= edge_count()) {
    throw std::invalid_argument("edge id out of range: " + std::to_string(id));
  }
  return edges_[static_cast<std::size_t>(id)];
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  auto it = by_endpoints_.find(endpoint_key(u, v));
  if (it == by_endpoints_.end()) return std::nullopt;
  return it->second;
}

bool SpanningTree::contains(EdgeId e) const {
  return std::binary_search(edge_ids.begin(), edge_ids.end(), e);
}

UnionFind::UnionFind(int n)
    : parent_(static_cast<std::size_t>(n)),
      size_(static_cast<std::size_t>(n), 1),
      components_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
  int root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    int next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(int a, int b) {
  int ra = find(a);
  int rb = find(b);
  if (ra == rb) return false;
  if (size_[ra] < size_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  size_[ra] += size_[rb];
  --components_;
  return true;
}

std::vector<EdgeId> sorted_edge_order(const Graph& graph) {
  std::vector<EdgeId> order(static_cast<std::size_t>(graph.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const Cost ca = graph.edge(a).cost;
    const Cost cb = graph.edge(b).cost;
    return ca != cb ? ca < cb : a < b;
  });
  return order;
}

namespace {

enum : std::uint8_t { kFree = 0, kForcedIn = 1, kForcedOut = 2 };

std::vector<std::uint8_t> mark_forced(const Graph& graph,
                                      std::span<const EdgeId> forced_in,
                                      std::span<const EdgeId> forced_out) {
  std::vector<std::uint8_t> state(static_cast<std::size_t>(graph.edge_count()),
                                  kFree);
  for (EdgeId e : forced_in) {
    graph.edge(e);  // range check
    state[static_cast<std::size_t>(e)] = kForcedIn;
  }
  for (EdgeId e : forced_out) {
    graph.edge(e);
    auto& s = state[static_cast<std::size_t>(e)];
    if (s == kForcedIn) {
      throw std::invalid_argument("edge " + std::to_string(e) +
                                  " both forced in and forced out");
    }
    s = kForcedOut;
  }
  return state;
}

}  // namespace

std::optional<SpanningTree> kruskal_mst(const Graph& graph,
                                        std::span<const EdgeId> order,
                                        std::span<const EdgeId> forced_in,
                                        std::span<const EdgeId> forced_out) {
  const auto state = mark_forced(graph, forced_in, forced_out);
  const NodeId n = graph.node_count();

  UnionFind uf(n);
  SpanningTree tree;
  tree.edge_ids.reserve(static_cast<std::size_t>(n) - 1);

  for (EdgeId e : forced_in) {
    const Edge& edge = graph.edge(e);
    if (!uf.unite(edge.u, edge.v)) return std::nullopt;  // forced cycle
    tree.edge_ids.push_back(e);
    tree.total_cost += edge.cost;
  }
  for (EdgeId e : order) {
    if (uf.components() == 1) break;
    if (state[static_cast<std::size_t>(e)] != kFree) continue;
    const Edge& edge = graph.edge(e);
    if (uf.unite(edge.u, edge.v)) {
      tree.edge_ids.push_back(e);
      tree.total_cost += edge.cost;
    }
  }
  if (uf.components() != 1) return std::nullopt;  // disconnected

  std::sort(tree.edge_ids.begin(), tree.edge_ids.end());
  return tree;
}

std::optional<SpanningTree> kruskal_mst(const Graph& graph,
                                        std::span<const EdgeId> forced_in,
                                        std::span<const EdgeId> forced_out) {
  const auto order = sorted_edge_order(graph);
  return kruskal_mst(graph, order, forced_in, forced_out);
}

bool is_spanning_tree(const Graph& graph, std::span<const EdgeId> edge_ids) {
  const NodeId n = graph.node_count();
  if (static_cast<NodeId>(edge_ids.size()) != n - 1) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(graph.edge_count()),
                                 0);
  UnionFind uf(n);
  for (EdgeId e : edge_ids) {
    if (e < 0 || e >= graph.edge_count()) return false;
    if (seen[static_cast<std::size_t>(e)]++) return false;
    const Edge& edge = graph.edge(e);
    if (!uf.unite(edge.u, edge.v)) return false;
  }
  return uf.components() == 1;
}

Cost total_cost(const Graph& graph, std::span<const EdgeId> edge_ids) {
  Cost sum = 0;
  for (EdgeId e : edge_ids) sum += graph.edge(e).cost;
  return sum;
}

}  // namespace mstc
