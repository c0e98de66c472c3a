#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace mstc {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Cost = std::int64_t;

// Undirected weighted edge. Endpoints are canonicalized to u < v; id equals
// the edge's position in its graph's edge list.
struct Edge {
  EdgeId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  Cost cost = 0;
};

class Graph {
 public:
  explicit Graph(NodeId node_count);

  // Canonicalizes endpoints and appends the edge, returning its id. Throws
  // std::invalid_argument on self-loops, endpoints out of range, negative
  // cost, or a duplicate (u, v) pair.
  EdgeId add_edge(NodeId u, NodeId v, Cost cost);

  NodeId node_count() const { return n_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId id) const;
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

 private:
  NodeId n_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, EdgeId> by_endpoints_;
};

// edge_ids sorted ascending; total_cost is the sum of member costs.
struct SpanningTree {
  std::vector<EdgeId> edge_ids;
  Cost total_cost = 0;

  bool operator==(const SpanningTree&) const = default;
  bool contains(EdgeId e) const;
};

// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n);

  int find(int x);
  // Merges the sets of a and b; returns false if already joined.
  bool unite(int a, int b);
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_;
};

// Edge ids ordered by (cost, id) ascending; the tie-break order used by every
// Kruskal-style scan in this project.
std::vector<EdgeId> sorted_edge_order(const Graph& graph);

// Minimum spanning tree containing every forced_in edge and no forced_out
// edge, conflicts ignored. Returns nullopt when no such tree exists (cycle
// among forced_in edges or the remaining graph is disconnected). Ties are
// broken by (cost, id), so identical inputs give identical trees. Throws
// std::invalid_argument on invalid edge ids or overlapping forced sets.
std::optional<SpanningTree> kruskal_mst(const Graph& graph,
                                        std::span<const EdgeId> forced_in = {},
                                        std::span<const EdgeId> forced_out = {});

// Variant taking a precomputed sorted_edge_order(graph), for callers that run
// many scans on one graph.
std::optional<SpanningTree> kruskal_mst(const Graph& graph,
                                        std::span<const EdgeId> order,
                                        std::span<const EdgeId> forced_in,
                                        std::span<const EdgeId> forced_out);

// True iff edge_ids are valid, distinct, acyclic and connect all nodes.
bool is_spanning_tree(const Graph& graph, std::span<const EdgeId> edge_ids);

Cost total_cost(const Graph& graph, std::span<const EdgeId> edge_ids);

}  // namespace mstc
