#include "mstc/conflicts.hpp"

#include <algorithm>
#include <stdexcept>

namespace mstc {

namespace {

std::uint64_t pair_key(EdgeId a, EdgeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

ConflictSet::ConflictSet(EdgeId edge_count)
    : edge_count_(edge_count),
      adjacency_(static_cast<std::size_t>(edge_count)) {}

bool ConflictSet::add_pair(EdgeId a, EdgeId b) {
  if (a < 0 || a >= edge_count_ || b < 0 || b >= edge_count_) {
    throw std::invalid_argument("conflict pair references edge out of range");
  }
  if (a == b) {
    throw std::invalid_argument("edge " + std::to_string(a) +
                                " cannot conflict with itself");
  }
  if (a > b) std::swap(a, b);
  if (!keys_.insert(pair_key(a, b)).second) {
    ++duplicates_;
    return false;
  }
  pairs_.emplace_back(a, b);
  adjacency_[static_cast<std::size_t>(a)].push_back(b);
  adjacency_[static_cast<std::size_t>(b)].push_back(a);
  return true;
}

std::span<const EdgeId> ConflictSet::conflicting(EdgeId e) const {
  if (e < 0 || e >= edge_count_) {
    throw std::invalid_argument("edge id out of range: " + std::to_string(e));
  }
  return adjacency_[static_cast<std::size_t>(e)];
}

bool ConflictSet::contains(EdgeId a, EdgeId b) const {
  if (a > b) std::swap(a, b);
  return keys_.count(pair_key(a, b)) > 0;
}

std::vector<std::pair<EdgeId, EdgeId>> conflict_violations(
    const Instance& instance, const SpanningTree& tree) {
  std::vector<std::uint8_t> in_tree(
      static_cast<std::size_t>(instance.graph.edge_count()), 0);
  for (EdgeId e : tree.edge_ids) {
    instance.graph.edge(e);  // range check
    in_tree[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<std::pair<EdgeId, EdgeId>> violated;
  for (const auto& [a, b] : instance.conflicts.pairs()) {
    if (in_tree[static_cast<std::size_t>(a)] &&
        in_tree[static_cast<std::size_t>(b)]) {
      violated.emplace_back(a, b);
    }
  }
  std::sort(violated.begin(), violated.end());
  return violated;
}

bool is_feasible(const Instance& instance, const SpanningTree& tree) {
  return conflict_violations(instance, tree).empty();
}

Propagation propagate(const Instance& instance,
                      std::span<const EdgeId> forced_in,
                      std::span<const EdgeId> forced_out) {
  const auto m = static_cast<std::size_t>(instance.graph.edge_count());
  std::vector<std::uint8_t> in(m, 0);
  std::vector<std::uint8_t> out(m, 0);
  for (EdgeId e : forced_in) {
    instance.graph.edge(e);
    in[static_cast<std::size_t>(e)] = 1;
  }
  for (EdgeId e : forced_out) {
    instance.graph.edge(e);
    if (in[static_cast<std::size_t>(e)]) {
      throw std::invalid_argument("forced sets overlap on edge " +
                                  std::to_string(e));
    }
    out[static_cast<std::size_t>(e)] = 1;
  }

  Propagation result;
  for (EdgeId e : forced_in) {
    for (EdgeId f : instance.conflicts.conflicting(e)) {
      if (in[static_cast<std::size_t>(f)]) result.contradiction = true;
      out[static_cast<std::size_t>(f)] = 1;
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (out[e]) result.forced_out.push_back(static_cast<EdgeId>(e));
  }
  return result;
}

}  // namespace mstc
