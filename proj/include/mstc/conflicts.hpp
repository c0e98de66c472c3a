#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mstc/graph.hpp"

namespace mstc {

// Set of unordered conflicting edge pairs plus the per-edge adjacency view
// delta(e) = edges in conflict with e. Pairs are stored smaller-id-first in
// insertion order; symmetric or repeated insertions are counted and dropped.
class ConflictSet {
 public:
  ConflictSet() = default;
  explicit ConflictSet(EdgeId edge_count);

  // Returns false (and counts a duplicate) if {a, b} is already present.
  // Throws std::invalid_argument on a == b or ids out of range.
  bool add_pair(EdgeId a, EdgeId b);

  const std::vector<std::pair<EdgeId, EdgeId>>& pairs() const { return pairs_; }
  std::span<const EdgeId> conflicting(EdgeId e) const;  // delta(e)
  EdgeId edge_count() const { return edge_count_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  int duplicates_ignored() const { return duplicates_; }
  bool contains(EdgeId a, EdgeId b) const;

 private:
  EdgeId edge_count_ = 0;
  std::vector<std::pair<EdgeId, EdgeId>> pairs_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::unordered_set<std::uint64_t> keys_;
  int duplicates_ = 0;
};

struct Instance {
  Graph graph;
  ConflictSet conflicts;
  std::string name;
};

// Every conflict pair with both members in the tree, sorted by (min id,
// max id). Empty iff the tree is conflict-feasible.
std::vector<std::pair<EdgeId, EdgeId>> conflict_violations(
    const Instance& instance, const SpanningTree& tree);

bool is_feasible(const Instance& instance, const SpanningTree& tree);

struct Propagation {
  std::vector<EdgeId> forced_out;  // closed under delta(forced_in), sorted
  bool contradiction = false;      // closure hit a forced_in edge
};

// Logical closure of the conflict constraints over the forcing decisions:
// forcing e in forces all of delta(e) out. Forcing out never forces anything
// in, so one level of closure is a fixpoint. Throws std::invalid_argument if
// the input sets already overlap.
Propagation propagate(const Instance& instance,
                      std::span<const EdgeId> forced_in,
                      std::span<const EdgeId> forced_out);

}  // namespace mstc
