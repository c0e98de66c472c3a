#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "mstc/conflicts.hpp"

namespace mstc {

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

const char* to_string(SolveStatus status);

struct SolveProgress {
  std::uint64_t nodes_explored = 0;
  std::size_t open_nodes = 0;
  std::optional<Cost> lower_bound;
  std::optional<Cost> upper_bound;
  double elapsed_seconds = 0.0;
};

struct SolveOptions {
  double time_limit_seconds = 5010.0;

  // Cost-only seed bound: nodes with lb > initial_upper_bound are pruned
  // (not >=, so an equal-cost incumbent can still be found). Must be the
  // cost of some feasible solution, otherwise an exhausted search may report
  // Infeasible for a merely over-constrained bound.
  std::optional<Cost> initial_upper_bound;

  // Seed incumbent; validated to be a conflict-feasible spanning tree.
  std::optional<SpanningTree> initial_incumbent;

  std::uint64_t node_cap = 50'000'000;   // stops with status TimeLimit
  std::size_t dfs_threshold = 1'000'000; // open-list size triggering DFS order
  int workers = 1;

  std::function<void(const SolveProgress&)> on_progress;
  double progress_interval_seconds = 5.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Cost> lower_bound;
  std::optional<Cost> upper_bound;
  std::optional<SpanningTree> incumbent;
  double elapsed_seconds = 0.0;
  // Number of branch nodes evaluated (propagation + relaxation MST); the
  // root counts as 1.
  std::uint64_t nodes_explored = 0;
  double time_limit_seconds = 0.0;
  bool dfs_fallback_used = false;
  bool node_cap_reached = false;
};

// Exact best-first branch-and-bound over conflict dichotomies. Nodes are
// ordered by (lower bound, depth, insertion order); each node's relaxation is
// the constrained MST with conflicts dropped. A conflict-feasible relaxation
// closes its node as locally optimal; otherwise the violated pair with
// maximum combined cost (ties by (min id, max id)) is branched on: its
// higher-cost edge e (tie: smaller id) is either forced out, or forced in
// with all of delta(e) propagated out.
//
// Exhaustion yields Optimal (incumbent found) or Infeasible (none exists);
// hitting the time limit or node cap yields TimeLimit with the global lower
// bound min(open-node bounds, incumbent cost).
//
// With workers > 1 the open list is shared and incumbent updates are
// monotone; terminating runs report the same status and bounds as a
// single-worker run (the incumbent tree may differ among equal-cost optima).
SolveReport solve(const Instance& instance, const SolveOptions& options = {});

SolveReport solve(const Instance& instance, double time_limit_seconds,
                  std::optional<Cost> initial_upper_bound = {});

// Exhaustive test oracle: enumerates every (n-1)-edge subset, keeps
// conflict-feasible spanning trees, and returns a minimum-cost one (the
// first in lexicographic enumeration order among ties), or nullopt when the
// instance is infeasible. Throws std::invalid_argument when the instance has
// more than 20 edges.
std::optional<SpanningTree> brute_force_oracle(const Instance& instance);

}  // namespace mstc
