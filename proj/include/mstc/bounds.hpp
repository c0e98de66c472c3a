#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "mstc/conflicts.hpp"

namespace mstc {

enum class BoundKind { Lower, Upper };

struct BoundResult {
  BoundKind kind = BoundKind::Lower;
  Cost value = 0;
  // Upper bounds always carry a conflict-feasible witness tree. For lower
  // bounds the witness is the relaxation MST, which may violate conflicts.
  std::optional<SpanningTree> witness;
};

// Cost of the constrained MST with conflicts dropped: a valid lower bound on
// any conflict-feasible tree honoring the same forcing. nullopt means the
// relaxation itself is infeasible (forced cycle or disconnection), which
// proves the branch node infeasible.
std::optional<BoundResult> mst_lower_bound(
    const Instance& instance, std::span<const EdgeId> forced_in = {},
    std::span<const EdgeId> forced_out = {});

struct GreedyOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
};

// Kruskal-style scan in (cost, id) order that skips any edge conflicting with
// an already selected one; a completed tree is feasible by construction. If
// the scan gets stuck, up to `restarts` repair passes are run, each applying
// one more uniformly chosen transposition of an adjacent equal-cost pair in
// the scan order (restart r draws from stream r of `seed`). Returns nullopt
// if every pass gets stuck; that is NOT an infeasibility proof.
std::optional<BoundResult> greedy_upper_bound(const Instance& instance,
                                              const GreedyOptions& options = {});

}  // namespace mstc
