#include "mstc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mstc {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::TimeLimit:
      return "TimeLimit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct SearchNode {
  Cost lower_bound = 0;
  int depth = 0;
  std::uint64_t seq = 0;
  EdgeId branch_edge = -1;          // edge of the chosen violated pair
  std::vector<EdgeId> forced_in;    // sorted
  std::vector<EdgeId> forced_out;   // closed under propagation, sorted
};

using NodePtr = std::unique_ptr<SearchNode>;

// Heap comparators; std::push_heap keeps the comparator-largest element at
// the front, so "less" must rank the node we want to pop next as largest.
bool best_first_less(const NodePtr& a, const NodePtr& b) {
  return std::tie(b->lower_bound, b->depth, b->seq) <
         std::tie(a->lower_bound, a->depth, a->seq);
}

bool depth_first_less(const NodePtr& a, const NodePtr& b) {
  return std::tie(a->depth, a->seq) < std::tie(b->depth, b->seq);
}

std::vector<EdgeId> sorted_insert(const std::vector<EdgeId>& base, EdgeId e) {
  std::vector<EdgeId> out;
  out.reserve(base.size() + 1);
  auto pos = std::lower_bound(base.begin(), base.end(), e);
  out.insert(out.end(), base.begin(), pos);
  out.push_back(e);
  out.insert(out.end(), pos, base.end());
  return out;
}

// Same result as conflict_violations, but walks delta(e) over the n-1 tree
// edges instead of scanning every stored pair; much cheaper on
// conflict-dense instances.
std::vector<std::pair<EdgeId, EdgeId>> violated_pairs(const Instance& instance,
                                                      const SpanningTree& tree) {
  std::vector<std::uint8_t> in_tree(
      static_cast<std::size_t>(instance.graph.edge_count()), 0);
  for (EdgeId e : tree.edge_ids) in_tree[static_cast<std::size_t>(e)] = 1;
  std::vector<std::pair<EdgeId, EdgeId>> violated;
  for (EdgeId e : tree.edge_ids) {
    for (EdgeId f : instance.conflicts.conflicting(e)) {
      if (f > e && in_tree[static_cast<std::size_t>(f)]) {
        violated.emplace_back(e, f);
      }
    }
  }
  std::sort(violated.begin(), violated.end());
  return violated;
}

class Search {
 public:
  Search(const Instance& instance, const SolveOptions& options)
      : instance_(instance),
        options_(options),
        order_(sorted_edge_order(instance.graph)) {}

  SolveReport run();

 private:
  struct EvalOutcome {
    NodePtr open_node;                      // set if the node stays open
    std::optional<SpanningTree> incumbent;  // set if relaxation was feasible
  };

  // Propagates, solves the relaxation, and classifies the node. Counts one
  // explored node. Called outside the lock.
  EvalOutcome evaluate(std::vector<EdgeId> forced_in,
                       std::vector<EdgeId> forced_out, int depth);

  bool pruned_by_bound(Cost lb) const {  // callers hold the lock
    if (incumbent_ && lb >= incumbent_->total_cost) return true;
    if (options_.initial_upper_bound && lb > *options_.initial_upper_bound) {
      return true;
    }
    return false;
  }

  void offer_incumbent(SpanningTree tree) {  // callers hold the lock
    if (!incumbent_ || tree.total_cost < incumbent_->total_cost) {
      incumbent_ = std::move(tree);
    }
  }

  void push_open(NodePtr node) {
    node->seq = next_seq_++;
    open_.push_back(std::move(node));
    std::push_heap(open_.begin(), open_.end(), cmp());
    maybe_switch_mode();
  }

  NodePtr pop_open() {
    std::pop_heap(open_.begin(), open_.end(), cmp());
    NodePtr node = std::move(open_.back());
    open_.pop_back();
    maybe_switch_mode();
    return node;
  }

  using HeapCmp = bool (*)(const NodePtr&, const NodePtr&);
  HeapCmp cmp() const { return dfs_mode_ ? depth_first_less : best_first_less; }

  void maybe_switch_mode() {
    if (!dfs_mode_ && open_.size() > options_.dfs_threshold) {
      dfs_mode_ = true;
      dfs_used_ = true;
      std::make_heap(open_.begin(), open_.end(), cmp());
    } else if (dfs_mode_ && open_.size() < options_.dfs_threshold / 2) {
      dfs_mode_ = false;
      std::make_heap(open_.begin(), open_.end(), cmp());
    }
  }

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void maybe_report_progress(Cost popped_lb);
  void worker_loop();
  SolveReport finish();

  const Instance& instance_;
  const SolveOptions& options_;
  std::vector<EdgeId> order_;
  Clock::time_point start_;

  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::vector<NodePtr> open_;
  std::optional<SpanningTree> incumbent_;
  std::uint64_t next_seq_ = 0;
  std::atomic<std::uint64_t> nodes_explored_{0};
  int active_workers_ = 0;
  bool stop_ = false;          // time limit or node cap tripped
  bool node_cap_reached_ = false;
  bool dfs_mode_ = false;
  bool dfs_used_ = false;
  double last_progress_ = 0.0;
};

Search::EvalOutcome Search::evaluate(std::vector<EdgeId> forced_in,
                                     std::vector<EdgeId> forced_out,
                                     int depth) {
  EvalOutcome outcome;
  nodes_explored_.fetch_add(1, std::memory_order_relaxed);

  Propagation closure = propagate(instance_, forced_in, forced_out);
  if (closure.contradiction) return outcome;

  auto tree = kruskal_mst(instance_.graph, order_, forced_in,
                          closure.forced_out);
  if (!tree) return outcome;

  auto violated = violated_pairs(instance_, *tree);
  if (violated.empty()) {
    outcome.incumbent = std::move(*tree);
    return outcome;
  }

  // Branch pair: maximum combined cost, ties by (min id, max id); the pair
  // list is already (min id, max id)-sorted, so a strict > scan lands on the
  // tie-break winner. Dichotomy edge: higher cost, tie by smaller id.
  const Graph& graph = instance_.graph;
  auto pair_cost = [&](const std::pair<EdgeId, EdgeId>& p) {
    return graph.edge(p.first).cost + graph.edge(p.second).cost;
  };
  std::pair<EdgeId, EdgeId> chosen = violated.front();
  for (const auto& candidate : violated) {
    if (pair_cost(candidate) > pair_cost(chosen)) chosen = candidate;
  }
  const Cost c_first = graph.edge(chosen.first).cost;
  const Cost c_second = graph.edge(chosen.second).cost;
  const EdgeId branch_edge =
      c_second > c_first ? chosen.second : chosen.first;

  auto node = std::make_unique<SearchNode>();
  node->lower_bound = tree->total_cost;
  node->depth = depth;
  node->branch_edge = branch_edge;
  node->forced_in = std::move(forced_in);
  node->forced_out = std::move(closure.forced_out);
  outcome.open_node = std::move(node);
  return outcome;
}

void Search::maybe_report_progress(Cost popped_lb) {
  if (!options_.on_progress) return;
  const double now = elapsed();
  if (now - last_progress_ < options_.progress_interval_seconds) return;
  last_progress_ = now;
  SolveProgress progress;
  progress.nodes_explored = nodes_explored_;
  progress.open_nodes = open_.size() + 1;
  if (!dfs_mode_) progress.lower_bound = popped_lb;
  if (incumbent_) progress.upper_bound = incumbent_->total_cost;
  progress.elapsed_seconds = now;
  options_.on_progress(progress);
}

void Search::worker_loop() {
  // Workers pop several nodes per lock acquisition; the expensive part (two
  // relaxations per node) runs outside the lock.
  const std::size_t batch_limit = options_.workers > 1 ? 8 : 1;
  std::vector<NodePtr> batch;
  std::vector<EvalOutcome> results;

  std::unique_lock lock(mutex_);
  for (;;) {
    work_ready_.wait(lock, [&] {
      return stop_ || !open_.empty() || active_workers_ == 0;
    });
    if (stop_ || (open_.empty() && active_workers_ == 0)) return;
    if (open_.empty()) continue;

    if (elapsed() >= options_.time_limit_seconds) {
      stop_ = true;
      work_ready_.notify_all();
      return;
    }
    if (nodes_explored_.load(std::memory_order_relaxed) >= options_.node_cap) {
      stop_ = true;
      node_cap_reached_ = true;
      work_ready_.notify_all();
      return;
    }

    batch.clear();
    while (batch.size() < batch_limit && !open_.empty()) {
      NodePtr node = pop_open();
      if (pruned_by_bound(node->lower_bound)) continue;
      batch.push_back(std::move(node));
    }
    if (batch.empty()) continue;
    maybe_report_progress(batch.front()->lower_bound);
    ++active_workers_;
    lock.unlock();

    // Child "out": branch edge excluded. Child "in": branch edge forced in;
    // propagation closes its conflict neighborhood out.
    results.clear();
    for (NodePtr& node : batch) {
      results.push_back(
          evaluate(node->forced_in,
                   sorted_insert(node->forced_out, node->branch_edge),
                   node->depth + 1));
      results.push_back(
          evaluate(sorted_insert(node->forced_in, node->branch_edge),
                   std::move(node->forced_out), node->depth + 1));
      assert(!results.back().open_node ||
             results.back().open_node->lower_bound >= node->lower_bound);
    }

    lock.lock();
    --active_workers_;
    for (EvalOutcome& child : results) {
      if (child.incumbent && !pruned_by_bound(child.incumbent->total_cost)) {
        offer_incumbent(std::move(*child.incumbent));
      }
    }
    for (EvalOutcome& child : results) {
      if (child.open_node && !pruned_by_bound(child.open_node->lower_bound)) {
        push_open(std::move(child.open_node));
      }
    }
    work_ready_.notify_all();
  }
}

SolveReport Search::finish() {
  SolveReport report;
  report.time_limit_seconds = options_.time_limit_seconds;
  report.nodes_explored = nodes_explored_.load(std::memory_order_relaxed);
  report.dfs_fallback_used = dfs_used_;
  report.node_cap_reached = node_cap_reached_;

  if (!stop_) {
    // Exhausted the tree: optimal or a proof of infeasibility.
    if (incumbent_) {
      report.status = SolveStatus::Optimal;
      report.lower_bound = incumbent_->total_cost;
      report.upper_bound = incumbent_->total_cost;
      report.incumbent = std::move(incumbent_);
    } else {
      report.status = SolveStatus::Infeasible;
    }
  } else {
    report.status = SolveStatus::TimeLimit;
    std::optional<Cost> lb;
    for (const NodePtr& node : open_) {
      if (!lb || node->lower_bound < *lb) lb = node->lower_bound;
    }
    if (incumbent_ && (!lb || incumbent_->total_cost < *lb)) {
      lb = incumbent_->total_cost;
    }
    report.lower_bound = lb;
    if (incumbent_) {
      report.upper_bound = incumbent_->total_cost;
      report.incumbent = std::move(incumbent_);
    }
  }
  report.elapsed_seconds = elapsed();
  return report;
}

SolveReport Search::run() {
  start_ = Clock::now();

  if (options_.initial_incumbent) {
    const SpanningTree& seed = *options_.initial_incumbent;
    if (!is_spanning_tree(instance_.graph, seed.edge_ids) ||
        !is_feasible(instance_, seed) ||
        seed.total_cost != total_cost(instance_.graph, seed.edge_ids)) {
      throw std::invalid_argument(
          "initial incumbent is not a feasible spanning tree");
    }
    incumbent_ = seed;
  }

  auto root = evaluate({}, {}, 0);
  {
    std::lock_guard lock(mutex_);
    if (root.incumbent && !pruned_by_bound(root.incumbent->total_cost)) {
      offer_incumbent(std::move(*root.incumbent));
    }
    if (root.open_node && !pruned_by_bound(root.open_node->lower_bound)) {
      push_open(std::move(root.open_node));
    }
  }

  const int workers = std::max(1, options_.workers);
  if (workers == 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) {
      pool.emplace_back([this] { worker_loop(); });
    }
    for (auto& thread : pool) thread.join();
  }

  std::lock_guard lock(mutex_);
  return finish();
}

}  // namespace

SolveReport solve(const Instance& instance, const SolveOptions& options) {
  if (options.time_limit_seconds <= 0) {
    throw std::invalid_argument("time limit must be positive");
  }
  Search search(instance, options);
  return search.run();
}

SolveReport solve(const Instance& instance, double time_limit_seconds,
                  std::optional<Cost> initial_upper_bound) {
  SolveOptions options;
  options.time_limit_seconds = time_limit_seconds;
  options.initial_upper_bound = initial_upper_bound;
  return solve(instance, options);
}

std::optional<SpanningTree> brute_force_oracle(const Instance& instance) {
  const Graph& graph = instance.graph;
  const EdgeId m = graph.edge_count();
  if (m > 20) {
    throw std::invalid_argument(
        "brute-force oracle refuses instances with more than 20 edges");
  }
  const NodeId n = graph.node_count();
  const int k = n - 1;
  if (k > m) return std::nullopt;

  std::optional<SpanningTree> best;
  std::vector<EdgeId> combo(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;

  auto consider = [&](const std::vector<EdgeId>& ids) {
    if (!is_spanning_tree(graph, ids)) return;
    SpanningTree tree{ids, total_cost(graph, ids)};
    if (!is_feasible(instance, tree)) return;
    if (!best || tree.total_cost < best->total_cost) best = std::move(tree);
  };

  if (k == 0) {
    consider({});
    return best;
  }
  for (;;) {
    consider(combo);
    // next k-combination of [0, m) in lexicographic order
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      combo[static_cast<std::size_t>(j)] =
          combo[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

}  // namespace mstc
