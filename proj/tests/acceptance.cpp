// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// gating criterion fails. Criterion 8 (original benchmark smoke test) only
// runs when MSTC_ORIGINAL_BENCH_DIR points at the original instance files;
// it is informational either way.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "mstc/bench.hpp"
#include "mstc/bounds.hpp"
#include "mstc/instance_io.hpp"
#include "mstc/model.hpp"
#include "mstc/solver.hpp"
#include "test_util.hpp"

using namespace mstc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

int run_cli_exit_code(const std::string& arguments) {
  const std::string command = std::string(MSTC_CLI_PATH) + " " + arguments +
                              " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

Outcome criterion1_example_golden() {
  const auto path =
      std::filesystem::path(MSTC_TEST_DATA_DIR) / "example7.mstc";
  const Instance inst = load_instance(path);
  if (write_instance(inst) != read_file(path)) {
    return {false, "canonical file is not in writer form"};
  }

  const SolveReport report = solve(inst, 60.0);
  if (report.status != SolveStatus::Optimal) {
    return {false, std::string("status ") + to_string(report.status)};
  }
  if (report.upper_bound != 13 || report.lower_bound != 13 ||
      report.incumbent->total_cost != 13) {
    return {false, "optimum != 13"};
  }
  if (!is_feasible(inst, *report.incumbent)) {
    return {false, "incumbent violates conflicts"};
  }
  if (report.elapsed_seconds >= 1.0) {
    return {false, "took " + std::to_string(report.elapsed_seconds) + "s"};
  }

  // the published solution {f-a, a-b, a-c, a-d, b-e, c-g}
  SpanningTree published{{0, 2, 3, 4, 6, 9}, 13};
  if (!is_spanning_tree(inst.graph, published.edge_ids) ||
      !is_feasible(inst, published) ||
      total_cost(inst.graph, published.edge_ids) != 13) {
    return {false, "published solution failed validation"};
  }
  return {true, "optimum 13, published tree feasible at 13"};
}

Outcome criterion2_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int infeasible = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    const auto oracle = brute_force_oracle(inst);
    const SolveReport report = solve(inst, 60.0);
    if (oracle) {
      if (report.status != SolveStatus::Optimal ||
          report.upper_bound != oracle->total_cost) {
        return {false, "mismatch on seed " + std::to_string(seed)};
      }
    } else {
      ++infeasible;
      if (report.status != SolveStatus::Infeasible) {
        return {false, "missed infeasibility on seed " + std::to_string(seed)};
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    return {false, "took " + std::to_string(elapsed) + "s (limit 60)"};
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "500 instances (%d infeasible) in %.1fs", infeasible, elapsed);
  return {true, detail};
}

Outcome criterion3_relaxation_exactness() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = test::small_random_instance(seed, true);
    const auto mst = kruskal_mst(inst.graph);
    const SolveReport report = solve(inst, 60.0);
    if (!mst || report.status != SolveStatus::Optimal ||
        report.upper_bound != mst->total_cost ||
        report.nodes_explored != 1) {
      return {false, "seed " + std::to_string(seed)};
    }
  }
  return {true, "100 conflict-free instances closed at the root"};
}

struct ScratchDir {
  std::filesystem::path path;
  explicit ScratchDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("mstc_accept_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() { std::filesystem::remove_all(path); }
};

Outcome criterion4_infeasibility_proofs() {
  ScratchDir scratch("c4");
  auto solve_exit_code = [&](const Instance& inst, const std::string& name) {
    const auto path = scratch.path / name;
    save_instance(inst, path);
    return run_cli_exit_code("solve " + path.string() + " --quiet");
  };

  const Instance triangle = test::triangle_all_conflicts();
  if (solve(triangle, 60.0).status != SolveStatus::Infeasible) {
    return {false, "triangle not proven infeasible"};
  }
  if (solve_exit_code(triangle, "triangle.mstc") != 2) {
    return {false, "triangle exit code != 2"};
  }

  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20 && seed < 400; ++seed) {
    const Instance inst = test::overconstrained_instance(seed);
    if (brute_force_oracle(inst)) continue;  // oracle says feasible
    ++checked;
    if (solve(inst, 60.0).status != SolveStatus::Infeasible) {
      return {false, "solver disagreed on seed " + std::to_string(seed)};
    }
    if (solve_exit_code(inst, inst.name + ".mstc") != 2) {
      return {false, "exit code != 2 on seed " + std::to_string(seed)};
    }
  }
  if (checked < 20) {
    return {false,
            "only " + std::to_string(checked) + " infeasible instances found"};
  }
  return {true,
          "triangle + " + std::to_string(checked) +
              " oracle-verified infeasible instances, all exit 2"};
}

Outcome criterion5_model_validity() {
  int certified = 0;
  for (std::uint64_t seed = 0; certified < 50 && seed < 200; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    const auto n = static_cast<std::size_t>(inst.graph.node_count());
    const auto m = static_cast<std::size_t>(inst.graph.edge_count());
    const auto p = static_cast<std::size_t>(inst.conflicts.pair_count());

    const LpModel model = build_flow_model(inst);
    if (model.variables.size() != 3 * m ||
        model.constraints.size() != n + 2 * m + p) {
      return {false, "structural counts off on seed " + std::to_string(seed)};
    }
    const auto best = brute_force_oracle(inst);
    if (!best) continue;
    if (!satisfies(model, tree_flow_assignment(inst, *best))) {
      return {false, "certificate failed on seed " + std::to_string(seed)};
    }
    ++certified;
  }
  if (certified < 50) {
    return {false, "only " + std::to_string(certified) + " certificates"};
  }
  return {true, std::to_string(certified) + " optimal trees certified"};
}

Outcome criterion6_deviation_formulas() {
  const double lb_dev = deviation_lb(700, 708);
  const double ub_dev = deviation_ub(7787, 7788);
  if (std::abs(lb_dev - 1.1299) > 0.0001) {
    return {false, "deviation_lb(700,708) = " + std::to_string(lb_dev)};
  }
  if (std::abs(ub_dev - (-0.0128)) > 0.0001) {
    return {false, "deviation_ub(7787,7788) = " + std::to_string(ub_dev)};
  }
  // at 3-decimal table precision the upper deviation prints as -0.013
  char printed[32];
  std::snprintf(printed, sizeof(printed), "%.3f", ub_dev);
  if (std::string(printed) != "-0.013") {
    return {false, std::string("prints as ") + printed};
  }
  return {true, "1.1299 and -0.0128 (prints -0.013)"};
}

Outcome criterion7_determinism() {
  GeneratorSpec spec;
  spec.nodes = 30;
  spec.edge_density = 0.3;
  spec.cost_lo = 1;
  spec.cost_hi = 30;
  spec.conflict_density = 0.04;
  spec.seed = 11;
  if (write_instance(generate(spec)) != write_instance(generate(spec))) {
    return {false, "generator bytes differ"};
  }

  const auto scratch = std::filesystem::temp_directory_path() /
                       ("mstc_accept7_" + std::to_string(::getpid()));
  std::filesystem::create_directories(scratch);
  const std::string args = "generate -n 30 -d 0.3 -q 0.04 --seed 11 -o ";
  const auto a = scratch / "a.mstc";
  const auto b = scratch / "b.mstc";
  const bool cli_ok = run_cli_exit_code(args + a.string()) == 0 &&
                      run_cli_exit_code(args + b.string()) == 0 &&
                      read_file(a) == read_file(b) && !read_file(a).empty();
  std::filesystem::remove_all(scratch);
  if (!cli_ok) return {false, "CLI generate bytes differ"};

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = test::small_random_instance(seed);
    const SolveReport first = solve(inst, 60.0);
    const SolveReport second = solve(inst, 60.0);
    const bool equal =
        first.status == second.status &&
        first.lower_bound == second.lower_bound &&
        first.upper_bound == second.upper_bound &&
        first.nodes_explored == second.nodes_explored &&
        first.incumbent.has_value() == second.incumbent.has_value() &&
        (!first.incumbent ||
         first.incumbent->edge_ids == second.incumbent->edge_ids);
    if (!equal) return {false, "solve reports differ on seed " +
                                   std::to_string(seed)};
  }
  return {true, "generator bytes and single-worker reports identical"};
}

// Not gating: requires the original benchmark files, which are not bundled.
void criterion8_original_smoke() {
  const char* dir = std::getenv("MSTC_ORIGINAL_BENCH_DIR");
  if (dir == nullptr) {
    std::printf(
        "SKIP criterion 8: original benchmark files not supplied "
        "(set MSTC_ORIGINAL_BENCH_DIR to run; informational only)\n");
    return;
  }
  std::filesystem::path found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() &&
        entry.path().filename().string().find("50-200-199") !=
            std::string::npos) {
      found = entry.path();
      break;
    }
  }
  if (found.empty()) {
    std::printf("SKIP criterion 8: no file matching 50-200-199 under %s\n",
                dir);
    return;
  }
  Instance inst = [&] {
    try {
      return load_instance(found, ConflictLineFormat::Endpoints);
    } catch (const std::exception&) {
      return load_instance(found);
    }
  }();
  const SolveReport report = solve(inst, 5010.0);
  const bool ok = report.status == SolveStatus::Optimal &&
                  report.upper_bound == 708;
  std::printf("%s criterion 8 (informational): %s solved to %s\n",
              ok ? "PASS" : "FAIL", found.filename().string().c_str(),
              report.upper_bound ? std::to_string(*report.upper_bound).c_str()
                                 : to_string(report.status));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>>
      criteria = {
          {"7-node example optimum and published solution",
           criterion1_example_golden},
          {"oracle equivalence over 500 seeded instances",
           criterion2_oracle_equivalence},
          {"conflict-free relaxation exactness", criterion3_relaxation_exactness},
          {"infeasibility proofs with exit code 2",
           criterion4_infeasibility_proofs},
          {"flow model structure and tree certificates",
           criterion5_model_validity},
          {"deviation formulas", criterion6_deviation_formulas},
          {"generator and solver determinism", criterion7_determinism},
      };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %zu: %s — %s (%.1fs)\n",
                outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  criterion8_original_smoke();

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all gating criteria passed\n");
  return 0;
}
