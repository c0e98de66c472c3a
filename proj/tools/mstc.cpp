// mstc - solver toolkit for the minimum spanning tree problem with
// conflicting edge pairs.
//
// Exit codes: 0 success / optimum, 1 usage or input error, 2 infeasibility
// proven (or a solution file failed validation), 3 time limit reached.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mstc/bench.hpp"
#include "mstc/bounds.hpp"
#include "mstc/instance_io.hpp"
#include "mstc/model.hpp"
#include "mstc/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeLimit = 3;

using nlohmann::json;

struct Args {
  std::string instance_path;
  std::string solution_path;
  std::string output_path;
  std::string directory;
  std::string reference_path;
  std::string format = "csv";
  std::string mode = "exact";
  std::string conflict_format = "indices";
  double time_limit = 5010.0;
  std::uint64_t seed = 0;
  int root = 0;
  int workers = 1;
  int restarts = 32;
  std::uint64_t node_cap = 50'000'000;
  std::size_t dfs_threshold = 1'000'000;
  bool json_output = false;
  bool quiet = false;
  bool no_greedy = false;
  bool legacy_infeas_dev = false;
  // generator
  int gen_nodes = 0;
  std::optional<int> gen_edges;
  std::optional<double> gen_density;
  std::optional<std::int64_t> gen_conflicts;
  std::optional<double> gen_conflict_density;
  std::int64_t cost_lo = 1;
  std::int64_t cost_hi = 30;
};

mstc::ConflictLineFormat conflict_format(const Args& args) {
  return args.conflict_format == "endpoints"
             ? mstc::ConflictLineFormat::Endpoints
             : mstc::ConflictLineFormat::EdgeIndices;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string solution_text(const mstc::SpanningTree& tree) {
  std::ostringstream out;
  out << tree.total_cost << '\n';
  for (mstc::EdgeId e : tree.edge_ids) out << e << '\n';
  return out.str();
}

int status_exit_code(mstc::SolveStatus status) {
  switch (status) {
    case mstc::SolveStatus::Optimal:
      return kExitOk;
    case mstc::SolveStatus::Infeasible:
      return kExitInfeasible;
    case mstc::SolveStatus::TimeLimit:
      return kExitTimeLimit;
  }
  return kExitUsage;
}

int cmd_solve(const Args& args) {
  mstc::Instance instance =
      mstc::load_instance(args.instance_path, conflict_format(args));

  mstc::SolveOptions options;
  options.time_limit_seconds = args.time_limit;
  options.workers = args.workers;
  options.node_cap = args.node_cap;
  options.dfs_threshold = args.dfs_threshold;
  if (!args.no_greedy) {
    if (auto greedy =
            mstc::greedy_upper_bound(instance, {args.restarts, args.seed})) {
      options.initial_incumbent = std::move(greedy->witness);
    }
  }
  if (!args.quiet) {
    options.on_progress = [](const mstc::SolveProgress& p) {
      std::cerr << "nodes=" << p.nodes_explored << " open=" << p.open_nodes
                << " lb=" << (p.lower_bound ? std::to_string(*p.lower_bound)
                                            : std::string("-"))
                << " ub=" << (p.upper_bound ? std::to_string(*p.upper_bound)
                                            : std::string("-"))
                << " t=" << static_cast<long>(p.elapsed_seconds) << "s\n";
    };
  }

  const mstc::SolveReport report = mstc::solve(instance, options);

  if (args.json_output) {
    json doc;
    doc["instance"] = instance.name;
    doc["status"] = mstc::to_string(report.status);
    if (report.lower_bound) doc["lower_bound"] = *report.lower_bound;
    if (report.upper_bound) doc["upper_bound"] = *report.upper_bound;
    if (report.incumbent) doc["incumbent"] = report.incumbent->edge_ids;
    doc["elapsed_seconds"] = report.elapsed_seconds;
    doc["nodes_explored"] = report.nodes_explored;
    doc["time_limit_seconds"] = report.time_limit_seconds;
    doc["dfs_fallback_used"] = report.dfs_fallback_used;
    doc["node_cap_reached"] = report.node_cap_reached;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "instance: " << instance.name << '\n';
    std::cout << "status: " << mstc::to_string(report.status) << '\n';
    if (report.lower_bound) std::cout << "lb: " << *report.lower_bound << '\n';
    if (report.upper_bound) std::cout << "ub: " << *report.upper_bound << '\n';
    if (report.incumbent) {
      std::cout << "cost: " << report.incumbent->total_cost << '\n';
    }
    std::cout << "nodes: " << report.nodes_explored << '\n';
    char elapsed[32];
    std::snprintf(elapsed, sizeof(elapsed), "%.3f", report.elapsed_seconds);
    std::cout << "seconds: " << elapsed << '\n';
  }
  if (!args.output_path.empty() && report.incumbent) {
    write_output(args.output_path, solution_text(*report.incumbent));
  }
  return status_exit_code(report.status);
}

int cmd_bound(const Args& args) {
  mstc::Instance instance =
      mstc::load_instance(args.instance_path, conflict_format(args));
  auto lower = mstc::mst_lower_bound(instance);
  if (!lower) {
    std::cout << "lb: infeasible (relaxation has no spanning tree)\n";
    return kExitInfeasible;
  }
  std::cout << "lb: " << lower->value << '\n';
  auto upper = mstc::greedy_upper_bound(instance, {args.restarts, args.seed});
  if (upper) {
    std::cout << "ub: " << upper->value << '\n';
    if (!args.output_path.empty()) {
      write_output(args.output_path, solution_text(*upper->witness));
    }
  } else {
    std::cout << "ub: none (greedy failed; not an infeasibility proof)\n";
  }
  return kExitOk;
}

int cmd_generate(const Args& args) {
  mstc::GeneratorSpec spec;
  spec.nodes = args.gen_nodes;
  if (args.gen_edges) spec.edges = *args.gen_edges;
  if (args.gen_density) spec.edge_density = *args.gen_density;
  spec.cost_lo = args.cost_lo;
  spec.cost_hi = args.cost_hi;
  if (args.gen_conflicts) spec.conflicts = *args.gen_conflicts;
  if (args.gen_conflict_density) {
    spec.conflict_density = *args.gen_conflict_density;
  }
  spec.seed = args.seed;

  const mstc::Instance instance = mstc::generate(spec);
  write_output(args.output_path, mstc::write_instance(instance));
  if (!args.output_path.empty() && args.output_path != "-") {
    std::cerr << "generated " << instance.name << " -> " << args.output_path
              << '\n';
  }
  return kExitOk;
}

int cmd_export_lp(const Args& args) {
  mstc::Instance instance =
      mstc::load_instance(args.instance_path, conflict_format(args));
  const mstc::LpModel model =
      mstc::build_flow_model(instance, static_cast<mstc::NodeId>(args.root));
  write_output(args.output_path, mstc::emit_lp(model));
  return kExitOk;
}

int cmd_check(const Args& args) {
  mstc::Instance instance =
      mstc::load_instance(args.instance_path, conflict_format(args));

  std::ifstream stream(args.solution_path);
  if (!stream) {
    throw std::runtime_error("cannot open solution file: " +
                             args.solution_path);
  }
  mstc::Cost claimed = 0;
  if (!(stream >> claimed)) {
    throw std::runtime_error("solution file: missing cost line");
  }
  std::vector<mstc::EdgeId> ids;
  mstc::EdgeId id = 0;
  while (stream >> id) ids.push_back(id);

  for (mstc::EdgeId e : ids) {
    if (e < 0 || e >= instance.graph.edge_count()) {
      std::cout << "invalid: edge id " << e << " out of range\n";
      return kExitInfeasible;
    }
  }
  if (!mstc::is_spanning_tree(instance.graph, ids)) {
    std::cout << "invalid: edge set is not a spanning tree\n";
    return kExitInfeasible;
  }
  mstc::SpanningTree tree;
  tree.edge_ids = ids;
  std::sort(tree.edge_ids.begin(), tree.edge_ids.end());
  tree.total_cost = mstc::total_cost(instance.graph, tree.edge_ids);

  const auto violations = mstc::conflict_violations(instance, tree);
  if (!violations.empty()) {
    std::cout << "invalid: " << violations.size() << " conflict pair(s) violated:";
    for (const auto& [a, b] : violations) {
      std::cout << " (" << a << "," << b << ")";
    }
    std::cout << '\n';
    return kExitInfeasible;
  }
  if (claimed != tree.total_cost) {
    std::cout << "invalid: declared cost " << claimed
              << " but edges sum to " << tree.total_cost << '\n';
    return kExitInfeasible;
  }
  std::cout << "feasible: yes\ncost: " << tree.total_cost << '\n';
  return kExitOk;
}

int cmd_oracle(const Args& args) {
  mstc::Instance instance =
      mstc::load_instance(args.instance_path, conflict_format(args));
  const auto best = mstc::brute_force_oracle(instance);
  if (!best) {
    std::cout << "status: Infeasible\n";
    return kExitInfeasible;
  }
  std::cout << "status: Optimal\ncost: " << best->total_cost << "\nedges:";
  for (mstc::EdgeId e : best->edge_ids) std::cout << ' ' << e;
  std::cout << '\n';
  if (!args.output_path.empty()) {
    write_output(args.output_path, solution_text(*best));
  }
  return kExitOk;
}

int cmd_bench(const Args& args) {
  mstc::BenchConfig config;
  config.time_limit_seconds = args.time_limit;
  config.workers = args.workers;
  config.legacy_infeas_dev = args.legacy_infeas_dev;
  config.seed = args.seed;
  if (args.mode == "exact") {
    config.mode = mstc::BenchMode::Exact;
  } else if (args.mode == "heuristic") {
    config.mode = mstc::BenchMode::Heuristic;
  } else if (args.mode == "export-lp") {
    config.mode = mstc::BenchMode::ExportLp;
    if (!args.output_path.empty()) {
      config.lp_output_dir = args.output_path;
      std::filesystem::create_directories(config.lp_output_dir);
    }
  } else {
    throw CLI::ValidationError("--mode must be exact, heuristic or export-lp");
  }

  mstc::ReferenceBounds reference;
  if (!args.reference_path.empty()) {
    reference = mstc::load_reference_csv(args.reference_path);
  }
  const mstc::BenchResult result =
      mstc::run_suite(args.directory, config, reference);

  if (args.json_output) {
    json rows = json::array();
    for (const auto& row : result.rows) {
      json r;
      r["name"] = row.name;
      r["n"] = row.n;
      r["m"] = row.m;
      r["p"] = row.p;
      r["status"] = row.status;
      if (row.lb) r["lb"] = *row.lb;
      if (row.ub) r["ub"] = *row.ub;
      r["seconds"] = row.seconds;
      if (row.dev_lb) r["dev_lb"] = *row.dev_lb;
      if (row.dev_ub) r["dev_ub"] = *row.dev_ub;
      rows.push_back(std::move(r));
    }
    json doc;
    doc["rows"] = std::move(rows);
    json summary;
    summary["rows"] = result.summary.rows;
    summary["infeasible"] = result.summary.infeasible;
    summary["errors"] = result.summary.errors;
    if (result.summary.mean_dev_lb) {
      summary["mean_dev_lb"] = *result.summary.mean_dev_lb;
    }
    if (result.summary.mean_dev_ub) {
      summary["mean_dev_ub"] = *result.summary.mean_dev_ub;
    }
    if (result.summary.trimmed_dev_lb) {
      summary["trimmed_dev_lb"] = *result.summary.trimmed_dev_lb;
    }
    if (result.summary.trimmed_dev_ub) {
      summary["trimmed_dev_ub"] = *result.summary.trimmed_dev_ub;
    }
    doc["summary"] = std::move(summary);
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }

  if (args.format == "md") {
    write_output(args.mode == "export-lp" ? "" : args.output_path,
                 mstc::to_markdown(result));
  } else {
    std::string csv = mstc::to_csv(result.rows);
    auto dev = [](const std::optional<double>& value) {
      if (!value) return std::string("-");
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "%.4f", *value);
      return std::string(buffer);
    };
    csv += "# rows=" + std::to_string(result.summary.rows) +
           " infeasible=" + std::to_string(result.summary.infeasible) +
           " errors=" + std::to_string(result.summary.errors) + "\n";
    csv += "# mean_dev_lb=" + dev(result.summary.mean_dev_lb) +
           " mean_dev_ub=" + dev(result.summary.mean_dev_ub) +
           " trimmed_dev_lb=" + dev(result.summary.trimmed_dev_lb) +
           " trimmed_dev_ub=" + dev(result.summary.trimmed_dev_ub) + "\n";
    write_output(args.mode == "export-lp" ? "" : args.output_path, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum spanning tree with conflicting edge pairs: exact "
               "solver, bounds, LP export, instance generator and benchmark "
               "harness"};
  app.require_subcommand(1);
  Args args;

  auto add_conflict_format = [&](CLI::App* cmd) {
    cmd->add_option("--conflict-format", args.conflict_format,
                    "Conflict line layout in instance files: 'indices' "
                    "(e1 e2) or 'endpoints' (i j k l)")
        ->check(CLI::IsMember({"indices", "endpoints"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance exactly");
  solve->add_option("instance", args.instance_path, "Instance file")
      ->required();
  solve->add_option("--time-limit", args.time_limit, "Time limit in seconds");
  solve->add_option("--workers", args.workers, "Search worker threads");
  solve->add_option("--seed", args.seed, "Seed for the greedy warm start");
  solve->add_option("--node-cap", args.node_cap,
                    "Stop after this many explored nodes");
  solve->add_option("--dfs-threshold", args.dfs_threshold,
                    "Open-list size that switches to depth-first order");
  solve->add_option("-o,--out", args.output_path,
                    "Write the incumbent as a solution file");
  solve->add_flag("--json", args.json_output, "JSON report on stdout");
  solve->add_flag("--quiet", args.quiet, "Suppress the periodic progress line");
  solve->add_flag("--no-greedy", args.no_greedy,
                  "Do not seed the search with the greedy upper bound");
  add_conflict_format(solve);

  CLI::App* bound =
      app.add_subcommand("bound", "Report fast lower/upper bounds");
  bound->add_option("instance", args.instance_path, "Instance file")
      ->required();
  bound->add_option("--seed", args.seed, "Seed for greedy restarts");
  bound->add_option("--restarts", args.restarts, "Greedy repair restarts");
  bound->add_option("-o,--out", args.output_path,
                    "Write the greedy witness as a solution file");
  add_conflict_format(bound);

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a random benchmark instance");
  generate->add_option("-n,--nodes", args.gen_nodes, "Node count")->required();
  auto* opt_m = generate->add_option("-m,--edges", args.gen_edges,
                                     "Exact edge count");
  generate->add_option("-d,--density", args.gen_density,
                       "Edge density in (0, 1]")
      ->excludes(opt_m);
  auto* opt_p = generate->add_option("-p,--conflicts", args.gen_conflicts,
                                     "Exact conflict pair count");
  generate->add_option("-q,--conflict-density", args.gen_conflict_density,
                       "Conflict density in [0, 1]")
      ->excludes(opt_p);
  generate->add_option("--cost-lo", args.cost_lo, "Minimum edge cost");
  generate->add_option("--cost-hi", args.cost_hi, "Maximum edge cost");
  generate->add_option("-s,--seed", args.seed, "Generator seed");
  generate->add_option("-o,--out", args.output_path,
                       "Output file (default stdout)");

  CLI::App* export_lp = app.add_subcommand(
      "export-lp", "Write the flow MILP formulation in LP format");
  export_lp->add_option("instance", args.instance_path, "Instance file")
      ->required();
  export_lp->add_option("--root", args.root, "Flow root node (default 0)");
  export_lp->add_option("-o,--out", args.output_path,
                        "Output file (default stdout)");
  add_conflict_format(export_lp);

  CLI::App* check = app.add_subcommand(
      "check", "Validate a solution file against an instance");
  check->add_option("instance", args.instance_path, "Instance file")
      ->required();
  check->add_option("solution", args.solution_path, "Solution file")
      ->required();
  add_conflict_format(check);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Brute-force optimum by enumeration (at most 20 edges)");
  oracle->add_option("instance", args.instance_path, "Instance file")
      ->required();
  oracle->add_option("-o,--out", args.output_path,
                     "Write the optimum as a solution file");
  add_conflict_format(oracle);

  CLI::App* bench = app.add_subcommand(
      "bench", "Run every instance in a directory and tabulate results");
  bench->add_option("dir", args.directory, "Instance directory")->required();
  bench->add_option("--time-limit", args.time_limit,
                    "Per-instance time limit in seconds");
  bench->add_option("--mode", args.mode, "exact | heuristic | export-lp");
  bench->add_option("--reference", args.reference_path,
                    "Best-known bounds CSV (name,bk_lb,bk_ub)");
  bench->add_option("--format", args.format, "csv | md")
      ->check(CLI::IsMember({"csv", "md"}));
  bench->add_option("--workers", args.workers, "Parallel instances");
  bench->add_option("--seed", args.seed, "Seed for heuristic warm starts");
  bench->add_flag("--legacy-infeas-dev", args.legacy_infeas_dev,
                  "Render Infeas rows as deviation -100 when a reference "
                  "bound exists");
  bench->add_option("-o,--out", args.output_path,
                    "Output file, or LP directory in export-lp mode");
  bench->add_flag("--json", args.json_output, "JSON report on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(args);
    if (app.got_subcommand(bound)) return cmd_bound(args);
    if (app.got_subcommand(generate)) return cmd_generate(args);
    if (app.got_subcommand(export_lp)) return cmd_export_lp(args);
    if (app.got_subcommand(check)) return cmd_check(args);
    if (app.got_subcommand(oracle)) return cmd_oracle(args);
    if (app.got_subcommand(bench)) return cmd_bench(args);
  } catch (const mstc::ParseError& e) {
    std::cerr << "error: " << args.instance_path << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
