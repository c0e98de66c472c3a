#include "mstc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mstc/bounds.hpp"
#include "mstc/instance_io.hpp"
#include "mstc/model.hpp"
#include "mstc/solver.hpp"

namespace mstc {

double deviation_lb(Cost lb, Cost bk_lb) {
  return 100.0 * static_cast<double>(bk_lb - lb) / static_cast<double>(bk_lb);
}

double deviation_ub(Cost ub, Cost bk_ub) {
  return 100.0 * static_cast<double>(ub - bk_ub) / static_cast<double>(bk_ub);
}

namespace {

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

BenchRow run_one(const std::filesystem::path& file, const BenchConfig& config) {
  BenchRow row;
  row.name = file.stem().string();
  const auto started = std::chrono::steady_clock::now();
  auto stop_clock = [&] {
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
  };

  Instance instance = load_instance(file);
  row.n = instance.graph.node_count();
  row.m = instance.graph.edge_count();
  row.p = instance.conflicts.pair_count();

  switch (config.mode) {
    case BenchMode::Exact: {
      SolveOptions options;
      options.time_limit_seconds = config.time_limit_seconds;
      if (auto greedy = greedy_upper_bound(instance, {32, config.seed})) {
        options.initial_incumbent = std::move(greedy->witness);
      }
      SolveReport report = solve(instance, options);
      switch (report.status) {
        case SolveStatus::Optimal:
          row.status = "Optimal";
          break;
        case SolveStatus::Infeasible:
          row.status = "Infeas";
          break;
        case SolveStatus::TimeLimit:
          row.status = "TimeLimit";
          break;
      }
      row.lb = report.lower_bound;
      row.ub = report.upper_bound;
      break;
    }
    case BenchMode::Heuristic: {
      auto lower = mst_lower_bound(instance);
      if (!lower) {
        row.status = "Infeas";  // relaxation infeasible at the root
        break;
      }
      row.lb = lower->value;
      if (auto upper = greedy_upper_bound(instance, {32, config.seed})) {
        row.ub = upper->value;
      }
      row.status = (row.ub && *row.ub == *row.lb) ? "Optimal" : "Bounds";
      break;
    }
    case BenchMode::ExportLp: {
      const LpModel model = build_flow_model(instance);
      const auto dir = config.lp_output_dir.empty() ? file.parent_path()
                                                    : config.lp_output_dir;
      const auto out_path = dir / (row.name + ".lp");
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write " + out_path.string());
      }
      out << emit_lp(model);
      row.status = "Exported";
      break;
    }
  }
  stop_clock();
  return row;
}

void fill_deviations(BenchRow& row, const ReferenceBounds& reference,
                     bool legacy_infeas_dev) {
  auto it = reference.find(row.name);
  if (it == reference.end()) return;
  const auto& [bk_lb, bk_ub] = it->second;
  if (row.status == "Infeas") {
    if (legacy_infeas_dev) {
      if (bk_lb) row.dev_lb = -100.0;
      if (bk_ub) row.dev_ub = -100.0;
    }
    return;
  }
  if (row.lb && bk_lb && *bk_lb != 0) row.dev_lb = deviation_lb(*row.lb, *bk_lb);
  if (row.ub && bk_ub && *bk_ub != 0) row.dev_ub = deviation_ub(*row.ub, *bk_ub);
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary summary;
  summary.rows = static_cast<int>(rows.size());
  double lb_sum = 0, ub_sum = 0, lb_trim = 0, ub_trim = 0;
  int lb_count = 0, ub_count = 0, lb_trim_count = 0, ub_trim_count = 0;
  for (const BenchRow& row : rows) {
    if (row.status == "Infeas") ++summary.infeasible;
    if (row.status == "Error") ++summary.errors;
    if (row.dev_lb) {
      lb_sum += *row.dev_lb;
      ++lb_count;
      if (row.status != "Infeas") {
        lb_trim += *row.dev_lb;
        ++lb_trim_count;
      }
    }
    if (row.dev_ub) {
      ub_sum += *row.dev_ub;
      ++ub_count;
      if (row.status != "Infeas") {
        ub_trim += *row.dev_ub;
        ++ub_trim_count;
      }
    }
  }
  if (lb_count) summary.mean_dev_lb = lb_sum / lb_count;
  if (ub_count) summary.mean_dev_ub = ub_sum / ub_count;
  if (lb_trim_count) summary.trimmed_dev_lb = lb_trim / lb_trim_count;
  if (ub_trim_count) summary.trimmed_dev_ub = ub_trim / ub_trim_count;
  return summary;
}

}  // namespace

ReferenceBounds load_reference_csv(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw std::runtime_error("cannot open reference CSV: " + path.string());
  }
  ReferenceBounds reference;
  std::string line;
  bool first = true;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (first && !fields.empty() && fields[0] == "name") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 3) {
      throw std::runtime_error("reference CSV expects 'name,bk_lb,bk_ub': " +
                               line);
    }
    std::pair<std::optional<Cost>, std::optional<Cost>> bounds;
    if (!fields[1].empty()) bounds.first = std::stoll(fields[1]);
    if (!fields[2].empty()) bounds.second = std::stoll(fields[2]);
    reference[fields[0]] = bounds;
  }
  return reference;
}

BenchResult run_suite(const std::filesystem::path& dir,
                      const BenchConfig& config,
                      const ReferenceBounds& reference) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });

  std::vector<BenchRow> rows(files.size());
  auto work = [&](std::size_t index) {
    try {
      rows[index] = run_one(files[index], config);
    } catch (const std::exception&) {
      rows[index] = BenchRow{};
      rows[index].name = files[index].stem().string();
      rows[index].status = "Error";
    }
    fill_deviations(rows[index], reference, config.legacy_infeas_dev);
  };

  const int workers = std::max(1, config.workers);
  if (workers == 1 || files.size() <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(files.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= files.size()) return;
          work(i);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  }

  BenchResult result;
  result.rows = std::move(rows);
  result.summary = summarize(result.rows);
  return result;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "name,n,m,p,status,lb,ub,seconds,dev_lb,dev_ub\n";
  for (const BenchRow& row : rows) {
    out += row.name;
    out += ',' + std::to_string(row.n);
    out += ',' + std::to_string(row.m);
    out += ',' + std::to_string(row.p);
    out += ',' + row.status;
    out += ',' + (row.lb ? std::to_string(*row.lb) : std::string());
    out += ',' + (row.ub ? std::to_string(*row.ub) : std::string());
    out += ',' + format_fixed(row.seconds, 3);
    out += ',' + (row.dev_lb ? format_fixed(*row.dev_lb, 4) : std::string());
    out += ',' + (row.dev_ub ? format_fixed(*row.dev_ub, 4) : std::string());
    out += '\n';
  }
  return out;
}

std::vector<BenchRow> parse_csv(const std::string& text) {
  std::vector<BenchRow> rows;
  std::istringstream stream(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(stream, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("name,", 0) == 0) continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 10) {
      throw std::runtime_error("bad bench CSV row: " + line);
    }
    BenchRow row;
    row.name = fields[0];
    row.n = std::stoi(fields[1]);
    row.m = std::stoi(fields[2]);
    row.p = std::stoi(fields[3]);
    row.status = fields[4];
    if (!fields[5].empty()) row.lb = std::stoll(fields[5]);
    if (!fields[6].empty()) row.ub = std::stoll(fields[6]);
    row.seconds = std::stod(fields[7]);
    if (!fields[8].empty()) row.dev_lb = std::stod(fields[8]);
    if (!fields[9].empty()) row.dev_ub = std::stod(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_markdown(const BenchResult& result) {
  std::string out =
      "| name | n | m | p | status | LB | UB | Sec | Dev LB % | Dev UB % |\n"
      "|---|---:|---:|---:|---|---:|---:|---:|---:|---:|\n";
  for (const BenchRow& row : result.rows) {
    out += "| " + row.name;
    out += " | " + std::to_string(row.n);
    out += " | " + std::to_string(row.m);
    out += " | " + std::to_string(row.p);
    out += " | " + row.status;
    out += " | " + (row.lb ? std::to_string(*row.lb) : std::string("-"));
    out += " | " + (row.ub ? std::to_string(*row.ub) : std::string("-"));
    out += " | " + format_fixed(row.seconds, 3);
    out += " | " + (row.dev_lb ? format_fixed(*row.dev_lb, 4)
                               : std::string("-"));
    out += " | " + (row.dev_ub ? format_fixed(*row.dev_ub, 4)
                               : std::string("-"));
    out += " |\n";
  }
  const BenchSummary& s = result.summary;
  out += "| Averages |  |  |  |  |  |  |  | " +
         (s.mean_dev_lb ? format_fixed(*s.mean_dev_lb, 4) : std::string("-")) +
         " | " +
         (s.mean_dev_ub ? format_fixed(*s.mean_dev_ub, 4) : std::string("-")) +
         " |\n";
  if (s.trimmed_dev_lb || s.trimmed_dev_ub) {
    out += "| Averages excl. Infeas |  |  |  |  |  |  |  | " +
           (s.trimmed_dev_lb ? format_fixed(*s.trimmed_dev_lb, 4)
                             : std::string("-")) +
           " | " +
           (s.trimmed_dev_ub ? format_fixed(*s.trimmed_dev_ub, 4)
                             : std::string("-")) +
           " |\n";
  }
  return out;
}

}  // namespace mstc
