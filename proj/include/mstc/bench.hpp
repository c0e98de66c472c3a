#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mstc/graph.hpp"

namespace mstc {

// Percentage deviation of a lower bound from the best-known lower bound:
// 100 * (bk_lb - lb) / bk_lb. Negative = improvement over best known.
double deviation_lb(Cost lb, Cost bk_lb);

// Percentage deviation of an upper bound from the best-known upper bound:
// 100 * (ub - bk_ub) / bk_ub. Positive = worse than best known.
double deviation_ub(Cost ub, Cost bk_ub);

enum class BenchMode { Exact, Heuristic, ExportLp };

struct BenchConfig {
  double time_limit_seconds = 5010.0;
  BenchMode mode = BenchMode::Exact;
  int workers = 1;  // instances run in parallel, one solve worker each
  // Render Infeas rows with deviation -100 when a reference bound exists
  // (an older reporting convention); off by default, Infeas rows then carry
  // blank deviations.
  bool legacy_infeas_dev = false;
  std::uint64_t seed = 0;
  // export-lp mode writes <name>.lp here; empty = next to the instance.
  std::filesystem::path lp_output_dir;
};

struct BenchRow {
  std::string name;
  int n = 0;
  int m = 0;
  int p = 0;
  std::string status;  // Optimal | Infeas | TimeLimit | Bounds | Exported | Error
  std::optional<Cost> lb;
  std::optional<Cost> ub;
  double seconds = 0.0;
  std::optional<double> dev_lb;
  std::optional<double> dev_ub;

  bool operator==(const BenchRow&) const = default;
};

struct BenchSummary {
  int rows = 0;
  int infeasible = 0;
  int errors = 0;
  std::optional<double> mean_dev_lb;
  std::optional<double> mean_dev_ub;
  // Means excluding Infeas rows; identical to the plain means unless the
  // legacy -100 convention is active.
  std::optional<double> trimmed_dev_lb;
  std::optional<double> trimmed_dev_ub;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // name-sorted
  BenchSummary summary;
};

// name -> (bk_lb, bk_ub); blanks in the CSV stay unset.
using ReferenceBounds =
    std::map<std::string, std::pair<std::optional<Cost>, std::optional<Cost>>>;

// CSV with header "name,bk_lb,bk_ub".
ReferenceBounds load_reference_csv(const std::filesystem::path& path);

// Runs every regular file in `dir` (name-sorted) through the configured
// mode. Unreadable or malformed instances become Error rows; the suite
// continues. Deviations are filled where the reference holds a nonzero
// best-known bound.
BenchResult run_suite(const std::filesystem::path& dir,
                      const BenchConfig& config,
                      const ReferenceBounds& reference = {});

// Header "name,n,m,p,status,lb,ub,seconds,dev_lb,dev_ub"; blank fields for
// missing values; seconds with 3 decimals, deviations with 4.
std::string to_csv(const std::vector<BenchRow>& rows);

// Parses to_csv output (comment lines starting with '#' are skipped).
std::vector<BenchRow> parse_csv(const std::string& text);

// Markdown table with an averages footer row.
std::string to_markdown(const BenchResult& result);

}  // namespace mstc
