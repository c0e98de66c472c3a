#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mstc/conflicts.hpp"

namespace mstc {

// Canonical instance format (ASCII, LF, whitespace-separated integers):
//   line 1:        n m p
//   next m lines:  u v cost          (0-based node ids)
//   next p lines:  e1 e2             (0-based indices into the edge list)
// Lines whose first non-blank character is '#' are ignored, as are blank
// lines. The legacy variant instead gives conflicts as endpoint quadruples
// "i j k l" naming the two edges by their endpoints.
enum class ConflictLineFormat { EdgeIndices, Endpoints };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

Instance parse_instance(std::string_view text, std::string name = "",
                        ConflictLineFormat format =
                            ConflictLineFormat::EdgeIndices);

// Reads a file; the instance name is the file stem.
Instance load_instance(const std::filesystem::path& path,
                       ConflictLineFormat format =
                           ConflictLineFormat::EdgeIndices);

// Canonical text; parse_instance(write_instance(x)) == x.
std::string write_instance(const Instance& instance);

void save_instance(const Instance& instance,
                   const std::filesystem::path& path);

// Parameters for the seeded benchmark generator. Edge and conflict counts may
// be explicit or density-derived:
//   m = round_half_up(edge_density * n * (n - 1) / 2)
//   p = round_half_up(conflict_density * m * (m - 1) / 2)
struct GeneratorSpec {
  NodeId nodes = 0;
  std::optional<EdgeId> edges;
  std::optional<double> edge_density;
  Cost cost_lo = 1;
  Cost cost_hi = 30;
  std::optional<std::int64_t> conflicts;
  std::optional<double> conflict_density;
  std::uint64_t seed = 0;
};

struct ResolvedCounts {
  EdgeId m = 0;
  std::int64_t p = 0;
};

// Applies the density arithmetic and validates n - 1 <= m <= n(n-1)/2 and
// 0 <= p <= m(m-1)/2. Throws std::invalid_argument otherwise.
ResolvedCounts resolve_counts(const GeneratorSpec& spec);

// Deterministic function of the spec. Construction order (one Rng stream
// each, see rng.hpp): a uniform random spanning tree via a Prufer sequence
// (stream 0, connectivity by construction), remaining edges drawn without
// replacement from the non-tree pairs in lexicographic order via a partial
// Fisher-Yates shuffle (also stream 0), edges then sorted by (u, v); costs
// drawn per edge id from stream 1; conflict pairs drawn without replacement
// from all unordered edge-id pairs via partial Fisher-Yates on stream 2 and
// sorted. Name is "n-m-p-seed".
Instance generate(const GeneratorSpec& spec);

}  // namespace mstc
