#include "mstc/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "mstc/rng.hpp"

namespace mstc {

namespace {

// Line-oriented integer reader that tracks line numbers for error messages.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-blank, non-comment line split into integers. Returns false at
  // end of input.
  bool next_line(std::vector<std::int64_t>& out) {
    while (pos_ < text_.size()) {
      ++line_;
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      if (is_blank_or_comment(line)) continue;
      parse_ints(line, out);
      return true;
    }
    return false;
  }

  int line() const { return line_; }

 private:
  static bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
      if (c == '#') return true;
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  void parse_ints(std::string_view line, std::vector<std::int64_t>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      if (i >= line.size()) break;
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      std::int64_t value = 0;
      const char* first = line.data() + start;
      const char* last = line.data() + i;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last) {
        throw ParseError("expected integer, got '" +
                             std::string(line.substr(start, i - start)) + "'",
                         line_);
      }
      out.push_back(value);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

std::vector<std::int64_t> expect_line(LineReader& reader, std::size_t count,
                                      const char* what) {
  std::vector<std::int64_t> fields;
  if (!reader.next_line(fields)) {
    throw ParseError(std::string("unexpected end of input, expected ") + what,
                     reader.line() + 1);
  }
  if (fields.size() != count) {
    throw ParseError(std::string("expected ") + what + " (" +
                         std::to_string(count) + " integers), got " +
                         std::to_string(fields.size()),
                     reader.line());
  }
  return fields;
}

NodeId checked_node(std::int64_t value, NodeId n, LineReader& reader) {
  if (value < 0 || value >= n) {
    throw ParseError("node id " + std::to_string(value) +
                         " out of range [0, " + std::to_string(n) + ")",
                     reader.line());
  }
  return static_cast<NodeId>(value);
}

EdgeId endpoint_edge_lookup(const Graph& graph, std::int64_t a, std::int64_t b,
                            LineReader& reader) {
  const NodeId u = checked_node(a, graph.node_count(), reader);
  const NodeId v = checked_node(b, graph.node_count(), reader);
  auto id = graph.find_edge(u, v);
  if (!id) {
    throw ParseError("conflict references unknown edge (" + std::to_string(u) +
                         ", " + std::to_string(v) + ")",
                     reader.line());
  }
  return *id;
}

std::int64_t round_half_up(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

// Uniform labeled tree on n >= 2 nodes from a random Prufer sequence.
std::vector<std::pair<NodeId, NodeId>> random_spanning_tree(NodeId n,
                                                            Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<NodeId> prufer(static_cast<std::size_t>(n) - 2);
  for (auto& a : prufer) {
    a = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
  }
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (NodeId a : prufer) ++degree[static_cast<std::size_t>(a)];

  // Standard O(n) decode: sweep a pointer over the smallest current leaf.
  NodeId ptr = 0;
  while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  NodeId leaf = ptr;
  for (NodeId a : prufer) {
    edges.emplace_back(std::min(leaf, a), std::max(leaf, a));
    if (--degree[static_cast<std::size_t>(a)] == 1 && a < ptr) {
      leaf = a;
    } else {
      ++ptr;
      while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(std::min(leaf, static_cast<NodeId>(n - 1)),
                     std::max(leaf, static_cast<NodeId>(n - 1)));
  return edges;
}

}  // namespace

Instance parse_instance(std::string_view text, std::string name,
                        ConflictLineFormat format) {
  LineReader reader(text);

  const auto header = expect_line(reader, 3, "header 'n m p'");
  if (header[0] < 1) {
    throw ParseError("node count must be at least 1", reader.line());
  }
  if (header[1] < 0 || header[2] < 0) {
    throw ParseError("edge and conflict counts must be non-negative",
                     reader.line());
  }
  constexpr std::int64_t kMaxCount = 1'000'000'000;
  if (header[0] > kMaxCount || header[1] > kMaxCount) {
    throw ParseError("node or edge count too large", reader.line());
  }
  const auto n = static_cast<NodeId>(header[0]);
  const auto m = header[1];
  const auto p = header[2];

  Graph graph(n);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto fields = expect_line(reader, 3, "edge 'u v cost'");
    const NodeId u = checked_node(fields[0], n, reader);
    const NodeId v = checked_node(fields[1], n, reader);
    try {
      graph.add_edge(u, v, fields[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), reader.line());
    }
  }

  ConflictSet conflicts(graph.edge_count());
  for (std::int64_t i = 0; i < p; ++i) {
    EdgeId a = 0;
    EdgeId b = 0;
    if (format == ConflictLineFormat::EdgeIndices) {
      const auto fields = expect_line(reader, 2, "conflict 'e1 e2'");
      if (fields[0] < 0 || fields[0] >= m || fields[1] < 0 || fields[1] >= m) {
        throw ParseError("conflict edge index out of range [0, " +
                             std::to_string(m) + ")",
                         reader.line());
      }
      a = static_cast<EdgeId>(fields[0]);
      b = static_cast<EdgeId>(fields[1]);
    } else {
      const auto fields = expect_line(reader, 4, "conflict 'i j k l'");
      a = endpoint_edge_lookup(graph, fields[0], fields[1], reader);
      b = endpoint_edge_lookup(graph, fields[2], fields[3], reader);
    }
    try {
      conflicts.add_pair(a, b);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), reader.line());
    }
  }

  std::vector<std::int64_t> trailing;
  if (reader.next_line(trailing)) {
    throw ParseError("unexpected data past the last conflict line",
                     reader.line());
  }
  return Instance{std::move(graph), std::move(conflicts), std::move(name)};
}

Instance load_instance(const std::filesystem::path& path,
                       ConflictLineFormat format) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("cannot open instance file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_instance(buffer.str(), path.stem().string(), format);
}

std::string write_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.graph.node_count() << ' ' << instance.graph.edge_count()
      << ' ' << instance.conflicts.pair_count() << '\n';
  for (const Edge& e : instance.graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << e.cost << '\n';
  }
  for (const auto& [a, b] : instance.conflicts.pairs()) {
    out << a << ' ' << b << '\n';
  }
  return out.str();
}

void save_instance(const Instance& instance,
                   const std::filesystem::path& path) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("cannot write instance file: " + path.string());
  }
  stream << write_instance(instance);
}

ResolvedCounts resolve_counts(const GeneratorSpec& spec) {
  if (spec.nodes < 2) {
    throw std::invalid_argument("generator needs at least 2 nodes");
  }
  if (spec.edges.has_value() == spec.edge_density.has_value()) {
    throw std::invalid_argument(
        "exactly one of edge count and edge density must be given");
  }
  if (spec.conflicts.has_value() && spec.conflict_density.has_value()) {
    throw std::invalid_argument(
        "conflict count and conflict density are mutually exclusive");
  }
  if (spec.cost_lo < 0 || spec.cost_hi < spec.cost_lo) {
    throw std::invalid_argument("invalid cost range");
  }

  const std::int64_t n = spec.nodes;
  const std::int64_t max_edges = n * (n - 1) / 2;
  ResolvedCounts counts;
  if (spec.edges) {
    counts.m = *spec.edges;
  } else {
    counts.m = static_cast<EdgeId>(
        round_half_up(*spec.edge_density * static_cast<double>(max_edges)));
  }
  if (counts.m < n - 1 || counts.m > max_edges) {
    throw std::invalid_argument(
        "edge count " + std::to_string(counts.m) + " outside [" +
        std::to_string(n - 1) + ", " + std::to_string(max_edges) + "]");
  }

  const std::int64_t max_pairs =
      static_cast<std::int64_t>(counts.m) * (counts.m - 1) / 2;
  if (spec.conflicts) {
    counts.p = *spec.conflicts;
  } else if (spec.conflict_density) {
    counts.p = round_half_up(*spec.conflict_density *
                             static_cast<double>(max_pairs));
  }
  if (counts.p < 0 || counts.p > max_pairs) {
    throw std::invalid_argument("conflict count " + std::to_string(counts.p) +
                                " outside [0, " + std::to_string(max_pairs) +
                                "]");
  }
  return counts;
}

Instance generate(const GeneratorSpec& spec) {
  const ResolvedCounts counts = resolve_counts(spec);
  const NodeId n = spec.nodes;
  const EdgeId m = counts.m;

  Rng edge_rng(spec.seed, 0);
  auto pairs = random_spanning_tree(n, edge_rng);

  // Remaining edges: partial Fisher-Yates over the non-tree pairs listed in
  // (u, v) lexicographic order.
  const std::size_t extra = static_cast<std::size_t>(m) -
                            (static_cast<std::size_t>(n) - 1);
  if (extra > 0) {
    std::unordered_set<std::uint64_t> tree_keys;
    for (const auto& [u, v] : pairs) {
      tree_keys.insert((static_cast<std::uint64_t>(u) << 32) |
                       static_cast<std::uint32_t>(v));
    }
    std::vector<std::pair<NodeId, NodeId>> candidates;
    candidates.reserve(static_cast<std::size_t>(n) *
                       static_cast<std::size_t>(n - 1) / 2);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) |
                                  static_cast<std::uint32_t>(v);
        if (!tree_keys.count(key)) candidates.emplace_back(u, v);
      }
    }
    for (std::size_t i = 0; i < extra; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(edge_rng.below(candidates.size() - i));
      std::swap(candidates[i], candidates[j]);
      pairs.push_back(candidates[i]);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  Graph graph(n);
  Rng cost_rng(spec.seed, 1);
  for (const auto& [u, v] : pairs) {
    graph.add_edge(u, v, cost_rng.between(spec.cost_lo, spec.cost_hi));
  }

  ConflictSet conflicts(m);
  if (counts.p > 0) {
    std::vector<std::pair<EdgeId, EdgeId>> candidates;
    candidates.reserve(static_cast<std::size_t>(m) *
                       static_cast<std::size_t>(m - 1) / 2);
    for (EdgeId a = 0; a < m; ++a) {
      for (EdgeId b = a + 1; b < m; ++b) candidates.emplace_back(a, b);
    }
    Rng conflict_rng(spec.seed, 2);
    const auto take = static_cast<std::size_t>(counts.p);
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j =
          i +
          static_cast<std::size_t>(conflict_rng.below(candidates.size() - i));
      std::swap(candidates[i], candidates[j]);
    }
    std::sort(candidates.begin(), candidates.begin() + take);
    for (std::size_t i = 0; i < take; ++i) {
      conflicts.add_pair(candidates[i].first, candidates[i].second);
    }
  }

  std::string name = std::to_string(n) + "-" + std::to_string(m) + "-" +
                     std::to_string(counts.p) + "-" +
                     std::to_string(spec.seed);
  return Instance{std::move(graph), std::move(conflicts), std::move(name)};
}

}  // namespace mstc
