#include "mstc/model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mstc {

namespace {

std::string arc_name(NodeId from, NodeId to) {
  return "x_" + std::to_string(from) + "_" + std::to_string(to);
}

std::string selection_name(const Edge& e) {
  return "y_" + std::to_string(e.u) + "_" + std::to_string(e.v);
}

std::string format_number(double value) {
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// "3 y_0_1 + y_0_2 - 2 x_1_2", eight terms per line, continuation lines
// indented. Empty expressions print as "0".
void append_expression(std::string& out, const LpModel& model,
                       std::span<const LinearTerm> terms) {
  if (terms.empty()) {
    out += "0";
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const LinearTerm& term = terms[i];
    const double magnitude = std::abs(term.coeff);
    if (i == 0) {
      if (term.coeff < 0) out += "- ";
    } else {
      out += (i % 8 == 0) ? "\n   " : " ";
      out += term.coeff < 0 ? "- " : "+ ";
    }
    if (magnitude != 1.0) {
      out += format_number(magnitude);
      out += " ";
    }
    out += model.variables[static_cast<std::size_t>(term.var)].name;
  }
}

}  // namespace

LpModel build_flow_model(const Instance& instance, NodeId root) {
  const Graph& graph = instance.graph;
  const NodeId n = graph.node_count();
  const EdgeId m = graph.edge_count();
  if (root < 0 || root >= n) {
    throw std::invalid_argument("root node " + std::to_string(root) +
                                " out of range [0, " + std::to_string(n) +
                                ")");
  }
  const FlowModelLayout layout{m};
  const double big_m = static_cast<double>(n) - 1.0;
  const double inf = std::numeric_limits<double>::infinity();

  LpModel model;
  model.variables.resize(static_cast<std::size_t>(layout.variable_count()));
  for (const Edge& e : graph.edges()) {
    model.variables[static_cast<std::size_t>(layout.x_forward(e.id))] =
        LpVariable{arc_name(e.u, e.v), VarKind::Continuous, 0.0, inf};
    model.variables[static_cast<std::size_t>(layout.x_backward(e.id))] =
        LpVariable{arc_name(e.v, e.u), VarKind::Continuous, 0.0, inf};
    model.variables[static_cast<std::size_t>(layout.y(e.id))] =
        LpVariable{selection_name(e), VarKind::Binary, 0.0, 1.0};
  }

  for (const Edge& e : graph.edges()) {
    model.objective.push_back(
        LinearTerm{static_cast<double>(e.cost), layout.y(e.id)});
  }

  int constraint_index = 0;
  auto next_name = [&constraint_index] {
    return "c" + std::to_string(constraint_index++);
  };

  // Balance rows: inflow - outflow = -|V|+1 at the root, +1 elsewhere.
  for (NodeId i = 0; i < n; ++i) {
    LpConstraint row;
    row.name = next_name();
    row.relation = Relation::Equal;
    row.rhs = i == root ? -(big_m) : 1.0;
    for (const Edge& e : graph.edges()) {
      if (e.u == i) {
        row.terms.push_back(LinearTerm{1.0, layout.x_backward(e.id)});
        row.terms.push_back(LinearTerm{-1.0, layout.x_forward(e.id)});
      } else if (e.v == i) {
        row.terms.push_back(LinearTerm{1.0, layout.x_forward(e.id)});
        row.terms.push_back(LinearTerm{-1.0, layout.x_backward(e.id)});
      }
    }
    model.constraints.push_back(std::move(row));
  }

  // Linking rows: x <= (|V|-1) y for both arcs of each edge.
  for (const Edge& e : graph.edges()) {
    for (int arc : {layout.x_forward(e.id), layout.x_backward(e.id)}) {
      LpConstraint row;
      row.name = next_name();
      row.relation = Relation::LessEqual;
      row.rhs = 0.0;
      row.terms.push_back(LinearTerm{1.0, arc});
      row.terms.push_back(LinearTerm{-big_m, layout.y(e.id)});
      model.constraints.push_back(std::move(row));
    }
  }

  // Conflict rows: y_e + y_f <= 1, one per unordered pair.
  for (const auto& [a, b] : instance.conflicts.pairs()) {
    LpConstraint row;
    row.name = next_name();
    row.relation = Relation::LessEqual;
    row.rhs = 1.0;
    row.terms.push_back(LinearTerm{1.0, layout.y(a)});
    row.terms.push_back(LinearTerm{1.0, layout.y(b)});
    model.constraints.push_back(std::move(row));
  }
  return model;
}

std::string emit_lp(const LpModel& model) {
  std::string out;
  out += "Minimize\n obj: ";
  append_expression(out, model, model.objective);
  out += "\nSubject To\n";
  for (const LpConstraint& row : model.constraints) {
    out += " " + row.name + ": ";
    append_expression(out, model, row.terms);
    switch (row.relation) {
      case Relation::LessEqual:
        out += " <= ";
        break;
      case Relation::Equal:
        out += " = ";
        break;
      case Relation::GreaterEqual:
        out += " >= ";
        break;
    }
    out += format_number(row.rhs);
    out += "\n";
  }
  out += "Bounds\n";
  for (const LpVariable& var : model.variables) {
    if (var.kind == VarKind::Binary) continue;
    out += " " + format_number(var.lower) + " <= " + var.name;
    if (std::isfinite(var.upper)) {
      out += " <= " + format_number(var.upper);
    }
    out += "\n";
  }
  out += "Binaries\n";
  for (const LpVariable& var : model.variables) {
    if (var.kind == VarKind::Binary) out += " " + var.name + "\n";
  }
  out += "End\n";
  return out;
}

bool satisfies(const LpModel& model, std::span<const double> values,
               double eps) {
  if (values.size() != model.variables.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const LpVariable& var = model.variables[i];
    const double v = values[i];
    if (v < var.lower - eps || v > var.upper + eps) return false;
    if (var.kind == VarKind::Binary &&
        std::abs(v - std::round(v)) > eps) {
      return false;
    }
  }
  for (const LpConstraint& row : model.constraints) {
    double lhs = 0.0;
    for (const LinearTerm& term : row.terms) {
      lhs += term.coeff * values[static_cast<std::size_t>(term.var)];
    }
    switch (row.relation) {
      case Relation::LessEqual:
        if (lhs > row.rhs + eps) return false;
        break;
      case Relation::Equal:
        if (std::abs(lhs - row.rhs) > eps) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < row.rhs - eps) return false;
        break;
    }
  }
  return true;
}

std::vector<double> tree_flow_assignment(const Instance& instance,
                                         const SpanningTree& tree,
                                         NodeId root) {
  const Graph& graph = instance.graph;
  const NodeId n = graph.node_count();
  if (root < 0 || root >= n) {
    throw std::invalid_argument("root node out of range");
  }
  if (!is_spanning_tree(graph, tree.edge_ids)) {
    throw std::invalid_argument("edge set is not a spanning tree");
  }

  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adjacency(
      static_cast<std::size_t>(n));
  for (EdgeId id : tree.edge_ids) {
    const Edge& e = graph.edge(id);
    adjacency[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
    adjacency[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
  }

  // BFS from the root; subtree sizes by processing the order backwards.
  std::vector<NodeId> bfs_order;
  std::vector<NodeId> parent(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<std::int64_t> subtree(static_cast<std::size_t>(n), 1);
  bfs_order.push_back(root);
  parent[static_cast<std::size_t>(root)] = root;
  for (std::size_t head = 0; head < bfs_order.size(); ++head) {
    const NodeId at = bfs_order[head];
    for (const auto& [next, via] : adjacency[static_cast<std::size_t>(at)]) {
      if (parent[static_cast<std::size_t>(next)] != -1) continue;
      parent[static_cast<std::size_t>(next)] = at;
      parent_edge[static_cast<std::size_t>(next)] = via;
      bfs_order.push_back(next);
    }
  }
  for (std::size_t i = bfs_order.size(); i-- > 1;) {
    const NodeId at = bfs_order[i];
    subtree[static_cast<std::size_t>(parent[static_cast<std::size_t>(at)])] +=
        subtree[static_cast<std::size_t>(at)];
  }

  const FlowModelLayout layout{graph.edge_count()};
  std::vector<double> values(
      static_cast<std::size_t>(layout.variable_count()), 0.0);
  for (NodeId at = 0; at < n; ++at) {
    if (at == root) continue;
    const EdgeId via = parent_edge[static_cast<std::size_t>(at)];
    const Edge& e = graph.edge(via);
    const auto flow =
        static_cast<double>(subtree[static_cast<std::size_t>(at)]);
    // flow runs parent -> at
    if (parent[static_cast<std::size_t>(at)] == e.u) {
      values[static_cast<std::size_t>(layout.x_forward(via))] = flow;
    } else {
      values[static_cast<std::size_t>(layout.x_backward(via))] = flow;
    }
    values[static_cast<std::size_t>(layout.y(via))] = 1.0;
  }
  return values;
}

}  // namespace mstc
