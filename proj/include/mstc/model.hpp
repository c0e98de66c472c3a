#pragma once

#include <span>
#include <string>
#include <vector>

#include "mstc/conflicts.hpp"

namespace mstc {

enum class VarKind { Continuous, Binary };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpVariable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;  // +infinity for an unbounded variable
};

struct LinearTerm {
  double coeff = 0.0;
  int var = 0;  // index into LpModel::variables
};

struct LpConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

// Symbolic linear model, minimize sense, no constant term.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<LinearTerm> objective;
  std::vector<LpConstraint> constraints;
};

// Variable layout of build_flow_model: per edge e = {u, v} (u < v) two arc
// flow variables x_u_v at index 2e and x_v_u at 2e + 1, then the selection
// binaries y_u_v at index 2|E| + e.
struct FlowModelLayout {
  EdgeId edge_count = 0;
  int x_forward(EdgeId e) const { return 2 * e; }
  int x_backward(EdgeId e) const { return 2 * e + 1; }
  int y(EdgeId e) const { return 2 * edge_count + e; }
  int variable_count() const { return 3 * edge_count; }
};

// Single-commodity flow formulation of the conflict-constrained spanning
// tree: the root sends one flow unit to every other node over the arc pair
// of each edge; arc flow is linked to the edge binary by the big-M |V| - 1;
// one inequality y_e + y_f <= 1 per unordered conflict pair. Constraints are
// named c0, c1, ... in order: |V| balance rows, 2|E| linking rows, then the
// conflict rows. Throws std::invalid_argument if root is out of range.
LpModel build_flow_model(const Instance& instance, NodeId root = 0);

// Deterministic LP-format text: sections Minimize / Subject To / Bounds /
// Binaries / End, LF line endings, integral coefficients printed as
// integers, unit coefficients omitted, expressions wrapped at eight terms
// per line.
std::string emit_lp(const LpModel& model);

// True iff `values` (indexed like model.variables) satisfies every variable
// bound, every integrality requirement, and every constraint within eps.
bool satisfies(const LpModel& model, std::span<const double> values,
               double eps = 1e-6);

// Constructive flow certificate for a spanning tree: y_e = 1 on tree edges,
// and each tree arc directed away from the root carries the size of the
// subtree behind it. The result satisfies the balance, linking and bound
// constraints of build_flow_model by construction; conflict rows hold iff
// the tree is conflict-feasible. Throws std::invalid_argument if the edge
// set is not a spanning tree or root is out of range.
std::vector<double> tree_flow_assignment(const Instance& instance,
                                         const SpanningTree& tree,
                                         NodeId root = 0);

}  // namespace mstc
