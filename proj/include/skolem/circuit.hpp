#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace skolem {

using VarId = std::uint32_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = ~NodeId{0};

/// A variable together with a polarity.
struct Literal {
  VarId var = 0;
  bool positive = true;

  Literal operator~() const { return {var, !positive}; }
  auto operator<=>(const Literal&) const = default;
};

/// Raised when a circuit is evaluated under an assignment that leaves a
/// support variable unset.
class MissingVariable : public std::runtime_error {
 public:
  explicit MissingVariable(VarId var);
  VarId var() const { return var_; }

 private:
  VarId var_;
};

/// Partial map from variables to bits. Lookups of unset variables throw.
class Assignment {
 public:
  Assignment() = default;

  void set(VarId var, bool value);
  void set(Literal lit) { set(lit.var, lit.positive); }
  void erase(VarId var);
  bool contains(VarId var) const;
  bool get(VarId var) const;
  std::optional<bool> find(VarId var) const;

  /// Restriction to `vars`; every variable in `vars` must be set.
  Assignment project(std::span<const VarId> vars) const;
  /// Values of `vars` in sequence order.
  std::vector<bool> values(std::span<const VarId> vars) const;
  /// Assigned variables in ascending order.
  std::vector<VarId> domain() const;

  bool operator==(const Assignment& other) const;

 private:
  std::vector<std::int8_t> values_;
};

enum class NodeKind : std::uint8_t { Const, Var, And, Or };

struct Node {
  NodeKind kind = NodeKind::Const;
  /// Polarity for Var leaves, value for Const leaves.
  bool positive = false;
  VarId var = 0;
  /// Children of And/Or nodes, ascending; at least two.
  std::vector<NodeId> children;

  bool is_leaf() const { return kind == NodeKind::Const || kind == NodeKind::Var; }
};

/// Immutable rooted DAG of And/Or nodes over literal and constant leaves.
///
/// Negation appears only at leaves, so every circuit is in negation normal
/// form. Nodes are stored in topological order with the root last, and only
/// nodes reachable from the root are kept. Copies share storage.
class Circuit {
 public:
  /// The constant-false circuit.
  Circuit();

  static Circuit constant(bool value);
  static Circuit literal(VarId var, bool positive = true);
  static Circuit literal(Literal lit) { return literal(lit.var, lit.positive); }

  std::span<const Node> nodes() const { return *nodes_; }
  const Node& node(NodeId id) const { return (*nodes_)[id]; }
  NodeId root() const { return static_cast<NodeId>(nodes_->size() - 1); }
  const Node& root_node() const { return nodes_->back(); }

  /// Number of DAG nodes, shared nodes counted once.
  std::size_t size() const { return nodes_->size(); }
  std::optional<bool> constant_value() const;
  bool is_constant() const { return root_node().kind == NodeKind::Const; }
  /// Literal at the root, if the circuit is a single leaf.
  std::optional<Literal> as_literal() const;

  /// Variables labelling leaves, ascending.
  std::vector<VarId> support() const;
  bool depends_on(VarId var) const;

  bool evaluate(const Assignment& assignment) const;

  /// Structural identity: same node table.
  bool same_structure(const Circuit& other) const;

 private:
  friend class CircuitBuilder;
  explicit Circuit(std::shared_ptr<const std::vector<Node>> nodes) : nodes_(std::move(nodes)) {}

  std::shared_ptr<const std::vector<Node>> nodes_;
};

/// Hash-consing constructor for circuits.
///
/// Constants are propagated and duplicate or complementary leaf children are
/// folded as nodes are created. A builder is single-owner; `build` snapshots
/// the cone of one node into an immutable Circuit.
class CircuitBuilder {
 public:
  /// Maps a leaf of an imported circuit to a node of this builder.
  /// Returning nullopt keeps the leaf as is.
  using LeafMap = std::function<std::optional<NodeId>(VarId var, bool positive)>;

  CircuitBuilder() = default;

  NodeId constant(bool value);
  NodeId literal(VarId var, bool positive = true);
  NodeId literal(Literal lit) { return literal(lit.var, lit.positive); }

  NodeId make_and(std::vector<NodeId> children);
  NodeId make_or(std::vector<NodeId> children);
  NodeId make_and(NodeId a, NodeId b) { return make_and(std::vector<NodeId>{a, b}); }
  NodeId make_or(NodeId a, NodeId b) { return make_or(std::vector<NodeId>{a, b}); }
  NodeId negate(NodeId id);
  NodeId make_xor(NodeId a, NodeId b);
  NodeId make_iff(NodeId a, NodeId b);
  NodeId make_ite(NodeId cond, NodeId then_node, NodeId else_node);

  /// Copies `c` into this builder, re-simplifying on the way.
  NodeId add(const Circuit& c);
  /// Copies `c`, replacing each leaf (variable and polarity) by the node
  /// `map` returns for it.
  NodeId add(const Circuit& c, const LeafMap& map);
  /// Copies `c`, replacing variables by nodes; negative leaves receive the
  /// negated replacement.
  NodeId add(const Circuit& c, const std::unordered_map<VarId, NodeId>& bindings);

  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::optional<bool> constant_value(NodeId id) const;

  Circuit build(NodeId root) const;

 private:
  struct KeyHash {
    std::size_t operator()(const Node& n) const;
  };
  struct KeyEq {
    bool operator()(const Node& a, const Node& b) const;
  };

  NodeId intern(Node node);
  NodeId make_nary(NodeKind kind, std::vector<NodeId> children);

  std::vector<Node> nodes_;
  std::vector<NodeId> negation_;
  std::unordered_map<Node, NodeId, KeyHash, KeyEq> table_;
};

/// Evaluates `c` under `a`; throws MissingVariable if `a` is partial on the
/// support of `c`.
bool evaluate(const Circuit& c, const Assignment& a);

/// c with `var` fixed to `value`, constants propagated.
Circuit cofactor(const Circuit& c, VarId var, bool value);

/// Simultaneous substitution of variables by circuits.
Circuit substitute(const Circuit& c, const std::map<VarId, Circuit>& bindings);

Circuit negate(const Circuit& c);
Circuit conjoin(std::span<const Circuit> parts);
Circuit disjoin(std::span<const Circuit> parts);

std::size_t count_nodes(const Circuit& c);

/// For each variable in `vars`, the number of nodes whose transitive fan-in
/// contains a leaf on that variable (the leaf itself included).
std::map<VarId, std::size_t> transitive_fanin_counts(const Circuit& c,
                                                     std::span<const VarId> vars);

/// Relational specification F(X, Y): outputs X are to be synthesized as
/// functions of inputs Y.
struct Spec {
  Circuit circuit;
  std::vector<VarId> outputs;
  std::vector<VarId> inputs;
  std::map<VarId, std::string> names;

  std::string name_of(VarId var) const;
  /// Largest variable id used anywhere in the spec.
  VarId max_var() const;
  bool is_output(VarId var) const;
  bool is_input(VarId var) const;
};

/// Throws std::invalid_argument if X and Y overlap or do not cover the
/// support of the circuit.
void validate(const Spec& spec);

}  // namespace skolem
