#include "skolem/circuit.hpp"

#include <algorithm>
#include <set>

namespace skolem {

MissingVariable::MissingVariable(VarId var)
    : std::runtime_error("assignment has no value for variable " + std::to_string(var)), var_(var) {}

// ---------------------------------------------------------------------------
// Assignment
// ---------------------------------------------------------------------------

void Assignment::set(VarId var, bool value) {
  if (var >= values_.size()) values_.resize(var + 1, -1);
  values_[var] = value ? 1 : 0;
}

void Assignment::erase(VarId var) {
  if (var < values_.size()) values_[var] = -1;
}

bool Assignment::contains(VarId var) const { return var < values_.size() && values_[var] >= 0; }

bool Assignment::get(VarId var) const {
  if (!contains(var)) throw MissingVariable(var);
  return values_[var] == 1;
}

std::optional<bool> Assignment::find(VarId var) const {
  if (!contains(var)) return std::nullopt;
  return values_[var] == 1;
}

Assignment Assignment::project(std::span<const VarId> vars) const {
  Assignment out;
  for (VarId v : vars) out.set(v, get(v));
  return out;
}

std::vector<bool> Assignment::values(std::span<const VarId> vars) const {
  std::vector<bool> out;
  out.reserve(vars.size());
  for (VarId v : vars) out.push_back(get(v));
  return out;
}

std::vector<VarId> Assignment::domain() const {
  std::vector<VarId> out;
  for (VarId v = 0; v < values_.size(); ++v)
    if (values_[v] >= 0) out.push_back(v);
  return out;
}

bool Assignment::operator==(const Assignment& other) const {
  const std::size_t n = std::max(values_.size(), other.values_.size());
  for (VarId v = 0; v < n; ++v) {
    const std::int8_t a = v < values_.size() ? values_[v] : -1;
    const std::int8_t b = v < other.values_.size() ? other.values_[v] : -1;
    if (a != b) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

Circuit::Circuit() : Circuit(constant(false)) {}

Circuit Circuit::constant(bool value) {
  CircuitBuilder b;
  return b.build(b.constant(value));
}

Circuit Circuit::literal(VarId var, bool positive) {
  CircuitBuilder b;
  return b.build(b.literal(var, positive));
}

std::optional<bool> Circuit::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return root_node().positive;
}

std::optional<Literal> Circuit::as_literal() const {
  const Node& r = root_node();
  if (r.kind != NodeKind::Var) return std::nullopt;
  return Literal{r.var, r.positive};
}

std::vector<VarId> Circuit::support() const {
  std::vector<VarId> out;
  for (const Node& n : *nodes_)
    if (n.kind == NodeKind::Var) out.push_back(n.var);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Circuit::depends_on(VarId var) const {
  return std::any_of(nodes_->begin(), nodes_->end(),
                     [var](const Node& n) { return n.kind == NodeKind::Var && n.var == var; });
}

bool Circuit::evaluate(const Assignment& assignment) const {
  const auto& nodes = *nodes_;
  std::vector<char> value(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.kind) {
      case NodeKind::Const:
        value[i] = n.positive;
        break;
      case NodeKind::Var:
        value[i] = assignment.get(n.var) == n.positive;
        break;
      case NodeKind::And:
        value[i] = std::all_of(n.children.begin(), n.children.end(),
                               [&](NodeId c) { return value[c] != 0; });
        break;
      case NodeKind::Or:
        value[i] = std::any_of(n.children.begin(), n.children.end(),
                               [&](NodeId c) { return value[c] != 0; });
        break;
    }
  }
  return value.back() != 0;
}

bool Circuit::same_structure(const Circuit& other) const {
  if (nodes_ == other.nodes_) return true;
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    const Node& a = (*nodes_)[i];
    const Node& b = (*other.nodes_)[i];
    if (a.kind != b.kind || a.positive != b.positive || a.var != b.var || a.children != b.children)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CircuitBuilder
// ---------------------------------------------------------------------------

std::size_t CircuitBuilder::KeyHash::operator()(const Node& n) const {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ull;
  h ^= (static_cast<std::size_t>(n.var) << 1 | (n.positive ? 1u : 0u)) + 0x9e3779b9 + (h << 6) + (h >> 2);
  for (NodeId c : n.children) h ^= c + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

bool CircuitBuilder::KeyEq::operator()(const Node& a, const Node& b) const {
  return a.kind == b.kind && a.positive == b.positive && a.var == b.var && a.children == b.children;
}

NodeId CircuitBuilder::intern(Node node) {
  if (node.kind != NodeKind::Var) node.var = 0;
  auto it = table_.find(node);
  if (it != table_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(node);
  negation_.push_back(kNoNode);
  table_.emplace(std::move(node), id);
  return id;
}

NodeId CircuitBuilder::constant(bool value) {
  Node n;
  n.kind = NodeKind::Const;
  n.positive = value;
  return intern(std::move(n));
}

NodeId CircuitBuilder::literal(VarId var, bool positive) {
  Node n;
  n.kind = NodeKind::Var;
  n.var = var;
  n.positive = positive;
  return intern(std::move(n));
}

std::optional<bool> CircuitBuilder::constant_value(NodeId id) const {
  const Node& n = nodes_[id];
  if (n.kind != NodeKind::Const) return std::nullopt;
  return n.positive;
}

NodeId CircuitBuilder::make_nary(NodeKind kind, std::vector<NodeId> children) {
  const bool identity = kind == NodeKind::And;
  std::vector<NodeId> kept;
  kept.reserve(children.size());
  for (NodeId c : children) {
    if (auto v = constant_value(c)) {
      if (*v != identity) return constant(!identity);
      continue;
    }
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  // x and ~x side by side annihilate.
  std::set<std::pair<VarId, bool>> leaves;
  for (NodeId c : kept) {
    const Node& n = nodes_[c];
    if (n.kind != NodeKind::Var) continue;
    if (leaves.contains({n.var, !n.positive})) return constant(!identity);
    leaves.insert({n.var, n.positive});
  }

  if (kept.empty()) return constant(identity);
  if (kept.size() == 1) return kept.front();
  Node n;
  n.kind = kind;
  n.children = std::move(kept);
  return intern(std::move(n));
}

NodeId CircuitBuilder::make_and(std::vector<NodeId> children) {
  return make_nary(NodeKind::And, std::move(children));
}

NodeId CircuitBuilder::make_or(std::vector<NodeId> children) {
  return make_nary(NodeKind::Or, std::move(children));
}

NodeId CircuitBuilder::negate(NodeId id) {
  if (negation_[id] != kNoNode) return negation_[id];
  // Post-order over the cone without recursion.
  std::vector<std::pair<NodeId, bool>> stack{{id, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (negation_[cur] != kNoNode) continue;
    const Node& n = nodes_[cur];
    NodeId result = kNoNode;
    switch (n.kind) {
      case NodeKind::Const:
        result = constant(!n.positive);
        break;
      case NodeKind::Var:
        result = literal(n.var, !n.positive);
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        if (!expanded) {
          stack.push_back({cur, true});
          for (NodeId c : n.children)
            if (negation_[c] == kNoNode) stack.push_back({c, false});
          continue;
        }
        std::vector<NodeId> negated;
        negated.reserve(n.children.size());
        for (NodeId c : nodes_[cur].children) negated.push_back(negation_[c]);
        result = nodes_[cur].kind == NodeKind::And ? make_or(std::move(negated))
                                                   : make_and(std::move(negated));
        break;
      }
    }
    negation_[cur] = result;
    negation_[result] = cur;
  }
  return negation_[id];
}

NodeId CircuitBuilder::make_xor(NodeId a, NodeId b) {
  return make_or(make_and(a, negate(b)), make_and(negate(a), b));
}

NodeId CircuitBuilder::make_iff(NodeId a, NodeId b) {
  return make_or(make_and(a, b), make_and(negate(a), negate(b)));
}

NodeId CircuitBuilder::make_ite(NodeId cond, NodeId then_node, NodeId else_node) {
  return make_or(make_and(cond, then_node), make_and(negate(cond), else_node));
}

NodeId CircuitBuilder::add(const Circuit& c) {
  return add(c, [](VarId, bool) -> std::optional<NodeId> { return std::nullopt; });
}

NodeId CircuitBuilder::add(const Circuit& c, const LeafMap& map) {
  std::vector<NodeId> image(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NodeKind::Const:
        image[i] = constant(n.positive);
        break;
      case NodeKind::Var: {
        auto mapped = map(n.var, n.positive);
        image[i] = mapped ? *mapped : literal(n.var, n.positive);
        break;
      }
      case NodeKind::And:
      case NodeKind::Or: {
        std::vector<NodeId> kids;
        kids.reserve(n.children.size());
        for (NodeId k : n.children) kids.push_back(image[k]);
        image[i] = make_nary(n.kind, std::move(kids));
        break;
      }
    }
  }
  return image.back();
}

NodeId CircuitBuilder::add(const Circuit& c, const std::unordered_map<VarId, NodeId>& bindings) {
  return add(c, [&](VarId var, bool positive) -> std::optional<NodeId> {
    auto it = bindings.find(var);
    if (it == bindings.end()) return std::nullopt;
    return positive ? it->second : negate(it->second);
  });
}

Circuit CircuitBuilder::build(NodeId root) const {
  std::vector<char> reachable(root + 1, 0);
  reachable[root] = 1;
  for (NodeId i = root + 1; i-- > 0;) {
    if (!reachable[i]) continue;
    for (NodeId c : nodes_[i].children) reachable[c] = 1;
  }
  std::vector<NodeId> renumber(root + 1, kNoNode);
  auto out = std::make_shared<std::vector<Node>>();
  for (NodeId i = 0; i <= root; ++i) {
    if (!reachable[i]) continue;
    Node n = nodes_[i];
    for (NodeId& c : n.children) c = renumber[c];
    renumber[i] = static_cast<NodeId>(out->size());
    out->push_back(std::move(n));
  }
  return Circuit(std::move(out));
}

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

bool evaluate(const Circuit& c, const Assignment& a) { return c.evaluate(a); }

Circuit cofactor(const Circuit& c, VarId var, bool value) {
  if (!c.depends_on(var)) return c;
  CircuitBuilder b;
  const NodeId root = b.add(c, [&](VarId v, bool positive) -> std::optional<NodeId> {
    if (v != var) return std::nullopt;
    return b.constant(positive == value);
  });
  return b.build(root);
}

Circuit substitute(const Circuit& c, const std::map<VarId, Circuit>& bindings) {
  CircuitBuilder b;
  std::unordered_map<VarId, NodeId> images;
  for (VarId v : c.support()) {
    auto it = bindings.find(v);
    if (it != bindings.end()) images.emplace(v, b.add(it->second));
  }
  return b.build(b.add(c, images));
}

Circuit negate(const Circuit& c) {
  CircuitBuilder b;
  return b.build(b.negate(b.add(c)));
}

namespace {

Circuit combine(std::span<const Circuit> parts, bool conjunction) {
  CircuitBuilder b;
  std::vector<NodeId> roots;
  roots.reserve(parts.size());
  for (const Circuit& p : parts) roots.push_back(b.add(p));
  return b.build(conjunction ? b.make_and(std::move(roots)) : b.make_or(std::move(roots)));
}

}  // namespace

Circuit conjoin(std::span<const Circuit> parts) { return combine(parts, true); }
Circuit disjoin(std::span<const Circuit> parts) { return combine(parts, false); }

std::size_t count_nodes(const Circuit& c) { return c.size(); }

std::map<VarId, std::size_t> transitive_fanin_counts(const Circuit& c,
                                                     std::span<const VarId> vars) {
  std::map<VarId, std::size_t> slot;
  for (VarId v : vars) slot.emplace(v, slot.size());
  const std::size_t words = (slot.size() + 63) / 64;
  std::vector<std::uint64_t> reach(c.size() * words, 0);
  std::vector<std::size_t> count(slot.size(), 0);

  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    std::uint64_t* row = reach.data() + i * words;
    if (n.kind == NodeKind::Var) {
      if (auto it = slot.find(n.var); it != slot.end()) row[it->second / 64] |= 1ull << (it->second % 64);
    }
    for (NodeId k : n.children) {
      const std::uint64_t* child = reach.data() + std::size_t{k} * words;
      for (std::size_t w = 0; w < words; ++w) row[w] |= child[w];
    }
    for (std::size_t s = 0; s < slot.size(); ++s)
      if (row[s / 64] >> (s % 64) & 1u) ++count[s];
  }

  std::map<VarId, std::size_t> out;
  for (auto [v, s] : slot) out[v] = count[s];
  return out;
}

// ---------------------------------------------------------------------------
// Spec
// ---------------------------------------------------------------------------

std::string Spec::name_of(VarId var) const {
  auto it = names.find(var);
  if (it != names.end()) return it->second;
  return "v" + std::to_string(var);
}

VarId Spec::max_var() const {
  VarId m = 0;
  for (VarId v : outputs) m = std::max(m, v);
  for (VarId v : inputs) m = std::max(m, v);
  for (VarId v : circuit.support()) m = std::max(m, v);
  return m;
}

bool Spec::is_output(VarId var) const {
  return std::find(outputs.begin(), outputs.end(), var) != outputs.end();
}

bool Spec::is_input(VarId var) const {
  return std::find(inputs.begin(), inputs.end(), var) != inputs.end();
}

void validate(const Spec& spec) {
  std::set<VarId> seen;
  for (VarId v : spec.outputs)
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate output " + spec.name_of(v));
  for (VarId v : spec.inputs)
    if (!seen.insert(v).second)
      throw std::invalid_argument("variable " + spec.name_of(v) + " is both input and output");
  for (VarId v : spec.circuit.support())
    if (!seen.contains(v))
      throw std::invalid_argument("variable " + spec.name_of(v) + " is neither input nor output");
}

}  // namespace skolem
