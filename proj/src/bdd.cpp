#include "skolem/bdd.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace skolem {

namespace {

constexpr std::uint32_t kTerminalLevel = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::size_t BddManager::TripleHash::operator()(const Triple& t) const {
  std::uint64_t h = t.a * 0x9e3779b97f4a7c15ull;
  h ^= (std::uint64_t{t.b} + 0x7f4a7c15ull + (h << 6) + (h >> 2));
  h ^= (std::uint64_t{t.c} * 0xbf58476d1ce4e5b9ull + (h << 6) + (h >> 2));
  return static_cast<std::size_t>(h);
}

BddManager::BddManager(std::vector<VarId> order, std::size_t node_cap)
    : order_(std::move(order)), cap_(node_cap) {
  for (std::uint32_t i = 0; i < order_.size(); ++i)
    if (!level_.emplace(order_[i], i).second) throw std::invalid_argument("variable repeated in BDD order");
  nodes_.push_back({kTerminalLevel, kFalse, kFalse});
  nodes_.push_back({kTerminalLevel, kTrue, kTrue});
}

std::uint32_t BddManager::level_of(VarId v) const {
  auto it = level_.find(v);
  if (it == level_.end()) throw std::invalid_argument("variable " + std::to_string(v) + " not in BDD order");
  return it->second;
}

std::uint32_t BddManager::top_level(Ref f) const { return nodes_[f].level; }

BddManager::Ref BddManager::make(std::uint32_t level, Ref low, Ref high) {
  if (low == high) return low;
  const Triple key{level, low, high};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (nodes_.size() >= cap_) throw BddSizeLimit(cap_);
  const auto ref = static_cast<Ref>(nodes_.size());
  nodes_.push_back({level, low, high});
  unique_.emplace(key, ref);
  return ref;
}

BddManager::Ref BddManager::var(VarId v) { return make(level_of(v), kFalse, kTrue); }

BddManager::Ref BddManager::ite(Ref f, Ref g, Ref h) {
  if (f == kTrue) return g;
  if (f == kFalse) return h;
  if (g == h) return g;
  if (g == kTrue && h == kFalse) return f;

  const Triple key{f, g, h};
  if (auto it = ite_cache_.find(key); it != ite_cache_.end()) return it->second;

  const std::uint32_t top = std::min({top_level(f), top_level(g), top_level(h)});
  auto cof = [&](Ref r, bool hi) {
    if (top_level(r) != top) return r;
    return hi ? nodes_[r].high : nodes_[r].low;
  };
  const Ref hi = ite(cof(f, true), cof(g, true), cof(h, true));
  const Ref lo = ite(cof(f, false), cof(g, false), cof(h, false));
  const Ref r = make(top, lo, hi);
  ite_cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::make_not(Ref f) { return ite(f, kFalse, kTrue); }
BddManager::Ref BddManager::make_and(Ref f, Ref g) { return ite(f, g, kFalse); }
BddManager::Ref BddManager::make_or(Ref f, Ref g) { return ite(f, kTrue, g); }

BddManager::Ref BddManager::from_circuit(const Circuit& c) {
  std::vector<Ref> image(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const skolem::Node& n = c.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NodeKind::Const:
        image[i] = n.positive ? kTrue : kFalse;
        break;
      case NodeKind::Var:
        image[i] = n.positive ? var(n.var) : make_not(var(n.var));
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        const bool conj = n.kind == NodeKind::And;
        Ref acc = conj ? kTrue : kFalse;
        for (NodeId k : n.children) acc = conj ? make_and(acc, image[k]) : make_or(acc, image[k]);
        image[i] = acc;
        break;
      }
    }
  }
  return image.back();
}

std::size_t BddManager::internal_nodes(Ref f) const {
  std::vector<Ref> stack{f};
  std::vector<char> seen(nodes_.size(), 0);
  std::size_t count = 0;
  while (!stack.empty()) {
    const Ref r = stack.back();
    stack.pop_back();
    if (is_terminal(r) || seen[r]) continue;
    seen[r] = 1;
    ++count;
    stack.push_back(nodes_[r].low);
    stack.push_back(nodes_[r].high);
  }
  return count;
}

bool BddManager::evaluate(Ref f, const Assignment& a) const {
  while (!is_terminal(f)) f = a.get(order_[nodes_[f].level]) ? nodes_[f].high : nodes_[f].low;
  return f == kTrue;
}

std::string Bdd::to_dot() const {
  std::ostringstream out;
  out << "digraph bdd {\n  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  std::vector<BddManager::Ref> stack{root};
  std::vector<char> seen(manager->table_size(), 0);
  while (!stack.empty()) {
    const auto r = stack.back();
    stack.pop_back();
    if (manager->is_terminal(r) || seen[r]) continue;
    seen[r] = 1;
    const auto& n = manager->node(r);
    out << "  n" << r << " [label=\"v" << manager->var_at_level(n.level) << "\"];\n";
    out << "  n" << r << " -> n" << n.low << " [style=dashed];\n";
    out << "  n" << r << " -> n" << n.high << ";\n";
    stack.push_back(n.low);
    stack.push_back(n.high);
  }
  out << "}\n";
  return out.str();
}

std::vector<VarId> static_bdd_order(const Spec& spec) {
  std::vector<VarId> all(spec.outputs);
  all.insert(all.end(), spec.inputs.begin(), spec.inputs.end());
  const auto score = transitive_fanin_counts(spec.circuit, all);
  auto ranked = [&](std::vector<VarId> vars) {
    std::sort(vars.begin(), vars.end(), [&](VarId a, VarId b) {
      return std::pair{score.at(a), a} < std::pair{score.at(b), b};
    });
    return vars;
  };
  const auto xs = ranked(spec.outputs);
  const auto ys = ranked(spec.inputs);
  std::vector<VarId> order;
  for (std::size_t i = 0; i < std::max(xs.size(), ys.size()); ++i) {
    if (i < xs.size()) order.push_back(xs[i]);
    if (i < ys.size()) order.push_back(ys[i]);
  }
  return order;
}

Bdd build_bdd(const Spec& spec, std::span<const VarId> order, std::size_t node_cap) {
  Bdd out;
  out.manager = std::make_shared<BddManager>(std::vector<VarId>(order.begin(), order.end()), node_cap);
  out.root = out.manager->from_circuit(spec.circuit);
  return out;
}

Circuit bdd_to_wdnnf(const Bdd& bdd) {
  const BddManager& m = *bdd.manager;
  CircuitBuilder b;
  std::unordered_map<BddManager::Ref, NodeId> memo{{BddManager::kFalse, b.constant(false)},
                                                   {BddManager::kTrue, b.constant(true)}};
  std::vector<std::pair<BddManager::Ref, bool>> stack{{bdd.root, false}};
  while (!stack.empty()) {
    auto [r, expanded] = stack.back();
    stack.pop_back();
    if (memo.contains(r)) continue;
    const auto& n = m.node(r);
    if (!expanded) {
      stack.push_back({r, true});
      stack.push_back({n.low, false});
      stack.push_back({n.high, false});
      continue;
    }
    const VarId v = m.var_at_level(n.level);
    memo[r] = b.make_or(b.make_and(b.literal(v, false), memo.at(n.low)),
                        b.make_and(b.literal(v, true), memo.at(n.high)));
  }
  return b.build(memo.at(bdd.root));
}

Spec bdd_pipeline_spec(const Spec& spec, std::size_t node_cap) {
  const auto order = static_bdd_order(spec);
  Spec out = spec;
  out.circuit = bdd_to_wdnnf(build_bdd(spec, order, node_cap));
  return out;
}

}  // namespace skolem
