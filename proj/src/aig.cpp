#include "skolem/aig.hpp"

#include <algorithm>

namespace skolem {

Aig::Aig() { nodes_.push_back(NodeInfo{}); }

Aig::Lit Aig::input(VarId var) {
  if (auto it = input_lits_.find(var); it != input_lits_.end()) return it->second;
  NodeInfo n;
  n.is_input = true;
  n.var = var;
  const Lit lit = static_cast<Lit>(nodes_.size()) << 1;
  nodes_.push_back(n);
  inputs_.push_back(var);
  input_lits_.emplace(var, lit);
  return lit;
}

Aig::Lit Aig::make_and(Lit a, Lit b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == b) return a;
  if (a == negate(b)) return kFalse;
  if (a > b) std::swap(a, b);

  const std::uint64_t key = std::uint64_t{a} << 32 | b;
  if (auto it = strash_.find(key); it != strash_.end()) return it->second;
  NodeInfo n;
  n.fanin0 = a;
  n.fanin1 = b;
  const Lit lit = static_cast<Lit>(nodes_.size()) << 1;
  nodes_.push_back(n);
  strash_.emplace(key, lit);
  return lit;
}

Aig::Lit Aig::make_xor(Lit a, Lit b) {
  return make_or(make_and(a, negate(b)), make_and(negate(a), b));
}

Aig::Lit Aig::make_ite(Lit c, Lit t, Lit e) {
  return make_or(make_and(c, t), make_and(negate(c), e));
}

Aig::Lit Aig::make_and(std::span<const Lit> lits) {
  Lit acc = kTrue;
  for (Lit l : lits) acc = make_and(acc, l);
  return acc;
}

Aig::Lit Aig::make_or(std::span<const Lit> lits) {
  Lit acc = kFalse;
  for (Lit l : lits) acc = make_or(acc, l);
  return acc;
}

bool Aig::evaluate(Lit root, const Assignment& a) const {
  const std::uint32_t top = index(root);
  std::vector<char> value(top + 1, 0);
  for (std::uint32_t i = 1; i <= top; ++i) {
    const NodeInfo& n = nodes_[i];
    if (n.is_input) {
      value[i] = a.get(n.var);
    } else {
      const bool l = value[index(n.fanin0)] != complemented(n.fanin0);
      const bool r = value[index(n.fanin1)] != complemented(n.fanin1);
      value[i] = l && r;
    }
  }
  return (value[top] != 0) != complemented(root);
}

Aig::Lit add_circuit(Aig& aig, const Circuit& c, const std::map<VarId, Aig::Lit>& inputs) {
  std::vector<Aig::Lit> image(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NodeKind::Const:
        image[i] = n.positive ? Aig::kTrue : Aig::kFalse;
        break;
      case NodeKind::Var: {
        auto it = inputs.find(n.var);
        const Aig::Lit base = it != inputs.end() ? it->second : aig.input(n.var);
        image[i] = n.positive ? base : Aig::negate(base);
        break;
      }
      case NodeKind::And:
      case NodeKind::Or: {
        std::vector<Aig::Lit> kids;
        kids.reserve(n.children.size());
        for (NodeId k : n.children) kids.push_back(image[k]);
        image[i] = n.kind == NodeKind::And ? aig.make_and(kids) : aig.make_or(kids);
        break;
      }
    }
  }
  return image.back();
}

}  // namespace skolem
