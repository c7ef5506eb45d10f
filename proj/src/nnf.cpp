#include "skolem/nnf.hpp"

#include <algorithm>
#include <bit>

namespace skolem {

Circuit to_nnf(const Aig& aig, Aig::Lit root) {
  CircuitBuilder b;
  const std::uint32_t top = Aig::index(root);
  std::vector<NodeId> image(top + 1, kNoNode);
  image[0] = b.constant(false);
  auto lit_image = [&](Aig::Lit l) {
    const NodeId base = image[Aig::index(l)];
    return Aig::complemented(l) ? b.negate(base) : base;
  };
  for (std::uint32_t i = 1; i <= top; ++i) {
    const auto& n = aig.info(i);
    image[i] = n.is_input ? b.literal(n.var) : b.make_and(lit_image(n.fanin0), lit_image(n.fanin1));
  }
  return b.build(lit_image(root));
}

std::optional<VarId> NnfCircuit::output_of_bar(VarId v) const {
  for (auto [x, xb] : bar)
    if (xb == v) return x;
  return std::nullopt;
}

NnfCircuit hat_transform(const Circuit& nnf, std::span<const VarId> outputs, VarId first_fresh) {
  NnfCircuit out;
  out.outputs.assign(outputs.begin(), outputs.end());
  VarId next = first_fresh;
  for (VarId x : outputs) out.bar.emplace(x, next++);

  CircuitBuilder b;
  const NodeId root = b.add(nnf, [&](VarId var, bool positive) -> std::optional<NodeId> {
    if (positive) return std::nullopt;
    auto it = out.bar.find(var);
    if (it == out.bar.end()) return std::nullopt;
    return b.literal(it->second);
  });
  out.circuit = b.build(root);
  return out;
}

NnfCircuit hat_transform(const Spec& spec) {
  return hat_transform(spec.circuit, spec.outputs, spec.max_var() + 1);
}

Circuit unhat(const NnfCircuit& hat) {
  std::map<VarId, VarId> back;
  for (auto [x, xb] : hat.bar) back.emplace(xb, x);
  CircuitBuilder b;
  const NodeId root = b.add(hat.circuit, [&](VarId var, bool positive) -> std::optional<NodeId> {
    auto it = back.find(var);
    if (it == back.end()) return std::nullopt;
    return b.literal(it->second, !positive);
  });
  return b.build(root);
}

// ---------------------------------------------------------------------------
// Literal sets and the wDNNF check
// ---------------------------------------------------------------------------

LiteralSets::LiteralSets(const Circuit& c, const std::map<VarId, VarId>& alias) {
  auto canonical = [&](VarId var, bool positive) -> Literal {
    if (auto it = alias.find(var); it != alias.end()) return {it->second, !positive};
    return {var, positive};
  };
  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::Var) continue;
    const VarId v = canonical(n.var, n.positive).var;
    if (slot_.emplace(v, vars_.size()).second) vars_.push_back(v);
  }
  words_ = (2 * vars_.size() + 63) / 64;
  bits_.assign(c.size() * words_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    std::uint64_t* row = bits_.data() + i * words_;
    if (n.kind == NodeKind::Var) {
      const Literal l = canonical(n.var, n.positive);
      const std::size_t bit = 2 * slot_.at(l.var) + (l.positive ? 0 : 1);
      row[bit / 64] |= 1ull << (bit % 64);
    }
    for (NodeId k : n.children) {
      const std::uint64_t* child = bits_.data() + std::size_t{k} * words_;
      for (std::size_t w = 0; w < words_; ++w) row[w] |= child[w];
    }
  }
}

bool LiteralSets::contains(NodeId node, Literal lit) const {
  auto it = slot_.find(lit.var);
  if (it == slot_.end()) return false;
  const std::size_t bit = 2 * it->second + (lit.positive ? 0 : 1);
  return row(node)[bit / 64] >> (bit % 64) & 1u;
}

std::vector<Literal> LiteralSets::literals(NodeId node) const {
  std::vector<Literal> out;
  auto r = row(node);
  for (std::size_t bit = 0; bit < 2 * vars_.size(); ++bit)
    if (r[bit / 64] >> (bit % 64) & 1u) out.push_back(literal_at(bit));
  return out;
}

namespace {

// Bits of `row` with each positive/negative pair swapped.
std::uint64_t complement_word(std::uint64_t w) {
  constexpr std::uint64_t even = 0x5555555555555555ull;
  return (w & even) << 1 | (w >> 1 & even);
}

WdnnfVerdict check(const Circuit& c, const LiteralSets& sets) {
  const std::size_t words = sets.words();
  std::vector<std::uint64_t> seen(words);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    if (n.kind != NodeKind::And) continue;
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n.children.size(); ++j) {
      auto r = sets.row(n.children[j]);
      for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t clash = complement_word(r[w]) & seen[w];
        if (clash == 0) continue;
        const std::size_t bit = w * 64 + static_cast<std::size_t>(std::countr_zero(clash));
        // The clashing literal as it appears under an earlier child.
        const Literal earlier = sets.literal_at(bit);
        std::size_t first = 0;
        while (!sets.contains(n.children[first], earlier)) ++first;
        return {false, WdnnfWitness{static_cast<NodeId>(i), earlier, first, j}};
      }
      for (std::size_t w = 0; w < words; ++w) seen[w] |= r[w];
    }
  }
  return {};
}

}  // namespace

WdnnfVerdict check_wdnnf(const NnfCircuit& hat) {
  std::map<VarId, VarId> alias;
  for (auto [x, xb] : hat.bar) alias.emplace(xb, x);
  return check(hat.circuit, LiteralSets(hat.circuit, alias));
}

WdnnfVerdict check_wdnnf(const Circuit& nnf) { return check(nnf, LiteralSets(nnf)); }

Purity purity(const NnfCircuit& hat, VarId x) {
  const VarId xb = hat.bar_of(x);
  bool pos = false;
  bool neg = false;
  for (const Node& n : hat.circuit.nodes()) {
    if (n.kind != NodeKind::Var) continue;
    if (n.var == x) (n.positive ? pos : neg) = true;
    if (n.var == xb) (n.positive ? neg : pos) = true;
  }
  if (pos && neg) return Purity::Mixed;
  if (pos) return Purity::Positive;
  if (neg) return Purity::Negative;
  return Purity::Absent;
}

}  // namespace skolem
