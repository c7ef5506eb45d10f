#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "skolem/circuit.hpp"

namespace skolem {

/// And-inverter graph with complemented edges and structural hashing.
///
/// Literals follow the AIGER convention: 2 * node + complement. Node 0 is
/// constant false, so literal 0 is false and literal 1 is true.
class Aig {
 public:
  using Lit = std::uint32_t;
  static constexpr Lit kFalse = 0;
  static constexpr Lit kTrue = 1;

  struct NodeInfo {
    bool is_input = false;
    VarId var = 0;
    Lit fanin0 = 0;
    Lit fanin1 = 0;
  };

  Aig();

  /// Literal of the input for `var`, creating the input on first use.
  Lit input(VarId var);
  Lit make_and(Lit a, Lit b);
  Lit make_or(Lit a, Lit b) { return negate(make_and(negate(a), negate(b))); }
  Lit make_xor(Lit a, Lit b);
  Lit make_iff(Lit a, Lit b) { return negate(make_xor(a, b)); }
  Lit make_ite(Lit c, Lit t, Lit e);
  Lit make_and(std::span<const Lit> lits);
  Lit make_or(std::span<const Lit> lits);

  static Lit negate(Lit l) { return l ^ 1u; }
  static std::uint32_t index(Lit l) { return l >> 1; }
  static bool complemented(Lit l) { return (l & 1u) != 0; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_ands() const { return nodes_.size() - 1 - inputs_.size(); }
  const NodeInfo& info(std::uint32_t index) const { return nodes_[index]; }
  /// Input variables in creation order.
  const std::vector<VarId>& inputs() const { return inputs_; }

  bool evaluate(Lit root, const Assignment& a) const;

 private:
  std::vector<NodeInfo> nodes_;
  std::vector<VarId> inputs_;
  std::unordered_map<VarId, Lit> input_lits_;
  std::unordered_map<std::uint64_t, Lit> strash_;
};

/// Adds `c` to `aig`, reading variables through `inputs` (missing variables
/// become fresh AIG inputs).
Aig::Lit add_circuit(Aig& aig, const Circuit& c, const std::map<VarId, Aig::Lit>& inputs = {});

}  // namespace skolem
