#include "skolem/unate.hpp"

#include <algorithm>

namespace skolem {

namespace {

// F|x=value read through F-hat: x := value, x-bar := !value, other bars := not x.
NodeId cofactor_of_f(CircuitBuilder& b, const NnfCircuit& hat, VarId x, bool value) {
  std::map<VarId, std::pair<VarId, bool>> leaf;  // variable -> (output, reads as positive)
  for (auto [out, xb] : hat.bar) {
    leaf.emplace(out, std::pair{out, true});
    leaf.emplace(xb, std::pair{out, false});
  }
  return b.add(hat.circuit, [&](VarId var, bool positive) -> std::optional<NodeId> {
    auto it = leaf.find(var);
    if (it == leaf.end()) return std::nullopt;
    auto [out, reads_positive] = it->second;
    const bool lit_positive = positive == reads_positive;
    if (out == x) return b.constant(lit_positive == value);
    return b.literal(out, lit_positive);
  });
}

// Is `first` and not `second` unsatisfiable?
std::optional<bool> implication_holds(const NnfCircuit& hat, VarId x, bool first, const Budget& budget) {
  CircuitBuilder b;
  const NodeId lhs = cofactor_of_f(b, hat, x, first);
  const NodeId rhs = cofactor_of_f(b, hat, x, !first);
  const Circuit query = b.build(b.make_and(lhs, b.negate(rhs)));
  const SatOutcome r = solve(query, budget);
  if (r.verdict == Verdict::Unknown) return std::nullopt;
  return r.unsat();
}

}  // namespace

UnateCheck semantic_unate_check(const NnfCircuit& hat, VarId x, const Budget& budget) {
  UnateCheck out;
  // eta+ = F|x=0 and not F|x=1
  ++out.oracle_calls;
  auto pos = implication_holds(hat, x, false, budget);
  if (!pos) throw ResourceLimit();
  if (*pos) {
    out.verdict = Unateness::Positive;
    return out;
  }
  ++out.oracle_calls;
  auto neg = implication_holds(hat, x, true, budget);
  if (!neg) throw ResourceLimit();
  out.verdict = *neg ? Unateness::Negative : Unateness::Binate;
  return out;
}

NnfCircuit fix_output(const NnfCircuit& hat, VarId x, bool value) {
  const VarId xb = hat.bar_of(x);
  CircuitBuilder b;
  const NodeId root = b.add(hat.circuit, [&](VarId var, bool positive) -> std::optional<NodeId> {
    if (var == x) return b.constant(positive == value);
    if (var == xb) return b.constant(positive != value);
    return std::nullopt;
  });
  NnfCircuit out = hat;
  out.circuit = b.build(root);
  return out;
}

UnateResult unate_fixpoint(const NnfCircuit& hat, const Budget& budget) {
  UnateResult out;
  out.reduced = hat;
  out.remaining = hat.outputs;

  bool changed = true;
  while (changed && !out.remaining.empty()) {
    changed = false;
    ++out.rounds;
    std::vector<VarId> still;
    for (VarId x : out.remaining) {
      Unateness verdict = Unateness::Binate;
      switch (purity(out.reduced, x)) {
        case Purity::Absent:
        case Purity::Positive:
          verdict = Unateness::Positive;
          break;
        case Purity::Negative:
          verdict = Unateness::Negative;
          break;
        case Purity::Mixed: {
          const UnateCheck check = semantic_unate_check(out.reduced, x, budget);
          out.oracle_calls += check.oracle_calls;
          verdict = check.verdict;
          break;
        }
      }
      if (verdict == Unateness::Binate) {
        still.push_back(x);
        continue;
      }
      const bool value = verdict == Unateness::Positive;
      out.reduced = fix_output(out.reduced, x, value);
      (value ? out.positive : out.negative).push_back(x);
      changed = true;
    }
    out.remaining = std::move(still);
  }
  return out;
}

}  // namespace skolem
