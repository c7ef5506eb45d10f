#pragma once

#include <vector>

#include "skolem/nnf.hpp"
#include "skolem/sat.hpp"

namespace skolem {

enum class Unateness { Positive, Negative, Binate };

struct UnateCheck {
  Unateness verdict = Unateness::Binate;
  std::size_t oracle_calls = 0;
};

/// Semantic unateness of F = F-hat(X, not X, Y) in output `x`: positive iff
/// F|x=0 and not F|x=1 is unsatisfiable, negative iff the converse is. An
/// output F does not depend on counts as positive. Throws ResourceLimit.
UnateCheck semantic_unate_check(const NnfCircuit& hat, VarId x, const Budget& budget = {});

struct UnateResult {
  /// Negative unate outputs (Skolem constant 0), in detection order.
  std::vector<VarId> negative;
  /// Positive unate outputs (Skolem constant 1), in detection order.
  std::vector<VarId> positive;
  /// F-hat with every detected output and its bar fixed.
  NnfCircuit reduced;
  /// Outputs still undecided, in their original order.
  std::vector<VarId> remaining;
  std::size_t oracle_calls = 0;
  std::size_t rounds = 0;
};

/// Fixes unate outputs to constants until a full round finds none. Pure
/// literals are recognised without the oracle; each detection is substituted
/// before the next output is examined.
UnateResult unate_fixpoint(const NnfCircuit& hat, const Budget& budget = {});

/// F-hat with x := value and x-bar := !value.
NnfCircuit fix_output(const NnfCircuit& hat, VarId x, bool value);

}  // namespace skolem
