#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "skolem/aig.hpp"
#include "skolem/circuit.hpp"

namespace skolem {

/// NNF circuit for the AIG function rooted at `root`. Each AIG node yields at
/// most one node per polarity.
Circuit to_nnf(const Aig& aig, Aig::Lit root);

/// F-hat: an NNF circuit in which every negative leaf on an output x has been
/// replaced by a positive leaf on a fresh variable x-bar.
struct NnfCircuit {
  Circuit circuit;
  std::vector<VarId> outputs;
  /// x -> x-bar, one entry per output.
  std::map<VarId, VarId> bar;

  VarId bar_of(VarId x) const { return bar.at(x); }
  /// The output whose bar variable is `v`, if any.
  std::optional<VarId> output_of_bar(VarId v) const;
};

/// Renames negated output leaves. Bar variables are numbered from
/// `first_fresh` in output order.
NnfCircuit hat_transform(const Circuit& nnf, std::span<const VarId> outputs, VarId first_fresh);

/// Hat transform with fresh ids placed above every variable of `spec`.
NnfCircuit hat_transform(const Spec& spec);

/// F-hat(X, not X, Y): bar variables replaced by negated outputs.
Circuit unhat(const NnfCircuit& hat);

/// A conjunction that breaks weak decomposability: `literal` occurs below
/// child `first` and its complement below child `second`.
struct WdnnfWitness {
  NodeId node = 0;
  Literal literal;
  std::size_t first = 0;
  std::size_t second = 0;
};

struct WdnnfVerdict {
  bool pass = true;
  std::optional<WdnnfWitness> witness;
};

/// Weak decomposability check on an NNF circuit, with bar variables read as
/// negated outputs.
WdnnfVerdict check_wdnnf(const NnfCircuit& hat);
WdnnfVerdict check_wdnnf(const Circuit& nnf);

/// Per-node literal sets, bottom-up.
class LiteralSets {
 public:
  /// `alias` folds one variable onto a negated literal of another.
  explicit LiteralSets(const Circuit& c, const std::map<VarId, VarId>& alias = {});

  bool contains(NodeId node, Literal lit) const;
  std::vector<Literal> literals(NodeId node) const;

  /// Bit row of `node`: bit 2k is variable k positive, bit 2k+1 negative.
  std::span<const std::uint64_t> row(NodeId node) const {
    return {bits_.data() + std::size_t{node} * words_, words_};
  }
  std::size_t words() const { return words_; }
  Literal literal_at(std::size_t bit) const { return {vars_[bit / 2], bit % 2 == 0}; }

 private:
  std::size_t words_ = 0;
  std::map<VarId, std::size_t> slot_;
  std::vector<VarId> vars_;
  std::vector<std::uint64_t> bits_;
};

enum class Purity { Absent, Positive, Negative, Mixed };

/// How output `x` occurs in F-hat: only as x (positive), only as x-bar
/// (negative), both, or not at all.
Purity purity(const NnfCircuit& hat, VarId x);

}  // namespace skolem
