#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "skolem/circuit.hpp"
#include "skolem/nnf.hpp"
#include "skolem/sat.hpp"
#include "skolem/unate.hpp"

namespace skolem {

enum class OrderHeuristic { FanIn, Index };

/// Total order on outputs. An output's Skolem function may depend on the
/// outputs after it and on the inputs.
struct OutputOrder {
  std::vector<VarId> sequence;
  /// Fan-in score of each ordered output (0 for the index heuristic).
  std::map<VarId, std::size_t> score;

  std::size_t position(VarId x) const;
};

/// Orders `outputs` by the number of nodes whose transitive fan-in contains
/// them, fewest first; ties and the index heuristic fall back to variable id.
OutputOrder choose_order(const NnfCircuit& hat, std::span<const VarId> outputs,
                         OrderHeuristic heuristic = OrderHeuristic::FanIn);

/// Under-approximations of the exact characterizations for the output at
/// `position` of the order, both over the later outputs and the inputs.
struct CandidatePair {
  Circuit delta_bar;
  Circuit gamma_bar;
};

/// Builds both candidates by fixing outputs in F-hat: earlier outputs and
/// their bars to 1, the output itself to 0/1 (bar 1/0) for delta/gamma, and
/// bars of later outputs to the negated output.
CandidatePair build_candidates(const NnfCircuit& hat, const OutputOrder& order, std::size_t position);

enum class Provenance { UnateConstant, DeltaBar, NotGammaBar, Refined };

const char* to_string(Provenance p);

struct Selection {
  Circuit function;
  Provenance provenance = Provenance::DeltaBar;
};

/// The smaller of delta-bar and not gamma-bar; delta-bar on ties.
Selection select_candidate(const CandidatePair& pair);

struct SkolemEntry {
  VarId output = 0;
  /// Function of the later outputs and the inputs.
  Circuit stage;
  /// Function of the inputs only, once reverse substitution has run.
  std::optional<Circuit> final;
  Provenance provenance = Provenance::DeltaBar;
};

/// Candidate or final Skolem functions, kept in dependency order: an entry
/// may only mention outputs of later entries.
class SkolemVector {
 public:
  SkolemVector() = default;

  void append(SkolemEntry entry);

  std::span<const SkolemEntry> entries() const { return entries_; }
  std::vector<VarId> sequence() const;
  bool contains(VarId x) const { return index_.contains(x); }
  const SkolemEntry& entry(VarId x) const { return entries_.at(index_.at(x)); }
  SkolemEntry& entry(VarId x) { return entries_.at(index_.at(x)); }
  std::size_t position(VarId x) const { return index_.at(x); }
  bool has_finals() const;

  /// Final functions; throws std::logic_error if reverse substitution has
  /// not run.
  std::map<VarId, Circuit> finals() const;
  std::map<VarId, Circuit> stages() const;

 private:
  std::vector<SkolemEntry> entries_;
  std::map<VarId, std::size_t> index_;
};

/// Fills in final functions, last entry first.
SkolemVector reverse_substitute(SkolemVector skolem);

enum class SkolemForm { Stage, Final };

/// F(X', Y) and (x_i <-> psi_i for all i) and not F(X, Y).
struct ErrorFormula {
  Circuit circuit;
  /// x -> x'.
  std::map<VarId, VarId> primed;
  std::vector<VarId> outputs;
  std::vector<VarId> inputs;
};

ErrorFormula build_error_formula(const Spec& spec, const SkolemVector& skolem,
                                 SkolemForm form = SkolemForm::Stage);
ErrorFormula build_error_formula(const Spec& spec, const std::map<VarId, Circuit>& functions);

struct Phase1Options {
  OrderHeuristic heuristic = OrderHeuristic::FanIn;
  Budget budget;
};

struct Phase1Stats {
  std::size_t unate_oracle_calls = 0;
  std::size_t unate_rounds = 0;
  std::size_t positive_unate = 0;
  std::size_t negative_unate = 0;
  std::size_t oracle_calls = 0;
  bool wdnnf = false;
  /// DAG size of each selected candidate, in order.
  std::vector<std::size_t> candidate_sizes;
  std::size_t final_size = 0;
};

enum class Phase1Status { Done, NeedPhase2 };

struct Phase1Result {
  Phase1Status status = Phase1Status::Done;
  /// Stage and final functions for every output.
  SkolemVector skolem;
  OutputOrder order;
  /// Satisfiable error formula over stage functions, when NeedPhase2.
  std::optional<ErrorFormula> error;
  Phase1Stats stats;
};

/// Unate elimination, candidate construction and the error-formula gate.
/// Done means the Skolem vector is verified. Throws ResourceLimit.
Phase1Result phase1_synthesize(const Spec& spec, const Phase1Options& options = {});

/// First position (in order) at which the existential-collapse condition
/// fails, or nullopt if it holds everywhere. Diagnostic only.
std::optional<std::size_t> first_collapse_failure(const NnfCircuit& hat, const OutputOrder& order,
                                                  const Budget& budget = {});

}  // namespace skolem
