#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "skolem/goodness.hpp"
#include "skolem/phase1.hpp"
#include "skolem/sat.hpp"

namespace skolem {

/// A model of the error formula that does not satisfy it, or that yields
/// an inconsistent counterexample.
class MalformedModel : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An input on which the candidates fail although some output exists.
struct Counterexample {
  /// y*: values of the inputs.
  Assignment inputs;
  /// Outputs that satisfy F at y* (the primed block of the model).
  Assignment witness;
  /// Outputs the candidates produce at y*.
  Assignment current;
};

/// Reads a counterexample off a model of `eps`; unencoded variables read as
/// 0. Throws MalformedModel if the model does not satisfy `eps`.
Counterexample extract_counterexample(const Spec& spec, const ErrorFormula& eps, const Assignment& model);

/// Forces `output` to `value` on the inputs matching `cube`.
struct RefinementPatch {
  VarId output = 0;
  std::vector<Literal> cube;
  bool value = false;
};

struct Generalization {
  /// One patch per output on which candidate and witness disagree; all
  /// share the same cube.
  std::vector<RefinementPatch> patches;
  std::size_t oracle_calls = 0;
  /// True if the budget ran out and the patch fell back to the minterm.
  bool fell_back = false;
};

/// Grows the patch cube from the minterm of y* by dropping input literals
/// in order, keeping a drop only if the patched vector is certified correct
/// on the whole cube. Requires final functions.
Generalization generalize_cube(const Spec& spec, const SkolemVector& skolem, const Counterexample& cex,
                               const Budget& budget = {});

/// psi := cube ? value : psi on the final function; the entry becomes
/// Refined.
SkolemVector apply_patch(SkolemVector skolem, const RefinementPatch& patch);

struct CegarOptions {
  /// Counterexamples sampled per error-formula rebuild.
  std::size_t samples_per_round = 8;
  std::uint64_t seed = 0;
  Budget budget;
  std::optional<std::size_t> max_rounds;
  /// Record the goodness numerator at the start of every round.
  bool track_goodness = false;
  std::uint64_t goodness_cap = kNoCap;
};

struct CegarRound {
  std::size_t iteration = 0;
  std::size_t counterexamples = 0;
  std::size_t patches = 0;
  std::vector<std::size_t> cube_widths;
  std::optional<std::uint64_t> goodness_numerator;
};

enum class CegarStatus { Done, Timeout };

struct CegarResult {
  CegarStatus status = CegarStatus::Done;
  SkolemVector skolem;
  /// Goodness of the vector handed back on timeout.
  std::optional<GoodnessRatio> goodness;
  std::vector<CegarRound> rounds;
  std::size_t oracle_calls = 0;
  std::size_t patches = 0;
};

/// Refines final functions until the error formula is unsatisfiable.
/// Every applied patch removes at least one failing input, so the loop ends
/// after at most 2^|Y| patched counterexamples.
CegarResult cegar_loop(const Spec& spec, SkolemVector initial, const CegarOptions& options = {});

}  // namespace skolem
