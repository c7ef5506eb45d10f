#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skolem/circuit.hpp"

namespace Minisat {
class Solver;
}

namespace skolem {

using Clock = std::chrono::steady_clock;

/// Limits on oracle effort. Both are optional; an empty budget is unlimited.
struct Budget {
  std::optional<std::int64_t> conflicts;
  std::optional<Clock::time_point> deadline;

  static Budget unlimited() { return {}; }
  static Budget timeout(std::chrono::milliseconds ms) { return {std::nullopt, Clock::now() + ms}; }
  bool expired() const { return deadline && Clock::now() >= *deadline; }
};

/// Raised when an operation needs a verdict the oracle could not reach
/// within its budget.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit() : std::runtime_error("oracle budget exhausted") {}
};

enum class Verdict { Sat, Unsat, Unknown };

struct SatOutcome {
  Verdict verdict = Verdict::Unknown;
  /// Present iff verdict is Sat; total on the encoded circuit's support.
  std::optional<Assignment> model;

  bool sat() const { return verdict == Verdict::Sat; }
  bool unsat() const { return verdict == Verdict::Unsat; }
};

/// CNF produced by gate encoding of a circuit, root asserted.
struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  /// Circuit variable -> DIMACS variable.
  std::map<VarId, int> var_map;

  int literal(Literal lit) const;
  std::string to_dimacs() const;
};

/// Tseitin encoding. `extra_vars` receive solver variables even if they do
/// not occur in `c`, so models and projections cover them.
CnfInstance encode(const Circuit& c, std::span<const VarId> extra_vars = {});

/// Incremental oracle over one instance. Clauses can be added between calls;
/// assumptions hold for a single call only.
class SatOracle {
 public:
  explicit SatOracle(const CnfInstance& instance, Budget budget = {});
  ~SatOracle();
  SatOracle(const SatOracle&) = delete;
  SatOracle& operator=(const SatOracle&) = delete;

  SatOutcome solve(std::span<const Literal> assumptions = {});
  /// Adds a clause over circuit variables.
  void add_clause(std::span<const Literal> clause);
  /// Forbids the projection of `model` onto `vars`.
  void block(const Assignment& model, std::span<const VarId> vars);
  /// Randomized decisions: polarity and a fraction of variable picks.
  void randomize(std::uint64_t seed, double var_freq = 0.1);

  std::size_t calls() const { return calls_; }
  const CnfInstance& instance() const { return instance_; }

 private:
  CnfInstance instance_;
  Budget budget_;
  std::unique_ptr<Minisat::Solver> solver_;
  bool trivially_unsat_ = false;
  std::size_t calls_ = 0;
};

SatOutcome solve(const CnfInstance& instance, std::span<const Literal> assumptions = {},
                 const Budget& budget = {});

/// Convenience: encode and solve.
SatOutcome solve(const Circuit& c, const Budget& budget = {});

struct ProjectedCount {
  std::uint64_t count = 0;
  bool exhausted = true;
};

inline constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

/// Number of distinct projections of models onto `proj`, by blocking
/// enumeration. Stops at `cap` projections with exhausted = false. Throws
/// ResourceLimit if the budget runs out first.
ProjectedCount enumerate_projected(const CnfInstance& instance, std::span<const VarId> proj,
                                   std::uint64_t cap = kNoCap, const Budget& budget = {});

/// Up to `k` models that differ on `distinct_on` (all encoded variables when
/// empty), found with seeded random decisions. Deterministic for a seed.
std::vector<Assignment> sample_diverse(const CnfInstance& instance, std::size_t k,
                                       std::uint64_t seed, std::span<const VarId> distinct_on = {},
                                       const Budget& budget = {});

}  // namespace skolem
