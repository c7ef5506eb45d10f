#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skolem/bdd.hpp"
#include "skolem/goodness.hpp"
#include "skolem/phase1.hpp"
#include "skolem/phase2.hpp"

namespace skolem {

enum class Pipeline { Nnf, Bdd, Both };

Pipeline parse_pipeline(const std::string& name);
const char* to_string(Pipeline p);

struct SynthOptions {
  Pipeline pipeline = Pipeline::Nnf;
  OrderHeuristic heuristic = OrderHeuristic::FanIn;
  std::uint64_t seed = 1;
  /// Per pipeline.
  std::optional<std::chrono::milliseconds> timeout;
  std::size_t bdd_node_cap = kDefaultBddNodeCap;
  std::size_t samples_per_round = 8;
  /// Record wall-clock times in the report (makes it run dependent).
  bool timing = false;
};

/// Ordered key=value lines.
class RunReport {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

enum class SynthStatus { Done, Timeout, BddLimit };

const char* to_string(SynthStatus s);

struct SynthResult {
  SynthStatus status = SynthStatus::Done;
  Pipeline pipeline = Pipeline::Nnf;
  /// Final functions over the inputs; complete when Done, the best
  /// available vector after Phase 2 gave up, empty otherwise.
  std::map<VarId, Circuit> functions;
  bool used_phase2 = false;
  std::optional<GoodnessRatio> goodness;
  RunReport report;
  std::chrono::milliseconds elapsed{0};
};

/// Phase 1, then counterexample-guided repair if needed.
SynthResult synthesize(const Spec& spec, const SynthOptions& options = {});

}  // namespace skolem
