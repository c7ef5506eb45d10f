#include "skolem/synth.hpp"

#include <sstream>
#include <stdexcept>

namespace skolem {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
}

void report_goodness(RunReport& r, const std::optional<GoodnessRatio>& g) {
  if (!g) {
    r.set("goodness.num", "unknown");
    r.set("goodness.den", "unknown");
    return;
  }
  const std::string s = g->str();
  const auto slash = s.find('/');
  r.set("goodness.num", s.substr(0, slash));
  r.set("goodness.den", s.substr(slash + 1));
  r.set("goodness.exact", g->exact ? "1" : "0");
}

SynthResult run_pipeline(const Spec& input, Pipeline pipeline, const SynthOptions& options) {
  SynthResult out;
  out.pipeline = pipeline;
  RunReport& r = out.report;
  r.set("pipeline", to_string(pipeline));
  const auto t0 = Clock::now();
  const Budget budget = options.timeout ? Budget::timeout(*options.timeout) : Budget::unlimited();

  Spec spec = input;
  if (pipeline == Pipeline::Bdd) {
    try {
      spec = bdd_pipeline_spec(input, options.bdd_node_cap);
    } catch (const BddSizeLimit&) {
      out.status = SynthStatus::BddLimit;
      r.set("result", to_string(out.status));
      out.elapsed = since(t0);
      return out;
    }
    r.set("bdd.size", count_nodes(spec.circuit));
    if (options.timing) r.set("bdd.time_ms", since(t0).count());
  }

  const auto t1 = Clock::now();
  Phase1Result p1;
  try {
    p1 = phase1_synthesize(spec, {options.heuristic, budget});
  } catch (const ResourceLimit&) {
    out.status = SynthStatus::Timeout;
    r.set("phase1.status", "timeout");
    report_goodness(r, std::nullopt);
    r.set("result", to_string(out.status));
    out.elapsed = since(t0);
    return out;
  }
  const Phase1Stats& st = p1.stats;
  if (options.timing) r.set("phase1.time_ms", since(t1).count());
  r.set("phase1.status", p1.status == Phase1Status::Done ? "done" : "need-phase2");
  r.set("phase1.oracle_calls", st.oracle_calls);
  r.set("phase1.unate_oracle_calls", st.unate_oracle_calls);
  r.set("phase1.unate_rounds", st.unate_rounds);
  r.set("phase1.positive_unate", st.positive_unate);
  r.set("phase1.negative_unate", st.negative_unate);
  r.set("phase1.wdnnf", st.wdnnf ? "1" : "0");
  std::size_t candidates = 0;
  for (std::size_t s : st.candidate_sizes) candidates += s;
  r.set("phase1.candidate_size", candidates);
  r.set("phase1.final_size", st.final_size);

  if (p1.status == Phase1Status::Done) {
    out.status = SynthStatus::Done;
    out.functions = p1.skolem.finals();
    out.goodness = GoodnessRatio{0, spec.inputs.size(), true};
    r.set("phase2.iterations", 0);
    report_goodness(r, out.goodness);
    r.set("result", to_string(out.status));
    out.elapsed = since(t0);
    return out;
  }

  out.used_phase2 = true;
  const auto t2 = Clock::now();
  CegarOptions copt;
  copt.samples_per_round = options.samples_per_round;
  copt.seed = options.seed;
  copt.budget = budget;
  CegarResult p2 = cegar_loop(spec, std::move(p1.skolem), copt);
  if (options.timing) r.set("phase2.time_ms", since(t2).count());
  r.set("phase2.iterations", p2.rounds.size());
  r.set("phase2.patches", p2.patches);
  r.set("phase2.oracle_calls", p2.oracle_calls);
  for (const CegarRound& round : p2.rounds) {
    const std::string key = "phase2.round." + std::to_string(round.iteration);
    std::ostringstream widths;
    for (std::size_t k = 0; k < round.cube_widths.size(); ++k) widths << (k ? "," : "") << round.cube_widths[k];
    r.set(key + ".counterexamples", round.counterexamples);
    r.set(key + ".patches", round.patches);
    r.set(key + ".cube_widths", widths.str());
  }
  out.functions = p2.skolem.finals();
  if (p2.status == CegarStatus::Done) {
    out.status = SynthStatus::Done;
    out.goodness = GoodnessRatio{0, spec.inputs.size(), true};
  } else {
    out.status = SynthStatus::Timeout;
    out.goodness = p2.goodness;
  }
  report_goodness(r, out.goodness);
  r.set("result", to_string(out.status));
  out.elapsed = since(t0);
  return out;
}

}  // namespace

Pipeline parse_pipeline(const std::string& name) {
  if (name == "nnf") return Pipeline::Nnf;
  if (name == "bdd") return Pipeline::Bdd;
  if (name == "both") return Pipeline::Both;
  throw std::invalid_argument("unknown pipeline '" + name + "'");
}

const char* to_string(Pipeline p) {
  switch (p) {
    case Pipeline::Nnf: return "nnf";
    case Pipeline::Bdd: return "bdd";
    case Pipeline::Both: return "both";
  }
  return "?";
}

const char* to_string(SynthStatus s) {
  switch (s) {
    case SynthStatus::Done: return "done";
    case SynthStatus::Timeout: return "timeout";
    case SynthStatus::BddLimit: return "bdd-limit";
  }
  return "?";
}

void RunReport::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = value;
      return;
    }
  entries_.emplace_back(key, value);
}

std::optional<std::string> RunReport::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::string RunReport::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

SynthResult synthesize(const Spec& spec, const SynthOptions& options) {
  validate(spec);
  if (options.pipeline != Pipeline::Both) return run_pipeline(spec, options.pipeline, options);

  // Both pipelines run in turn; the finished one with less wall time wins.
  SynthResult nnf = run_pipeline(spec, Pipeline::Nnf, options);
  SynthResult bdd = run_pipeline(spec, Pipeline::Bdd, options);
  const bool nnf_done = nnf.status == SynthStatus::Done;
  const bool bdd_done = bdd.status == SynthStatus::Done;
  SynthResult best;
  if (nnf_done != bdd_done)
    best = nnf_done ? std::move(nnf) : std::move(bdd);
  else if (!nnf_done && bdd.status == SynthStatus::BddLimit)
    best = std::move(nnf);
  else
    best = bdd.elapsed < nnf.elapsed ? std::move(bdd) : std::move(nnf);
  best.report.set("pipeline.winner", to_string(best.pipeline));
  return best;
}

}  // namespace skolem
