// Command-line driver: synth, verify, check-wdnnf, goodness, gen.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "skolem/benchgen.hpp"
#include "skolem/frontend.hpp"
#include "skolem/nnf.hpp"
#include "skolem/synth.hpp"

namespace {

using namespace skolem;

enum Exit { kOk = 0, kIncorrect = 1, kTimeout = 2, kInputError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::chrono::milliseconds> timeout_from(double seconds) {
  if (seconds <= 0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
}

double default_timeout() {
  const char* env = std::getenv("SKOLEM_TIMEOUT");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || v < 0) throw InputError("SKOLEM_TIMEOUT must be a non-negative number of seconds");
  return v;
}

Budget budget_from(double seconds) {
  auto t = timeout_from(seconds);
  return t ? Budget::timeout(*t) : Budget::unlimited();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::map<VarId, Circuit> load_skolem(const std::string& path, const Spec& spec) {
  if (std::filesystem::path(path).extension() != ".aag")
    throw ParseError(ParseError::Kind::UnsupportedFormat, "Skolem functions must be given as .aag");
  return read_skolem_aiger(read_file(path), spec);
}

std::string describe(const Spec& spec, const Assignment& a, std::span<const VarId> vars) {
  std::string out;
  for (VarId v : vars) out += (out.empty() ? "" : " ") + spec.name_of(v) + "=" + (a.get(v) ? "1" : "0");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean functional synthesis: Skolem functions for F(X, Y)"};
  app.require_subcommand(1);
  std::string x_pattern = "^x";
  app.add_option("--x-pattern", x_pattern, "Regex selecting output variables by AIGER symbol")
      ->capture_default_str();

  std::string spec_file, skolem_file, out_file, report_file;
  std::string pipeline = "nnf", order = "fanin", format = "aiger";
  double timeout_s = -1;
  std::uint64_t seed = 1, cap = kNoCap;
  bool timing = false;

  auto* synth = app.add_subcommand("synth", "Synthesize Skolem functions");
  synth->add_option("spec", spec_file, "Specification (.aag or .qdimacs)")->required();
  synth->add_option("--pipeline", pipeline, "nnf, bdd or both")
      ->check(CLI::IsMember({"nnf", "bdd", "both"}))
      ->capture_default_str();
  synth->add_option("--timeout", timeout_s, "Seconds per pipeline (default: $SKOLEM_TIMEOUT, else none)");
  synth->add_option("--seed", seed, "Counterexample sampling seed")->capture_default_str();
  synth->add_option("--order", order, "Output order heuristic: fanin or index")
      ->check(CLI::IsMember({"fanin", "index"}))
      ->capture_default_str();
  synth->add_option("--out", out_file, "Write Skolem functions here");
  synth->add_option("--format", format, "aiger or verilog")->capture_default_str();
  synth->add_option("--report", report_file, "Write the run report here instead of stdout");
  synth->add_flag("--timing", timing, "Include wall-clock times in the report");

  auto* verify = app.add_subcommand("verify", "Check Skolem functions against a specification");
  verify->add_option("spec", spec_file)->required();
  verify->add_option("skolem", skolem_file, "Skolem functions (.aag)")->required();
  verify->add_option("--timeout", timeout_s, "Seconds");

  std::string wdnnf_pipeline = "nnf";
  auto* wdnnf = app.add_subcommand("check-wdnnf", "Check weak decomposability of the specification");
  wdnnf->add_option("spec", spec_file)->required();
  wdnnf->add_option("--pipeline", wdnnf_pipeline, "Check the input (nnf) or its BDD compilation (bdd)")
      ->check(CLI::IsMember({"nnf", "bdd"}))
      ->capture_default_str();

  auto* good = app.add_subcommand("goodness", "Fraction of inputs on which Skolem functions fail");
  good->add_option("spec", spec_file)->required();
  good->add_option("skolem", skolem_file, "Skolem functions (.aag)")->required();
  good->add_option("--cap", cap, "Stop counting after this many failing inputs");
  good->add_option("--timeout", timeout_s, "Seconds");

  std::size_t n = 0, samples = 0;
  std::string truth_file;
  auto* gen = app.add_subcommand("gen", "Generate benchmark specifications");
  gen->require_subcommand(1);
  auto* gen_clique = gen->add_subcommand("clique", "Clique reduction family");
  gen_clique->add_option("--n", n, "Vertex count")->required()->check(CLI::Range(2, 64));
  gen_clique->add_option("--out", out_file, "AIGER output (default stdout)");
  gen_clique->add_option("--truth", truth_file, "Ground-truth sidecar file");
  gen_clique->add_option("--samples", samples, "Sampled inputs in the sidecar (default: all up to 2^12)");
  gen_clique->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  auto* gen_eq = gen->add_subcommand("equality", "x_i <-> y_i family");
  gen_eq->add_option("--n", n, "Number of output/input pairs")->required();
  gen_eq->add_option("--out", out_file, "AIGER output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (timeout_s < 0) timeout_s = default_timeout();
    const OutputSelector selector = name_pattern(x_pattern);

    if (*synth) {
      const Spec spec = load_spec(spec_file, selector);
      SynthOptions opt;
      opt.pipeline = parse_pipeline(pipeline);
      opt.heuristic = order == "index" ? OrderHeuristic::Index : OrderHeuristic::FanIn;
      opt.seed = seed;
      opt.timeout = timeout_from(timeout_s);
      opt.timing = timing;
      const SkolemFormat fmt = parse_skolem_format(format);
      const SynthResult r = synthesize(spec, opt);
      write_text(report_file, r.report.str());
      if (!out_file.empty() && r.status == SynthStatus::Done) write_text(out_file, write_skolem(spec, r.functions, fmt));
      return r.status == SynthStatus::Done ? kOk : kTimeout;
    }

    if (*verify) {
      const Spec spec = load_spec(spec_file, selector);
      const auto functions = load_skolem(skolem_file, spec);
      const ErrorFormula eps = build_error_formula(spec, functions);
      const SatOutcome out = solve(eps.circuit, budget_from(timeout_s));
      if (out.verdict == Verdict::Unknown) {
        std::cout << "unknown\n";
        return kTimeout;
      }
      if (out.unsat()) {
        std::cout << "correct\n";
        return kOk;
      }
      Assignment y;
      for (VarId v : spec.inputs) y.set(v, out.model->find(v).value_or(false));
      std::cout << "incorrect\ncounterexample " << describe(spec, y, spec.inputs) << '\n';
      return kIncorrect;
    }

    if (*wdnnf) {
      Spec spec = load_spec(spec_file, selector);
      if (wdnnf_pipeline == "bdd") spec = bdd_pipeline_spec(spec);
      const NnfCircuit hat = hat_transform(spec);
      const WdnnfVerdict v = check_wdnnf(hat);
      if (v.pass) {
        std::cout << "PASS\n";
      } else {
        const auto& w = *v.witness;
        std::cout << "FAIL node " << w.node << " literal " << (w.literal.positive ? "" : "!")
                  << spec.name_of(w.literal.var) << " children " << w.first << ' ' << w.second << '\n';
      }
      return kOk;
    }

    if (*good) {
      const Spec spec = load_spec(spec_file, selector);
      const auto functions = load_skolem(skolem_file, spec);
      const GoodnessRatio g = goodness_ratio(build_error_formula(spec, functions), cap, budget_from(timeout_s));
      std::cout << "goodness=" << g.str() << "\nexact=" << (g.exact ? 1 : 0) << '\n';
      return kOk;
    }

    if (*gen_eq) {
      write_text(out_file, write_spec_aiger(gen_equality_spec(n)));
      return kOk;
    }

    if (*gen_clique) {
      const CliqueInstance inst = gen_clique_spec(n);
      const Spec& spec = inst.spec;
      std::vector<VarId> order(spec.outputs);
      order.insert(order.end(), spec.inputs.begin(), spec.inputs.end());
      const std::string out_name = "F";
      write_text(out_file, write_aiger(inst.aig, order, std::span(&inst.root, 1), spec.names,
                                       std::span(&out_name, 1)));
      if (!truth_file.empty()) {
        const std::size_t m = spec.inputs.size();
        std::vector<Assignment> ys;
        auto point = [&](std::uint64_t bits) {
          Assignment a;
          for (std::size_t i = 0; i < m; ++i) a.set(spec.inputs[i], (bits >> i) & 1u);
          return a;
        };
        if (samples == 0 && m <= 12) {
          for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) ys.push_back(point(bits));
        } else {
          std::mt19937_64 rng(seed);
          for (std::size_t k = 0; k < (samples ? samples : 4096); ++k) ys.push_back(point(rng()));
        }
        write_text(truth_file, clique_ground_truth(inst, ys));
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceLimit& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kTimeout;
  } catch (const BddSizeLimit& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kTimeout;
  }
  return kOk;
}
