// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every expected value is recomputed by brute force in
// the test support library; nothing here trusts the SAT backend.
//
//   acceptance [--golden DIR] [--write-golden]

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "skolem/bdd.hpp"
#include "skolem/benchgen.hpp"
#include "skolem/frontend.hpp"
#include "skolem/goodness.hpp"
#include "skolem/nnf.hpp"
#include "skolem/phase1.hpp"
#include "skolem/phase2.hpp"
#include "skolem/synth.hpp"
#include "skolem/unate.hpp"

using namespace skolem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few problems and counts the rest.
class Tally {
 public:
  void fail(const std::string& what) {
    if (failures_++ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " violation(s): " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

std::vector<VarId> all_vars(const Spec& s) {
  std::vector<VarId> v(s.outputs);
  v.insert(v.end(), s.inputs.begin(), s.inputs.end());
  return v;
}

std::size_t unate_budget(std::size_t n) { return 2 * n * n + 2 * n; }

// Unate-oracle budget overruns, over every spec the suite runs phase 1 on.
std::size_t unate_checked = 0;
std::vector<std::string> unate_over;

Phase1Result run_phase1(const Spec& spec, Phase1Options o = {}) {
  Phase1Result r = phase1_synthesize(spec, o);
  ++unate_checked;
  const std::size_t n = spec.outputs.size();
  if (r.stats.unate_oracle_calls > unate_budget(n))
    unate_over.push_back(std::to_string(r.stats.unate_oracle_calls) + " calls for n=" + std::to_string(n));
  return r;
}

oracle::RandomSpec random_any(std::mt19937_64& rng, std::size_t max_vars) {
  const std::size_t nx = 1 + rng() % std::min<std::size_t>(4, max_vars - 1);
  const std::size_t ny = 1 + rng() % std::min<std::size_t>(5, max_vars - nx);
  switch (rng() % 3) {
    case 0: return oracle::random_spec(rng, nx, ny, 1 + rng() % 14);
    case 1: return oracle::random_cnf_spec(rng, nx, ny, 1 + rng() % 10);
    default: return oracle::random_relational_spec(rng, nx, ny, 2 + rng() % 5);
  }
}

// 1. Equality family solved in phase 1 with psi_i = y_i.
Outcome equality_family() {
  Tally t;
  double slowest = 0;
  for (std::size_t n : {1, 2, 4, 8, 16}) {
    const Spec eq = gen_equality_spec(n);
    const auto start = std::chrono::steady_clock::now();
    const SynthResult r = synthesize(eq);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    const std::string tag = "n=" + std::to_string(n);
    t.check(r.status == SynthStatus::Done, tag + " not done");
    t.check(!r.used_phase2, tag + " needed repair");
    t.check(secs < 5.0, tag + " took " + std::to_string(secs) + "s");
    run_phase1(eq);
    for (std::size_t i = 0; i < n && r.status == SynthStatus::Done; ++i) {
      const Circuit& f = r.functions.at(eq.outputs[i]);
      const VarId y = eq.inputs[i];
      if (n <= 10) {
        t.check(oracle::equivalent(oracle::fn_of(f), [y](const Assignment& a) { return a.get(y); }, eq.inputs),
                tag + " psi differs from y");
      } else {
        t.check(f.as_literal() == Literal{y, true}, tag + " psi is not the literal y");
      }
    }
  }
  return t.outcome("n in {1,2,4,8,16}, slowest " + std::to_string(slowest) + "s");
}

// 2. Error formula unsatisfiable exactly when the vector is correct.
Outcome error_formula_oracle() {
  Tally t;
  std::mt19937_64 rng(2002);
  std::size_t correct = 0, total = 0;
  for (; total < 600; ++total) {
    const auto rs = random_any(rng, 10);
    const Spec& spec = rs.spec;
    std::map<VarId, Circuit> psi;
    switch (total % 3) {
      case 0: psi = run_phase1(spec).skolem.finals(); break;
      case 1:
        for (VarId x : spec.outputs) psi.emplace(x, oracle::random_function(rng, spec.inputs, rng() % 6));
        break;
      default: {
        // Perturb one entry of a phase 1 vector.
        psi = run_phase1(spec).skolem.finals();
        const VarId x = spec.outputs[rng() % spec.outputs.size()];
        psi.at(x) = oracle::random_function(rng, spec.inputs, rng() % 4);
      }
    }
    const bool brute = oracle::skolem_correct(spec, psi);
    const SatOutcome s = solve(build_error_formula(spec, psi).circuit);
    correct += brute ? 1 : 0;
    t.check(s.verdict != Verdict::Unknown, "oracle undecided");
    t.check(s.unsat() == brute, "discrepancy on spec " + std::to_string(total));
  }
  return t.outcome(std::to_string(total) + " specs (<= 10 vars), " + std::to_string(correct) + " correct vectors");
}

// 3. Compiled specs pass the decomposability check and phase 1 is exact.
Outcome compiled_exactness() {
  Tally t;
  std::mt19937_64 rng(3003);
  std::size_t total = 0;
  for (; total < 250; ++total) {
    const auto rs = random_any(rng, 8);
    const Spec& spec = rs.spec;
    const Spec compiled = bdd_pipeline_spec(spec);
    const NnfCircuit hat = hat_transform(compiled);
    const std::string tag = "spec " + std::to_string(total);
    t.check(check_wdnnf(hat).pass, tag + " not weakly decomposable");
    const Phase1Result r = run_phase1(compiled);
    t.check(r.status == Phase1Status::Done, tag + " needed repair");
    t.check(solve(build_error_formula(spec, r.skolem.finals()).circuit).unsat(), tag + " error formula satisfiable");
    t.check(oracle::skolem_correct(spec, r.skolem.finals()), tag + " wrong by brute force");

    const OutputOrder order = choose_order(hat, spec.outputs);
    for (std::size_t p = 0; p < order.sequence.size(); ++p) {
      const CandidatePair c = build_candidates(hat, order, p);
      std::vector<VarId> tail(order.sequence.begin() + static_cast<std::ptrdiff_t>(p) + 1, order.sequence.end());
      tail.insert(tail.end(), spec.inputs.begin(), spec.inputs.end());
      bool same = true;
      oracle::for_each_point(tail, [&](const Assignment& a) {
        same = same && c.delta_bar.evaluate(a) == oracle::delta_exact(spec, order.sequence, p, a) &&
               c.gamma_bar.evaluate(a) == oracle::gamma_exact(spec, order.sequence, p, a);
      });
      t.check(same, tag + " candidate differs from the exact characterization at position " + std::to_string(p));
    }
  }
  return t.outcome(std::to_string(total) + " specs (<= 8 vars) through the compiled pipeline");
}

// 4. Bounds on the candidates and on the existential projection, the unate
// constants, and the hat identities.
Outcome approximation_properties() {
  Tally t;
  std::mt19937_64 rng(4004);
  std::size_t total = 0, checks = 0;
  for (; total < 550; ++total) {
    const auto rs = random_any(rng, 8);
    const Spec& spec = rs.spec;
    const NnfCircuit hat = hat_transform(spec);
    const oracle::Fn f = oracle::fn_of(spec.circuit), fh = oracle::fn_of(hat.circuit);
    const std::string tag = "spec " + std::to_string(total);
    const auto vars = all_vars(spec);

    // F = F-hat(X, not X, Y).
    t.check(oracle::equivalent(f, [&](const Assignment& a) {
      Assignment h = a;
      for (VarId x : spec.outputs) h.set(hat.bar_of(x), !a.get(x));
      return fh(h);
    }, vars), tag + " hat identity");

    // F-hat is positive unate in every output and bar.
    std::vector<VarId> hat_vars = vars;
    for (VarId x : spec.outputs) hat_vars.push_back(hat.bar_of(x));
    std::vector<VarId> monotone(spec.outputs);
    for (VarId x : spec.outputs) monotone.push_back(hat.bar_of(x));
    oracle::for_each_point(hat_vars, [&](const Assignment& a) {
      if (!fh(a)) return;
      for (VarId v : monotone) {
        if (a.get(v)) continue;
        Assignment up = a;
        up.set(v, true);
        if (!fh(up)) t.fail(tag + " hat not monotone in " + std::to_string(v));
      }
    });

    // Unate outputs admit constant Skolem functions, and the library agrees
    // with the truth table on unateness.
    for (VarId x : spec.outputs) {
      const bool pu = oracle::positive_unate(spec, x), nu = oracle::negative_unate(spec, x);
      const Unateness v = semantic_unate_check(hat, x).verdict;
      t.check((v == Unateness::Positive) == pu, tag + " positive unateness mismatch");
      t.check((v == Unateness::Negative) == (nu && !pu), tag + " negative unateness mismatch");
      if (!pu && !nu) continue;
      oracle::for_each_point(spec.inputs, [&](const Assignment& y) {
        if (!oracle::exists(f, spec.outputs, y)) return;
        Assignment fixed = y;
        fixed.set(x, pu);
        std::vector<VarId> rest;
        for (VarId o : spec.outputs)
          if (o != x) rest.push_back(o);
        if (!oracle::exists(f, rest, fixed)) t.fail(tag + " unate constant loses a witness");
      });
    }

    // Sandwich bounds for each position, and the projection bounds.
    const OutputOrder order = choose_order(hat, spec.outputs);
    const auto& seq = order.sequence;
    for (std::size_t p = 0; p < seq.size(); ++p) {
      const CandidatePair c = build_candidates(hat, order, p);
      std::vector<VarId> tail(seq.begin() + static_cast<std::ptrdiff_t>(p) + 1, seq.end());
      tail.insert(tail.end(), spec.inputs.begin(), spec.inputs.end());
      std::vector<VarId> upto(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(p) + 1);
      // F-hat with earlier outputs/bars and the current output/bar given,
      // later bars complementing their outputs.
      auto hat_at = [&](const Assignment& a, bool earlier_x, bool earlier_bar, bool xi, bool bari) {
        Assignment h = a;
        for (std::size_t q = 0; q < p; ++q) {
          h.set(seq[q], earlier_x);
          h.set(hat.bar_of(seq[q]), earlier_bar);
        }
        h.set(seq[p], xi);
        h.set(hat.bar_of(seq[p]), bari);
        for (std::size_t q = p + 1; q < seq.size(); ++q) h.set(hat.bar_of(seq[q]), !a.get(seq[q]));
        return fh(h);
      };
      oracle::for_each_point(tail, [&](const Assignment& a) {
        ++checks;
        const bool delta_lo = !hat_at(a, true, true, false, true);
        const bool delta_hi = !hat_at(a, false, false, false, true);
        const bool gamma_lo = !hat_at(a, true, true, true, false);
        const bool gamma_hi = !hat_at(a, false, false, true, false);
        const bool delta = oracle::delta_exact(spec, seq, p, a), gamma = oracle::gamma_exact(spec, seq, p, a);
        if (delta_lo && !delta) t.fail(tag + " delta lower bound");
        if (delta && !delta_hi) t.fail(tag + " delta upper bound");
        if (gamma_lo && !gamma) t.fail(tag + " gamma lower bound");
        if (gamma && !gamma_hi) t.fail(tag + " gamma upper bound");
        if (c.delta_bar.evaluate(a) != delta_lo) t.fail(tag + " delta-bar differs from its definition");
        if (c.gamma_bar.evaluate(a) != gamma_lo) t.fail(tag + " gamma-bar differs from its definition");

        const bool lo = hat_at(a, false, false, false, false);
        const bool hi = hat_at(a, true, true, true, true);
        const bool ex = oracle::exists(f, upto, a);
        if (lo && !ex) t.fail(tag + " projection lower bound");
        if (ex && !hi) t.fail(tag + " projection upper bound");
      });
    }
  }
  return t.outcome(std::to_string(total) + " specs (<= 8 vars), " + std::to_string(checks) + " bound evaluations");
}

// 5. Repair terminates with a correct vector and every patch shrinks the
// set of failing inputs.
Outcome repair_completeness() {
  Tally t;
  std::mt19937_64 rng(5005);
  std::size_t seen = 0, attempts = 0, patches = 0, rounds_max = 0;
  while (seen < 220 && attempts < 20000) {
    ++attempts;
    const std::size_t nx = 2 + rng() % 4, ny = 1 + rng() % std::min<std::size_t>(3, 8 - nx);
    const auto rs = oracle::random_relational_spec(rng, nx, ny, 3 + rng() % 4);
    const Spec& spec = rs.spec;
    if (check_wdnnf(hat_transform(spec)).pass) continue;
    const Phase1Result p1 = run_phase1(spec);
    if (p1.status == Phase1Status::Done) continue;
    if (oracle::skolem_correct(spec, p1.skolem.finals())) {
      t.fail("phase 1 rejected a correct vector");
      continue;
    }
    ++seen;
    const std::string tag = "spec " + std::to_string(attempts);

    CegarOptions o;
    o.seed = attempts;
    // Small rounds so that most runs take several of them.
    o.samples_per_round = 1 + attempts % 3;
    o.track_goodness = true;
    const CegarResult r = cegar_loop(spec, p1.skolem, o);
    t.check(r.status == CegarStatus::Done, tag + " repair gave up");
    t.check(r.rounds.size() <= (std::size_t{1} << ny), tag + " too many rounds");
    rounds_max = std::max(rounds_max, r.rounds.size());
    if (r.status == CegarStatus::Done) t.check(oracle::skolem_correct(spec, r.skolem.finals()), tag + " wrong result");
    for (std::size_t k = 0; k + 1 < r.rounds.size(); ++k)
      t.check(*r.rounds[k + 1].goodness_numerator < *r.rounds[k].goodness_numerator, tag + " round not progressing");

    // Replay one patch at a time against the brute-force count.
    SkolemVector v = p1.skolem;
    std::uint64_t bad = oracle::bad_inputs(spec, v.finals());
    for (std::size_t step = 0; bad > 0 && step <= (std::size_t{1} << ny); ++step) {
      const ErrorFormula eps = build_error_formula(spec, v.finals());
      const SatOutcome s = solve(encode(eps.circuit, spec.inputs));
      if (!s.sat()) {
        t.fail(tag + " error formula unsatisfiable with failing inputs left");
        break;
      }
      const Generalization g = generalize_cube(spec, v, extract_counterexample(spec, eps, *s.model));
      for (const RefinementPatch& p : g.patches) v = apply_patch(std::move(v), p);
      ++patches;
      const std::uint64_t now = oracle::bad_inputs(spec, v.finals());
      t.check(now < bad, tag + " patch did not shrink the failing set");
      bad = now;
    }
    t.check(bad == 0, tag + " replay did not converge");
  }
  t.check(seen >= 200, "only " + std::to_string(seen) + " specs defeated phase 1");
  return t.outcome(std::to_string(seen) + " non-decomposable specs defeating phase 1 out of " +
                   std::to_string(attempts) + " drawn, " + std::to_string(patches) + " replayed patches, at most " +
                   std::to_string(rounds_max) + " rounds");
}

// 7. Clique reduction against a combinatorial checker.
Outcome clique_ground_truth_check() {
  Tally t;
  std::size_t inputs = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const CliqueInstance inst = gen_clique_spec(n);
    const CliqueLayout& lay = inst.layout;
    const oracle::Fn f = oracle::fn_of(inst.spec.circuit);
    const SynthResult r = synthesize(inst.spec);
    run_phase1(inst.spec);
    const std::string tag = "n=" + std::to_string(n);
    t.check(r.status == SynthStatus::Done, tag + " not done");
    oracle::for_each_point(inst.spec.inputs, [&](const Assignment& y) {
      ++inputs;
      std::size_t k = 0;
      for (std::size_t i = 0; i < lay.k_bits.size(); ++i)
        if (y.get(lay.k_bits[i])) k |= std::size_t{1} << i;
      const bool truth = oracle::clique_exists(
          n, [&](std::size_t i, std::size_t j) { return y.get(lay.edges.at({i + 1, j + 1})); }, k);
      if (oracle::exists(f, lay.vertices, y) != truth) t.fail(tag + " projection differs from the checker");
      if (!truth || r.status != SynthStatus::Done) return;
      Assignment full = y;
      for (VarId x : inst.spec.outputs) full.set(x, r.functions.at(x).evaluate(y));
      if (!f(full)) t.fail(tag + " synthesized selection is not a clique");
    });
  }
  return t.outcome("n in 2..4, every k, " + std::to_string(inputs) + " inputs");
}

// [inputs < k] as a circuit, inputs read as a binary number with inputs[0]
// the most significant bit.
Circuit below_constant(std::span<const VarId> inputs, std::uint64_t k) {
  CircuitBuilder b;
  const std::size_t m = inputs.size();
  std::vector<NodeId> cases;
  std::vector<NodeId> prefix;
  for (std::size_t i = 0; i < m; ++i) {
    const bool bit = (k >> (m - 1 - i)) & 1u;
    if (bit) {
      std::vector<NodeId> c = prefix;
      c.push_back(b.literal(inputs[i], false));
      cases.push_back(c.size() == 1 ? c[0] : b.make_and(c));
    }
    prefix.push_back(b.literal(inputs[i], bit));
  }
  if (cases.empty()) return Circuit::constant(false);
  return b.build(cases.size() == 1 ? cases[0] : b.make_or(cases));
}

// 8. Goodness: zero exactly on verified vectors, and exact comparisons
// against the reporting thresholds.
Outcome goodness_semantics() {
  Tally t;
  std::mt19937_64 rng(8008);
  for (int i = 0; i < 300; ++i) {
    const auto rs = random_any(rng, 10);
    std::map<VarId, Circuit> psi;
    if (i % 2) {
      psi = run_phase1(rs.spec).skolem.finals();
    } else {
      for (VarId x : rs.spec.outputs) psi.emplace(x, oracle::random_function(rng, rs.spec.inputs, rng() % 5));
    }
    const ErrorFormula eps = build_error_formula(rs.spec, psi);
    const GoodnessRatio g = goodness_ratio(eps);
    t.check(g.is_zero() == solve(eps.circuit).unsat(), "zero ratio disagrees with verification");
    t.check(g.numerator == oracle::bad_inputs(rs.spec, psi), "numerator differs from brute force");
  }

  // Equality n = 10 with psi_1 = y1 xor [Y < k]: exactly k failing inputs.
  const Spec eq = gen_equality_spec(10);
  const Ratio low{1, 500}, mid{1, 10}, high{9, 10};
  struct Case {
    std::uint64_t k;
    Ratio threshold;
    int side;
  };
  const std::vector<Case> cases{{2, low, -1},  {3, low, 1},    {102, mid, -1}, {103, mid, 1},
                                {921, high, -1}, {922, high, 1}, {512, {1, 2}, 0}};
  std::string seen;
  for (const Case& c : cases) {
    std::map<VarId, Circuit> psi;
    for (std::size_t i = 0; i < 10; ++i) psi.emplace(eq.outputs[i], Circuit::literal(eq.inputs[i]));
    CircuitBuilder b;
    psi.at(eq.outputs[0]) = b.build(b.make_xor(b.literal(eq.inputs[0]), b.add(below_constant(eq.inputs, c.k))));
    const std::uint64_t brute = oracle::bad_inputs(eq, psi);
    const GoodnessRatio g = goodness_ratio(build_error_formula(eq, psi));
    const std::string tag = "k=" + std::to_string(c.k);
    t.check(brute == c.k, tag + " brute-force count " + std::to_string(brute));
    t.check(g.numerator == c.k && g.input_bits == 10 && g.exact, tag + " ratio " + g.str());
    const int cmp = g.compare(c.threshold);
    t.check((cmp > 0) - (cmp < 0) == c.side, tag + " compares wrongly with its threshold");
    seen += (seen.empty() ? "" : " ") + g.str();
  }
  return t.outcome("300 random vectors; threshold cases " + seen);
}

// 6. Unate detection stays within its oracle budget on every spec above.
Outcome unate_budget_check() {
  Tally t;
  for (const auto& s : unate_over) t.fail(s);
  // A few extra wide specs, where the bound is tightest.
  std::mt19937_64 rng(6006);
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = 4 + rng() % 5, ny = 1 + rng() % 3;
    const auto rs = i % 2 ? oracle::random_cnf_spec(rng, nx, ny, 2 + rng() % 8)
                          : oracle::random_spec(rng, nx, ny, 2 + rng() % 16);
    const UnateResult u = unate_fixpoint(hat_transform(rs.spec));
    ++unate_checked;
    t.check(u.oracle_calls <= unate_budget(nx),
            std::to_string(u.oracle_calls) + " calls for n=" + std::to_string(nx));
  }
  return t.outcome(std::to_string(unate_checked) + " specs within 2n^2+2n calls");
}

struct Golden {
  std::string name;
  std::string content;
};

std::vector<Golden> golden_artifacts() {
  std::vector<Golden> out;
  auto add_run = [&](const std::string& stem, const Spec& spec, Pipeline p) {
    SynthOptions o;
    o.pipeline = p;
    o.seed = 7;
    const SynthResult r = synthesize(spec, o);
    out.push_back({stem + ".report", r.report.str()});
    if (r.status == SynthStatus::Done) {
      out.push_back({stem + ".skolem.aag", write_skolem(spec, r.functions, SkolemFormat::Aiger)});
      out.push_back({stem + ".skolem.v", write_skolem(spec, r.functions, SkolemFormat::Verilog)});
    }
  };
  const Spec eq4 = gen_equality_spec(4);
  out.push_back({"equality4.aag", write_spec_aiger(eq4)});
  add_run("equality4.nnf", eq4, Pipeline::Nnf);
  const CliqueInstance c3 = gen_clique_spec(3);
  out.push_back({"clique3.aag", write_spec_aiger(c3.spec)});
  add_run("clique3.nnf", c3.spec, Pipeline::Nnf);
  add_run("clique3.bdd", c3.spec, Pipeline::Bdd);
  const Spec q = parse_qdimacs("p cnf 4 3\na 3 4 0\ne 1 2 0\n1 3 0\n-1 -2 4 0\n2 -3 -4 0\n");
  add_run("small.qdimacs.nnf", q, Pipeline::Nnf);
  return out;
}

// 9. Round trips and byte-stable artifacts.
Outcome format_fidelity(const std::filesystem::path& golden_dir, bool write) {
  Tally t;
  std::mt19937_64 rng(9009);
  std::size_t specs = 0;
  for (int i = 0; i < 300; ++i, ++specs) {
    const std::size_t nx = 1 + rng() % 6, ny = 1 + rng() % 6;
    const auto rs = i % 2 ? oracle::random_spec(rng, nx, ny, 1 + rng() % 24)
                          : oracle::random_cnf_spec(rng, nx, ny, 1 + rng() % 12);
    const Spec back = parse_aiger(write_spec_aiger(rs.spec), name_pattern("^x"));
    const auto vars = all_vars(rs.spec);
    t.check(back.outputs == rs.spec.outputs && back.inputs == rs.spec.inputs, "AIGER partition changed");
    t.check(oracle::equivalent(oracle::fn_of(rs.spec.circuit), oracle::fn_of(back.circuit), vars),
            "AIGER round trip changed the function");

    std::map<VarId, Circuit> psi;
    for (VarId x : rs.spec.outputs) psi.emplace(x, oracle::random_function(rng, rs.spec.inputs, rng() % 8));
    const auto read = read_skolem_aiger(write_skolem(rs.spec, psi, SkolemFormat::Aiger), rs.spec);
    for (VarId x : rs.spec.outputs)
      t.check(oracle::equivalent(oracle::fn_of(psi.at(x)), oracle::fn_of(read.at(x)), rs.spec.inputs),
              "Skolem AIGER round trip changed a function");
  }

  // QDIMACS text against its clauses, then through AIGER and back.
  for (int i = 0; i < 300; ++i, ++specs) {
    const int nv = 2 + static_cast<int>(rng() % 11), nc = static_cast<int>(rng() % 14);
    std::vector<int> univ, exist;
    for (int v = 1; v <= nv; ++v) (rng() % 2 ? univ : exist).push_back(v);
    if (univ.empty()) univ.push_back(exist.back()), exist.pop_back();
    if (exist.empty()) exist.push_back(univ.back()), univ.pop_back();
    std::ostringstream q;
    q << "c generated\np cnf " << nv << " " << nc << "\na";
    for (int v : univ) q << " " << v;
    q << " 0\ne";
    for (int v : exist) q << " " << v;
    q << " 0\n";
    std::vector<std::vector<int>> clauses(static_cast<std::size_t>(nc));
    for (auto& c : clauses) {
      const std::size_t width = rng() % 4;
      for (std::size_t k = 0; k < width; ++k) {
        const int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(nv));
        c.push_back(rng() % 2 ? v : -v);
        q << c.back() << " ";
      }
      q << "0\n";
    }
    const oracle::Fn cnf = [&](const Assignment& a) {
      for (const auto& c : clauses) {
        bool sat = false;
        for (int l : c) sat = sat || a.get(static_cast<VarId>(std::abs(l))) == (l > 0);
        if (!sat) return false;
      }
      return true;
    };
    const Spec s = parse_qdimacs(q.str());
    const auto vars = all_vars(s);
    t.check(s.outputs.size() == exist.size() && s.inputs.size() == univ.size(), "QDIMACS partition");
    t.check(oracle::equivalent(cnf, oracle::fn_of(s.circuit), vars), "QDIMACS matrix differs from its clauses");
    const Spec again = parse_aiger(write_spec_aiger(s), name_pattern("^x"));
    std::map<std::string, VarId> by_name;
    for (VarId v : all_vars(again)) by_name[again.name_of(v)] = v;
    const oracle::Fn g = oracle::fn_of(again.circuit);
    t.check(oracle::equivalent(cnf, [&](const Assignment& a) {
      Assignment moved;
      for (VarId v : vars) moved.set(by_name.at(s.name_of(v)), a.get(v));
      return g(moved);
    }, vars), "QDIMACS to AIGER changed the function");
  }

  // Artifacts: identical across two runs and equal to the stored copies.
  const auto first = golden_artifacts(), second = golden_artifacts();
  for (std::size_t i = 0; i < first.size(); ++i)
    t.check(first[i].content == second[i].content, first[i].name + " differs between runs");
  if (write) {
    std::filesystem::create_directories(golden_dir);
    for (const Golden& g : first) std::ofstream(golden_dir / g.name, std::ios::binary) << g.content;
  }
  for (const Golden& g : first) {
    std::ifstream in(golden_dir / g.name, std::ios::binary);
    if (!in) {
      t.fail("missing golden file " + g.name);
      continue;
    }
    std::ostringstream stored;
    stored << in.rdbuf();
    t.check(stored.str() == g.content, g.name + " differs from the golden copy");
  }
  return t.outcome(std::to_string(specs) + " round-tripped specs, " + std::to_string(first.size()) +
                   " golden artifacts");
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path golden = SKOLEM_GOLDEN_DIR;
  bool write = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--golden") == 0 && i + 1 < argc) golden = argv[++i];
    else if (std::strcmp(argv[i], "--write-golden") == 0) write = true;
    else {
      std::cerr << "usage: acceptance [--golden DIR] [--write-golden]\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 6 runs last so it covers every spec synthesized before it.
  const std::vector<Criterion> criteria{
      {1, "equality family solved in phase 1", equality_family},
      {2, "error formula decides correctness", error_formula_oracle},
      {3, "compiled pipeline is exact", compiled_exactness},
      {4, "approximation bounds and hat identities", approximation_properties},
      {5, "repair loop completeness", repair_completeness},
      {7, "clique reduction ground truth", clique_ground_truth_check},
      {8, "goodness ratio semantics", goodness_semantics},
      {9, "format fidelity and golden files", [&] { return format_fidelity(golden, write); }},
      {6, "unate detection oracle budget", unate_budget_check},
  };

  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << o.detail << ", "
         << static_cast<int>(secs * 1000) << " ms)";
    lines.emplace_back(c.id, line.str());
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::cout << line << '\n';
  return all ? 0 : 1;
}
