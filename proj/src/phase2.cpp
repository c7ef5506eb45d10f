#include "skolem/phase2.hpp"

#include <algorithm>

namespace skolem {

namespace {

bool value_or_zero(const Assignment& a, VarId v) { return a.find(v).value_or(false); }

Assignment outputs_at(const Spec& spec, const std::map<VarId, Circuit>& finals, const Assignment& inputs) {
  Assignment out;
  for (VarId x : spec.outputs) out.set(x, finals.at(x).evaluate(inputs));
  return out;
}

Assignment merged(const Assignment& a, const Assignment& b) {
  Assignment out = a;
  for (VarId v : b.domain()) out.set(v, b.get(v));
  return out;
}

NodeId cube_node(CircuitBuilder& b, const std::vector<Literal>& cube) {
  std::vector<NodeId> lits;
  for (Literal l : cube) lits.push_back(b.literal(l));
  return b.make_and(std::move(lits));
}

// Is the vector with outputs in `forced` patched on `cube` correct on every
// input of the cube? nullopt when the oracle gives up.
std::optional<bool> certify(const Spec& spec, const std::map<VarId, Circuit>& finals,
                            const std::vector<Literal>& cube, const std::map<VarId, bool>& forced,
                            const Budget& budget) {
  CircuitBuilder b;
  const NodeId in_cube = cube_node(b, cube);

  std::unordered_map<VarId, NodeId> fresh;
  VarId top = spec.max_var();
  for (VarId x : spec.outputs) fresh.emplace(x, b.literal(++top));
  const NodeId exists = b.add(spec.circuit, fresh);

  std::unordered_map<VarId, NodeId> patched;
  for (VarId x : spec.outputs) {
    NodeId f = b.add(finals.at(x));
    if (auto it = forced.find(x); it != forced.end())
      f = it->second ? b.make_or(in_cube, f) : b.make_and(b.negate(in_cube), f);
    patched.emplace(x, f);
  }
  const NodeId holds = b.add(spec.circuit, patched);
  const Circuit query = b.build(b.make_and({in_cube, exists, b.negate(holds)}));
  const SatOutcome r = solve(query, budget);
  if (r.verdict == Verdict::Unknown) return std::nullopt;
  return r.unsat();
}

}  // namespace

Counterexample extract_counterexample(const Spec& spec, const ErrorFormula& eps, const Assignment& model) {
  Assignment full;
  for (VarId v : eps.circuit.support()) full.set(v, value_or_zero(model, v));
  for (VarId v : spec.inputs) full.set(v, value_or_zero(model, v));
  if (!eps.circuit.evaluate(full)) throw MalformedModel("model does not satisfy the error formula");

  Counterexample cex;
  for (VarId y : spec.inputs) cex.inputs.set(y, full.get(y));
  for (VarId x : spec.outputs) {
    cex.witness.set(x, value_or_zero(full, eps.primed.at(x)));
    cex.current.set(x, value_or_zero(full, x));
  }
  if (!spec.circuit.evaluate(merged(cex.inputs, cex.witness)) ||
      spec.circuit.evaluate(merged(cex.inputs, cex.current)))
    throw MalformedModel("counterexample invariants violated");
  return cex;
}

Generalization generalize_cube(const Spec& spec, const SkolemVector& skolem, const Counterexample& cex,
                               const Budget& budget) {
  const auto finals = skolem.finals();
  const Assignment produced = outputs_at(spec, finals, cex.inputs);

  std::map<VarId, bool> forced;
  for (VarId x : spec.outputs)
    if (produced.get(x) != cex.witness.get(x)) forced.emplace(x, cex.witness.get(x));

  std::vector<Literal> cube;
  for (VarId y : spec.inputs) cube.push_back({y, cex.inputs.get(y)});
  const std::vector<Literal> minterm = cube;

  Generalization out;
  for (VarId y : spec.inputs) {
    std::vector<Literal> trial;
    for (Literal l : cube)
      if (l.var != y) trial.push_back(l);
    ++out.oracle_calls;
    const auto ok = certify(spec, finals, trial, forced, budget);
    if (!ok) {
      cube = minterm;
      out.fell_back = true;
      break;
    }
    if (*ok) cube = std::move(trial);
  }

  for (auto [x, value] : forced) out.patches.push_back({x, cube, value});
  return out;
}

SkolemVector apply_patch(SkolemVector skolem, const RefinementPatch& patch) {
  SkolemEntry& e = skolem.entry(patch.output);
  if (!e.final) throw std::logic_error("patching requires final functions");
  CircuitBuilder b;
  const NodeId in_cube = cube_node(b, patch.cube);
  const NodeId old = b.add(*e.final);
  const NodeId updated = patch.value ? b.make_or(in_cube, old) : b.make_and(b.negate(in_cube), old);
  e.final = b.build(updated);
  e.stage = *e.final;
  e.provenance = Provenance::Refined;
  return skolem;
}

CegarResult cegar_loop(const Spec& spec, SkolemVector initial, const CegarOptions& options) {
  CegarResult result;
  result.skolem = initial.has_finals() ? std::move(initial) : reverse_substitute(std::move(initial));

  auto give_up = [&] {
    result.status = CegarStatus::Timeout;
    try {
      // Goodness gets its own effort limit, the run budget is spent.
      Budget own{std::int64_t{1'000'000}, std::nullopt};
      result.goodness = goodness_ratio(build_error_formula(spec, result.skolem.finals()),
                                       options.goodness_cap, own);
    } catch (const ResourceLimit&) {
    }
    return result;
  };

  for (std::size_t iteration = 0;; ++iteration) {
    if (options.budget.expired()) return give_up();
    if (options.max_rounds && iteration >= *options.max_rounds) return give_up();

    const auto finals = result.skolem.finals();
    const ErrorFormula eps = build_error_formula(spec, finals);
    const CnfInstance inst = encode(eps.circuit, spec.inputs);

    CegarRound round;
    round.iteration = iteration;
    std::vector<Assignment> samples;
    try {
      if (options.track_goodness)
        round.goodness_numerator = goodness_ratio(eps, options.goodness_cap, options.budget).numerator;
      samples = sample_diverse(inst, options.samples_per_round, options.seed + iteration, spec.inputs,
                               options.budget);
    } catch (const ResourceLimit&) {
      return give_up();
    }
    ++result.oracle_calls;
    if (samples.empty()) {
      result.status = CegarStatus::Done;
      return result;
    }
    round.counterexamples = samples.size();

    for (const Assignment& model : samples) {
      Counterexample cex = extract_counterexample(spec, eps, model);
      // Earlier patches of this round may already cover this input.
      cex.current = outputs_at(spec, result.skolem.finals(), cex.inputs);
      if (spec.circuit.evaluate(merged(cex.inputs, cex.current))) continue;

      Generalization g = generalize_cube(spec, result.skolem, cex, options.budget);
      result.oracle_calls += g.oracle_calls;
      std::sort(g.patches.begin(), g.patches.end(), [&](const auto& a, const auto& b) {
        return result.skolem.position(a.output) > result.skolem.position(b.output);
      });
      for (const RefinementPatch& p : g.patches) result.skolem = apply_patch(std::move(result.skolem), p);
      if (!g.patches.empty()) {
        ++round.patches;
        round.cube_widths.push_back(g.patches.front().cube.size());
        ++result.patches;
      }
    }
    result.rounds.push_back(std::move(round));
  }
}

}  // namespace skolem
