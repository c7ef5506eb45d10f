#include "skolem/phase1.hpp"

#include <algorithm>
#include <set>

namespace skolem {

std::size_t OutputOrder::position(VarId x) const {
  auto it = std::find(sequence.begin(), sequence.end(), x);
  if (it == sequence.end()) throw std::out_of_range("output not in order");
  return static_cast<std::size_t>(it - sequence.begin());
}

OutputOrder choose_order(const NnfCircuit& hat, std::span<const VarId> outputs,
                         OrderHeuristic heuristic) {
  OutputOrder order;
  order.sequence.assign(outputs.begin(), outputs.end());
  std::sort(order.sequence.begin(), order.sequence.end());
  if (heuristic == OrderHeuristic::Index) {
    for (VarId x : order.sequence) order.score[x] = 0;
    return order;
  }
  order.score = transitive_fanin_counts(unhat(hat), order.sequence);
  std::stable_sort(order.sequence.begin(), order.sequence.end(),
                   [&](VarId a, VarId b) { return order.score[a] < order.score[b]; });
  return order;
}

namespace {

// F-hat with outputs and bars fixed per `fixed`; bars of outputs in
// `negated` read as the negated output.
NodeId instantiate(CircuitBuilder& b, const NnfCircuit& hat, const std::map<VarId, bool>& fixed,
                   const std::map<VarId, VarId>& negated) {
  return b.add(hat.circuit, [&](VarId var, bool positive) -> std::optional<NodeId> {
    if (auto it = fixed.find(var); it != fixed.end()) return b.constant(positive == it->second);
    if (auto it = negated.find(var); it != negated.end()) return b.literal(it->second, !positive);
    return std::nullopt;
  });
}

// Bar variable -> output, for outputs at positions after `position`.
std::map<VarId, VarId> later_bars(const NnfCircuit& hat, const OutputOrder& order, std::size_t position) {
  std::map<VarId, VarId> out;
  std::set<VarId> placed(order.sequence.begin(), order.sequence.begin() + position + 1);
  for (auto [x, xb] : hat.bar)
    if (!placed.contains(x)) out.emplace(xb, x);
  return out;
}

}  // namespace

CandidatePair build_candidates(const NnfCircuit& hat, const OutputOrder& order, std::size_t position) {
  const VarId target = order.sequence.at(position);
  std::map<VarId, bool> fixed;
  for (std::size_t p = 0; p < position; ++p) {
    const VarId x = order.sequence[p];
    fixed[x] = true;
    fixed[hat.bar_of(x)] = true;
  }
  const auto negated = later_bars(hat, order, position);

  auto build = [&](bool value) {
    auto f = fixed;
    f[target] = value;
    f[hat.bar_of(target)] = !value;
    CircuitBuilder b;
    return b.build(b.negate(instantiate(b, hat, f, negated)));
  };
  return {build(false), build(true)};
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::UnateConstant:
      return "unate-const";
    case Provenance::DeltaBar:
      return "delta-bar";
    case Provenance::NotGammaBar:
      return "not-gamma-bar";
    case Provenance::Refined:
      return "refined";
  }
  return "?";
}

Selection select_candidate(const CandidatePair& pair) {
  Circuit not_gamma = negate(pair.gamma_bar);
  if (count_nodes(not_gamma) < count_nodes(pair.delta_bar))
    return {std::move(not_gamma), Provenance::NotGammaBar};
  return {pair.delta_bar, Provenance::DeltaBar};
}

// ---------------------------------------------------------------------------
// SkolemVector
// ---------------------------------------------------------------------------

void SkolemVector::append(SkolemEntry entry) {
  if (!index_.emplace(entry.output, entries_.size()).second)
    throw std::invalid_argument("duplicate Skolem entry");
  entries_.push_back(std::move(entry));
}

std::vector<VarId> SkolemVector::sequence() const {
  std::vector<VarId> out;
  for (const auto& e : entries_) out.push_back(e.output);
  return out;
}

bool SkolemVector::has_finals() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.final.has_value(); });
}

std::map<VarId, Circuit> SkolemVector::finals() const {
  std::map<VarId, Circuit> out;
  for (const auto& e : entries_) {
    if (!e.final) throw std::logic_error("Skolem vector has no final functions");
    out.emplace(e.output, *e.final);
  }
  return out;
}

std::map<VarId, Circuit> SkolemVector::stages() const {
  std::map<VarId, Circuit> out;
  for (const auto& e : entries_) out.emplace(e.output, e.stage);
  return out;
}

SkolemVector reverse_substitute(SkolemVector skolem) {
  CircuitBuilder b;
  std::unordered_map<VarId, NodeId> done;
  auto entries = skolem.entries();
  for (std::size_t i = entries.size(); i-- > 0;) {
    SkolemEntry& e = skolem.entry(entries[i].output);
    const NodeId root = b.add(e.stage, done);
    done.emplace(e.output, root);
    e.final = b.build(root);
  }
  return skolem;
}

// ---------------------------------------------------------------------------
// Error formula
// ---------------------------------------------------------------------------

ErrorFormula build_error_formula(const Spec& spec, const std::map<VarId, Circuit>& functions) {
  ErrorFormula eps;
  eps.outputs = spec.outputs;
  eps.inputs = spec.inputs;

  VarId top = spec.max_var();
  for (const auto& [x, f] : functions)
    for (VarId v : f.support()) top = std::max(top, v);
  for (VarId x : spec.outputs) eps.primed.emplace(x, ++top);

  CircuitBuilder b;
  std::unordered_map<VarId, NodeId> to_primed;
  for (auto [x, xp] : eps.primed) to_primed.emplace(x, b.literal(xp));

  std::vector<NodeId> parts;
  parts.push_back(b.add(spec.circuit, to_primed));
  for (VarId x : spec.outputs) {
    auto it = functions.find(x);
    if (it == functions.end())
      throw std::invalid_argument("no Skolem function for output " + spec.name_of(x));
    parts.push_back(b.make_iff(b.literal(x), b.add(it->second)));
  }
  parts.push_back(b.negate(b.add(spec.circuit)));
  eps.circuit = b.build(b.make_and(std::move(parts)));
  return eps;
}

ErrorFormula build_error_formula(const Spec& spec, const SkolemVector& skolem, SkolemForm form) {
  return build_error_formula(spec, form == SkolemForm::Stage ? skolem.stages() : skolem.finals());
}

// ---------------------------------------------------------------------------
// Phase 1
// ---------------------------------------------------------------------------

Phase1Result phase1_synthesize(const Spec& spec, const Phase1Options& options) {
  validate(spec);
  Phase1Result result;
  if (spec.outputs.empty()) return result;

  const NnfCircuit hat = hat_transform(spec);
  result.stats.wdnnf = check_wdnnf(hat).pass;

  const UnateResult unate = unate_fixpoint(hat, options.budget);
  result.stats.unate_oracle_calls = unate.oracle_calls;
  result.stats.unate_rounds = unate.rounds;
  result.stats.positive_unate = unate.positive.size();
  result.stats.negative_unate = unate.negative.size();

  SkolemVector skolem;
  for (VarId x : unate.positive) skolem.append({x, Circuit::constant(true), std::nullopt, Provenance::UnateConstant});
  for (VarId x : unate.negative) skolem.append({x, Circuit::constant(false), std::nullopt, Provenance::UnateConstant});

  result.order = choose_order(unate.reduced, unate.remaining, options.heuristic);
  for (std::size_t p = 0; p < result.order.sequence.size(); ++p) {
    Selection s = select_candidate(build_candidates(unate.reduced, result.order, p));
    result.stats.candidate_sizes.push_back(count_nodes(s.function));
    skolem.append({result.order.sequence[p], std::move(s.function), std::nullopt, s.provenance});
  }
  result.skolem = reverse_substitute(std::move(skolem));
  for (const auto& e : result.skolem.entries()) result.stats.final_size += count_nodes(*e.final);

  ErrorFormula eps = build_error_formula(spec, result.skolem, SkolemForm::Stage);
  const SatOutcome check = solve(eps.circuit, options.budget);
  result.stats.oracle_calls = unate.oracle_calls + 1;
  if (check.verdict == Verdict::Unknown) throw ResourceLimit();
  if (check.unsat()) return result;
  result.status = Phase1Status::NeedPhase2;
  result.error = std::move(eps);
  return result;
}

std::optional<std::size_t> first_collapse_failure(const NnfCircuit& hat, const OutputOrder& order,
                                                  const Budget& budget) {
  for (std::size_t j = 0; j < order.sequence.size(); ++j) {
    std::map<VarId, bool> prefix;
    for (std::size_t p = 0; p < j; ++p) {
      prefix[order.sequence[p]] = true;
      prefix[hat.bar_of(order.sequence[p])] = true;
    }
    const VarId x = order.sequence[j];
    auto with = [&](bool xv, bool bv) {
      auto f = prefix;
      f[x] = xv;
      f[hat.bar_of(x)] = bv;
      return f;
    };
    CircuitBuilder b;
    const NodeId both = instantiate(b, hat, with(true, true), {});
    const NodeId only_bar = instantiate(b, hat, with(false, true), {});
    const NodeId only_x = instantiate(b, hat, with(true, false), {});
    const Circuit query = b.build(b.make_and(both, b.negate(b.make_or(only_bar, only_x))));
    const SatOutcome r = solve(query, budget);
    if (r.verdict == Verdict::Unknown) throw ResourceLimit();
    if (r.sat()) return j;
  }
  return std::nullopt;
}

}  // namespace skolem
