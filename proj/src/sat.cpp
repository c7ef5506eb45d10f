#include "skolem/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "core/Solver.h"

namespace skolem {

namespace {

// Conflicts per solver slice when a wall-clock deadline is set.
constexpr std::int64_t kDeadlineSlice = 2000;

Minisat::Lit to_minisat(int dimacs) {
  return Minisat::mkLit(std::abs(dimacs) - 1, dimacs < 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

int CnfInstance::literal(Literal lit) const {
  auto it = var_map.find(lit.var);
  if (it == var_map.end())
    throw std::invalid_argument("variable " + std::to_string(lit.var) + " is not encoded");
  return lit.positive ? it->second : -it->second;
}

std::string CnfInstance::to_dimacs() const {
  std::ostringstream out;
  for (auto [var, solver_var] : var_map) out << "c var " << var << " " << solver_var << "\n";
  out << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& clause : clauses) {
    for (int l : clause) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

CnfInstance encode(const Circuit& c, std::span<const VarId> extra_vars) {
  CnfInstance inst;
  auto var_of = [&](VarId v) {
    auto [it, inserted] = inst.var_map.emplace(v, inst.num_vars + 1);
    if (inserted) ++inst.num_vars;
    return it->second;
  };

  std::vector<int> lit(c.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Node& n = c.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NodeKind::Const:
        // Constants only survive as the root.
        break;
      case NodeKind::Var:
        lit[i] = n.positive ? var_of(n.var) : -var_of(n.var);
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        const int g = ++inst.num_vars;
        lit[i] = g;
        // And: g -> c_k and (all c_k) -> g. Or is the dual.
        const int sign = n.kind == NodeKind::And ? 1 : -1;
        std::vector<int> big{sign * g};
        for (NodeId k : n.children) {
          inst.clauses.push_back({-sign * g, sign * lit[k]});
          big.push_back(-sign * lit[k]);
        }
        inst.clauses.push_back(std::move(big));
        break;
      }
    }
  }
  for (VarId v : extra_vars) var_of(v);

  if (auto value = c.constant_value()) {
    if (!*value) inst.clauses.push_back({});
  } else {
    inst.clauses.push_back({lit.back()});
  }
  return inst;
}

// ---------------------------------------------------------------------------
// SatOracle
// ---------------------------------------------------------------------------

SatOracle::SatOracle(const CnfInstance& instance, Budget budget)
    : instance_(instance), budget_(budget), solver_(std::make_unique<Minisat::Solver>()) {
  solver_->verbosity = 0;
  for (int v = 0; v < instance_.num_vars; ++v) solver_->newVar();
  Minisat::vec<Minisat::Lit> clause;
  for (const auto& c : instance_.clauses) {
    clause.clear();
    for (int l : c) clause.push(to_minisat(l));
    if (!solver_->addClause(clause)) trivially_unsat_ = true;
  }
}

SatOracle::~SatOracle() = default;

void SatOracle::add_clause(std::span<const Literal> clause) {
  Minisat::vec<Minisat::Lit> lits;
  for (Literal l : clause) lits.push(to_minisat(instance_.literal(l)));
  if (!solver_->addClause(lits)) trivially_unsat_ = true;
}

void SatOracle::block(const Assignment& model, std::span<const VarId> vars) {
  std::vector<Literal> clause;
  clause.reserve(vars.size());
  for (VarId v : vars) clause.push_back({v, !model.get(v)});
  add_clause(clause);
}

void SatOracle::randomize(std::uint64_t seed, double var_freq) {
  // MiniSat's generator needs a seed in (0, 2^31 - 1).
  solver_->random_seed = static_cast<double>(1 + seed % 2147483646ull);
  solver_->rnd_pol = true;
  solver_->random_var_freq = var_freq;
}

SatOutcome SatOracle::solve(std::span<const Literal> assumptions) {
  ++calls_;
  if (trivially_unsat_) return {Verdict::Unsat, std::nullopt};

  Minisat::vec<Minisat::Lit> assumps;
  for (Literal l : assumptions) assumps.push(to_minisat(instance_.literal(l)));

  std::optional<std::int64_t> remaining = budget_.conflicts;
  for (;;) {
    if (budget_.expired()) return {Verdict::Unknown, std::nullopt};
    std::optional<std::int64_t> slice = remaining;
    if (budget_.deadline) slice = std::min(slice.value_or(kDeadlineSlice), kDeadlineSlice);
    if (slice)
      solver_->setConfBudget(*slice);
    else
      solver_->budgetOff();

    const auto before = solver_->conflicts;
    const Minisat::lbool result = solver_->solveLimited(assumps);
    if (result == Minisat::lbool(true)) {
      Assignment model;
      for (auto [var, dimacs] : instance_.var_map)
        model.set(var, solver_->modelValue(dimacs - 1) == Minisat::lbool(true));
      return {Verdict::Sat, std::move(model)};
    }
    if (result == Minisat::lbool(false)) {
      if (!solver_->okay()) trivially_unsat_ = true;
      return {Verdict::Unsat, std::nullopt};
    }
    if (remaining) {
      *remaining -= static_cast<std::int64_t>(solver_->conflicts - before);
      if (*remaining <= 0) return {Verdict::Unknown, std::nullopt};
    }
  }
}

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

SatOutcome solve(const CnfInstance& instance, std::span<const Literal> assumptions,
                 const Budget& budget) {
  SatOracle oracle(instance, budget);
  return oracle.solve(assumptions);
}

SatOutcome solve(const Circuit& c, const Budget& budget) { return solve(encode(c), {}, budget); }

namespace {

// Variables absent from the encoding are unconstrained; give them solver
// variables so projections over them count both values.
CnfInstance covering(const CnfInstance& instance, std::span<const VarId> vars) {
  CnfInstance out = instance;
  for (VarId v : vars)
    if (out.var_map.emplace(v, out.num_vars + 1).second) ++out.num_vars;
  return out;
}

}  // namespace

ProjectedCount enumerate_projected(const CnfInstance& instance, std::span<const VarId> proj,
                                   std::uint64_t cap, const Budget& budget) {
  SatOracle oracle(covering(instance, proj), budget);
  ProjectedCount out;
  for (;;) {
    SatOutcome r = oracle.solve();
    if (r.verdict == Verdict::Unknown) throw ResourceLimit();
    if (r.unsat()) return out;
    if (out.count == cap) {
      out.exhausted = false;
      return out;
    }
    ++out.count;
    oracle.block(*r.model, proj);
  }
}

std::vector<Assignment> sample_diverse(const CnfInstance& instance, std::size_t k,
                                       std::uint64_t seed, std::span<const VarId> distinct_on,
                                       const Budget& budget) {
  std::vector<VarId> all;
  if (distinct_on.empty()) {
    for (auto [var, _] : instance.var_map) all.push_back(var);
    distinct_on = all;
  }
  SatOracle oracle(covering(instance, distinct_on), budget);
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < k; ++i) {
    oracle.randomize(seed * 0x9e3779b97f4a7c15ull + i);
    SatOutcome r = oracle.solve();
    if (r.verdict == Verdict::Unknown) throw ResourceLimit();
    if (r.unsat()) break;
    oracle.block(*r.model, distinct_on);
    out.push_back(std::move(*r.model));
  }
  return out;
}

}  // namespace skolem
