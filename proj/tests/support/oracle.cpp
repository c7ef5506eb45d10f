#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "skolem/aig.hpp"
#include "skolem/nnf.hpp"

namespace oracle {

using skolem::Node;
using skolem::NodeKind;

Assignment point(std::span<const VarId> vars, std::uint64_t bits, Assignment base) {
  for (std::size_t k = 0; k < vars.size(); ++k) base.set(vars[k], (bits >> k) & 1u);
  return base;
}

void for_each_point(std::span<const VarId> vars, const std::function<void(const Assignment&)>& visit,
                    const Assignment& base) {
  if (vars.size() > 24) throw std::invalid_argument("too many variables to enumerate");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) visit(point(vars, bits, base));
}

bool exists(const Fn& f, std::span<const VarId> quantified, const Assignment& rest) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << quantified.size()); ++bits)
    if (f(point(quantified, bits, rest))) return true;
  return false;
}

bool equivalent(const Fn& a, const Fn& b, std::span<const VarId> vars) {
  bool same = true;
  for_each_point(vars, [&](const Assignment& p) {
    if (same && a(p) != b(p)) same = false;
  });
  return same;
}

std::uint64_t count_models(const Fn& f, std::span<const VarId> vars) {
  std::uint64_t n = 0;
  for_each_point(vars, [&](const Assignment& p) { n += f(p) ? 1 : 0; });
  return n;
}

Fn fn_of(const Circuit& c) {
  return [c](const Assignment& a) {
    const auto nodes = c.nodes();
    std::vector<char> val(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      switch (n.kind) {
        case NodeKind::Const: val[i] = n.positive; break;
        case NodeKind::Var: val[i] = a.get(n.var) == n.positive; break;
        case NodeKind::And:
          val[i] = 1;
          for (auto k : n.children) val[i] = val[i] && val[k];
          break;
        case NodeKind::Or:
          val[i] = 0;
          for (auto k : n.children) val[i] = val[i] || val[k];
          break;
      }
    }
    return val.back() != 0;
  };
}

std::uint64_t bad_inputs(const Spec& spec, const std::map<VarId, Circuit>& psi) {
  const Fn f = fn_of(spec.circuit);
  std::map<VarId, Fn> fs;
  for (const auto& [x, c] : psi) fs.emplace(x, fn_of(c));
  std::uint64_t bad = 0;
  for_each_point(spec.inputs, [&](const Assignment& y) {
    if (!exists(f, spec.outputs, y)) return;
    Assignment full = y;
    for (VarId x : spec.outputs) full.set(x, fs.at(x)(y));
    if (!f(full)) ++bad;
  });
  return bad;
}

namespace {

bool quantified_char(const Spec& spec, std::span<const VarId> order, std::size_t pos, const Assignment& a,
                     bool value) {
  const Fn f = fn_of(spec.circuit);
  const std::vector<VarId> earlier(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pos));
  Assignment rest = a;
  rest.set(order[pos], value);
  return !exists(f, earlier, rest);
}

}  // namespace

bool delta_exact(const Spec& spec, std::span<const VarId> order, std::size_t pos, const Assignment& a) {
  return quantified_char(spec, order, pos, a, false);
}

bool gamma_exact(const Spec& spec, std::span<const VarId> order, std::size_t pos, const Assignment& a) {
  return quantified_char(spec, order, pos, a, true);
}

namespace {

bool implies_cofactor(const Spec& spec, VarId x, bool from) {
  const Fn f = fn_of(spec.circuit);
  std::vector<VarId> rest;
  for (VarId v : spec.outputs)
    if (v != x) rest.push_back(v);
  rest.insert(rest.end(), spec.inputs.begin(), spec.inputs.end());
  bool ok = true;
  for_each_point(rest, [&](const Assignment& a) {
    Assignment lo = a, hi = a;
    lo.set(x, from);
    hi.set(x, !from);
    if (f(lo) && !f(hi)) ok = false;
  });
  return ok;
}

}  // namespace

bool positive_unate(const Spec& spec, VarId x) { return implies_cofactor(spec, x, false); }
bool negative_unate(const Spec& spec, VarId x) { return implies_cofactor(spec, x, true); }

bool wdnnf_reference(const Circuit& c, const std::map<VarId, VarId>& bar_to_x) {
  using Lit = std::pair<VarId, bool>;
  const auto nodes = c.nodes();
  std::vector<std::set<Lit>> lits(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.kind == NodeKind::Var) {
      auto it = bar_to_x.find(n.var);
      lits[i].insert(it == bar_to_x.end() ? Lit{n.var, n.positive} : Lit{it->second, !n.positive});
      continue;
    }
    for (auto k : n.children) lits[i].insert(lits[k].begin(), lits[k].end());
    if (n.kind != NodeKind::And) continue;
    for (std::size_t p = 0; p < n.children.size(); ++p)
      for (std::size_t q = 0; q < n.children.size(); ++q) {
        if (p == q) continue;
        for (const Lit& l : lits[n.children[p]])
          if (lits[n.children[q]].contains({l.first, !l.second})) return false;
      }
  }
  return true;
}

bool clique_exists(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adjacent, std::size_t k) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u) && !adjacent(i, j)) ok = false;
    if (ok) return true;
  }
  return false;
}

bool eval(const Expr& e, const Assignment& a) {
  switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Var: return a.get(e.var);
    case Expr::Op::Not: return !eval(*e.kids[0], a);
    case Expr::Op::And: return eval(*e.kids[0], a) && eval(*e.kids[1], a);
    case Expr::Op::Or: return eval(*e.kids[0], a) || eval(*e.kids[1], a);
    case Expr::Op::Xor: return eval(*e.kids[0], a) != eval(*e.kids[1], a);
    case Expr::Op::Ite: return eval(*e.kids[0], a) ? eval(*e.kids[1], a) : eval(*e.kids[2], a);
  }
  return false;
}

namespace {

ExprPtr leaf(VarId v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Var;
  e->var = v;
  return e;
}

ExprPtr gate(Expr::Op op, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = std::move(kids);
  return e;
}

skolem::Aig::Lit to_aig(skolem::Aig& aig, const Expr& e, std::map<const Expr*, skolem::Aig::Lit>& memo) {
  if (auto it = memo.find(&e); it != memo.end()) return it->second;
  using skolem::Aig;
  Aig::Lit r = Aig::kFalse;
  auto kid = [&](std::size_t k) { return to_aig(aig, *e.kids[k], memo); };
  switch (e.op) {
    case Expr::Op::Const: r = e.value ? Aig::kTrue : Aig::kFalse; break;
    case Expr::Op::Var: r = aig.input(e.var); break;
    case Expr::Op::Not: r = Aig::negate(kid(0)); break;
    case Expr::Op::And: r = aig.make_and(kid(0), kid(1)); break;
    case Expr::Op::Or: r = aig.make_or(kid(0), kid(1)); break;
    case Expr::Op::Xor: r = aig.make_xor(kid(0), kid(1)); break;
    case Expr::Op::Ite: r = aig.make_ite(kid(0), kid(1), kid(2)); break;
  }
  memo.emplace(&e, r);
  return r;
}

ExprPtr random_dag(std::mt19937_64& rng, std::span<const VarId> vars, std::size_t gates) {
  std::vector<ExprPtr> pool;
  for (VarId v : vars) pool.push_back(leaf(v));
  if (pool.empty()) {
    auto c = std::make_shared<Expr>();
    c->value = rng() & 1u;
    return c;
  }
  auto pick = [&] {
    // Favour recent gates so the root sees most of the DAG.
    std::size_t k = rng() % pool.size();
    if (pool.size() > vars.size() && rng() % 2) k = vars.size() + rng() % (pool.size() - vars.size());
    ExprPtr e = pool[k];
    if (rng() % 3 == 0) e = gate(Expr::Op::Not, {e});
    return e;
  };
  for (std::size_t g = 0; g < gates; ++g) {
    const auto roll = rng() % 10;
    Expr::Op op = roll < 4 ? Expr::Op::And : roll < 8 ? Expr::Op::Or : roll < 9 ? Expr::Op::Xor : Expr::Op::Ite;
    std::vector<ExprPtr> kids{pick(), pick()};
    if (op == Expr::Op::Ite) kids.push_back(pick());
    pool.push_back(gate(op, std::move(kids)));
  }
  return pool.back();
}

Spec layout(std::size_t nx, std::size_t ny) {
  Spec spec;
  for (std::size_t i = 1; i <= nx; ++i) {
    spec.outputs.push_back(static_cast<VarId>(i));
    spec.names[static_cast<VarId>(i)] = "x" + std::to_string(i);
  }
  for (std::size_t i = 1; i <= ny; ++i) {
    const auto v = static_cast<VarId>(nx + i);
    spec.inputs.push_back(v);
    spec.names[v] = "y" + std::to_string(i);
  }
  return spec;
}

Circuit circuit_of(const Expr& e) {
  skolem::Aig aig;
  std::map<const Expr*, skolem::Aig::Lit> memo;
  return skolem::to_nnf(aig, to_aig(aig, e, memo));
}

}  // namespace

RandomSpec random_spec(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t gates) {
  RandomSpec out;
  out.spec = layout(nx, ny);
  std::vector<VarId> vars(out.spec.outputs);
  vars.insert(vars.end(), out.spec.inputs.begin(), out.spec.inputs.end());
  out.expr = random_dag(rng, vars, gates);
  out.spec.circuit = circuit_of(*out.expr);
  return out;
}

RandomSpec random_cnf_spec(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t clauses) {
  RandomSpec out;
  out.spec = layout(nx, ny);
  const std::size_t nv = nx + ny;
  ExprPtr conj;
  for (std::size_t c = 0; c < clauses; ++c) {
    ExprPtr clause;
    const std::size_t width = 1 + rng() % 3;
    for (std::size_t k = 0; k < width; ++k) {
      ExprPtr l = leaf(static_cast<VarId>(1 + rng() % nv));
      if (rng() % 2) l = gate(Expr::Op::Not, {l});
      clause = clause ? gate(Expr::Op::Or, {clause, l}) : l;
    }
    conj = conj ? gate(Expr::Op::And, {conj, clause}) : clause;
  }
  if (!conj) {
    auto t = std::make_shared<Expr>();
    t->value = true;
    conj = t;
  }
  out.expr = conj;
  out.spec.circuit = circuit_of(*out.expr);
  return out;
}

RandomSpec random_relational_spec(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t constraints) {
  RandomSpec out;
  out.spec = layout(nx, ny);
  const auto& xs = out.spec.outputs;
  const auto& ys = out.spec.inputs;
  auto lit = [&](VarId v) {
    ExprPtr l = leaf(v);
    return rng() % 2 ? gate(Expr::Op::Not, {l}) : l;
  };
  ExprPtr conj;
  for (std::size_t c = 0; c < constraints; ++c) {
    ExprPtr part;
    if (nx >= 2 && rng() % 3 != 0) {
      std::vector<VarId> pool(xs);
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::size_t width = std::min<std::size_t>(pool.size(), 2 + rng() % 2);
      ExprPtr parity = leaf(pool[0]);
      for (std::size_t k = 1; k < width; ++k) parity = gate(Expr::Op::Xor, {parity, leaf(pool[k])});
      ExprPtr rhs = ny ? random_dag(rng, ys, rng() % 3) : leaf(pool[0]);
      part = gate(Expr::Op::Not, {gate(Expr::Op::Xor, {parity, rhs})});
    } else {
      const std::size_t width = 2 + rng() % 2;
      for (std::size_t k = 0; k < width; ++k) {
        const VarId v = k == 0 || !ny ? xs[rng() % nx] : (rng() % 2 ? xs[rng() % nx] : ys[rng() % ny]);
        part = part ? gate(Expr::Op::Or, {part, lit(v)}) : lit(v);
      }
    }
    conj = conj ? gate(Expr::Op::And, {conj, part}) : part;
  }
  out.expr = conj;
  out.spec.circuit = circuit_of(*out.expr);
  return out;
}

Circuit random_function(std::mt19937_64& rng, std::span<const VarId> vars, std::size_t gates) {
  return circuit_of(*random_dag(rng, vars, gates));
}

}  // namespace oracle
