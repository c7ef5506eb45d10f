#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "skolem/aig.hpp"
#include "skolem/nnf.hpp"

using namespace skolem;

namespace {

constexpr VarId vx1 = 1, vx2 = 2, vy1 = 3, vy2 = 4;

std::vector<VarId> vars_of(const Spec& s) {
  std::vector<VarId> v(s.outputs);
  v.insert(v.end(), s.inputs.begin(), s.inputs.end());
  return v;
}

bool has_negative_output_leaf(const Circuit& c, std::span<const VarId> outputs) {
  for (const Node& n : c.nodes())
    if (n.kind == NodeKind::Var && !n.positive && std::find(outputs.begin(), outputs.end(), n.var) != outputs.end())
      return true;
  return false;
}

// Random DNNF: conjunctions split the variables into disjoint groups.
NodeId random_dnnf(CircuitBuilder& b, std::mt19937_64& rng, std::vector<VarId> vars, int depth) {
  if (vars.empty()) return b.constant(rng() % 2);
  if (depth == 0 || vars.size() == 1) {
    const VarId v = vars[rng() % vars.size()];
    return b.literal(v, rng() % 2);
  }
  if (rng() % 2) {
    std::shuffle(vars.begin(), vars.end(), rng);
    const std::size_t cut = 1 + rng() % (vars.size() - 1);
    std::vector<VarId> left(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<VarId> right(vars.begin() + static_cast<std::ptrdiff_t>(cut), vars.end());
    return b.make_and(random_dnnf(b, rng, left, depth - 1), random_dnnf(b, rng, right, depth - 1));
  }
  return b.make_or(random_dnnf(b, rng, vars, depth - 1), random_dnnf(b, rng, vars, depth - 1));
}

}  // namespace

TEST_CASE("to_nnf pushes negations to the leaves") {
  Aig aig;
  const auto X1 = aig.input(vx1), X2 = aig.input(vx2), Y1 = aig.input(vy1), Y2 = aig.input(vy2);
  // not(vx1 and vy1)
  const Circuit demorgan = to_nnf(aig, Aig::negate(aig.make_and(X1, Y1)));
  CircuitBuilder b;
  const Circuit expect = b.build(b.make_or(b.literal(vx1, false), b.literal(vy1, false)));
  CHECK(demorgan.same_structure(expect));
  CHECK(to_nnf(aig, Aig::negate(Aig::negate(X1))).as_literal() == Literal{vx1, true});

  // (vx1 or not(vx2 or vy1)) or not(vx2 or not(vy2 and not vy1))
  const auto lhs = aig.make_or(X1, Aig::negate(aig.make_or(X2, Y1)));
  const auto rhs = Aig::negate(aig.make_or(X2, Aig::negate(aig.make_and(Y2, Aig::negate(Y1)))));
  const Circuit worked = to_nnf(aig, aig.make_or(lhs, rhs));
  CircuitBuilder c;
  const NodeId nx2 = c.literal(vx2, false), ny1 = c.literal(vy1, false);
  const Circuit target =
      c.build(c.make_or({c.literal(vx1), c.make_and(nx2, ny1), c.make_and({nx2, c.literal(vy2), ny1})}));
  const std::vector<VarId> vars{vx1, vx2, vy1, vy2};
  CHECK(oracle::equivalent(oracle::fn_of(worked), oracle::fn_of(target), vars));
  CHECK(count_nodes(worked) <= 2 * aig.num_nodes() + 2);

  SUBCASE("hat transform of the worked example") {
    const std::vector<VarId> outputs{vx1, vx2};
    const NnfCircuit hat = hat_transform(worked, outputs, 5);
    CHECK(hat.bar_of(vx1) == 5);
    CHECK(hat.bar_of(vx2) == 6);
    CHECK_FALSE(has_negative_output_leaf(hat.circuit, outputs));
    CircuitBuilder d;
    const NodeId bx2 = d.literal(6), ny = d.literal(vy1, false);
    const Circuit hat_target =
        d.build(d.make_or({d.literal(vx1), d.make_and(bx2, ny), d.make_and({bx2, d.literal(vy2), ny})}));
    const std::vector<VarId> hv{vx1, vx2, vy1, vy2, 5, 6};
    CHECK(oracle::equivalent(oracle::fn_of(hat.circuit), oracle::fn_of(hat_target), hv));
    CHECK(oracle::equivalent(oracle::fn_of(unhat(hat)), oracle::fn_of(worked), vars));
  }
}

TEST_CASE("hat transform leaves positive circuits alone") {
  const std::vector<VarId> outputs{vx1};
  const NnfCircuit hat = hat_transform(Circuit::literal(vx1), outputs, 5);
  CHECK(hat.circuit.as_literal() == Literal{vx1, true});
  CHECK(purity(hat, vx1) == Purity::Positive);
}

TEST_CASE("wDNNF check examples") {
  const std::vector<VarId> outputs{vx1};
  const VarId bar = 5;
  CircuitBuilder b;
  const Circuit pass = b.build(b.make_or(b.make_and(b.literal(vx1), b.literal(vy1)),
                                         b.make_and(b.literal(bar), b.literal(vy1, false))));
  CHECK(check_wdnnf(NnfCircuit{pass, outputs, {{vx1, bar}}}).pass);

  CircuitBuilder c;
  const Circuit fail = c.build(c.make_and(c.make_or(c.literal(vx1), c.literal(vy1)),
                                          c.make_or(c.literal(bar), c.literal(vy1, false))));
  const WdnnfVerdict v = check_wdnnf(NnfCircuit{fail, outputs, {{vx1, bar}}});
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(v.witness->node == fail.root());
  CHECK((v.witness->literal.var == vx1 || v.witness->literal.var == vy1));

  CHECK(check_wdnnf(Circuit::constant(true)).pass);
  CHECK(check_wdnnf(Circuit::constant(false)).pass);
}

TEST_CASE("every DNNF circuit is weakly decomposable") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    CircuitBuilder b;
    const Circuit c = b.build(random_dnnf(b, rng, {1, 2, 3, 4, 5, 6}, 5));
    CHECK(check_wdnnf(c).pass);
  }
}

TEST_CASE("purity classification") {
  const std::vector<VarId> outputs{vx1};
  CircuitBuilder b;
  const Circuit pos = b.build(b.make_or(b.literal(vx1), b.literal(vy1)));
  CHECK(purity(hat_transform(pos, outputs, 5), vx1) == Purity::Positive);
  CircuitBuilder c;
  const Circuit mixed = c.build(c.make_and(c.make_or(c.literal(vx1), c.literal(vy1)),
                                           c.make_or(c.literal(vx1, false), c.literal(vy2))));
  CHECK(purity(hat_transform(mixed, outputs, 5), vx1) == Purity::Mixed);
  CircuitBuilder d;
  const Circuit absent = d.build(d.make_and(d.literal(vy1), d.literal(vy2)));
  CHECK(purity(hat_transform(absent, outputs, 5), vx1) == Purity::Absent);
  CircuitBuilder e;
  const Circuit neg = e.build(e.make_or(e.literal(vx1, false), e.literal(vy1)));
  CHECK(purity(hat_transform(neg, outputs, 5), vx1) == Purity::Negative);
}

TEST_CASE("hat properties on random specs") {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t nx = 1 + rng() % 3, ny = 1 + rng() % 3;
    const auto rs = iter % 2 ? oracle::random_spec(rng, nx, ny, 2 + rng() % 10)
                             : oracle::random_cnf_spec(rng, nx, ny, 1 + rng() % 6);
    const Spec& spec = rs.spec;
    const NnfCircuit hat = hat_transform(spec);
    REQUIRE_FALSE(has_negative_output_leaf(hat.circuit, spec.outputs));

    const auto vars = vars_of(spec);
    // F(X, Y) <-> F-hat(X, not X, Y)
    REQUIRE(oracle::equivalent(oracle::fn_of(spec.circuit), oracle::fn_of(unhat(hat)), vars));

    // F-hat is positive unate in every x and every x-bar.
    std::vector<VarId> hv = vars;
    for (VarId x : spec.outputs) hv.push_back(hat.bar_of(x));
    const oracle::Fn fh = oracle::fn_of(hat.circuit);
    std::vector<VarId> monotone(spec.outputs);
    for (VarId x : spec.outputs) monotone.push_back(hat.bar_of(x));
    for (VarId v : monotone) {
      oracle::for_each_point(hv, [&](const Assignment& a) {
        if (a.get(v)) return;
        Assignment up = a;
        up.set(v, true);
        REQUIRE((!fh(a) || fh(up)));
      });
    }

    // Structural check agrees with the reference and its witness is real.
    std::map<VarId, VarId> bar_to_x;
    for (auto [x, b] : hat.bar) bar_to_x[b] = x;
    const WdnnfVerdict v = check_wdnnf(hat);
    REQUIRE(v.pass == oracle::wdnnf_reference(hat.circuit, bar_to_x));
    if (!v.pass) {
      const auto& w = *v.witness;
      const Node& n = hat.circuit.node(w.node);
      REQUIRE(n.kind == NodeKind::And);
      REQUIRE(w.first != w.second);
      const LiteralSets sets(hat.circuit, bar_to_x);
      CHECK(sets.contains(n.children.at(w.first), w.literal));
      CHECK(sets.contains(n.children.at(w.second), ~w.literal));
    }
  }
}
