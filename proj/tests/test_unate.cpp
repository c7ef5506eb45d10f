#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "skolem/benchgen.hpp"
#include "skolem/unate.hpp"

using namespace skolem;

namespace {

constexpr VarId vx1 = 1, vx2 = 2, vy1 = 3, vy2 = 4;

Spec spec_of(Circuit c, std::vector<VarId> xs, std::vector<VarId> ys) {
  Spec s;
  s.circuit = std::move(c);
  s.outputs = std::move(xs);
  s.inputs = std::move(ys);
  return s;
}

bool contains(const std::vector<VarId>& v, VarId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("semantic unate check examples") {
  CircuitBuilder b;
  const Spec pos = spec_of(b.build(b.make_or(b.literal(vx1), b.literal(vy1))), {vx1}, {vy1});
  CHECK(semantic_unate_check(hat_transform(pos), vx1).verdict == Unateness::Positive);

  CircuitBuilder c;
  const Spec neg = spec_of(c.build(c.make_or(c.literal(vx1, false), c.literal(vy1))), {vx1}, {vy1});
  CHECK(semantic_unate_check(hat_transform(neg), vx1).verdict == Unateness::Negative);

  CircuitBuilder d;
  const Spec bin = spec_of(d.build(d.make_xor(d.literal(vx1), d.literal(vy1))), {vx1}, {vy1});
  CHECK(semantic_unate_check(hat_transform(bin), vx1).verdict == Unateness::Binate);

  // Independent of x: reported positive.
  const Spec indep = spec_of(Circuit::literal(vy1), {vx1}, {vy1});
  CHECK(semantic_unate_check(hat_transform(indep), vx1).verdict == Unateness::Positive);
}

TEST_CASE("unate fixpoint examples") {
  CircuitBuilder b;
  const Spec cascade = spec_of(b.build(b.make_and(b.literal(vx1), b.make_or(b.literal(vx2), b.literal(vy1)))),
                               {vx1, vx2}, {vy1});
  const UnateResult r = unate_fixpoint(hat_transform(cascade));
  CHECK(contains(r.positive, vx1));
  CHECK(contains(r.positive, vx2));
  CHECK(r.negative.empty());
  CHECK(r.reduced.circuit.constant_value() == true);
  CHECK(r.oracle_calls == 0);

  const UnateResult eq = unate_fixpoint(hat_transform(gen_equality_spec(3)));
  CHECK(eq.positive.empty());
  CHECK(eq.negative.empty());
  CHECK(eq.remaining.size() == 3);

  CircuitBuilder c;
  const Spec two = spec_of(c.build(c.make_or(c.make_and(c.literal(vx1), c.literal(vy1)),
                                             c.make_and(c.literal(vx1), c.literal(vx2)))),
                           {vx1, vx2}, {vy1});
  const UnateResult t = unate_fixpoint(hat_transform(two));
  CHECK(contains(t.positive, vx1));
  CHECK(contains(t.positive, vx2));
  CHECK(t.reduced.circuit.constant_value() == true);
}

TEST_CASE("unate detection matches truth tables and preserves realizability") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t nx = 1 + rng() % 4, ny = 1 + rng() % 4;
    const auto rs = iter % 2 ? oracle::random_spec(rng, nx, ny, 1 + rng() % 10)
                             : oracle::random_cnf_spec(rng, nx, ny, 1 + rng() % 5);
    const Spec& spec = rs.spec;
    const NnfCircuit hat = hat_transform(spec);

    for (VarId x : spec.outputs) {
      const auto v = semantic_unate_check(hat, x).verdict;
      const bool pu = oracle::positive_unate(spec, x), nu = oracle::negative_unate(spec, x);
      REQUIRE((v == Unateness::Positive) == pu);
      REQUIRE((v == Unateness::Negative) == (nu && !pu));
    }

    const UnateResult r = unate_fixpoint(hat);
    const std::size_t n = spec.outputs.size();
    REQUIRE(r.oracle_calls <= 2 * n * n + 2 * n);
    REQUIRE(r.rounds <= n + 1);
    REQUIRE(r.positive.size() + r.negative.size() + r.remaining.size() == n);

    // The fixed constants never lose a satisfiable input.
    Spec fixed = spec;
    std::map<VarId, Circuit> consts;
    for (VarId x : r.positive) consts.emplace(x, Circuit::constant(true));
    for (VarId x : r.negative) consts.emplace(x, Circuit::constant(false));
    fixed.circuit = substitute(spec.circuit, consts);
    const oracle::Fn f = oracle::fn_of(spec.circuit), g = oracle::fn_of(fixed.circuit);
    oracle::for_each_point(spec.inputs, [&](const Assignment& y) {
      REQUIRE(oracle::exists(f, spec.outputs, y) == oracle::exists(g, spec.outputs, y));
    });

    // No remaining output is unate in the reduced circuit.
    const Spec reduced_spec = spec_of(unhat(r.reduced), spec.outputs, spec.inputs);
    for (VarId x : r.remaining) {
      REQUIRE_FALSE(oracle::positive_unate(reduced_spec, x));
      REQUIRE_FALSE(oracle::negative_unate(reduced_spec, x));
    }
  }
}

TEST_CASE("fix_output sets the bar to the complement") {
  const NnfCircuit hat = hat_transform(gen_equality_spec(1));
  const NnfCircuit one = fix_output(hat, 1, true);
  CHECK(one.circuit.as_literal() == Literal{2, true});
  const NnfCircuit zero = fix_output(hat, 1, false);
  CHECK(zero.circuit.as_literal() == Literal{2, false});
}
