#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "skolem/benchgen.hpp"
#include "skolem/goodness.hpp"

using namespace skolem;

TEST_CASE("goodness examples") {
  const Spec one = gen_equality_spec(1);  // x1 = 1, y1 = 2
  const GoodnessRatio wrong = goodness_ratio(build_error_formula(one, {{1, Circuit::literal(2, false)}}));
  CHECK(wrong.numerator == 2);
  CHECK(wrong.input_bits == 1);
  CHECK(wrong.exact);
  CHECK(wrong.str() == "1/1");
  CHECK(wrong.compare({1, 1}) == 0);

  const GoodnessRatio right = goodness_ratio(build_error_formula(one, {{1, Circuit::literal(2)}}));
  CHECK(right.is_zero());
  CHECK(right.exact);
  CHECK(right.str() == "0/1");

  // x1 <-> (y1 and y2) with psi = 0: only y1 = y2 = 1 fails.
  const VarId x1 = 1, y1 = 2, y2 = 3;
  CircuitBuilder b;
  Spec s;
  s.circuit = b.build(b.make_iff(b.literal(x1), b.make_and(b.literal(y1), b.literal(y2))));
  s.outputs = {x1};
  s.inputs = {y1, y2};
  const GoodnessRatio quarter = goodness_ratio(build_error_formula(s, {{x1, Circuit::constant(false)}}));
  CHECK(quarter.numerator == 1);
  CHECK(quarter.input_bits == 2);
  CHECK(quarter.str() == "1/4");
  CHECK(quarter.approx() == doctest::Approx(0.25));
}

TEST_CASE("capped counts are lower bounds") {
  const Spec eq = gen_equality_spec(3);
  std::map<VarId, Circuit> neg;
  for (std::size_t i = 0; i < 3; ++i) neg.emplace(eq.outputs[i], Circuit::literal(eq.inputs[i], false));
  const ErrorFormula eps = build_error_formula(eq, neg);
  CHECK(goodness_ratio(eps).numerator == 8);
  const GoodnessRatio capped = goodness_ratio(eps, 3);
  CHECK(capped.numerator == 3);
  CHECK_FALSE(capped.exact);
}

TEST_CASE("exact threshold comparisons") {
  GoodnessRatio g{2, 10, true};  // 2/1024 < 1/500 < 3/1024
  CHECK(g.below({1, 500}));
  g.numerator = 3;
  CHECK(g.above({1, 500}));
  g.numerator = 512;
  CHECK(g.compare({1, 2}) == 0);
  CHECK(g.str() == "1/2");
  CHECK_THROWS_AS(g.compare({1, 0}), std::invalid_argument);
  // 64 input bits still compare exactly.
  const GoodnessRatio wide{1, 64, true};
  CHECK(wide.below({1, 500}));
  CHECK(wide.str() == "1/18446744073709551616");
}

TEST_CASE("numerator equals the brute-force count") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t nx = 1 + rng() % 3, ny = 1 + rng() % 5;
    const auto rs = iter % 2 ? oracle::random_spec(rng, nx, ny, 1 + rng() % 10)
                             : oracle::random_relational_spec(rng, nx, ny, 2 + rng() % 4);
    std::map<VarId, Circuit> psi;
    for (VarId x : rs.spec.outputs) psi.emplace(x, oracle::random_function(rng, rs.spec.inputs, rng() % 5));
    const GoodnessRatio g = goodness_ratio(build_error_formula(rs.spec, psi));
    const std::uint64_t bad = oracle::bad_inputs(rs.spec, psi);
    REQUIRE(g.numerator == bad);
    REQUIRE(g.exact);
    REQUIRE(g.input_bits == ny);
    REQUIRE(g.is_zero() == oracle::skolem_correct(rs.spec, psi));
  }
}
