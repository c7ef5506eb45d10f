#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "skolem/benchgen.hpp"
#include "skolem/phase2.hpp"

using namespace skolem;

namespace {

Spec spec_of(Circuit c, std::vector<VarId> xs, std::vector<VarId> ys) {
  Spec s;
  s.circuit = std::move(c);
  s.outputs = std::move(xs);
  s.inputs = std::move(ys);
  return s;
}

SkolemVector vector_of(const std::vector<std::pair<VarId, Circuit>>& fs) {
  SkolemVector v;
  for (const auto& [x, f] : fs) v.append({x, f, f, Provenance::DeltaBar});
  return v;
}

}  // namespace

TEST_CASE("counterexample extraction") {
  // x1 = 1, y1 = 2; wrong psi = not y1.
  const Spec one = gen_equality_spec(1);
  const ErrorFormula eps = build_error_formula(one, {{1, Circuit::literal(2, false)}});
  Assignment m;
  m.set(2, true);
  m.set(eps.primed.at(1), true);
  m.set(1, false);
  const Counterexample c = extract_counterexample(one, eps, m);
  CHECK(c.inputs.get(2));
  CHECK(c.witness.get(1));
  CHECK_FALSE(c.current.get(1));

  Assignment bad;
  bad.set(2, true);
  bad.set(eps.primed.at(1), false);
  bad.set(1, false);
  CHECK_THROWS_AS(extract_counterexample(one, eps, bad), MalformedModel);

  // Two outputs: (x1 xor x2) <-> y1, and (x2 or y2); both candidates 0.
  const VarId x1 = 1, x2 = 2, y1 = 3, y2 = 4;
  CircuitBuilder b;
  const Spec two = spec_of(b.build(b.make_and(b.make_iff(b.make_xor(b.literal(x1), b.literal(x2)), b.literal(y1)),
                                              b.make_or(b.literal(x2), b.literal(y2)))),
                           {x1, x2}, {y1, y2});
  const ErrorFormula e2 =
      build_error_formula(two, {{x1, Circuit::constant(false)}, {x2, Circuit::constant(false)}});
  const SatOutcome r = solve(e2.circuit);
  REQUIRE(r.sat());
  const Counterexample c2 = extract_counterexample(two, e2, *r.model);
  const oracle::Fn f = oracle::fn_of(two.circuit);
  Assignment w = c2.inputs, cur = c2.inputs;
  for (VarId x : two.outputs) {
    w.set(x, c2.witness.get(x));
    cur.set(x, c2.current.get(x));
    CHECK_FALSE(c2.current.get(x));
  }
  CHECK(f(w));
  CHECK_FALSE(f(cur));
}

TEST_CASE("cube generalization") {
  // x1 = y1 with psi = not y1: dropping y1 would force psi to 1 on y1 = 0,
  // which is wrong there, so the cube stays the minterm.
  const Spec one = gen_equality_spec(1);
  const SkolemVector wrong = vector_of({{1, Circuit::literal(2, false)}});
  Counterexample c;
  c.inputs.set(2, true);
  c.witness.set(1, true);
  c.current.set(1, false);
  const Generalization g = generalize_cube(one, wrong, c);
  REQUIRE(g.patches.size() == 1);
  CHECK(g.patches[0].output == 1);
  CHECK(g.patches[0].value);
  CHECK(g.patches[0].cube == std::vector<Literal>{{2, true}});
  CHECK_FALSE(g.fell_back);

  // x1 <-> y2 with y1 irrelevant and psi = 0: y1 drops, y2 stays.
  const VarId x1 = 1, y1 = 2, y2 = 3;
  CircuitBuilder b;
  const Spec s2 = spec_of(b.build(b.make_iff(b.literal(x1), b.literal(y2))), {x1}, {y1, y2});
  const SkolemVector zero = vector_of({{x1, Circuit::constant(false)}});
  Counterexample d;
  d.inputs.set(y1, false);
  d.inputs.set(y2, true);
  d.witness.set(x1, true);
  d.current.set(x1, false);
  const Generalization h = generalize_cube(s2, zero, d);
  REQUIRE(h.patches.size() == 1);
  CHECK(h.patches[0].cube == std::vector<Literal>{{y2, true}});
  CHECK(h.oracle_calls == 2);

  // An exhausted budget falls back to the minterm.
  Budget none;
  none.conflicts = 0;
  none.deadline = Clock::now();
  const Generalization fb = generalize_cube(s2, zero, d, none);
  CHECK(fb.fell_back);
  REQUIRE(fb.patches.size() == 1);
  CHECK(fb.patches[0].cube.size() == 2);
}

TEST_CASE("patch application") {
  const VarId x1 = 1, y1 = 2, y2 = 3;
  const std::vector<VarId> ys{y1, y2};
  SkolemVector v = vector_of({{x1, Circuit::constant(false)}});
  const SkolemVector all = apply_patch(v, {x1, {}, true});
  CHECK(all.entry(x1).final->constant_value() == true);
  CHECK(all.entry(x1).provenance == Provenance::Refined);

  const SkolemVector m = apply_patch(v, {x1, {{y1, true}, {y2, false}}, true});
  CHECK(oracle::equivalent(oracle::fn_of(*m.entry(x1).final),
                           [&](const Assignment& a) { return a.get(y1) && !a.get(y2); }, ys));

  // The triggering model stops satisfying the rebuilt error formula.
  const Spec one = gen_equality_spec(1);
  const SkolemVector wrong = vector_of({{1, Circuit::literal(2, false)}});
  const ErrorFormula eps = build_error_formula(one, wrong.finals());
  Assignment model;
  model.set(2, true);
  model.set(eps.primed.at(1), true);
  model.set(1, false);
  REQUIRE(eps.circuit.evaluate(model));
  const SkolemVector fixed = apply_patch(wrong, {1, {{2, true}}, true});
  const ErrorFormula again = build_error_formula(one, fixed.finals());
  CHECK(again.primed == eps.primed);
  CHECK_FALSE(again.circuit.evaluate(model));
  CHECK_THROWS_AS(apply_patch(SkolemVector{}, {1, {}, true}), std::out_of_range);
}

TEST_CASE("cegar examples") {
  const Spec one = gen_equality_spec(1);
  const CegarResult r = cegar_loop(one, vector_of({{1, Circuit::literal(2, false)}}));
  REQUIRE(r.status == CegarStatus::Done);
  CHECK(r.rounds.size() == 1);
  CHECK(oracle::skolem_correct(one, r.skolem.finals()));

  // Equality n = 3 with every psi negated: all 8 inputs are counterexamples.
  const Spec eq = gen_equality_spec(3);
  std::vector<std::pair<VarId, Circuit>> neg;
  for (std::size_t i = 0; i < 3; ++i) neg.emplace_back(eq.outputs[i], Circuit::literal(eq.inputs[i], false));
  REQUIRE(oracle::bad_inputs(eq, vector_of(neg).finals()) == 8);
  CegarOptions opts;
  opts.samples_per_round = 4;
  opts.seed = 5;
  const CegarResult k4 = cegar_loop(eq, vector_of(neg), opts);
  REQUIRE(k4.status == CegarStatus::Done);
  CHECK(k4.patches <= 8);
  CHECK(oracle::skolem_correct(eq, k4.skolem.finals()));

  // Correct input: no round at all.
  std::vector<std::pair<VarId, Circuit>> good;
  for (std::size_t i = 0; i < 3; ++i) good.emplace_back(eq.outputs[i], Circuit::literal(eq.inputs[i]));
  const CegarResult g = cegar_loop(eq, vector_of(good));
  CHECK(g.status == CegarStatus::Done);
  CHECK(g.rounds.empty());
  CHECK(g.patches == 0);

  // Out of rounds: timeout with the goodness of what is left.
  CegarOptions stop;
  stop.max_rounds = 0;
  const CegarResult t = cegar_loop(eq, vector_of(neg), stop);
  CHECK(t.status == CegarStatus::Timeout);
  REQUIRE(t.goodness);
  CHECK(t.goodness->numerator == 8);
  CHECK(t.goodness->input_bits == 3);
}

TEST_CASE("cegar on random specs that defeat phase 1") {
  std::mt19937_64 rng(53);
  int seen = 0;
  for (int iter = 0; iter < 400 && seen < 60; ++iter) {
    const std::size_t nx = 2 + rng() % 3, ny = 1 + rng() % 3;
    const auto rs = oracle::random_relational_spec(rng, nx, ny, 3 + rng() % 4);
    const Spec& spec = rs.spec;
    const Phase1Result p1 = phase1_synthesize(spec);
    if (p1.status == Phase1Status::Done) continue;
    ++seen;

    // Patch by patch: every generalized patch shrinks the bad set and
    // leaves inputs outside its cube alone.
    SkolemVector v = p1.skolem;
    std::uint64_t bad = oracle::bad_inputs(spec, v.finals());
    REQUIRE(bad > 0);
    for (int step = 0; bad > 0; ++step) {
      REQUIRE(step < (1 << ny));
      const ErrorFormula eps = build_error_formula(spec, v.finals());
      const SatOutcome s = solve(encode(eps.circuit, spec.inputs));
      REQUIRE(s.sat());
      const Counterexample cex = extract_counterexample(spec, eps, *s.model);
      const Generalization g = generalize_cube(spec, v, cex);
      REQUIRE_FALSE(g.patches.empty());
      const auto before = v.finals();
      for (const RefinementPatch& p : g.patches) v = apply_patch(std::move(v), p);
      const auto after = v.finals();
      const std::vector<Literal>& cube = g.patches.front().cube;
      oracle::for_each_point(spec.inputs, [&](const Assignment& y) {
        bool inside = true;
        for (Literal l : cube) inside = inside && y.get(l.var) == l.positive;
        if (inside) return;
        for (VarId x : spec.outputs) REQUIRE(before.at(x).evaluate(y) == after.at(x).evaluate(y));
      });
      const std::uint64_t now = oracle::bad_inputs(spec, after);
      REQUIRE(now < bad);
      bad = now;
    }

    CegarOptions opts;
    opts.seed = static_cast<std::uint64_t>(iter);
    opts.track_goodness = true;
    const CegarResult r = cegar_loop(spec, p1.skolem, opts);
    REQUIRE(r.status == CegarStatus::Done);
    REQUIRE(r.rounds.size() <= (std::size_t{1} << ny));
    REQUIRE(oracle::skolem_correct(spec, r.skolem.finals()));
    for (std::size_t k = 0; k + 1 < r.rounds.size(); ++k)
      REQUIRE(*r.rounds[k + 1].goodness_numerator < *r.rounds[k].goodness_numerator);
  }
  CHECK(seen >= 30);
}
