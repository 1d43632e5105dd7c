#include <catch2/catch_amalgamated.hpp>

#include "gfodd/eval.hpp"
#include "gfodd/validate.hpp"
#include "support/random_gen.hpp"

using namespace gfodd;

namespace {

// max x . P(x) ? 1 : 0
Gfodd exists_p() {
  Gfodd g;
  g.signature = Signature({{"P", 1}}, {});
  NodeId one = g.diagram.add_leaf(Rational(1));
  NodeId zero = g.diagram.add_leaf(Rational(0));
  g.diagram.root = g.diagram.add_internal(PredicateAtom{"P", {Variable{"x"}}}, one, zero);
  g.aggregation.entries = {{"x", AggOp::max}};
  return g;
}

// Q(x,y) ? 1 : 0 with a caller-chosen aggregation list.
Gfodd q_matrix(std::vector<AggEntry> agg) {
  Gfodd g;
  g.signature = Signature({{"Q", 2}}, {});
  NodeId one = g.diagram.add_leaf(Rational(1));
  NodeId zero = g.diagram.add_leaf(Rational(0));
  g.diagram.root =
      g.diagram.add_internal(PredicateAtom{"Q", {Variable{"x"}, Variable{"y"}}}, one, zero);
  g.aggregation.entries = std::move(agg);
  return g;
}

}  // namespace

TEST_CASE("eval_map aggregates max and min over one variable") {
  Gfodd g = exists_p();
  Interpretation some(g.signature, 2);
  some.add_fact("P", {1});
  Interpretation none(g.signature, 2);
  Interpretation all(g.signature, 2);
  all.add_fact("P", {0});
  all.add_fact("P", {1});

  CHECK(eval_map(g, some) == Rational(1));
  CHECK(eval_map(g, none) == Rational(0));

  g.aggregation.entries[0].op = AggOp::min;
  CHECK(eval_map(g, some) == Rational(0));
  CHECK(eval_map(g, all) == Rational(1));
}

TEST_CASE("aggregation nests with the first entry outermost") {
  // Q = {(0,1), (1,0)}: every row has a one, no row is all ones.
  Interpretation interp(Signature({{"Q", 2}}, {}), 2);
  interp.add_fact("Q", {0, 1});
  interp.add_fact("Q", {1, 0});

  // min over rows of max over columns: every row has a hit -> 1.
  CHECK(eval_map(q_matrix({{"x", AggOp::min}, {"y", AggOp::max}}), interp) == Rational(1));
  // max over rows of min over columns: no all-ones row -> 0.
  CHECK(eval_map(q_matrix({{"x", AggOp::max}, {"y", AggOp::min}}), interp) == Rational(0));
  // Swapping the variable roles transposes the matrix; here Q is symmetric.
  CHECK(eval_map(q_matrix({{"y", AggOp::min}, {"x", AggOp::max}}), interp) == Rational(1));
}

TEST_CASE("eval_valuation selects a single path") {
  Gfodd g = q_matrix({{"x", AggOp::max}, {"y", AggOp::min}});
  Interpretation interp(g.signature, 3);
  interp.add_fact("Q", {2, 1});

  CHECK(eval_valuation(g, interp, {{"x", 2}, {"y", 1}}) == Rational(1));
  CHECK(eval_valuation(g, interp, {{"x", 1}, {"y", 2}}) == Rational(0));
  // Extra bindings are allowed, missing or out-of-range ones are not.
  CHECK(eval_valuation(g, interp, {{"x", 2}, {"y", 1}, {"z", 0}}) == Rational(1));
  CHECK_THROWS(eval_valuation(g, interp, {{"x", 2}}));
  CHECK_THROWS(eval_valuation(g, interp, {{"x", 2}, {"y", 9}}));
}

TEST_CASE("constants and ground diagrams evaluate without aggregation") {
  Gfodd g;
  g.signature = Signature({{"P", 1}}, {"c"});
  NodeId two = g.diagram.add_leaf(Rational(2));
  NodeId half = g.diagram.add_leaf(Rational(1, 2));
  g.diagram.root = g.diagram.add_internal(PredicateAtom{"P", {Constant{"c"}}}, two, half);

  Interpretation interp(g.signature, 3);
  interp.set_constant("c", 2);
  interp.add_fact("P", {2});
  CHECK(eval_map(g, interp) == Rational(2));

  interp.set_constant("c", 0);
  CHECK(eval_map(g, interp) == Rational(1, 2));
}

TEST_CASE("eval rejects diagrams that do not fit the interpretation") {
  Gfodd g = exists_p();

  // Unaggregated diagram variable.
  g.aggregation.entries.clear();
  Interpretation interp(g.signature, 2);
  CHECK_THROWS(eval_map(g, interp));

  // Interpretation over a signature without the needed predicate.
  Gfodd h = exists_p();
  Interpretation other(Signature({{"R", 1}}, {}), 2);
  CHECK_THROWS(eval_map(h, other));
}

TEST_CASE("short-circuit, parallel and sweep evaluation agree") {
  testgen::Rng rng(20260816);
  const Signature sig = testgen::test_signature();
  const AtomOrder order = AtomOrder::defaults(sig);

  for (int trial = 0; trial < 40; ++trial) {
    Gfodd g = testgen::random_sorted_gfodd(rng, sig, order);
    Interpretation interp = testgen::random_interpretation(rng, sig, testgen::pick(rng, 1, 3));

    const Rational plain = eval_map(g, interp);
    EvalConfig no_shortcut;
    no_shortcut.short_circuit = false;
    CHECK(eval_map(g, interp, no_shortcut) == plain);
    EvalConfig parallel;
    parallel.parallel_outer = true;
    CHECK(eval_map(g, interp, parallel) == plain);
    CHECK(map_by_sweep(g, interp) == plain);

    // model_evaluation is the decision form of the same value.
    CHECK(model_evaluation(g, interp, plain));
    CHECK_FALSE(model_evaluation(g, interp, plain + Rational(1)));
  }
}

TEST_CASE("small witnesses preserve the map value") {
  SECTION("hand instance keeps only the path objects") {
    Gfodd g = q_matrix({{"x", AggOp::max}, {"y", AggOp::max}});
    Interpretation interp(g.signature, 5);
    interp.add_fact("Q", {3, 4});

    Witness w = extract_small_witness(g, interp);
    CHECK(w.value == Rational(1));
    CHECK(w.restricted.domain_size() == 2);
    CHECK(eval_map(g, w.restricted) == Rational(1));
    CHECK(eval_valuation(g, w.restricted, w.valuation) == Rational(1));
  }

  SECTION("all-zero map shrinks to a single object") {
    Gfodd g = exists_p();
    Interpretation interp(g.signature, 4);
    Witness w = extract_small_witness(g, interp);
    CHECK(w.value == Rational(0));
    CHECK(w.restricted.domain_size() == 1);
    CHECK(eval_map(g, w.restricted) == Rational(0));
  }

  SECTION("min aggregation is rejected") {
    Gfodd g = exists_p();
    g.aggregation.entries[0].op = AggOp::min;
    Interpretation interp(g.signature, 2);
    CHECK_THROWS(extract_small_witness(g, interp));
  }

  SECTION("random all-max diagrams shrink within the object bound") {
    testgen::Rng rng(7);
    const Signature sig = testgen::test_signature();
    const AtomOrder order = AtomOrder::defaults(sig);
    testgen::RandomDiagramSpec spec;
    spec.all_max = true;

    for (int trial = 0; trial < 30; ++trial) {
      Gfodd g = testgen::random_sorted_gfodd(rng, sig, order, spec);
      Interpretation interp = testgen::random_interpretation(rng, sig, testgen::pick(rng, 1, 5));
      Witness w = extract_small_witness(g, interp);
      CHECK(w.value == eval_map(g, interp));
      CHECK(w.restricted.domain_size() <=
            g.aggregation.size() + g.signature.constants().size());
      CHECK(w.restricted.domain_size() >= 1);
      CHECK(eval_map(g, w.restricted) == w.value);
      CHECK(eval_valuation(g, w.restricted, w.valuation) == w.value);
    }
  }
}
