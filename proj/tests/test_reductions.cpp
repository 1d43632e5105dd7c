#include <catch2/catch_amalgamated.hpp>

#include "gfodd/decide.hpp"
#include "gfodd/oracles.hpp"
#include "gfodd/reductions.hpp"
#include "gfodd/validate.hpp"
#include "support/random_gen.hpp"

using namespace gfodd;

TEST_CASE("brute-force oracles on hand instances") {
  SECTION("cnf") {
    Cnf taut{1, {{{1, -1, 1}}}};
    CHECK(oracle::cnf_sat(taut));
    Cnf contra{1, {{{1, 1, 1}}, {{-1, -1, -1}}}};
    CHECK_FALSE(oracle::cnf_sat(contra));
  }

  SECTION("qbf") {
    // exists x . x
    Qbf e{{{Quantifier::exists, {1}}}, {1, {{{1, 1, 1}}}}};
    CHECK(oracle::qbf_eval(e));
    // forall x . x
    Qbf a{{{Quantifier::forall, {1}}}, {1, {{{1, 1, 1}}}}};
    CHECK_FALSE(oracle::qbf_eval(a));
    // forall x exists y . (x | y) & (~x | ~y), i.e. y = ~x
    Qbf ae{{{Quantifier::forall, {1}}, {Quantifier::exists, {2}}},
           {2, {{{1, 2, 2}}, {{-1, -2, -2}}}}};
    CHECK(oracle::qbf_eval(ae));
    // exists y forall x . same matrix is false
    Qbf ea{{{Quantifier::exists, {2}}, {Quantifier::forall, {1}}},
           {2, {{{1, 2, 2}}, {{-1, -2, -2}}}}};
    CHECK_FALSE(oracle::qbf_eval(ea));
  }

  SECTION("hamiltonian path") {
    DiGraph line;
    line.vertices = 3;
    line.add_edge(0, 1);
    line.add_edge(1, 2);
    CHECK(oracle::hampath(line));
    DiGraph star;
    star.vertices = 3;
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    CHECK_FALSE(oracle::hampath(star));
  }

  SECTION("arrowing") {
    UGraph k3 = UGraph::complete(3);
    UGraph edge = UGraph::single_edge();
    CHECK(oracle::arrows(k3, edge, edge));
    CHECK_FALSE(oracle::arrows(edge, k3, k3));
    // K6 -> (K3, K3) is the classic Ramsey fact; K5 does not arrow.
    CHECK(oracle::arrows(UGraph::complete(6), k3, k3));
    CHECK_FALSE(oracle::arrows(UGraph::complete(5), k3, k3));
  }
}

TEST_CASE("hampath reduction matches the oracle exhaustively") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = 0; v < n; ++v)
        if (u != v) slots.push_back({u, v});

    for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
      DiGraph g;
      g.vertices = n;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((mask >> i) & 1) g.add_edge(slots[i].first, slots[i].second);

      HampathInstance inst = gen_hampath(g);
      REQUIRE(validate_gfodd(inst.gfodd).empty());
      REQUIRE(is_sorted(inst.gfodd.diagram, inst.order));
      CHECK(inst.gfodd.is_fodd());
      const bool expected = oracle::hampath(g);
      CHECK(eval_map(inst.gfodd, inst.interpretation) == Rational(expected ? 1 : 0));
    }
  }
}

TEST_CASE("hampath reduction on random four-vertex graphs") {
  testgen::Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    DiGraph g = testgen::random_digraph(rng, 4, 0.4);
    HampathInstance inst = gen_hampath(g);
    CHECK(eval_map(inst.gfodd, inst.interpretation) ==
          Rational(oracle::hampath(g) ? 1 : 0));
  }
}

TEST_CASE("the graph interpretation mirrors the edge set") {
  DiGraph g;
  g.vertices = 3;
  g.add_edge(0, 2);
  g.add_edge(2, 1);
  Signature sig({{"E", 2}}, {});
  Interpretation interp = digraph_interpretation(g, sig);
  CHECK(interp.domain_size() == 3);
  CHECK(interp.holds("E", {0, 2}));
  CHECK(interp.holds("E", {2, 1}));
  CHECK_FALSE(interp.holds("E", {2, 0}));
  CHECK(interp.extensions().at("E").size() == 2);
}

TEST_CASE("3sat reduction agrees with the oracle") {
  SearchBudget budget;
  budget.max_objects = 2;

  SECTION("hand instances") {
    Cnf sat{3, {{{1, 2, 3}}, {{-1, -2, -3}}}};
    SatInstance inst = gen_3sat(sat);
    REQUIRE(validate_gfodd(inst.gfodd).empty());
    REQUIRE(is_sorted(inst.gfodd.diagram, inst.order));
    CHECK(inst.gfodd.is_fodd());
    CHECK(inst.gfodd.has_binary_leaves());
    CHECK(eval_map(inst.gfodd, inst.interpretation) == Rational(1));

    DecisionOutcome out = gfodd_sat(inst.gfodd, budget);
    CHECK(out.answer == Answer::yes);
    REQUIRE(out.witness.has_value());
    CHECK(eval_map(inst.gfodd, *out.witness) == Rational(1));

    Cnf unsat{1, {{{1, 1, 1}}, {{-1, -1, -1}}}};
    SatInstance bad = gen_3sat(unsat);
    CHECK(eval_map(bad.gfodd, bad.interpretation) == Rational(0));
    CHECK(gfodd_sat(bad.gfodd, budget).answer == Answer::no);
  }

  SECTION("sampled small corpus") {
    testgen::Rng rng(5150);
    auto corpus = testgen::all_small_cnfs();
    for (int trial = 0; trial < 60; ++trial) {
      const Cnf& f = corpus[testgen::pick(rng, 0, corpus.size() - 1)];
      SatInstance inst = gen_3sat(f);
      CHECK(is_sorted(inst.gfodd.diagram, inst.order));
      if (oracle::cnf_sat(f)) {
        CHECK(eval_map(inst.gfodd, inst.interpretation) == Rational(1));
      } else {
        CHECK(gfodd_sat(inst.gfodd, budget).answer == Answer::no);
      }
    }
  }
}

TEST_CASE("qbf evaluation reduction computes the formula value") {
  SECTION("hand instances pin the interpretation shape") {
    Qbf ae{{{Quantifier::forall, {1}}, {Quantifier::exists, {2}}},
           {2, {{{1, 2, 2}}, {{-1, -2, -2}}}}};
    QbfEvalInstance inst = gen_qbf_eval(ae);
    REQUIRE(validate_gfodd(inst.gfodd).empty());
    REQUIRE(is_sorted(inst.gfodd.diagram, inst.order));
    CHECK(inst.interpretation.domain_size() == 2);
    CHECK(inst.interpretation.holds("P_T", {1}));
    CHECK_FALSE(inst.interpretation.holds("P_T", {0}));
    CHECK(inst.gfodd.aggregation.alternation_depth() == 2);
    CHECK(eval_map(inst.gfodd, inst.interpretation) == Rational(1));

    Qbf ea{{{Quantifier::exists, {2}}, {Quantifier::forall, {1}}},
           {2, {{{1, 2, 2}}, {{-1, -2, -2}}}}};
    QbfEvalInstance inst2 = gen_qbf_eval(ea);
    CHECK(eval_map(inst2.gfodd, inst2.interpretation) == Rational(0));
  }

  SECTION("random prefixes and matrices") {
    testgen::Rng rng(606);
    for (int trial = 0; trial < 25; ++trial) {
      Qbf q = testgen::random_qbf(rng, 6, 2, 4, 3, 0);
      QbfEvalInstance inst = gen_qbf_eval(q);
      CHECK(validate_gfodd(inst.gfodd).empty());
      CHECK(is_sorted(inst.gfodd.diagram, inst.order));
      CHECK(inst.gfodd.aggregation.alternation_depth() == q.prefix.size());
      CHECK(eval_map(inst.gfodd, inst.interpretation) ==
            Rational(oracle::qbf_eval(q) ? 1 : 0));
    }
  }
}

TEST_CASE("qbf satisfiability reduction pins witnesses to two objects") {
  SearchBudget budget;
  budget.max_objects = 3;

  SECTION("prefix shape is enforced") {
    Qbf a{{{Quantifier::forall, {1}}, {Quantifier::exists, {2}}},
          {2, {{{1, 2, 2}}}}};
    CHECK_THROWS(gen_qbf_sat(a));
    Qbf single{{{Quantifier::exists, {1}}}, {1, {{{1, 1, 1}}}}};
    CHECK_THROWS(gen_qbf_sat(single));
  }

  SECTION("random existential-leading prefixes") {
    testgen::Rng rng(777);
    for (int trial = 0; trial < 8; ++trial) {
      Qbf q = testgen::random_qbf(rng, 4, 2, 3, 3, +1);
      SatInstance inst = gen_qbf_sat(q);
      CHECK(validate_gfodd(inst.gfodd).empty());
      CHECK(inst.gfodd.has_binary_leaves());
      CHECK(inst.recommended_max_objects == 3);

      DecisionOutcome out = gfodd_sat(inst.gfodd, budget);
      const bool expected = oracle::qbf_eval(q);
      CHECK((out.answer == Answer::yes) == expected);
      if (out.answer == Answer::yes) {
        REQUIRE(out.witness.has_value());
        CHECK(out.witness->domain_size() == 2);
        CHECK(out.witness->extensions().at("P_T").size() == 1);
      }
    }
  }
}

TEST_CASE("qbf equivalence reduction drops one alternation") {
  SearchBudget budget;
  budget.max_objects = 2;

  SECTION("prefix shape is enforced") {
    Qbf e{{{Quantifier::exists, {1}}, {Quantifier::forall, {2}},
           {Quantifier::exists, {3}}},
          {3, {{{1, 2, 3}}}}};
    CHECK_THROWS(gen_qbf_equiv_simple(e));
    Qbf two{{{Quantifier::forall, {1}}, {Quantifier::exists, {2}}},
            {2, {{{1, 2, 2}}}}};
    CHECK_THROWS(gen_qbf_equiv_simple(two));
  }

  SECTION("random universal-leading three-block prefixes") {
    testgen::Rng rng(888);
    for (int trial = 0; trial < 8; ++trial) {
      Qbf q = testgen::random_qbf(rng, 4, 3, 3, 3, -1);
      EquivInstance inst = gen_qbf_equiv_simple(q);
      CHECK(validate_gfodd(inst.left).empty());
      CHECK(validate_gfodd(inst.right).empty());
      CHECK(is_sorted(inst.left.diagram, inst.order));
      // One alternation less than the formula: the leading block moved into
      // the interpretation.
      CHECK(inst.right.aggregation.alternation_depth() == q.prefix.size() - 1);

      DecisionOutcome out = gfodd_equiv(inst.left, inst.right, budget);
      const bool expected = oracle::qbf_eval(q);
      CHECK((out.answer == Answer::yes) == expected);
      if (out.answer == Answer::no) {
        REQUIRE(out.counterexample.has_value());
        const Counterexample& cex = *out.counterexample;
        CHECK(cex.value1 != cex.value2);
        CHECK(eval_map(inst.left, cex.interpretation) == cex.value1);
        CHECK(eval_map(inst.right, cex.interpretation) == cex.value2);
      }
    }
  }
}

TEST_CASE("arrowing reduction and its restricted check") {
  UGraph k3 = UGraph::complete(3);
  UGraph edge = UGraph::single_edge();

  SECTION("generated pair is well formed") {
    ArrowingInstance inst = gen_arrowing(edge, k3, k3);
    CHECK(validate_gfodd(inst.left).empty());
    CHECK(validate_gfodd(inst.right).empty());
    CHECK(is_sorted(inst.left.diagram, inst.order));
    CHECK(is_sorted(inst.right.diagram, inst.order));
    CHECK(inst.left.is_fodd());

    auto shape = verify_edge_removal_shape(inst.left, inst.right);
    REQUIRE(shape.has_value());
    CHECK(shape->node == inst.redirected_node);
    CHECK_FALSE(shape->when_true);

    // The right diagram's 1 leaf keeps exactly two incoming edges.
    const Diagram& d = inst.right.diagram;
    std::size_t ones = 0;
    for (NodeId id : d.reachable()) {
      if (d.is_leaf(id)) continue;
      for (NodeId child : {d.internal(id).when_true, d.internal(id).when_false})
        if (d.is_leaf(child) && d.leaf(child).value == Rational(1)) ++ones;
    }
    CHECK(ones == 2);
  }

  SECTION("restricted check matches the oracle") {
    ArrowingCheck yes = arrowing_restricted_check(k3, edge, edge);
    CHECK(yes.arrows);
    CHECK_FALSE(yes.counterexample.has_value());

    ArrowingCheck no = arrowing_restricted_check(edge, k3, k3);
    CHECK_FALSE(no.arrows);
    REQUIRE(no.counterexample.has_value());
    CHECK(no.left_value != no.right_value);

    // A path of two edges cannot hold a triangle in either color.
    UGraph path;
    path.vertices = 3;
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_FALSE(oracle::arrows(path, k3, k3));
    CHECK_FALSE(arrowing_restricted_check(path, k3, k3).arrows);
  }

  SECTION("bounded equivalence finds the disagreement") {
    ArrowingInstance inst = gen_arrowing(edge, k3, k3);
    SearchBudget budget;
    budget.max_objects = 2;
    DecisionOutcome out = gfodd_equiv(inst.left, inst.right, budget);
    CHECK(out.answer == Answer::no);
    REQUIRE(out.counterexample.has_value());
  }

  SECTION("degenerate inputs are rejected") {
    UGraph dot;
    dot.vertices = 1;
    CHECK_THROWS(gen_arrowing(dot, k3, k3));
    UGraph empty;
    empty.vertices = 3;
    CHECK_THROWS(gen_arrowing(k3, empty, k3));
  }
}

TEST_CASE("value instances add two satisfiability diagrams") {
  Cnf sat{3, {{{1, 2, 3}}}};
  Cnf unsat{1, {{{1, 1, 1}}, {{-1, -1, -1}}}};

  SearchBudget budget;
  budget.max_objects = 2;

  SECTION("one satisfiable side reaches 1 but not 2") {
    ValueInstance inst = gen_value_instance(sat, unsat);
    CHECK(validate_gfodd(inst.gfodd).empty());
    CHECK(inst.target == Rational(1));
    CHECK(gfodd_value(inst.gfodd, Rational(1), budget).answer == Answer::yes);
    CHECK(gfodd_value(inst.gfodd, Rational(2), budget).answer == Answer::no);
  }

  SECTION("two satisfiable sides reach 2 on one witness") {
    ValueInstance inst = gen_value_instance(sat, sat);
    DecisionOutcome out = gfodd_value(inst.gfodd, Rational(2), budget);
    CHECK(out.answer == Answer::yes);
    REQUIRE(out.witness.has_value());
    CHECK(eval_map(inst.gfodd, *out.witness) == Rational(2));
  }

  SECTION("no satisfiable side never leaves 0") {
    ValueInstance inst = gen_value_instance(unsat, unsat);
    CHECK(gfodd_value(inst.gfodd, Rational(1), budget).answer == Answer::no);
  }
}
