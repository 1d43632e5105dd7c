#include <catch2/catch_amalgamated.hpp>

#include "gfodd/eval.hpp"
#include "gfodd/io.hpp"
#include "gfodd/oracles.hpp"
#include "gfodd/reductions.hpp"
#include "gfodd/validate.hpp"
#include "support/random_gen.hpp"

using namespace gfodd;

TEST_CASE("gfodd files parse with forward references and comments") {
  const std::string text =
      "# a small decision diagram\n"
      "pred E/2\n"
      "const c1\n"
      "agg max x1, min x2\n"
      "root 0\n"
      "node 0 = E(x1,x2) ? 1 : 2\n"
      "node 1 = eq(x2,c1) ? 3 : 2\n"
      "leaf 3 = 3/2\n"
      "leaf 2 = 0\n";
  Gfodd g = parse_gfodd(text);
  CHECK(validate_gfodd(g).empty());
  CHECK(g.signature.predicates().size() == 1);
  CHECK(g.signature.constants() == std::vector<std::string>{"c1"});
  CHECK(g.aggregation.size() == 2);
  CHECK(g.aggregation.entries[1].op == AggOp::min);
  CHECK(g.diagram.leaf_values() == std::vector<Rational>{Rational(0), Rational(3, 2)});
  CHECK_FALSE(g.diagram.is_leaf(g.diagram.root));
  CHECK(atom_text(g.diagram.internal(g.diagram.root).label) == "E(x1,x2)");
}

TEST_CASE("gfodd round trip preserves structure and meaning") {
  testgen::Rng rng(2024);
  const Signature sig = testgen::test_signature();
  const AtomOrder order = AtomOrder::defaults(sig);

  for (int trial = 0; trial < 10; ++trial) {
    Gfodd g = testgen::random_sorted_gfodd(rng, sig, order);
    Gfodd back = parse_gfodd(render_gfodd(g));
    CHECK(back == g);
  }
}

TEST_CASE("gfodd parse errors carry line numbers") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    try {
      parse_gfodd(text);
      return std::string("no error");
    } catch (const std::exception& e) {
      std::string what = e.what();
      return what.find(needle) != std::string::npos ? std::string("ok")
                                                    : std::string(what);
    }
  };

  CHECK(fails_with("pred E/2\nleaf 0 = 1\nleaf 0 = 2\nroot 0\n",
                   "line 3: duplicate node id 0") == "ok");
  CHECK(fails_with("pred E/2\nnode 0 = E(x,y) ? 5 : 1\nleaf 1 = 0\nroot 0\n",
                   "line 2: edge to undefined node 5") == "ok");
  CHECK(fails_with("leaf 0 = nonsense\nroot 0\n", "line 1: bad leaf value") == "ok");
  CHECK(fails_with("node 0 = F(x) ? 1 : 1\nleaf 1 = 0\nroot 0\n",
                   "line 1: undeclared predicate F") == "ok");
  CHECK(fails_with("pred E/2\nnode 0 = E(x) ? 1 : 1\nleaf 1 = 0\nroot 0\n",
                   "line 2: predicate E expects 2 arguments") == "ok");
  CHECK(fails_with("leaf 0 = 1\n", "missing root") == "ok");
  CHECK(fails_with("leaf 0 = 1\nroot 7\n", "root refers to undefined node") == "ok");
  CHECK(fails_with("banana 1\nleaf 0 = 1\nroot 0\n", "line 1: unknown directive") == "ok");
  CHECK(fails_with("agg max x1\nleaf 0 = 1\nroot 0\n", "invalid diagram") == "ok");
}

TEST_CASE("interpretation files round trip against their signature") {
  Signature sig({{"E", 2}, {"P", 1}}, {"c1"});
  const std::string text =
      "domain 3\n"
      "const c1 = 2\n"
      "E: (0,2) (2,0)\n"
      "P: (1)\n";
  Interpretation i = parse_interpretation(text, sig);
  CHECK(i.domain_size() == 3);
  CHECK(i.constant("c1") == 2);
  CHECK(i.holds("E", {0, 2}));
  CHECK(i.holds("P", {1}));
  CHECK_FALSE(i.holds("E", {0, 1}));

  Interpretation back = parse_interpretation(render_interpretation(i), sig);
  CHECK(back == i);

  CHECK_THROWS_WITH(parse_interpretation("const c1 = 0\n", sig),
                    Catch::Matchers::ContainsSubstring("domain"));
  CHECK_THROWS_WITH(parse_interpretation("domain 2\nE: (0,5)\n", sig),
                    Catch::Matchers::ContainsSubstring("outside domain"));
  CHECK_THROWS_WITH(parse_interpretation("domain 2\nF: (0)\n", sig),
                    Catch::Matchers::ContainsSubstring("unknown predicate"));
  CHECK_THROWS_WITH(parse_interpretation("domain 0\n", sig),
                    Catch::Matchers::ContainsSubstring("positive"));
}

TEST_CASE("dimacs cnf parsing") {
  const std::string text =
      "c example\n"
      "p cnf 3 2\n"
      "1 -2 3 0\n"
      "-1 2 -3 0\n";
  Cnf f = parse_dimacs_cnf(text);
  CHECK(f.variables == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0].literals == std::array<Literal, 3>{1, -2, 3});
  CHECK(oracle::cnf_sat(f));

  // Clauses may wrap lines; the zero terminates them.
  Cnf wrapped = parse_dimacs_cnf("p cnf 3 1\n1 2\n3 0\n");
  CHECK(wrapped.clauses.size() == 1);

  CHECK_THROWS_WITH(parse_dimacs_cnf("1 2 3 0\n"),
                    Catch::Matchers::ContainsSubstring("header"));
  CHECK_THROWS_WITH(parse_dimacs_cnf("p cnf 3 1\n1 2 0\n"),
                    Catch::Matchers::ContainsSubstring("three literals"));
  CHECK_THROWS_WITH(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n"),
                    Catch::Matchers::ContainsSubstring("does not match"));
  CHECK_THROWS_WITH(parse_dimacs_cnf("p cnf 3 1\n1 2 3\n"),
                    Catch::Matchers::ContainsSubstring("unterminated"));
  CHECK_THROWS_WITH(parse_dimacs_cnf("p cnf 2 1\n1 2 9 0\n"),
                    Catch::Matchers::ContainsSubstring("out of range"));
}

TEST_CASE("qdimacs parsing builds prefixes outermost first") {
  const std::string text =
      "p cnf 3 2\n"
      "a 1 0\n"
      "e 2 3 0\n"
      "1 2 3 0\n"
      "-1 -2 -3 0\n";
  Qbf q = parse_qdimacs(text);
  REQUIRE(q.prefix.size() == 2);
  CHECK(q.prefix[0].kind == Quantifier::forall);
  CHECK(q.prefix[1].variables == std::vector<std::uint32_t>{2, 3});
  CHECK(q.block_count() == 2);
  CHECK(oracle::qbf_eval(q));

  CHECK_THROWS_WITH(parse_qdimacs("p cnf 2 1\ne 1 0\n1 1 1 0\n"),
                    Catch::Matchers::ContainsSubstring("quantified"));
  CHECK_THROWS_WITH(parse_qdimacs("p cnf 1 1\ne 1 0\n1 1 1 0\na 1 0\n"),
                    Catch::Matchers::ContainsSubstring("after clauses"));
  CHECK_THROWS_WITH(parse_qdimacs("p cnf 1 1\ne 0\n1 1 1 0\n"),
                    Catch::Matchers::ContainsSubstring("empty quantifier block"));
}

TEST_CASE("graph files parse for both directions") {
  DiGraph d = parse_digraph("nodes 3\nedge 0 1\nedge 1 0\nedge 1 2\n");
  CHECK(d.vertices == 3);
  CHECK(d.has_edge(0, 1));
  CHECK(d.has_edge(1, 0));
  CHECK_FALSE(d.has_edge(2, 1));

  UGraph u = parse_ugraph("nodes 3\nedge 2 0\nedge 0 1\n");
  CHECK(u.has_edge(0, 2));
  CHECK(u.has_edge(2, 0));
  CHECK_FALSE(u.has_edge(1, 2));

  CHECK_THROWS_WITH(parse_digraph("edge 0 1\n"),
                    Catch::Matchers::ContainsSubstring("before nodes"));
  CHECK_THROWS_WITH(parse_digraph("nodes 2\nedge 0 5\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("dot export names every reachable node") {
  DiGraph g;
  g.vertices = 2;
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  HampathInstance inst = gen_hampath(g);
  const std::string dot = export_dot(inst.gfodd);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("E(v1,v2)") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("max v1") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
}
