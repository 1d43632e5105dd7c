#pragma once

// Generators turning source problems into diagrams: Hamiltonian path into
// evaluation, 3SAT into satisfiability, quantified boolean formulas into
// evaluation, satisfiability, and equivalence, graph arrowing into
// equivalence with the edge-removal shape, and a summed pair for the value
// question. Each generator returns the atom order its layout was built
// for; layouts are sorted under that order except where noted.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfodd/combine.hpp"
#include "gfodd/diagram.hpp"
#include "gfodd/eval.hpp"
#include "gfodd/instances.hpp"
#include "gfodd/interpretation.hpp"

namespace gfodd {

namespace detail {

inline Atom pred1(const std::string& p, const std::string& x) {
  return PredicateAtom{p, {Variable{x}}};
}
inline Atom pred2(const std::string& p, const std::string& x, const std::string& y) {
  return PredicateAtom{p, {Variable{x}, Variable{y}}};
}
inline Atom vareq(const std::string& a, const std::string& b) {
  return EqualityAtom{Variable{a}, Variable{b}};
}
inline std::string occ_name(std::size_t clause, std::size_t pos) {
  return "u" + std::to_string(clause) + "_" + std::to_string(pos);
}

// Clause section: literals are tried in position order; a satisfied
// literal jumps to the next clause, a clause with no satisfied literal
// falls to the 0 leaf, and the last clause exits to `done`. atom_for maps
// (clause, position, literal) to the atom testing that literal.
template <typename AtomFor>
NodeId clause_chain(DiagramBuilder& b, const Cnf& f, NodeId done, NodeId zero, AtomFor&& atom_for) {
  NodeId next = done;
  for (std::size_t j = f.clauses.size(); j > 0; --j) {
    NodeId cur = zero;
    const auto& lits = f.clauses[j - 1].literals;
    for (std::size_t k = lits.size(); k > 0; --k) {
      Literal lit = lits[k - 1];
      Atom a = atom_for(j, k, lit);
      cur = lit > 0 ? b.internal(a, next, cur) : b.internal(a, cur, next);
    }
    next = cur;
  }
  return next;
}

// Occurrence positions (clause, position), both 1-based, per variable.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occurrences(const Cnf& f) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occ(f.variables + 1);
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      Literal lit = f.clauses[j].literals[k];
      occ[static_cast<std::size_t>(std::abs(lit))].push_back({j + 1, k + 1});
    }
  return occ;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hamiltonian path
// ---------------------------------------------------------------------------

struct HampathInstance {
  Gfodd gfodd;
  AtomOrder order;
  Interpretation interpretation;
};

inline Interpretation digraph_interpretation(const DiGraph& g, const Signature& sig) {
  Interpretation interp(sig, g.vertices);
  for (const auto& [u, v] : g.edges) interp.add_fact("E", {u, v});
  return interp;
}

// All-max diagram whose map value on the graph interpretation is 1 exactly
// when the graph has a Hamiltonian path: an edge chain over v1..vn
// followed by pairwise distinctness tests.
inline HampathInstance gen_hampath(const DiGraph& g) {
  if (g.vertices == 0) throw std::invalid_argument("hampath: empty graph");
  const std::uint32_t n = g.vertices;
  auto vn = [](std::uint32_t i) { return "v" + std::to_string(i); };

  Signature sig({{"E", 2}}, {});
  DiagramBuilder b(true);
  NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));

  NodeId root;
  if (n == 1) {
    root = b.internal(detail::vareq(vn(1), vn(1)), one, zero);
  } else {
    NodeId cur = one;
    for (std::uint32_t i = n - 1; i >= 1; --i)
      for (std::uint32_t j = n; j > i; --j)
        cur = b.internal(detail::vareq(vn(i), vn(j)), zero, cur);
    for (std::uint32_t i = n - 1; i >= 1; --i)
      cur = b.internal(detail::pred2("E", vn(i), vn(i + 1)), cur, zero);
    root = cur;
  }

  HampathInstance inst{Gfodd{}, AtomOrder{}, digraph_interpretation(g, sig)};
  inst.gfodd.signature = sig;
  for (std::uint32_t i = 1; i <= n; ++i)
    inst.gfodd.aggregation.entries.push_back({vn(i), AggOp::max});
  inst.gfodd.diagram = b.take(root);

  inst.order.predicate_rank = {"E", "="};
  for (std::uint32_t i = 1; i <= n; ++i) inst.order.variable_rank.push_back(vn(i));
  return inst;
}

// ---------------------------------------------------------------------------
// 3SAT satisfiability
// ---------------------------------------------------------------------------

struct SatInstance {
  Gfodd gfodd;
  AtomOrder order;
  Interpretation interpretation;  // two objects, P_T true on exactly one
  std::uint32_t recommended_max_objects = 2;
};

// All-max diagram that is satisfiable (some interpretation has map value 1)
// exactly when the formula is. Two aggregation variables y1, y2 must take
// objects with different P_T values; each formula variable gets a carrier
// w_i restricted to {y1, y2}; each literal occurrence gets its own u_j_k
// pinned to its carrier, so clause tests P_T(u_j_k) stay sorted.
inline SatInstance gen_3sat(const Cnf& f) {
  f.check();
  const std::uint32_t nv = f.variables;
  auto wn = [](std::uint32_t i) { return "w" + std::to_string(i); };

  DiagramBuilder b(true);
  NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));

  NodeId clauses = detail::clause_chain(b, f, one, zero,
                                        [&](std::size_t j, std::size_t k, Literal) {
                                          return detail::pred1("P_T", detail::occ_name(j, k));
                                        });

  // Truth objects must disagree on P_T.
  NodeId g2a = b.internal(detail::pred1("P_T", "y2"), zero, clauses);
  NodeId g2b = b.internal(detail::pred1("P_T", "y2"), clauses, zero);
  NodeId after = b.internal(detail::pred1("P_T", "y1"), g2a, g2b);

  auto occ = detail::occurrences(f);
  for (std::uint32_t i = nv; i >= 1; --i) {
    NodeId c = after;
    const auto& os = occ[i];
    for (std::size_t t = os.size(); t > 0; --t)
      c = b.internal(detail::vareq(wn(i), detail::occ_name(os[t - 1].first, os[t - 1].second)), c,
                     zero);
    NodeId m2 = b.internal(detail::vareq(wn(i), "y2"), c, zero);
    after = b.internal(detail::vareq(wn(i), "y1"), c, m2);
  }

  SatInstance inst;
  inst.gfodd.signature = Signature({{"P_T", 1}}, {});
  inst.interpretation = Interpretation(inst.gfodd.signature, 2);
  inst.interpretation.add_fact("P_T", {1});
  auto add = [&](const std::string& name) {
    inst.gfodd.aggregation.entries.push_back({name, AggOp::max});
    inst.order.variable_rank.push_back(name);
  };
  add("y1");
  add("y2");
  for (std::uint32_t i = 1; i <= nv; ++i) add(wn(i));
  // Bind occurrence variables in the order their pinning tests appear
  // (grouped by carrier): inconsistent values then fail a partial walk
  // immediately instead of branching. All occurrences share one max block,
  // so the map value is unchanged. The name ranking stays clause-major to
  // follow the clause chain's label order.
  for (std::uint32_t i = 1; i <= nv; ++i)
    for (const auto& [j, k] : occ[i])
      inst.gfodd.aggregation.entries.push_back({detail::occ_name(j, k), AggOp::max});
  for (std::size_t j = 1; j <= f.clauses.size(); ++j)
    for (std::size_t k = 1; k <= 3; ++k) inst.order.variable_rank.push_back(detail::occ_name(j, k));
  inst.gfodd.diagram = b.take(after);
  inst.order.predicate_rank = {"=", "P_T"};
  inst.recommended_max_objects = 2;
  return inst;
}

// ---------------------------------------------------------------------------
// QBF evaluation
// ---------------------------------------------------------------------------

struct QbfEvalInstance {
  Gfodd gfodd;
  AtomOrder order;
  Interpretation interpretation;  // two objects, P_T true on exactly one
};

// Diagram whose map value on the fixed two-object interpretation equals
// the formula's truth value. Carriers w_i are aggregated max for
// existential and min for universal variables, in prefix order; occurrence
// variables join the innermost block, with consistency failures routed to
// that block's neutral value (0 for max, 1 for min).
inline QbfEvalInstance gen_qbf_eval(const Qbf& q) {
  q.check();
  const std::uint32_t nv = q.matrix.variables;
  const std::size_t m = q.matrix.clauses.size();
  auto wn = [](std::uint32_t i) { return "w" + std::to_string(i); };

  const bool inner_max = q.prefix.empty() || q.prefix.back().kind == Quantifier::exists;

  DiagramBuilder b(true);
  NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));
  NodeId fail = (m == 0 || inner_max) ? zero : one;

  NodeId after = detail::clause_chain(b, q.matrix, one, zero,
                                      [&](std::size_t j, std::size_t k, Literal) {
                                        return detail::pred1("P_T", detail::occ_name(j, k));
                                      });

  auto occ = detail::occurrences(q.matrix);
  for (std::uint32_t i = nv; i >= 1; --i) {
    const auto& os = occ[i];
    if (os.empty()) {
      after = b.internal(detail::vareq(wn(i), wn(i)), after, fail);
      continue;
    }
    NodeId c = after;
    for (std::size_t t = os.size(); t > 0; --t)
      c = b.internal(detail::vareq(wn(i), detail::occ_name(os[t - 1].first, os[t - 1].second)), c,
                     fail);
    after = c;
  }

  Signature sig({{"P_T", 1}}, {});
  QbfEvalInstance inst{Gfodd{}, AtomOrder{}, Interpretation(sig, 2)};
  inst.interpretation.add_fact("P_T", {1});
  inst.gfodd.signature = sig;
  for (const auto& block : q.prefix) {
    AggOp op = block.kind == Quantifier::exists ? AggOp::max : AggOp::min;
    for (std::uint32_t v : block.variables)
      inst.gfodd.aggregation.entries.push_back({wn(v), op});
  }
  // Occurrence variables grouped by carrier, matching the pin sections'
  // top-down order, so a partial walk cuts inconsistent values off at once.
  // They share one innermost block, so grouping does not change the value.
  const AggOp inner_op = inner_max ? AggOp::max : AggOp::min;
  for (std::uint32_t i = 1; i <= nv; ++i)
    for (const auto& [j, k] : occ[i])
      inst.gfodd.aggregation.entries.push_back({detail::occ_name(j, k), inner_op});
  inst.gfodd.diagram = b.take(after);

  inst.order.predicate_rank = {"=", "P_T"};
  for (std::uint32_t i = 1; i <= nv; ++i) inst.order.variable_rank.push_back(wn(i));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = 1; k <= 3; ++k) inst.order.variable_rank.push_back(detail::occ_name(j, k));
  return inst;
}

// ---------------------------------------------------------------------------
// QBF satisfiability
// ---------------------------------------------------------------------------

// For an existential-leading prefix with at least two blocks: a diagram
// whose bounded satisfiability (three objects suffice) matches the
// formula. A guard diagram pins any satisfying interpretation to two
// objects with P_T true on exactly one, then the evaluation diagram is
// conjoined with block-merged aggregation, keeping the alternation depth.
inline SatInstance gen_qbf_sat(const Qbf& q) {
  q.check();
  if (q.prefix.size() < 2 || q.prefix.front().kind != Quantifier::exists)
    throw std::invalid_argument("qbf-sat: prefix must be existential-leading with depth >= 2");

  QbfEvalInstance ev = gen_qbf_eval(q);

  DiagramBuilder b(true);
  NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));
  NodeId g2a = b.internal(detail::pred1("P_T", "y2"), zero, one);
  NodeId g2b = b.internal(detail::pred1("P_T", "y2"), one, zero);
  NodeId g1 = b.internal(detail::pred1("P_T", "y1"), g2a, g2b);
  NodeId e3 = b.internal(detail::vareq("z2", "z3"), g1, zero);
  NodeId e2 = b.internal(detail::vareq("z1", "z3"), g1, e3);
  NodeId e1 = b.internal(detail::vareq("z1", "z2"), g1, e2);

  Gfodd guard;
  guard.signature = ev.gfodd.signature;
  guard.aggregation.entries = {{"y1", AggOp::max},
                               {"y2", AggOp::max},
                               {"z1", AggOp::min},
                               {"z2", AggOp::min},
                               {"z3", AggOp::min}};
  guard.diagram = b.take(e1);

  AtomOrder order = ev.order;
  order.variable_rank.insert(order.variable_rank.begin(), {"y1", "y2", "z1", "z2", "z3"});

  ApplyResult r = apply(guard, ev.gfodd, BinaryOp::times, InterleavePolicy::block_merge, order);

  SatInstance inst;
  inst.gfodd = std::move(r.gfodd);
  inst.order = order;
  inst.recommended_max_objects = 3;
  return inst;
}

// ---------------------------------------------------------------------------
// QBF equivalence
// ---------------------------------------------------------------------------

struct EquivInstance {
  Gfodd left;   // guard diagram, sorted
  Gfodd right;  // guard chained with the evaluation part; sorted only up to
                // the clause section
  AtomOrder order;
  std::uint32_t recommended_max_objects = 2;
};

// For a universal-leading prefix with at least three blocks: two diagrams
// that agree on every interpretation with at most two objects exactly when
// the formula is true. The leading block's assignment lives in the
// interpretation through one unary predicate per leading variable; the
// guard accepts exactly the interpretations encoding such an assignment,
// and the right diagram additionally evaluates the remaining blocks, so
// the aggregation depth drops by one.
inline EquivInstance gen_qbf_equiv_simple(const Qbf& q) {
  q.check();
  if (q.prefix.size() < 3 || q.prefix.front().kind != Quantifier::forall)
    throw std::invalid_argument("qbf-equiv: prefix must be universal-leading with depth >= 3");

  std::vector<std::uint32_t> lead = q.prefix.front().variables;
  std::sort(lead.begin(), lead.end());
  std::set<std::uint32_t> lead_set(lead.begin(), lead.end());
  auto pxn = [](std::uint32_t i) { return "P_x" + std::to_string(i); };
  auto wn = [](std::uint32_t i) { return "w" + std::to_string(i); };

  std::vector<PredicateDecl> preds{{"P_T", 1}};
  for (std::uint32_t i : lead) preds.push_back({pxn(i), 1});
  Signature sig(preds, {});

  // Guard: at most two objects, P_T splits them, every leading predicate
  // is constant across them (so it encodes one truth value).
  auto build_guard_sections = [&](DiagramBuilder& b, NodeId exit, NodeId zero) {
    for (std::size_t t = lead.size(); t > 0; --t) {
      const std::string p = pxn(lead[t - 1]);
      NodeId q2a = b.internal(detail::pred1(p, "y2"), exit, zero);
      NodeId q2b = b.internal(detail::pred1(p, "y2"), zero, exit);
      exit = b.internal(detail::pred1(p, "y1"), q2a, q2b);
    }
    NodeId g2a = b.internal(detail::pred1("P_T", "y2"), zero, exit);
    NodeId g2b = b.internal(detail::pred1("P_T", "y2"), exit, zero);
    NodeId g1 = b.internal(detail::pred1("P_T", "y1"), g2a, g2b);
    NodeId e3 = b.internal(detail::vareq("z2", "z3"), g1, zero);
    NodeId e2 = b.internal(detail::vareq("z1", "z3"), g1, e3);
    return b.internal(detail::vareq("z1", "z2"), g1, e2);
  };

  EquivInstance inst;

  {
    DiagramBuilder b(true);
    NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));
    inst.left.signature = sig;
    inst.left.aggregation.entries = {{"y1", AggOp::max},
                                     {"y2", AggOp::max},
                                     {"z1", AggOp::min},
                                     {"z2", AggOp::min},
                                     {"z3", AggOp::min}};
    inst.left.diagram = b.take(build_guard_sections(b, one, zero));
  }

  // Right diagram: guard sections continue into the evaluation part for
  // the trailing blocks; leading-variable literals read their predicate
  // directly (constant over objects on guarded interpretations).
  const std::size_t m = q.matrix.clauses.size();
  const bool inner_max = q.prefix.back().kind == Quantifier::exists;
  std::vector<std::uint32_t> trailing;
  for (std::size_t bi = 1; bi < q.prefix.size(); ++bi)
    for (std::uint32_t v : q.prefix[bi].variables) trailing.push_back(v);
  std::sort(trailing.begin(), trailing.end());

  {
    DiagramBuilder b(true);
    NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));
    NodeId fail = (m == 0 || inner_max) ? zero : one;

    NodeId after = detail::clause_chain(
        b, q.matrix, one, zero, [&](std::size_t j, std::size_t k, Literal lit) {
          std::uint32_t v = static_cast<std::uint32_t>(std::abs(lit));
          const std::string occ = detail::occ_name(j, k);
          return lead_set.count(v) ? detail::pred1(pxn(v), occ) : detail::pred1("P_T", occ);
        });

    auto occ = detail::occurrences(q.matrix);
    for (std::size_t t = trailing.size(); t > 0; --t) {
      std::uint32_t i = trailing[t - 1];
      const auto& os = occ[i];
      if (os.empty()) {
        after = b.internal(detail::vareq(wn(i), wn(i)), after, fail);
        continue;
      }
      NodeId c = after;
      for (std::size_t s = os.size(); s > 0; --s)
        c = b.internal(detail::vareq(wn(i), detail::occ_name(os[s - 1].first, os[s - 1].second)),
                       c, fail);
      after = c;
    }

    inst.right.signature = sig;
    inst.right.diagram = b.take(build_guard_sections(b, after, zero));
  }

  AggregationList tail;
  for (std::size_t bi = 1; bi < q.prefix.size(); ++bi) {
    AggOp op = q.prefix[bi].kind == Quantifier::exists ? AggOp::max : AggOp::min;
    for (std::uint32_t v : q.prefix[bi].variables) tail.entries.push_back({wn(v), op});
  }
  // Occurrence variables share the innermost block; order within it is
  // free, so group the pinned ones by carrier in section order (partial
  // walks then cut inconsistent values off at once) and add the unpinned
  // leading-literal ones after.
  const AggOp inner_op = inner_max ? AggOp::max : AggOp::min;
  auto occ = detail::occurrences(q.matrix);
  for (std::uint32_t i : trailing)
    for (const auto& [j, k] : occ[i])
      tail.entries.push_back({detail::occ_name(j, k), inner_op});
  for (std::uint32_t i : lead)
    for (const auto& [j, k] : occ[i])
      tail.entries.push_back({detail::occ_name(j, k), inner_op});
  inst.right.aggregation = interleave(inst.left.aggregation, tail, InterleavePolicy::block_merge);

  inst.order.predicate_rank = {"=", "P_T"};
  for (std::uint32_t i : lead) inst.order.predicate_rank.push_back(pxn(i));
  inst.order.variable_rank = {"y1", "y2", "z1", "z2", "z3"};
  for (std::uint32_t i : trailing) inst.order.variable_rank.push_back(wn(i));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = 1; k <= 3; ++k) inst.order.variable_rank.push_back(detail::occ_name(j, k));
  inst.recommended_max_objects = 2;
  return inst;
}

// ---------------------------------------------------------------------------
// Graph arrowing
// ---------------------------------------------------------------------------

struct ArrowingInstance {
  Gfodd left;   // value 1 exactly when the pattern graph embeds through E_F
  Gfodd right;  // left with one dispatch edge redirected to the 0 leaf
  AtomOrder order;
  NodeId redirected_node = 0;  // the edge (redirected_node, false branch)
};

// Interpretation encoding a red/blue coloring of the pattern graph's
// edges: E_F holds both directions of every edge, E_C both directions of
// every red edge.
inline Interpretation arrowing_interpretation(
    const UGraph& f, const Signature& sig,
    const std::set<std::pair<std::uint32_t, std::uint32_t>>& red) {
  Interpretation interp(sig, f.vertices);
  for (const auto& [u, v] : f.edges) {
    interp.add_fact("E_F", {u, v});
    interp.add_fact("E_F", {v, u});
    if (red.count({u, v})) {
      interp.add_fact("E_C", {u, v});
      interp.add_fact("E_C", {v, u});
    }
  }
  return interp;
}

// Diagram pair for arrowing f -> (g, h). Both diagrams require an exact
// copy of f (distinct f_i, adjacency matching everywhere). The variables
// s and t pick a lane: s = f1 looks for an all-red copy of g inside the
// f image, s != f1 and t = f1 for an all-blue copy of h, and the remaining
// lane accepts outright in the left diagram but is cut in the right one,
// which is the single redirected edge. On coloring interpretations the two
// diagrams agree everywhere exactly when f arrows (g, h).
inline ArrowingInstance gen_arrowing(const UGraph& f, const UGraph& g, const UGraph& h) {
  if (f.vertices < 2) throw std::invalid_argument("arrowing: pattern needs two vertices");
  if (g.edges.empty() || h.edges.empty())
    throw std::invalid_argument("arrowing: both target graphs need at least one edge");
  const std::uint32_t p = f.vertices;
  auto fv = [](std::uint32_t i) { return "f" + std::to_string(i); };
  auto gv = [](std::uint32_t i) { return "g" + std::to_string(i); };
  auto hv = [](std::uint32_t i) { return "h" + std::to_string(i); };

  Signature sig({{"E_F", 2}, {"E_C", 2}}, {});
  DiagramBuilder b(true);
  NodeId one = b.leaf(Rational(1)), zero = b.leaf(Rational(0));

  // Adjacency section: every ordered pair of f variables must match the
  // pattern exactly.
  auto adjacency = [&](NodeId exit) {
    NodeId cur = exit;
    for (std::uint32_t i = p; i >= 1; --i)
      for (std::uint32_t j = p; j >= 1; --j) {
        if (i == j) continue;
        Atom a = detail::pred2("E_F", fv(i), fv(j));
        cur = f.has_edge(i - 1, j - 1) ? b.internal(a, cur, zero) : b.internal(a, zero, cur);
      }
    return cur;
  };

  auto ordered_pairs = [](const UGraph& t) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ps;
    for (const auto& [u, v] : t.edges) {
      ps.push_back({u + 1, v + 1});
      ps.push_back({v + 1, u + 1});
    }
    std::sort(ps.begin(), ps.end());
    return ps;
  };

  // Lane: map the target's vertices injectively into the f image, check
  // the target's edges through E_F, then its color through E_C.
  auto lane = [&](const UGraph& target, auto name_of, bool want_red) {
    auto pairs = ordered_pairs(target);
    NodeId cur = one;
    for (std::size_t t = pairs.size(); t > 0; --t) {
      Atom a = detail::pred2("E_C", name_of(pairs[t - 1].first), name_of(pairs[t - 1].second));
      cur = want_red ? b.internal(a, cur, zero) : b.internal(a, zero, cur);
    }
    for (std::size_t t = pairs.size(); t > 0; --t)
      cur = b.internal(
          detail::pred2("E_F", name_of(pairs[t - 1].first), name_of(pairs[t - 1].second)), cur,
          zero);
    cur = adjacency(cur);
    for (std::uint32_t k = target.vertices; k >= 1; --k) {
      NodeId uc = cur;
      for (std::uint32_t mm = k - 1; mm >= 1; --mm)
        uc = b.internal(detail::vareq(name_of(k), name_of(mm)), zero, uc);
      NodeId sel = zero;
      for (std::uint32_t i = p; i >= 1; --i)
        sel = b.internal(detail::vareq(name_of(k), fv(i)), uc, sel);
      cur = sel;
    }
    return cur;
  };

  NodeId x_entry = adjacency(one);
  NodeId h_entry = lane(h, hv, false);
  NodeId g_entry = lane(g, gv, true);
  NodeId d2 = b.internal(detail::vareq("t", fv(1)), h_entry, x_entry);
  NodeId d1 = b.internal(detail::vareq("s", fv(1)), g_entry, d2);
  NodeId cur = d1;
  for (std::uint32_t i = p - 1; i >= 1; --i)
    for (std::uint32_t j = p; j > i; --j)
      cur = b.internal(detail::vareq(fv(i), fv(j)), zero, cur);

  ArrowingInstance inst;
  inst.left.signature = sig;
  for (std::uint32_t i = 1; i <= p; ++i)
    inst.left.aggregation.entries.push_back({fv(i), AggOp::max});
  inst.left.aggregation.entries.push_back({"s", AggOp::max});
  inst.left.aggregation.entries.push_back({"t", AggOp::max});
  for (std::uint32_t i = 1; i <= g.vertices; ++i)
    inst.left.aggregation.entries.push_back({gv(i), AggOp::max});
  for (std::uint32_t i = 1; i <= h.vertices; ++i)
    inst.left.aggregation.entries.push_back({hv(i), AggOp::max});
  inst.left.diagram = b.take(cur);

  inst.right = inst.left;
  inst.right.diagram.nodes[d2] =
      InternalNode{detail::vareq("t", fv(1)), h_entry, zero};
  inst.redirected_node = d2;

  inst.order.predicate_rank = {"=", "E_F", "E_C"};
  for (std::uint32_t i = 1; i <= p; ++i) inst.order.variable_rank.push_back(fv(i));
  inst.order.variable_rank.push_back("s");
  inst.order.variable_rank.push_back("t");
  for (std::uint32_t i = 1; i <= g.vertices; ++i) inst.order.variable_rank.push_back(gv(i));
  for (std::uint32_t i = 1; i <= h.vertices; ++i) inst.order.variable_rank.push_back(hv(i));
  return inst;
}

struct ArrowingCheck {
  bool arrows = true;
  std::optional<Interpretation> counterexample;
  Rational left_value;
  Rational right_value;
};

// Decide arrowing by comparing the generated pair on every coloring
// interpretation. Agreement on all of them is exactly the arrowing
// property.
inline ArrowingCheck arrowing_restricted_check(const UGraph& f, const UGraph& g, const UGraph& h,
                                               const EvalConfig& cfg = {}) {
  ArrowingInstance inst = gen_arrowing(f, g, h);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(f.edges.begin(), f.edges.end());
  if (edges.size() > 20) throw std::invalid_argument("arrowing: too many pattern edges");
  for (std::uint64_t mask = 0; mask < (1ull << edges.size()); ++mask) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> red;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1) red.insert(edges[i]);
    Interpretation interp = arrowing_interpretation(f, inst.left.signature, red);
    Rational v1 = eval_map(inst.left, interp, cfg);
    Rational v2 = eval_map(inst.right, interp, cfg);
    if (!(v1 == v2)) return ArrowingCheck{false, interp, v1, v2};
  }
  return ArrowingCheck{true, std::nullopt, Rational(0), Rational(0)};
}

// ---------------------------------------------------------------------------
// Value decision
// ---------------------------------------------------------------------------

struct ValueInstance {
  Gfodd gfodd;
  Rational target;
  AtomOrder order;
  std::uint32_t recommended_max_objects = 2;
};

// Sum of the two satisfiability diagrams: some interpretation reaches the
// target 1 exactly when either formula is satisfiable, and reaches 2
// exactly when both are (one witness interpretation serves both sides).
inline ValueInstance gen_value_instance(const Cnf& f1, const Cnf& f2) {
  SatInstance a = gen_3sat(f1), c = gen_3sat(f2);
  AtomOrder order = a.order;
  for (const auto& name : c.order.variable_rank)
    if (std::find(order.variable_rank.begin(), order.variable_rank.end(), name) ==
        order.variable_rank.end())
      order.variable_rank.push_back(name);

  ApplyResult r = apply(a.gfodd, c.gfodd, BinaryOp::plus, InterleavePolicy::concat, order);

  ValueInstance inst;
  inst.gfodd = std::move(r.gfodd);
  inst.target = Rational(1);
  // Rank renamed variables right after the names they replaced, matching
  // the order apply combined the diagrams under.
  inst.order.predicate_rank = order.predicate_rank;
  for (const auto& name : order.variable_rank) {
    inst.order.variable_rank.push_back(name);
    auto it = r.renames.renamed.find(name);
    if (it != r.renames.renamed.end()) inst.order.variable_rank.push_back(it->second);
  }
  inst.recommended_max_objects = 2;
  return inst;
}

}  // namespace gfodd
