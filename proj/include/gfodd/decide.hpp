#pragma once

// Bounded-model decision procedures. Each procedure enumerates all
// interpretations of exact sizes 1..max_objects in the deterministic
// odometer order and answers yes, no, or budget_exhausted. A yes for sat
// and value carries a witness interpretation, a no for equivalence carries
// a counterexample; both re-evaluate to the claimed values by construction.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gfodd/enumerate.hpp"
#include "gfodd/eval.hpp"
#include "gfodd/validate.hpp"

namespace gfodd {

struct SearchBudget {
  std::uint32_t max_objects = 3;
  std::uint64_t max_interpretations = 0;  // 0 = unlimited
  std::chrono::milliseconds time_limit{0};  // zero = unlimited

  bool limited() const { return max_interpretations > 0 || time_limit.count() > 0; }
};

enum class Answer { yes, no, budget_exhausted };

inline const char* answer_name(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct Counterexample {
  Interpretation interpretation;
  Rational value1;
  Rational value2;
};

struct DecisionOutcome {
  Answer answer = Answer::no;
  std::optional<Interpretation> witness;        // sat / value: interpretation reaching the target
  std::optional<Counterexample> counterexample;  // equivalence: point of disagreement
  std::uint64_t interpretations_checked = 0;
  std::string note;
};

namespace detail {

class BudgetClock {
 public:
  explicit BudgetClock(const SearchBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  // True when another interpretation may be inspected.
  bool admit(std::uint64_t checked) {
    if (budget_.max_interpretations > 0 && checked >= budget_.max_interpretations) return false;
    if (budget_.time_limit.count() > 0) {
      // Check the clock sparsely; evaluation dominates otherwise.
      if ((checked & 0xff) == 0 &&
          std::chrono::steady_clock::now() - start_ >= budget_.time_limit)
        return false;
    }
    return true;
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
};

inline void require_valid(const Gfodd& g, const char* who) {
  auto problems = validate_gfodd(g);
  if (!problems.empty())
    throw std::invalid_argument(std::string(who) + ": invalid input: " + problems.front());
}

// Shared sweep: run check on every interpretation of sizes 1..max_objects.
// check returns true to stop with answer yes.
template <typename Check>
DecisionOutcome sweep(const Signature& sig, const SearchBudget& budget, Check&& check) {
  DecisionOutcome out;
  BudgetClock clock(budget);
  for (std::uint32_t n = 1; n <= budget.max_objects; ++n) {
    InterpretationEnumerator en(sig, n);
    while (!en.done()) {
      if (!clock.admit(out.interpretations_checked)) {
        out.answer = Answer::budget_exhausted;
        out.note = "stopped after " + std::to_string(out.interpretations_checked) +
                   " interpretations";
        return out;
      }
      Interpretation interp = en.current();
      ++out.interpretations_checked;
      if (check(interp)) {
        out.answer = Answer::yes;
        return out;
      }
      en.next();
    }
  }
  out.answer = Answer::no;
  return out;
}

}  // namespace detail

// Satisfiability of a binary-valued diagram: is there an interpretation of
// size at most max_objects whose map value is 1?
inline DecisionOutcome gfodd_sat(const Gfodd& g, const SearchBudget& budget,
                                 const EvalConfig& cfg = {}) {
  detail::require_valid(g, "sat");
  if (!g.has_binary_leaves())
    throw std::invalid_argument("sat: diagram leaves must all be 0 or 1");
  const Rational one(1);
  std::optional<Interpretation> found;
  DecisionOutcome out = detail::sweep(g.signature, budget, [&](const Interpretation& interp) {
    if (eval_map(g, interp, cfg) == one) {
      found = interp;
      return true;
    }
    return false;
  });
  out.witness = std::move(found);
  return out;
}

// Satisfiability specialized to all-max diagrams. Any satisfying
// interpretation shrinks to one over the objects named by a single
// valuation plus the constants, so searching up to
// #variables + #constants objects (at least 1) is complete and the answer
// is exact rather than bounded.
inline DecisionOutcome fodd_sat(const Gfodd& g, const EvalConfig& cfg = {}) {
  detail::require_valid(g, "sat");
  if (!g.is_fodd()) throw std::invalid_argument("fodd_sat: aggregation must be all max");
  if (!g.has_binary_leaves())
    throw std::invalid_argument("fodd_sat: diagram leaves must all be 0 or 1");
  std::uint64_t cap = g.aggregation.size() + g.signature.constants().size();
  SearchBudget budget;
  budget.max_objects = static_cast<std::uint32_t>(cap > 0 ? cap : 1);
  DecisionOutcome out = gfodd_sat(g, budget, cfg);
  out.note = "complete at " + std::to_string(budget.max_objects) + " objects";
  return out;
}

// Is there a bounded interpretation whose map value is at least v?
inline DecisionOutcome gfodd_value(const Gfodd& g, const Rational& v, const SearchBudget& budget,
                                   const EvalConfig& cfg = {}) {
  detail::require_valid(g, "value");
  std::optional<Interpretation> found;
  DecisionOutcome out = detail::sweep(g.signature, budget, [&](const Interpretation& interp) {
    if (model_evaluation(g, interp, v, cfg)) {
      found = interp;
      return true;
    }
    return false;
  });
  out.witness = std::move(found);
  return out;
}

// Do two diagrams over the same signature agree on every interpretation of
// size at most max_objects? Aggregation lists may differ; only the map
// values are compared.
inline DecisionOutcome gfodd_equiv(const Gfodd& g1, const Gfodd& g2, const SearchBudget& budget,
                                   const EvalConfig& cfg = {}) {
  detail::require_valid(g1, "equiv");
  detail::require_valid(g2, "equiv");
  if (!(g1.signature == g2.signature))
    throw std::invalid_argument("equiv: inputs must share a signature");

  std::optional<Counterexample> cex;
  DecisionOutcome out = detail::sweep(g1.signature, budget, [&](const Interpretation& interp) {
    Rational v1 = eval_map(g1, interp, cfg);
    Rational v2 = eval_map(g2, interp, cfg);
    if (!(v1 == v2)) {
      cex = Counterexample{interp, v1, v2};
      return true;
    }
    return false;
  });
  if (out.answer == Answer::yes) {
    // A hit means disagreement: flip to no and attach the counterexample.
    out.answer = Answer::no;
    out.counterexample = std::move(cex);
  } else if (out.answer == Answer::no) {
    out.answer = Answer::yes;
    out.note = "agree on all interpretations with at most " +
               std::to_string(budget.max_objects) + " objects";
  }
  return out;
}

// Shape check for the edge-removal question: g2 must be g1 with exactly one
// edge redirected to a 0 leaf. Walks the two diagrams in lockstep and
// returns the redirected edge as (node id in g1, branch) when the shape
// holds.
struct RedirectedEdge {
  NodeId node = 0;
  bool when_true = false;
};

inline std::optional<RedirectedEdge> verify_edge_removal_shape(const Gfodd& g1, const Gfodd& g2) {
  if (!(g1.signature == g2.signature)) return std::nullopt;
  if (!(g1.aggregation == g2.aggregation)) return std::nullopt;

  std::optional<RedirectedEdge> redirected;
  std::map<std::pair<NodeId, NodeId>, bool> seen;
  bool ok = true;

  std::function<void(NodeId, NodeId)> walk = [&](NodeId p, NodeId q) {
    if (!ok) return;
    auto key = std::make_pair(p, q);
    if (seen.count(key)) return;
    seen[key] = true;

    const bool p_leaf = g1.diagram.is_leaf(p), q_leaf = g2.diagram.is_leaf(q);
    if (p_leaf != q_leaf) {
      ok = false;
      return;
    }
    if (p_leaf) {
      if (!(g1.diagram.leaf(p).value == g2.diagram.leaf(q).value)) ok = false;
      return;
    }
    const auto& np = g1.diagram.internal(p);
    const auto& nq = g2.diagram.internal(q);
    if (atom_text(np.label) != atom_text(nq.label)) {
      ok = false;
      return;
    }
    auto branch = [&](NodeId cp, NodeId cq, bool is_true) {
      bool diverted = g2.diagram.is_leaf(cq) && g2.diagram.leaf(cq).value.is_zero() &&
                      !(g1.diagram.is_leaf(cp) && g1.diagram.leaf(cp).value.is_zero());
      if (diverted) {
        if (redirected) {
          ok = false;  // a second redirected edge breaks the shape
          return;
        }
        redirected = RedirectedEdge{p, is_true};
        return;  // subtree below the removed edge is not compared
      }
      walk(cp, cq);
    };
    branch(np.when_true, nq.when_true, true);
    branch(np.when_false, nq.when_false, false);
  };
  walk(g1.diagram.root, g2.diagram.root);

  if (!ok || !redirected) return std::nullopt;
  return redirected;
}

// Edge-removal question: given the pair (g1, g2) where g2 removes one edge
// of g1, are the two maps equal on all bounded interpretations? Refuses
// pairs that do not have the removal shape.
inline DecisionOutcome edge_removal_check(const Gfodd& g1, const Gfodd& g2,
                                          const SearchBudget& budget,
                                          const EvalConfig& cfg = {}) {
  if (!verify_edge_removal_shape(g1, g2))
    throw std::invalid_argument(
        "edge-removal: second diagram is not the first with one edge redirected to 0");
  return gfodd_equiv(g1, g2, budget, cfg);
}

}  // namespace gfodd
