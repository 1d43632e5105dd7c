#pragma once

// Strict total order on atoms, used for sortedness checks and for the
// label-driven descent in apply.
//
// Atoms compare first by predicate rank ("=" participates as a pseudo
// predicate, ranked first by default), then by their argument lists,
// list-lexicographically. Terms compare constants before variables;
// constants rank in declaration order; variables rank by an explicit
// ranking when one is configured and lexicographically by name otherwise
// (ranked variables precede unranked ones).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfodd/diagram.hpp"
#include "gfodd/signature.hpp"

namespace gfodd {

struct AtomOrder {
  // Predicate names in rank order; must mention "=" exactly once.
  std::vector<std::string> predicate_rank;
  // Constant names in rank order.
  std::vector<std::string> constant_rank;
  // Optional explicit variable ranking; names not listed compare after all
  // listed names, lexicographically among themselves.
  std::vector<std::string> variable_rank;

  // Equality first, predicates in declaration order, constants in
  // declaration order, variables lexicographic.
  static AtomOrder defaults(const Signature& sig) {
    AtomOrder order;
    order.predicate_rank.push_back("=");
    for (const auto& p : sig.predicates()) order.predicate_rank.push_back(p.name);
    order.constant_rank = sig.constants();
    return order;
  }

  // Extends this order so systematically renamed variables keep their
  // relative positions (renamed names are appended in `renamed` order).
  AtomOrder with_renamed(const std::vector<std::string>& renamed) const {
    AtomOrder out = *this;
    for (const auto& name : renamed) out.variable_rank.push_back(name);
    return out;
  }
};

namespace detail {

inline int predicate_rank_of(const AtomOrder& order, const std::string& name) {
  for (std::size_t i = 0; i < order.predicate_rank.size(); ++i)
    if (order.predicate_rank[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("atom order: unknown predicate " + name);
}

inline int constant_rank_of(const AtomOrder& order, const std::string& name) {
  for (std::size_t i = 0; i < order.constant_rank.size(); ++i)
    if (order.constant_rank[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("atom order: unknown constant " + name);
}

}  // namespace detail

// Negative, zero or positive as a orders before, equal to or after b.
inline int term_compare(const Term& a, const Term& b, const AtomOrder& order) {
  const bool va = is_variable(a), vb = is_variable(b);
  if (va != vb) return va ? 1 : -1;  // constants precede variables
  if (!va) {
    int ra = detail::constant_rank_of(order, term_name(a));
    int rb = detail::constant_rank_of(order, term_name(b));
    return ra == rb ? 0 : (ra < rb ? -1 : 1);
  }
  auto rank = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < order.variable_rank.size(); ++i)
      if (order.variable_rank[i] == name) return static_cast<int>(i);
    return -1;
  };
  int ra = rank(term_name(a)), rb = rank(term_name(b));
  if (ra >= 0 && rb >= 0) return ra == rb ? 0 : (ra < rb ? -1 : 1);
  if (ra >= 0) return -1;
  if (rb >= 0) return 1;
  return term_name(a).compare(term_name(b)) < 0   ? -1
         : term_name(a).compare(term_name(b)) > 0 ? 1
                                                  : 0;
}

inline int atom_compare(const Atom& a, const Atom& b, const AtomOrder& order) {
  const std::string pa = is_equality(a) ? "=" : std::get<PredicateAtom>(a).predicate;
  const std::string pb = is_equality(b) ? "=" : std::get<PredicateAtom>(b).predicate;
  int ra = detail::predicate_rank_of(order, pa);
  int rb = detail::predicate_rank_of(order, pb);
  if (ra != rb) return ra < rb ? -1 : 1;
  const auto args_a = atom_args(a);
  const auto args_b = atom_args(b);
  for (std::size_t i = 0; i < args_a.size() && i < args_b.size(); ++i) {
    int c = term_compare(args_a[i], args_b[i], order);
    if (c != 0) return c;
  }
  if (args_a.size() != args_b.size()) return args_a.size() < args_b.size() ? -1 : 1;
  return 0;
}

inline bool atom_less(const Atom& a, const Atom& b, const AtomOrder& order) {
  return atom_compare(a, b, order) < 0;
}

struct OrderingViolation {
  NodeId parent = 0;
  NodeId child = 0;
  bool true_branch = false;
  std::string describe() const {
    return "edge " + std::to_string(parent) + (true_branch ? " -t-> " : " -f-> ") +
           std::to_string(child) + " is not label-ascending";
  }
};

// Edges whose internal child label does not rank strictly after the parent
// label. Empty result means the diagram is sorted under `order`.
inline std::vector<OrderingViolation> check_ordering(const Diagram& d, const AtomOrder& order) {
  std::vector<OrderingViolation> violations;
  for (NodeId id : d.reachable()) {
    if (d.is_leaf(id)) continue;
    const auto& node = d.internal(id);
    for (bool branch : {true, false}) {
      NodeId child = branch ? node.when_true : node.when_false;
      if (child >= d.nodes.size() || d.is_leaf(child)) continue;
      if (atom_compare(node.label, d.internal(child).label, order) >= 0)
        violations.push_back({id, child, branch});
    }
  }
  return violations;
}

inline bool is_sorted(const Diagram& d, const AtomOrder& order) {
  return check_ordering(d, order).empty();
}

}  // namespace gfodd
