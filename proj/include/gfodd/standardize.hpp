#pragma once

// Variable standardization for diagram pairs. When the two GFODDs share any
// variable name, every variable of the second copy is renamed with a common
// suffix so relative variable order inside that copy is preserved.

#include <map>
#include <string>
#include <vector>

#include "gfodd/diagram.hpp"

namespace gfodd {

struct RenameReport {
  // old name -> new name for the second diagram; empty when already disjoint.
  std::map<std::string, std::string> renamed;
  bool changed() const { return !renamed.empty(); }
};

namespace detail {

inline Term rename_term(const Term& t, const std::map<std::string, std::string>& renamed) {
  if (!is_variable(t)) return t;
  auto it = renamed.find(term_name(t));
  if (it == renamed.end()) return t;
  return Variable{it->second};
}

inline Atom rename_atom(const Atom& a, const std::map<std::string, std::string>& renamed) {
  if (is_equality(a)) {
    const auto& eq = std::get<EqualityAtom>(a);
    return EqualityAtom{rename_term(eq.lhs, renamed), rename_term(eq.rhs, renamed)};
  }
  auto pa = std::get<PredicateAtom>(a);
  for (auto& arg : pa.args) arg = rename_term(arg, renamed);
  return pa;
}

}  // namespace detail

inline Gfodd rename_variables(const Gfodd& g, const std::map<std::string, std::string>& renamed) {
  Gfodd out = g;
  for (auto& e : out.aggregation.entries) {
    auto it = renamed.find(e.variable);
    if (it != renamed.end()) e.variable = it->second;
  }
  for (auto& node : out.diagram.nodes)
    if (auto* internal = std::get_if<InternalNode>(&node))
      internal->label = detail::rename_atom(internal->label, renamed);
  return out;
}

// Returns copies of (g1, g2) with disjoint variable sets. g1 is never
// touched; g2's variables are all suffixed ("x" -> "x_r", then "x_r2", ...)
// whenever the name sets overlap. The report records the applied renaming
// in g2's aggregation order.
inline std::pair<Gfodd, Gfodd> standardize_apart(const Gfodd& g1, const Gfodd& g2,
                                                 RenameReport* report = nullptr) {
  std::vector<std::string> vars1 = g1.diagram.variables();
  for (const auto& e : g1.aggregation.entries) vars1.push_back(e.variable);
  std::vector<std::string> vars2 = g2.diagram.variables();
  for (const auto& e : g2.aggregation.entries) vars2.push_back(e.variable);

  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v)
      if (x == s) return true;
    return false;
  };

  bool overlap = false;
  for (const auto& v : vars2)
    if (contains(vars1, v)) overlap = true;
  if (report) report->renamed.clear();
  if (!overlap) return {g1, g2};

  std::string suffix = "_r";
  for (int attempt = 2;; ++attempt) {
    bool fresh = true;
    for (const auto& v : vars2) {
      std::string candidate = v + suffix;
      if (contains(vars1, candidate) || contains(vars2, candidate)) fresh = false;
    }
    if (fresh) break;
    suffix = "_r" + std::to_string(attempt);
  }

  std::map<std::string, std::string> renamed;
  for (const auto& e : g2.aggregation.entries) renamed[e.variable] = e.variable + suffix;
  for (const auto& v : g2.diagram.variables())
    if (!renamed.count(v)) renamed[v] = v + suffix;
  if (report) report->renamed = renamed;
  return {g1, rename_variables(g2, renamed)};
}

}  // namespace gfodd
