#pragma once

// First-order vocabulary: predicate declarations with bounded arity plus an
// ordered list of constants. Equality is built in and is not declared.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gfodd {

constexpr std::uint32_t kDefaultArityBound = 3;

struct PredicateDecl {
  std::string name;
  std::uint32_t arity = 0;
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::vector<PredicateDecl> predicates, std::vector<std::string> constants,
            std::uint32_t arity_bound = kDefaultArityBound)
      : predicates_(std::move(predicates)),
        constants_(std::move(constants)),
        arity_bound_(arity_bound) {
    for (const auto& p : predicates_) {
      if (p.name.empty() || p.name == "=")
        throw std::invalid_argument("signature: bad predicate name");
      if (p.arity > arity_bound_)
        throw std::invalid_argument("signature: predicate " + p.name + "/" +
                                    std::to_string(p.arity) + " exceeds arity bound " +
                                    std::to_string(arity_bound_));
      for (const auto& q : predicates_)
        if (&p != &q && p.name == q.name)
          throw std::invalid_argument("signature: duplicate predicate " + p.name);
    }
    for (const auto& c : constants_) {
      if (c.empty()) throw std::invalid_argument("signature: empty constant name");
      int seen = 0;
      for (const auto& d : constants_)
        if (c == d) ++seen;
      if (seen > 1) throw std::invalid_argument("signature: duplicate constant " + c);
    }
  }

  const std::vector<PredicateDecl>& predicates() const { return predicates_; }
  const std::vector<std::string>& constants() const { return constants_; }
  std::uint32_t arity_bound() const { return arity_bound_; }

  std::optional<std::uint32_t> predicate_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < predicates_.size(); ++i)
      if (predicates_[i].name == name) return i;
    return std::nullopt;
  }

  std::optional<std::uint32_t> constant_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < constants_.size(); ++i)
      if (constants_[i] == name) return i;
    return std::nullopt;
  }

  bool has_predicate(const std::string& name) const { return predicate_index(name).has_value(); }
  bool has_constant(const std::string& name) const { return constant_index(name).has_value(); }

  std::uint32_t arity_of(const std::string& name) const {
    auto idx = predicate_index(name);
    if (!idx) throw std::invalid_argument("signature: unknown predicate " + name);
    return predicates_[*idx].arity;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<PredicateDecl> predicates_;
  std::vector<std::string> constants_;
  std::uint32_t arity_bound_ = kDefaultArityBound;
};

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constant {
  std::string name;
  friend bool operator==(const Constant&, const Constant&) = default;
};

using Term = std::variant<Variable, Constant>;

inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }
inline const std::string& term_name(const Term& t) {
  return is_variable(t) ? std::get<Variable>(t).name : std::get<Constant>(t).name;
}

// Equality atoms relate two terms; predicate atoms apply a declared predicate.
struct EqualityAtom {
  Term lhs;
  Term rhs;
  friend bool operator==(const EqualityAtom&, const EqualityAtom&) = default;
};

struct PredicateAtom {
  std::string predicate;
  std::vector<Term> args;
  friend bool operator==(const PredicateAtom&, const PredicateAtom&) = default;
};

using Atom = std::variant<EqualityAtom, PredicateAtom>;

inline bool is_equality(const Atom& a) { return std::holds_alternative<EqualityAtom>(a); }

inline std::vector<Term> atom_args(const Atom& a) {
  if (is_equality(a)) {
    const auto& eq = std::get<EqualityAtom>(a);
    return {eq.lhs, eq.rhs};
  }
  return std::get<PredicateAtom>(a).args;
}

inline void collect_atom_variables(const Atom& a, std::vector<std::string>& out) {
  for (const Term& t : atom_args(a))
    if (is_variable(t)) out.push_back(term_name(t));
}

inline std::string term_text(const Term& t) { return term_name(t); }

inline std::string atom_text(const Atom& a) {
  std::string s;
  if (is_equality(a)) {
    s = "eq(";
  } else {
    s = std::get<PredicateAtom>(a).predicate + "(";
  }
  const auto args = atom_args(a);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += term_text(args[i]);
  }
  s += ")";
  return s;
}

// Throws unless every atom argument is well formed against sig: declared
// predicate, matching arity, declared constants.
inline void check_atom_against_signature(const Atom& a, const Signature& sig) {
  if (!is_equality(a)) {
    const auto& pa = std::get<PredicateAtom>(a);
    auto idx = sig.predicate_index(pa.predicate);
    if (!idx) throw std::invalid_argument("atom: unknown predicate " + pa.predicate);
    if (sig.predicates()[*idx].arity != pa.args.size())
      throw std::invalid_argument("atom: arity mismatch for " + pa.predicate);
  }
  for (const Term& t : atom_args(a))
    if (!is_variable(t) && !sig.has_constant(term_name(t)))
      throw std::invalid_argument("atom: unknown constant " + term_name(t));
}

}  // namespace gfodd
