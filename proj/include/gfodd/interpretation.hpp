#pragma once

// Finite interpretations: a domain {0..n-1}, images for every constant, and
// an extension (set of object tuples) per predicate.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfodd/signature.hpp"

namespace gfodd {

using ObjectId = std::uint32_t;
using Tuple = std::vector<ObjectId>;

class Interpretation {
 public:
  Interpretation() = default;
  Interpretation(const Signature& sig, std::uint32_t domain_size)
      : domain_size_(domain_size) {
    if (domain_size == 0) throw std::invalid_argument("interpretation: empty domain");
    for (const auto& c : sig.constants()) constants_[c] = 0;
    for (const auto& p : sig.predicates()) extensions_[p.name];
  }

  std::uint32_t domain_size() const { return domain_size_; }

  void set_constant(const std::string& name, ObjectId obj) {
    if (constants_.find(name) == constants_.end())
      throw std::invalid_argument("interpretation: unknown constant " + name);
    if (obj >= domain_size_) throw std::invalid_argument("interpretation: object out of range");
    constants_[name] = obj;
  }

  ObjectId constant(const std::string& name) const {
    auto it = constants_.find(name);
    if (it == constants_.end())
      throw std::invalid_argument("interpretation: unknown constant " + name);
    return it->second;
  }

  void add_fact(const std::string& predicate, const Tuple& tuple) {
    auto it = extensions_.find(predicate);
    if (it == extensions_.end())
      throw std::invalid_argument("interpretation: unknown predicate " + predicate);
    for (ObjectId obj : tuple)
      if (obj >= domain_size_) throw std::invalid_argument("interpretation: object out of range");
    it->second.insert(tuple);
  }

  bool holds(const std::string& predicate, const Tuple& tuple) const {
    auto it = extensions_.find(predicate);
    if (it == extensions_.end())
      throw std::invalid_argument("interpretation: unknown predicate " + predicate);
    return it->second.count(tuple) > 0;
  }

  const std::map<std::string, ObjectId>& constants() const { return constants_; }
  const std::map<std::string, std::set<Tuple>>& extensions() const { return extensions_; }

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::uint32_t domain_size_ = 1;
  std::map<std::string, ObjectId> constants_;
  std::map<std::string, std::set<Tuple>> extensions_;
};

// Total assignment of objects to (aggregation) variables.
using Valuation = std::map<std::string, ObjectId>;

}  // namespace gfodd
