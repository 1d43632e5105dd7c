#pragma once

// Exhaustive enumeration of interpretations over a fixed signature and an
// exact domain size n: every assignment of constants to objects crossed
// with every subset of every predicate's n^arity ground tuples. The
// enumerator is a single mixed-radix odometer (constants first, then one
// binary digit per ground tuple in lexicographic tuple order), so the
// sequence is deterministic and restarts reproduce it exactly.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfodd/interpretation.hpp"

namespace gfodd {

// Number of interpretations for the given domain size, exact while it fits
// 64 bits; the factored rendering n^c * 2^t is always available.
struct SearchSpace {
  std::uint32_t domain_size = 1;
  std::uint64_t constant_maps_exponent = 0;  // number of constants
  std::uint64_t tuple_bits = 0;              // sum of n^arity over predicates
  std::optional<std::uint64_t> exact;        // n^c * 2^bits when representable

  std::string str() const {
    std::string s = std::to_string(domain_size) + "^" +
                    std::to_string(constant_maps_exponent) + " * 2^" +
                    std::to_string(tuple_bits);
    if (exact) s += " = " + std::to_string(*exact);
    return s;
  }
};

inline SearchSpace search_space(const Signature& sig, std::uint32_t domain_size) {
  SearchSpace s;
  s.domain_size = domain_size;
  s.constant_maps_exponent = sig.constants().size();
  for (const auto& p : sig.predicates()) {
    std::uint64_t count = 1;
    bool fits = true;
    for (std::uint32_t k = 0; k < p.arity; ++k) {
      if (count > UINT64_MAX / domain_size) fits = false;
      if (!fits) break;
      count *= domain_size;
    }
    if (!fits) {
      s.tuple_bits = UINT64_MAX;
      return s;
    }
    s.tuple_bits += count;
  }
  // Exact value when n^c * 2^bits fits in 64 bits.
  if (s.tuple_bits < 64) {
    std::uint64_t total = 1;
    bool fits = true;
    for (std::uint64_t i = 0; i < s.constant_maps_exponent && fits; ++i) {
      if (total > UINT64_MAX / domain_size) fits = false;
      else total *= domain_size;
    }
    for (std::uint64_t i = 0; i < s.tuple_bits && fits; ++i) {
      if (total > UINT64_MAX / 2) fits = false;
      else total *= 2;
    }
    if (fits) s.exact = total;
  }
  return s;
}

class InterpretationEnumerator {
 public:
  InterpretationEnumerator(const Signature& sig, std::uint32_t domain_size)
      : sig_(sig), n_(domain_size) {
    if (domain_size == 0) throw std::invalid_argument("enumerate: empty domain");
    constant_digits_.assign(sig.constants().size(), 0);
    for (const auto& p : sig.predicates()) {
      std::uint64_t count = 1;
      for (std::uint32_t k = 0; k < p.arity; ++k) {
        if (count > (1ull << 26)) throw std::invalid_argument("enumerate: tuple space too large");
        count *= n_;
      }
      tuple_pred_.reserve(tuple_pred_.size() + count);
      for (std::uint64_t code = 0; code < count; ++code) {
        tuple_pred_.push_back(pred_tuples_.size());
        Tuple t(p.arity, 0);
        std::uint64_t rest = code;
        for (std::uint32_t k = p.arity; k > 0; --k) {
          t[k - 1] = static_cast<ObjectId>(rest % n_);
          rest /= n_;
        }
        tuple_values_.push_back(std::move(t));
      }
      pred_tuples_.push_back(p.name);
    }
    tuple_bits_.assign(tuple_values_.size(), false);
    done_ = false;
  }

  // The interpretation at the current odometer position.
  Interpretation current() const {
    Interpretation interp(sig_, n_);
    const auto& consts = sig_.constants();
    for (std::size_t i = 0; i < consts.size(); ++i)
      interp.set_constant(consts[i], constant_digits_[i]);
    for (std::size_t i = 0; i < tuple_bits_.size(); ++i)
      if (tuple_bits_[i]) interp.add_fact(pred_tuples_[tuple_pred_[i]], tuple_values_[i]);
    return interp;
  }

  bool done() const { return done_; }

  // Advance little-endian: constants first, then tuple bits.
  void next() {
    for (auto& d : constant_digits_) {
      if (++d < n_) return;
      d = 0;
    }
    for (std::size_t i = 0; i < tuple_bits_.size(); ++i) {
      if (!tuple_bits_[i]) {
        tuple_bits_[i] = true;
        return;
      }
      tuple_bits_[i] = false;
    }
    done_ = true;
  }

 private:
  Signature sig_;
  std::uint32_t n_;
  std::vector<std::uint32_t> constant_digits_;
  std::vector<bool> tuple_bits_;
  std::vector<std::size_t> tuple_pred_;  // tuple index -> predicate slot
  std::vector<Tuple> tuple_values_;
  std::vector<std::string> pred_tuples_;  // predicate slot -> name
  bool done_ = true;
};

}  // namespace gfodd
