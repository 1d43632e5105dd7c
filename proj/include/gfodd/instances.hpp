#pragma once

// Plain problem instances consumed by the generators and the reference
// oracles: 3-CNF formulas, quantified boolean formulas with a 3-CNF
// matrix, and small graphs.

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfodd {

// Literal: positive var is the variable index (1-based), negative is its
// negation, matching the DIMACS convention.
using Literal = int;

struct Clause {
  std::array<Literal, 3> literals{};
};

struct Cnf {
  std::uint32_t variables = 0;  // variables are 1..variables
  std::vector<Clause> clauses;

  void check() const {
    for (const auto& c : clauses)
      for (Literal lit : c.literals) {
        if (lit == 0) throw std::invalid_argument("cnf: zero literal");
        std::uint32_t v = static_cast<std::uint32_t>(lit > 0 ? lit : -lit);
        if (v < 1 || v > variables) throw std::invalid_argument("cnf: literal out of range");
      }
  }
};

enum class Quantifier { exists, forall };

struct QuantifierBlock {
  Quantifier kind = Quantifier::exists;
  std::vector<std::uint32_t> variables;
};

// Prefix listed outermost block first; every variable of the matrix must
// be quantified exactly once.
struct Qbf {
  std::vector<QuantifierBlock> prefix;
  Cnf matrix;

  void check() const {
    matrix.check();
    std::set<std::uint32_t> seen;
    for (const auto& b : prefix) {
      if (b.variables.empty()) throw std::invalid_argument("qbf: empty quantifier block");
      for (std::uint32_t v : b.variables) {
        if (v < 1 || v > matrix.variables) throw std::invalid_argument("qbf: variable out of range");
        if (!seen.insert(v).second) throw std::invalid_argument("qbf: variable quantified twice");
      }
    }
    if (seen.size() != matrix.variables)
      throw std::invalid_argument("qbf: unquantified variable in matrix");
  }

  std::size_t block_count() const { return prefix.size(); }
};

// Undirected simple graph on vertices 0..n-1; edges stored with u < v.
struct UGraph {
  std::uint32_t vertices = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;

  void add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::invalid_argument("graph: self loop");
    if (u >= vertices || v >= vertices) throw std::invalid_argument("graph: vertex out of range");
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) > 0;
  }

  static UGraph complete(std::uint32_t n) {
    UGraph g;
    g.vertices = n;
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = u + 1; v < n; ++v) g.edges.insert({u, v});
    return g;
  }

  static UGraph single_edge() {
    UGraph g;
    g.vertices = 2;
    g.edges.insert({0, 1});
    return g;
  }
};

// Directed graph on vertices 0..n-1, no self loops.
struct DiGraph {
  std::uint32_t vertices = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;

  void add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::invalid_argument("graph: self loop");
    if (u >= vertices || v >= vertices) throw std::invalid_argument("graph: vertex out of range");
    edges.insert({u, v});
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const { return edges.count({u, v}) > 0; }
};

}  // namespace gfodd
