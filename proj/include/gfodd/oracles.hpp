#pragma once

// Reference oracles: direct exhaustive algorithms for the source problems,
// written independently of the diagram machinery so the two sides can
// check each other.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gfodd/instances.hpp"

namespace gfodd {
namespace oracle {

inline bool clause_satisfied(const Clause& c, std::uint64_t assignment) {
  for (Literal lit : c.literals) {
    std::uint32_t v = static_cast<std::uint32_t>(lit > 0 ? lit : -lit);
    bool value = (assignment >> (v - 1)) & 1;
    if (lit > 0 ? value : !value) return true;
  }
  return false;
}

inline bool cnf_satisfied(const Cnf& f, std::uint64_t assignment) {
  for (const auto& c : f.clauses)
    if (!clause_satisfied(c, assignment)) return false;
  return true;
}

// Satisfiability by trying all 2^n assignments.
inline bool cnf_sat(const Cnf& f) {
  f.check();
  if (f.variables > 20) throw std::invalid_argument("oracle: cnf too large");
  for (std::uint64_t a = 0; a < (1ull << f.variables); ++a)
    if (cnf_satisfied(f, a)) return true;
  return false;
}

namespace detail {

inline bool qbf_rec(const Qbf& q, std::size_t block, std::size_t pos, std::uint64_t assignment) {
  if (block == q.prefix.size()) return cnf_satisfied(q.matrix, assignment);
  const auto& b = q.prefix[block];
  if (pos == b.variables.size()) return qbf_rec(q, block + 1, 0, assignment);
  std::uint64_t bit = 1ull << (b.variables[pos] - 1);
  bool with0 = qbf_rec(q, block, pos + 1, assignment & ~bit);
  if (b.kind == Quantifier::exists && with0) return true;
  if (b.kind == Quantifier::forall && !with0) return false;
  return qbf_rec(q, block, pos + 1, assignment | bit);
}

}  // namespace detail

// Truth of a closed QBF by recursive expansion of the prefix.
inline bool qbf_eval(const Qbf& q) {
  q.check();
  if (q.matrix.variables > 20) throw std::invalid_argument("oracle: qbf too large");
  return detail::qbf_rec(q, 0, 0, 0);
}

// Hamiltonian path (directed, any endpoints) by trying all vertex orders.
inline bool hampath(const DiGraph& g) {
  if (g.vertices > 8) throw std::invalid_argument("oracle: graph too large");
  if (g.vertices == 0) return false;
  if (g.vertices == 1) return true;
  std::vector<std::uint32_t> perm(g.vertices);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::uint32_t i = 0; i + 1 < g.vertices && ok; ++i)
      if (!g.has_edge(perm[i], perm[i + 1])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace detail {

// Does host contain a subgraph isomorphic to pattern, restricted to the
// host edges whose color bit matches want? colors maps each host edge
// (by its index in iteration order) to a bit.
inline bool embeds(const UGraph& pattern, const UGraph& host,
                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& host_edges,
                   std::uint64_t colors, bool want) {
  auto colored = [&](std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    for (std::size_t i = 0; i < host_edges.size(); ++i)
      if (host_edges[i] == std::make_pair(u, v)) return (((colors >> i) & 1) != 0) == want;
    return false;
  };
  std::vector<std::uint32_t> map(pattern.vertices, 0);
  std::vector<bool> used(host.vertices, false);
  std::function<bool(std::uint32_t)> place = [&](std::uint32_t k) -> bool {
    if (k == pattern.vertices) return true;
    for (std::uint32_t cand = 0; cand < host.vertices; ++cand) {
      if (used[cand]) continue;
      bool ok = true;
      for (std::uint32_t prev = 0; prev < k && ok; ++prev)
        if (pattern.has_edge(prev, k) && !colored(map[prev], cand)) ok = false;
      if (!ok) continue;
      used[cand] = true;
      map[k] = cand;
      if (place(k + 1)) return true;
      used[cand] = false;
    }
    return false;
  };
  return place(0);
}

}  // namespace detail

// Ramsey arrowing F -> (G, H): every red/blue coloring of F's edges
// contains a red copy of G or a blue copy of H. Checked over all
// 2^|E(F)| colorings with backtracking embedding searches.
inline bool arrows(const UGraph& f, const UGraph& g, const UGraph& h) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(f.edges.begin(), f.edges.end());
  if (edges.size() > 20) throw std::invalid_argument("oracle: too many edges");
  for (std::uint64_t colors = 0; colors < (1ull << edges.size()); ++colors) {
    bool red_g = detail::embeds(g, f, edges, colors, true);
    bool blue_h = detail::embeds(h, f, edges, colors, false);
    if (!red_g && !blue_h) return false;
  }
  return true;
}

}  // namespace oracle
}  // namespace gfodd
