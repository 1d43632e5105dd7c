#pragma once

// Combining diagrams: the binary Apply procedure, aggregation-list
// interleaving, and complementation of binary-valued diagrams.
//
// Apply recurses over node pairs the way propositional diagram packages
// do: the smaller label under the shared atom order becomes the root and
// the recursion descends into its children, carrying the other diagram
// along; equal labels descend in lockstep; two leaves combine by the
// operator. Correctness of the aggregated result depends on the operator
// and the aggregation operators it must commute with, so apply refuses
// unsafe combinations up front.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfodd/atom_order.hpp"
#include "gfodd/diagram.hpp"
#include "gfodd/standardize.hpp"

namespace gfodd {

enum class BinaryOp { plus, times, min2, max2 };

inline const char* binary_op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::plus: return "plus";
    case BinaryOp::times: return "and";
    case BinaryOp::min2: return "min";
    case BinaryOp::max2: return "max";
  }
  return "?";
}

inline Rational apply_leaf_op(BinaryOp op, const Rational& a, const Rational& b) {
  switch (op) {
    case BinaryOp::plus: return a + b;
    case BinaryOp::times: return a * b;
    case BinaryOp::min2: return a < b ? a : b;
    case BinaryOp::max2: return a > b ? a : b;
  }
  throw std::logic_error("apply: unknown operator");
}

// An operator is safe when every aggregation operator appearing in either
// list distributes over it in the required direction. Addition and
// conjunction (times on binary leaves) are safe for both min and max;
// pointwise min and max are safe only when no aggregation is present.
inline bool is_safe(BinaryOp op, const AggregationList& a1, const AggregationList& a2) {
  if (op == BinaryOp::plus || op == BinaryOp::times) return true;
  return a1.empty() && a2.empty();
}

enum class InterleavePolicy { concat, block_merge };

// Combined aggregation list. concat appends the second list after the
// first. block_merge zips maximal same-operator blocks pairwise: the
// leading blocks are merged when their operators agree, otherwise the
// first list's leading block is emitted alone and zipping starts from its
// second block. The result's alternation depth is at most one more than
// the deeper input, and equal to the deeper input when the leading
// operators agree.
inline AggregationList interleave(const AggregationList& a1, const AggregationList& a2,
                                  InterleavePolicy policy) {
  AggregationList out;
  if (policy == InterleavePolicy::concat) {
    out.entries = a1.entries;
    out.entries.insert(out.entries.end(), a2.entries.begin(), a2.entries.end());
    return out;
  }

  auto blocks = [](const AggregationList& a) {
    std::vector<std::vector<AggEntry>> bs;
    for (const auto& e : a.entries) {
      if (bs.empty() || bs.back().front().op != e.op) bs.emplace_back();
      bs.back().push_back(e);
    }
    return bs;
  };
  std::vector<std::vector<AggEntry>> b1 = blocks(a1), b2 = blocks(a2);
  std::size_t i = 0, j = 0;
  if (!b1.empty() && !b2.empty() && b1.front().front().op != b2.front().front().op) {
    for (const auto& e : b1.front()) out.entries.push_back(e);
    i = 1;
  }
  while (i < b1.size() || j < b2.size()) {
    if (i < b1.size() && j < b2.size() && b1[i].front().op == b2[j].front().op) {
      for (const auto& e : b1[i]) out.entries.push_back(e);
      for (const auto& e : b2[j]) out.entries.push_back(e);
      ++i, ++j;
    } else if (i < b1.size()) {
      for (const auto& e : b1[i]) out.entries.push_back(e);
      ++i;
    } else {
      for (const auto& e : b2[j]) out.entries.push_back(e);
      ++j;
    }
  }
  return out;
}

namespace detail {

inline Signature merge_signatures(const Signature& s1, const Signature& s2) {
  std::vector<PredicateDecl> preds = s1.predicates();
  for (const auto& p : s2.predicates()) {
    auto idx = s1.predicate_index(p.name);
    if (idx) {
      if (s1.predicates()[*idx].arity != p.arity)
        throw std::invalid_argument("apply: predicate " + p.name + " declared with two arities");
    } else {
      preds.push_back(p);
    }
  }
  std::vector<std::string> consts = s1.constants();
  for (const auto& c : s2.constants())
    if (!s1.has_constant(c)) consts.push_back(c);
  std::uint32_t bound = std::max(s1.arity_bound(), s2.arity_bound());
  return Signature(preds, consts, bound);
}

}  // namespace detail

struct ApplyResult {
  Gfodd gfodd;
  RenameReport renames;  // renames applied to the second input, if any
};

// Combine two diagrams pointwise under op. Both inputs must be sorted
// under the given atom order, which must also rank any renamed variables;
// the inputs are standardized apart first, and renamed variables are
// ranked immediately after their originals. The conjunction operator
// additionally requires binary leaves on both sides.
inline ApplyResult apply(const Gfodd& g1, const Gfodd& g2, BinaryOp op, InterleavePolicy policy,
                         const AtomOrder& order) {
  if (!is_safe(op, g1.aggregation, g2.aggregation))
    throw std::invalid_argument(std::string("apply: operator ") + binary_op_name(op) +
                                " is not safe for aggregated inputs");
  if (op == BinaryOp::times && (!g1.has_binary_leaves() || !g2.has_binary_leaves()))
    throw std::invalid_argument("apply: and requires leaves in {0,1}");

  RenameReport report;
  auto [a, b] = standardize_apart(g1, g2, &report);

  // Extend the variable ranking so renamed variables sort right after the
  // names they replaced, preserving the order of b's atoms.
  AtomOrder ext = order;
  if (report.changed() && !ext.variable_rank.empty()) {
    std::vector<std::string> ranked;
    for (const auto& name : ext.variable_rank) {
      ranked.push_back(name);
      auto it = report.renamed.find(name);
      if (it != report.renamed.end()) ranked.push_back(it->second);
    }
    for (const auto& [from, to] : report.renamed)
      if (std::find(ranked.begin(), ranked.end(), to) == ranked.end()) ranked.push_back(to);
    ext.variable_rank = std::move(ranked);
  }

  auto complain = [&](const Diagram& d, const char* which) {
    auto violations = check_ordering(d, ext);
    if (!violations.empty())
      throw std::invalid_argument(std::string("apply: ") + which +
                                  " input is not sorted: " + violations.front().describe());
  };
  complain(a.diagram, "first");
  complain(b.diagram, "second");

  Signature merged = detail::merge_signatures(a.signature, b.signature);

  DiagramBuilder builder(true);
  std::map<std::pair<NodeId, NodeId>, NodeId> memo;
  std::function<NodeId(NodeId, NodeId)> rec = [&](NodeId p, NodeId q) -> NodeId {
    auto key = std::make_pair(p, q);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    NodeId out;
    const bool p_leaf = a.diagram.is_leaf(p), q_leaf = b.diagram.is_leaf(q);
    if (p_leaf && q_leaf) {
      out = builder.leaf(apply_leaf_op(op, a.diagram.leaf(p).value, b.diagram.leaf(q).value));
    } else {
      int cmp;
      if (p_leaf) {
        cmp = 1;  // only q's label can come first
      } else if (q_leaf) {
        cmp = -1;
      } else {
        cmp = atom_compare(a.diagram.internal(p).label, b.diagram.internal(q).label, ext);
      }
      if (cmp < 0) {
        const auto& node = a.diagram.internal(p);
        out = builder.internal(node.label, rec(node.when_true, q), rec(node.when_false, q));
      } else if (cmp > 0) {
        const auto& node = b.diagram.internal(q);
        out = builder.internal(node.label, rec(p, node.when_true), rec(p, node.when_false));
      } else {
        const auto& np = a.diagram.internal(p);
        const auto& nq = b.diagram.internal(q);
        out = builder.internal(np.label, rec(np.when_true, nq.when_true),
                               rec(np.when_false, nq.when_false));
      }
    }
    memo[key] = out;
    return out;
  };
  NodeId root = rec(a.diagram.root, b.diagram.root);

  ApplyResult result;
  result.gfodd.signature = merged;
  result.gfodd.aggregation = interleave(a.aggregation, b.aggregation, policy);
  result.gfodd.diagram = builder.take(root);
  result.renames = report;
  return result;
}

// Complement for binary-valued maps generalized to bound m: every leaf v
// becomes m - v and every aggregation operator flips, so the new map value
// is m minus the old one on every interpretation. m must dominate all
// leaves to keep leaves non-negative. Applying it twice restores the input.
inline Gfodd complement(const Gfodd& g, const Rational& m) {
  Gfodd out = g;
  for (auto& node : out.diagram.nodes)
    if (std::holds_alternative<LeafNode>(node)) {
      LeafNode& leaf = std::get<LeafNode>(node);
      if (m < leaf.value)
        throw std::invalid_argument("complement: bound is below leaf value " + leaf.value.str());
      leaf.value = m - leaf.value;
    }
  for (auto& e : out.aggregation.entries)
    e.op = e.op == AggOp::max ? AggOp::min : AggOp::max;
  return out;
}

}  // namespace gfodd
