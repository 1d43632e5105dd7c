#pragma once

// Decision diagrams over first-order atoms with rational leaves, plus the
// aggregation list that turns a diagram into a GFODD.
//
// Diagrams live in an append-only node table indexed by NodeId. Every
// internal node branches on an atom; leaves hold values. Tables are cheap
// to copy and safe to share; nothing mutates a node after insertion.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gfodd/rational.hpp"
#include "gfodd/signature.hpp"

namespace gfodd {

using NodeId = std::uint32_t;

struct InternalNode {
  Atom label;
  NodeId when_true = 0;
  NodeId when_false = 0;
  friend bool operator==(const InternalNode&, const InternalNode&) = default;
};

struct LeafNode {
  Rational value;
  friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

using Node = std::variant<InternalNode, LeafNode>;

struct Diagram {
  std::vector<Node> nodes;
  NodeId root = 0;

  bool is_leaf(NodeId id) const { return std::holds_alternative<LeafNode>(nodes.at(id)); }
  const LeafNode& leaf(NodeId id) const { return std::get<LeafNode>(nodes.at(id)); }
  const InternalNode& internal(NodeId id) const { return std::get<InternalNode>(nodes.at(id)); }
  std::size_t size() const { return nodes.size(); }

  NodeId add_leaf(Rational value) {
    nodes.push_back(LeafNode{std::move(value)});
    return static_cast<NodeId>(nodes.size() - 1);
  }

  NodeId add_internal(Atom label, NodeId when_true, NodeId when_false) {
    nodes.push_back(InternalNode{std::move(label), when_true, when_false});
    return static_cast<NodeId>(nodes.size() - 1);
  }

  // Ids reachable from the root; cycles are tolerated (each id visited once)
  // so validate_gfodd can report them instead of hanging.
  std::vector<NodeId> reachable() const {
    std::vector<NodeId> order;
    if (nodes.empty()) return order;
    std::vector<bool> seen(nodes.size(), false);
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (id >= nodes.size() || seen[id]) continue;
      seen[id] = true;
      order.push_back(id);
      if (!is_leaf(id)) {
        stack.push_back(internal(id).when_true);
        stack.push_back(internal(id).when_false);
      }
    }
    return order;
  }

  // Variable names appearing in reachable node labels, sorted and unique.
  std::vector<std::string> variables() const {
    std::vector<std::string> vars;
    for (NodeId id : reachable())
      if (!is_leaf(id)) collect_atom_variables(internal(id).label, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

  // Distinct reachable leaf values, ascending.
  std::vector<Rational> leaf_values() const {
    std::vector<Rational> vals;
    for (NodeId id : reachable())
      if (is_leaf(id)) vals.push_back(leaf(id).value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class AggOp : std::uint8_t { min, max };

inline const char* agg_op_name(AggOp op) { return op == AggOp::min ? "min" : "max"; }

struct AggEntry {
  std::string variable;
  AggOp op = AggOp::max;
  friend bool operator==(const AggEntry&, const AggEntry&) = default;
};

// Ordered aggregation list; first entry is the outermost aggregation.
struct AggregationList {
  std::vector<AggEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  std::vector<std::string> variables() const {
    std::vector<std::string> vars;
    vars.reserve(entries.size());
    for (const auto& e : entries) vars.push_back(e.variable);
    return vars;
  }

  bool all_max() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const AggEntry& e) { return e.op == AggOp::max; });
  }

  // Number of maximal blocks of consecutive equal operators.
  std::size_t alternation_depth() const {
    std::size_t depth = 0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (i == 0 || entries[i].op != entries[i - 1].op) ++depth;
    return depth;
  }

  friend bool operator==(const AggregationList&, const AggregationList&) = default;
};

struct Gfodd {
  Signature signature;
  AggregationList aggregation;
  Diagram diagram;

  bool is_fodd() const { return aggregation.all_max(); }

  bool has_binary_leaves() const {
    for (const Rational& v : diagram.leaf_values())
      if (!v.is_zero() && v != Rational(1)) return false;
    return true;
  }

  friend bool operator==(const Gfodd&, const Gfodd&) = default;
};

// Node-table construction helper with optional structural sharing. When
// hash consing is enabled, add_* returns an existing id for a repeated
// (label, children) triple or leaf value; default is plain append.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(bool hash_consing = false) : hash_consing_(hash_consing) {}

  NodeId leaf(const Rational& value) {
    if (hash_consing_) {
      std::string key = "L" + value.str();
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
      NodeId id = diagram_.add_leaf(value);
      cache_.emplace(std::move(key), id);
      return id;
    }
    return diagram_.add_leaf(value);
  }

  NodeId internal(const Atom& label, NodeId when_true, NodeId when_false) {
    if (hash_consing_) {
      std::string key = "N" + atom_text(label) + "|" + std::to_string(when_true) + "|" +
                        std::to_string(when_false);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
      NodeId id = diagram_.add_internal(label, when_true, when_false);
      cache_.emplace(std::move(key), id);
      return id;
    }
    return diagram_.add_internal(label, when_true, when_false);
  }

  Diagram take(NodeId root) {
    diagram_.root = root;
    return std::move(diagram_);
  }

 private:
  Diagram diagram_;
  bool hash_consing_;
  std::unordered_map<std::string, NodeId> cache_;
};

}  // namespace gfodd
