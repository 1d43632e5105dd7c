#pragma once

// Exact evaluation of GFODDs over finite interpretations.
//
// eval_valuation walks the diagram for one total valuation. eval_map runs
// the nested aggregation by binding aggregation variables left to right
// (first entry outermost) over every object, the naive n^m sweep. The only
// pruning is the optional short circuit: a max level may stop after hitting
// the diagram's global maximum leaf value, a min level after the global
// minimum. Values never leave exact rational arithmetic; internally leaves
// are mapped to ordinals of the sorted distinct leaf values so aggregation
// compares small integers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfodd/diagram.hpp"
#include "gfodd/interpretation.hpp"

namespace gfodd {

struct EvalConfig {
  bool short_circuit = true;
  bool parallel_outer = false;
};

namespace detail {

// Diagram compiled against one interpretation: internal nodes reindexed
// densely, constants resolved to objects, extensions flattened to bitsets
// over mixed-radix tuple codes, leaves replaced by ordinals.
struct CompiledDiagram {
  struct CNode {
    // Child encoding: >= 0 compiled node index, < 0 leaf ordinal -(x+1).
    std::int32_t when_true = 0;
    std::int32_t when_false = 0;
    // Arg encoding: >= 0 aggregation slot, < 0 fixed object -(x+1).
    std::array<std::int32_t, 3> args{};
    std::uint32_t pred = 0;  // index into extension tables; unused for equality
    std::uint8_t argc = 0;
    bool equality = false;
  };

  std::uint32_t domain_size = 1;
  std::vector<CNode> nodes;
  std::int32_t root = 0;  // same encoding as child links
  std::vector<Rational> leaf_values;           // ascending, deduplicated
  std::vector<std::vector<std::uint64_t>> extensions;  // bitset per predicate
  std::vector<std::uint32_t> strides;                  // per predicate: n^(arity-1)
  std::vector<AggOp> ops;                              // aggregation operators in order

  bool test(std::uint32_t pred, std::uint64_t code) const {
    return (extensions[pred][code >> 6] >> (code & 63)) & 1;
  }
};

inline std::int32_t encode_fixed(std::uint32_t x) { return -static_cast<std::int32_t>(x) - 1; }
inline std::uint32_t decode_fixed(std::int32_t a) { return static_cast<std::uint32_t>(-a - 1); }

inline CompiledDiagram compile(const Gfodd& g, const Interpretation& interp) {
  if (interp.domain_size() == 0) throw std::invalid_argument("eval: empty domain");
  CompiledDiagram c;
  c.domain_size = interp.domain_size();
  const std::uint32_t n = c.domain_size;

  std::map<std::string, std::int32_t> slot;
  for (const auto& e : g.aggregation.entries) {
    slot[e.variable] = static_cast<std::int32_t>(c.ops.size());
    c.ops.push_back(e.op);
  }

  // Leaf ordinals over reachable leaves.
  c.leaf_values = g.diagram.leaf_values();
  if (c.leaf_values.empty()) throw std::invalid_argument("eval: diagram has no reachable leaf");
  auto ordinal_of = [&](const Rational& v) {
    for (std::size_t i = 0; i < c.leaf_values.size(); ++i)
      if (c.leaf_values[i] == v) return static_cast<std::int32_t>(i);
    throw std::logic_error("eval: leaf ordinal lookup failed");
  };

  // Extension bitsets, one per predicate mentioned in the signature.
  std::map<std::string, std::uint32_t> pred_index;
  const auto& preds = g.signature.predicates();
  for (std::uint32_t i = 0; i < preds.size(); ++i) {
    pred_index[preds[i].name] = i;
    std::uint64_t count = 1;
    for (std::uint32_t k = 0; k < preds[i].arity; ++k) count *= n;
    if (count > (1ull << 26)) throw std::invalid_argument("eval: extension too large to index");
    std::vector<std::uint64_t> bits((count + 63) / 64, 0);
    auto ext = interp.extensions().find(preds[i].name);
    if (ext == interp.extensions().end())
      throw std::invalid_argument("eval: interpretation lacks predicate " + preds[i].name);
    for (const Tuple& tuple : ext->second) {
      if (tuple.size() != preds[i].arity)
        throw std::invalid_argument("eval: extension arity mismatch for " + preds[i].name);
      std::uint64_t code = 0;
      for (ObjectId obj : tuple) code = code * n + obj;
      bits[code >> 6] |= 1ull << (code & 63);
    }
    c.extensions.push_back(std::move(bits));
    std::uint32_t stride = 1;
    for (std::uint32_t k = 1; k < preds[i].arity; ++k) stride *= n;
    c.strides.push_back(preds[i].arity == 0 ? 0 : stride);
  }

  // Dense renumbering of reachable internal nodes.
  std::vector<NodeId> order = g.diagram.reachable();
  std::map<NodeId, std::int32_t> renumber;
  for (NodeId id : order)
    if (!g.diagram.is_leaf(id)) {
      renumber[id] = static_cast<std::int32_t>(c.nodes.size());
      c.nodes.emplace_back();
    }

  auto encode_child = [&](NodeId id) -> std::int32_t {
    if (g.diagram.is_leaf(id)) return -ordinal_of(g.diagram.leaf(id).value) - 1;
    return renumber.at(id);
  };
  auto encode_term = [&](const Term& t) -> std::int32_t {
    if (is_variable(t)) {
      auto it = slot.find(term_name(t));
      if (it == slot.end())
        throw std::invalid_argument("eval: variable " + term_name(t) + " is not aggregated");
      return it->second;
    }
    return encode_fixed(interp.constant(term_name(t)));
  };

  for (NodeId id : order) {
    if (g.diagram.is_leaf(id)) continue;
    const auto& node = g.diagram.internal(id);
    CompiledDiagram::CNode cn;
    cn.when_true = encode_child(node.when_true);
    cn.when_false = encode_child(node.when_false);
    const auto args = atom_args(node.label);
    if (args.size() > 3) throw std::invalid_argument("eval: arity above compiled bound");
    cn.argc = static_cast<std::uint8_t>(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) cn.args[k] = encode_term(args[k]);
    if (is_equality(node.label)) {
      cn.equality = true;
    } else {
      auto it = pred_index.find(std::get<PredicateAtom>(node.label).predicate);
      if (it == pred_index.end())
        throw std::invalid_argument("eval: predicate not in signature: " +
                                    std::get<PredicateAtom>(node.label).predicate);
      cn.pred = it->second;
    }
    c.nodes[renumber.at(id)] = cn;
  }
  c.root = encode_child(g.diagram.root);
  return c;
}

// Root-to-leaf walk under a total assignment of aggregation slots.
inline std::int32_t walk(const CompiledDiagram& c, const std::uint32_t* val) {
  std::int32_t cur = c.root;
  while (cur >= 0) {
    const auto& nd = c.nodes[cur];
    auto resolve = [&](std::int32_t a) -> std::uint32_t {
      return a >= 0 ? val[a] : decode_fixed(a);
    };
    bool truth;
    if (nd.equality) {
      truth = resolve(nd.args[0]) == resolve(nd.args[1]);
    } else {
      std::uint64_t code = 0;
      for (std::uint8_t k = 0; k < nd.argc; ++k) code = code * c.domain_size + resolve(nd.args[k]);
      truth = c.test(nd.pred, code);
    }
    cur = truth ? nd.when_true : nd.when_false;
  }
  return -cur - 1;
}

// Walk with only the first `bound` slots assigned. Returns the leaf when
// the path never reads an unassigned slot; the value is then constant over
// all deeper bindings, which lets aggregation skip whole subtrees.
inline std::optional<std::int32_t> walk_partial(const CompiledDiagram& c, const std::uint32_t* val,
                                                std::size_t bound) {
  std::int32_t cur = c.root;
  while (cur >= 0) {
    const auto& nd = c.nodes[cur];
    std::uint32_t obj[3];
    for (std::uint8_t k = 0; k < nd.argc; ++k) {
      std::int32_t a = nd.args[k];
      if (a >= 0) {
        if (static_cast<std::size_t>(a) >= bound) return std::nullopt;
        obj[k] = val[a];
      } else {
        obj[k] = decode_fixed(a);
      }
    }
    bool truth;
    if (nd.equality) {
      truth = obj[0] == obj[1];
    } else {
      std::uint64_t code = 0;
      for (std::uint8_t k = 0; k < nd.argc; ++k) code = code * c.domain_size + obj[k];
      truth = c.test(nd.pred, code);
    }
    cur = truth ? nd.when_true : nd.when_false;
  }
  return -cur - 1;
}

struct Aggregator {
  const CompiledDiagram* c = nullptr;
  bool short_circuit = true;
  std::vector<std::uint32_t> val;

  std::int32_t run(std::size_t level) {
    // When the current partial binding already fixes the path, every
    // deeper binding yields the same leaf and the sweep below is skipped.
    if (auto fixed = walk_partial(*c, val.data(), level)) return *fixed;
    const std::int32_t top = static_cast<std::int32_t>(c->leaf_values.size()) - 1;
    const bool is_max = c->ops[level] == AggOp::max;
    std::int32_t best = is_max ? -1 : top + 1;
    for (std::uint32_t obj = 0; obj < c->domain_size; ++obj) {
      val[level] = obj;
      std::int32_t v = run(level + 1);
      if (is_max ? v > best : v < best) best = v;
      if (short_circuit && best == (is_max ? top : 0)) break;
    }
    return best;
  }
};

}  // namespace detail

// Value of the diagram under one total valuation. Every aggregation
// variable must be bound; atoms must match the signature and interpretation.
inline Rational eval_valuation(const Gfodd& g, const Interpretation& interp,
                               const Valuation& valuation) {
  for (const auto& e : g.aggregation.entries)
    if (!valuation.count(e.variable))
      throw std::invalid_argument("eval: valuation misses variable " + e.variable);
  for (const auto& [var, obj] : valuation)
    if (obj >= interp.domain_size())
      throw std::invalid_argument("eval: valuation object out of range for " + var);

  detail::CompiledDiagram c = detail::compile(g, interp);
  std::vector<std::uint32_t> val(g.aggregation.size(), 0);
  for (std::size_t i = 0; i < g.aggregation.entries.size(); ++i)
    val[i] = valuation.at(g.aggregation.entries[i].variable);
  return c.leaf_values[detail::walk(c, val.data())];
}

// Nested-aggregation value over all valuations.
inline Rational eval_map(const Gfodd& g, const Interpretation& interp, const EvalConfig& cfg = {}) {
  if (interp.domain_size() == 0) throw std::invalid_argument("eval: empty domain");
  detail::CompiledDiagram c = detail::compile(g, interp);

  if (cfg.parallel_outer && !c.ops.empty() && c.domain_size > 1) {
    // Outermost variable fans out to tasks; inner levels keep the
    // sequential short-circuit rule, so the folded value is identical.
    std::vector<std::future<std::int32_t>> futures;
    for (std::uint32_t obj = 0; obj < c.domain_size; ++obj) {
      futures.push_back(std::async(std::launch::async, [&, obj]() {
        detail::Aggregator agg{&c, cfg.short_circuit,
                               std::vector<std::uint32_t>(c.ops.size(), 0)};
        agg.val[0] = obj;
        return agg.run(1);
      }));
    }
    const bool is_max = c.ops[0] == AggOp::max;
    std::int32_t best = is_max ? -1 : static_cast<std::int32_t>(c.leaf_values.size());
    for (auto& f : futures) {
      std::int32_t v = f.get();
      if (is_max ? v > best : v < best) best = v;
    }
    return c.leaf_values[best];
  }

  detail::Aggregator agg{&c, cfg.short_circuit, std::vector<std::uint32_t>(c.ops.size(), 0)};
  return c.leaf_values[agg.run(0)];
}

// Decision form: MAP value at least v.
inline bool model_evaluation(const Gfodd& g, const Interpretation& interp, const Rational& v,
                             const EvalConfig& cfg = {}) {
  return eval_map(g, interp, cfg) >= v;
}

// Cross-check: the MAP value equals the largest leaf value v for which
// model_evaluation answers yes. Since the MAP is always one of the leaf
// values, sweeping them reproduces eval_map.
inline Rational map_by_sweep(const Gfodd& g, const Interpretation& interp,
                             const EvalConfig& cfg = {}) {
  std::vector<Rational> values = g.diagram.leaf_values();
  Rational best = values.front();
  for (const Rational& v : values)
    if (model_evaluation(g, interp, v, cfg)) best = v;
  return best;
}

struct Witness {
  Rational value;
  Valuation valuation;
  Interpretation restricted;
};

// For an all-max diagram, returns the MAP value, the lexicographically
// first valuation attaining it, and the sub-interpretation over the objects
// on that valuation's path plus all constant images. The restricted
// interpretation preserves the value, so it never needs more objects than
// variables plus constants.
inline Witness extract_small_witness(const Gfodd& fodd, const Interpretation& interp) {
  if (!fodd.is_fodd())
    throw std::invalid_argument("witness extraction requires all-max aggregation");
  detail::CompiledDiagram c = detail::compile(fodd, interp);
  const std::size_t m = c.ops.size();
  const std::uint32_t n = c.domain_size;

  std::vector<std::uint32_t> val(m, 0), best_val(m, 0);
  std::int32_t best = -1;
  // Lexicographic odometer; strict improvement keeps the first maximizer.
  while (true) {
    std::int32_t v = detail::walk(c, val.data());
    if (v > best) {
      best = v;
      best_val = val;
      if (best == static_cast<std::int32_t>(c.leaf_values.size()) - 1) break;
    }
    std::size_t k = m;
    while (k > 0) {
      if (++val[k - 1] < n) break;
      val[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }

  // Objects mentioned by ground atoms along the winning path.
  std::vector<bool> keep(n, false);
  std::int32_t cur = c.root;
  while (cur >= 0) {
    const auto& nd = c.nodes[cur];
    auto resolve = [&](std::int32_t a) -> std::uint32_t {
      return a >= 0 ? best_val[a] : detail::decode_fixed(a);
    };
    bool truth;
    if (nd.equality) {
      truth = resolve(nd.args[0]) == resolve(nd.args[1]);
    } else {
      std::uint64_t code = 0;
      for (std::uint8_t k = 0; k < nd.argc; ++k) code = code * n + resolve(nd.args[k]);
      truth = c.test(nd.pred, code);
    }
    for (std::uint8_t k = 0; k < nd.argc; ++k) keep[resolve(nd.args[k])] = true;
    cur = truth ? nd.when_true : nd.when_false;
  }
  for (const auto& [name, obj] : interp.constants()) keep[obj] = true;
  if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) keep[0] = true;

  std::vector<std::uint32_t> remap(n, 0);
  std::uint32_t next = 0;
  for (std::uint32_t obj = 0; obj < n; ++obj)
    if (keep[obj]) remap[obj] = next++;

  Interpretation restricted(fodd.signature, next);
  for (const auto& [name, obj] : interp.constants()) restricted.set_constant(name, remap[obj]);
  for (const auto& [pred, tuples] : interp.extensions()) {
    for (const Tuple& tuple : tuples) {
      bool kept = true;
      for (ObjectId obj : tuple)
        if (!keep[obj]) kept = false;
      if (!kept) continue;
      Tuple mapped;
      for (ObjectId obj : tuple) mapped.push_back(remap[obj]);
      restricted.add_fact(pred, mapped);
    }
  }

  Witness w;
  w.value = c.leaf_values[best];
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t obj = best_val[i];
    w.valuation[fodd.aggregation.entries[i].variable] = keep[obj] ? remap[obj] : 0;
  }
  w.restricted = std::move(restricted);
  return w;
}

}  // namespace gfodd
