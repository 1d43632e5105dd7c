#pragma once

// Structural well-formedness checks for GFODDs. Violations come back as
// human-readable strings; an empty list means the value is valid. The
// checker is pure: it never mutates its input and repeated calls agree.

#include <set>
#include <string>
#include <vector>

#include "gfodd/diagram.hpp"
#include "gfodd/signature.hpp"

namespace gfodd {

inline std::vector<std::string> validate_gfodd(const Gfodd& g) {
  std::vector<std::string> out;
  const Diagram& d = g.diagram;

  if (d.nodes.empty()) {
    out.push_back("empty node table");
    return out;
  }
  if (d.root >= d.nodes.size()) {
    out.push_back("root id " + std::to_string(d.root) + " out of range");
    return out;
  }

  bool edges_ok = true;
  for (NodeId id = 0; id < d.nodes.size(); ++id) {
    if (d.is_leaf(id)) continue;
    const auto& n = d.internal(id);
    for (NodeId child : {n.when_true, n.when_false})
      if (child >= d.nodes.size()) {
        out.push_back("dangling edge at node " + std::to_string(id) + " -> " +
                      std::to_string(child));
        edges_ok = false;
      }
  }

  if (edges_ok) {
    // Cycle detection over the reachable part, iterative three-color walk.
    enum : unsigned char { kWhite, kGray, kBlack };
    std::vector<unsigned char> color(d.nodes.size(), kWhite);
    std::vector<std::pair<NodeId, int>> stack{{d.root, 0}};
    while (!stack.empty()) {
      auto& [id, phase] = stack.back();
      if (phase == 0) {
        if (color[id] == kGray) {
          out.push_back("cycle at node " + std::to_string(id));
          break;
        }
        if (color[id] == kBlack || d.is_leaf(id)) {
          color[id] = kBlack;
          stack.pop_back();
          continue;
        }
        color[id] = kGray;
        phase = 1;
        stack.push_back({d.internal(id).when_true, 0});
      } else if (phase == 1) {
        phase = 2;
        stack.push_back({d.internal(id).when_false, 0});
      } else {
        color[id] = kBlack;
        stack.pop_back();
      }
    }
  }

  for (NodeId id : d.reachable()) {
    if (d.is_leaf(id)) {
      if (d.leaf(id).value.is_negative())
        out.push_back("negative leaf value " + d.leaf(id).value.str() + " at node " +
                      std::to_string(id));
    } else {
      try {
        check_atom_against_signature(d.internal(id).label, g.signature);
      } catch (const std::exception& e) {
        out.push_back("node " + std::to_string(id) + ": " + e.what());
      }
    }
  }

  std::set<std::string> listed;
  for (const auto& e : g.aggregation.entries) {
    if (!listed.insert(e.variable).second)
      out.push_back("duplicate aggregation variable " + e.variable);
  }
  std::set<std::string> used;
  for (const auto& v : d.variables()) used.insert(v);
  for (const auto& v : used)
    if (!listed.count(v)) out.push_back("unlisted variable " + v);
  for (const auto& v : listed)
    if (!used.count(v)) out.push_back("aggregation variable " + v + " not used in diagram");

  return out;
}

}  // namespace gfodd
