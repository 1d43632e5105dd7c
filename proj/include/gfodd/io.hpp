#pragma once

// Text formats. Diagrams and interpretations use small line-based layouts
// so instances can be written by hand; CNF and QBF inputs use DIMACS and
// QDIMACS; graphs use a nodes/edge listing. Parse errors carry 1-based
// line numbers.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfodd/diagram.hpp"
#include "gfodd/instances.hpp"
#include "gfodd/interpretation.hpp"
#include "gfodd/validate.hpp"

namespace gfodd {

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Non-empty lines with comments stripped, paired with 1-based numbers.
inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int num = 0;
  while (std::getline(in, line)) {
    ++num;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({num, line});
  }
  return out;
}

inline std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

// "name(arg,...)" -> name and raw args. Used for atoms and tuples.
inline std::pair<std::string, std::vector<std::string>> parse_call(int line,
                                                                   const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    parse_fail(line, "expected name(args): " + text);
  std::string name = trim(text.substr(0, open));
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> args;
  if (!trim(inner).empty()) args = split(inner, ',');
  return {name, args};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Diagram files
// ---------------------------------------------------------------------------
//
//   pred E/2
//   const c1
//   agg max x1, min x2
//   node 0 = E(x1,x2) ? 1 : 2
//   node 1 = eq(x2,c1) ? 3 : 4
//   leaf 3 = 3/2
//   root 0

inline Gfodd parse_gfodd(const std::string& text) {
  std::vector<PredicateDecl> preds;
  std::vector<std::string> consts;
  AggregationList agg;
  bool have_root = false;
  std::uint32_t root_id = 0;
  int root_line = 0;

  struct Staged {
    int line = 0;
    bool leaf = false;
    Atom atom;
    std::uint32_t when_true = 0, when_false = 0;
    Rational value;
  };
  std::map<std::uint32_t, Staged> staged;

  auto is_const = [&](const std::string& name) {
    for (const auto& c : consts)
      if (c == name) return true;
    return false;
  };
  auto parse_id = [](int line, const std::string& s) -> std::uint32_t {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      detail::parse_fail(line, "bad node id: " + s);
    }
  };

  for (const auto& [line, raw] : detail::content_lines(text)) {
    auto ws = detail::words(raw);
    const std::string& kind = ws[0];
    if (kind == "pred") {
      if (ws.size() != 2) detail::parse_fail(line, "expected: pred NAME/ARITY");
      auto parts = detail::split(ws[1], '/');
      if (parts.size() != 2 || !detail::valid_name(parts[0]))
        detail::parse_fail(line, "expected: pred NAME/ARITY");
      for (const auto& p : preds)
        if (p.name == parts[0]) detail::parse_fail(line, "duplicate predicate " + parts[0]);
      try {
        preds.push_back({parts[0], static_cast<std::uint32_t>(std::stoul(parts[1]))});
      } catch (const std::exception&) {
        detail::parse_fail(line, "bad arity: " + parts[1]);
      }
    } else if (kind == "const") {
      if (ws.size() != 2 || !detail::valid_name(ws[1]))
        detail::parse_fail(line, "expected: const NAME");
      if (is_const(ws[1])) detail::parse_fail(line, "duplicate constant " + ws[1]);
      consts.push_back(ws[1]);
    } else if (kind == "agg") {
      std::string rest = detail::trim(raw.substr(3));
      if (rest.empty()) detail::parse_fail(line, "empty aggregation list");
      for (const auto& entry : detail::split(rest, ',')) {
        auto ew = detail::words(entry);
        if (ew.size() != 2 || (ew[0] != "max" && ew[0] != "min") || !detail::valid_name(ew[1]))
          detail::parse_fail(line, "expected 'max VAR' or 'min VAR': " + entry);
        agg.entries.push_back({ew[1], ew[0] == "max" ? AggOp::max : AggOp::min});
      }
    } else if (kind == "node") {
      // node ID = ATOM ? TRUE : FALSE
      auto eq_pos = raw.find('=');
      auto q_pos = raw.find('?');
      auto c_pos = raw.rfind(':');
      if (eq_pos == std::string::npos || q_pos == std::string::npos ||
          c_pos == std::string::npos || !(eq_pos < q_pos && q_pos < c_pos))
        detail::parse_fail(line, "expected: node ID = ATOM ? TRUE : FALSE");
      std::uint32_t id = parse_id(line, detail::trim(raw.substr(4, eq_pos - 4)));
      std::string atom_text = detail::trim(raw.substr(eq_pos + 1, q_pos - eq_pos - 1));
      auto [name, raw_args] = detail::parse_call(line, atom_text);
      auto term_of = [&](const std::string& t) -> Term {
        if (!detail::valid_name(t)) detail::parse_fail(line, "bad term: " + t);
        if (is_const(t)) return Constant{t};
        return Variable{t};
      };
      Staged st;
      st.line = line;
      if (name == "eq") {
        if (raw_args.size() != 2) detail::parse_fail(line, "eq takes two terms");
        st.atom = EqualityAtom{term_of(raw_args[0]), term_of(raw_args[1])};
      } else {
        bool known = false;
        for (const auto& p : preds)
          if (p.name == name) {
            known = true;
            if (p.arity != raw_args.size())
              detail::parse_fail(line, "predicate " + name + " expects " +
                                           std::to_string(p.arity) + " arguments");
          }
        if (!known) detail::parse_fail(line, "undeclared predicate " + name);
        std::vector<Term> args;
        for (const auto& a : raw_args) args.push_back(term_of(a));
        st.atom = PredicateAtom{name, args};
      }
      st.when_true = parse_id(line, detail::trim(raw.substr(q_pos + 1, c_pos - q_pos - 1)));
      st.when_false = parse_id(line, detail::trim(raw.substr(c_pos + 1)));
      if (staged.count(id)) detail::parse_fail(line, "duplicate node id " + std::to_string(id));
      staged[id] = st;
    } else if (kind == "leaf") {
      auto eq_pos = raw.find('=');
      if (eq_pos == std::string::npos) detail::parse_fail(line, "expected: leaf ID = VALUE");
      std::uint32_t id = parse_id(line, detail::trim(raw.substr(4, eq_pos - 4)));
      Staged st;
      st.line = line;
      st.leaf = true;
      try {
        st.value = Rational::parse(detail::trim(raw.substr(eq_pos + 1)));
      } catch (const std::exception& e) {
        detail::parse_fail(line, std::string("bad leaf value: ") + e.what());
      }
      if (staged.count(id)) detail::parse_fail(line, "duplicate node id " + std::to_string(id));
      staged[id] = st;
    } else if (kind == "root") {
      if (ws.size() != 2) detail::parse_fail(line, "expected: root ID");
      if (have_root) detail::parse_fail(line, "duplicate root directive");
      root_id = parse_id(line, ws[1]);
      have_root = true;
      root_line = line;
    } else {
      detail::parse_fail(line, "unknown directive: " + kind);
    }
  }

  if (!have_root) throw std::runtime_error("missing root directive");
  if (staged.empty()) throw std::runtime_error("no nodes defined");

  std::map<std::uint32_t, NodeId> remap;
  for (const auto& [id, st] : staged) remap[id] = static_cast<NodeId>(remap.size());

  Gfodd g;
  g.signature = Signature(preds, consts);
  g.aggregation = agg;
  for (const auto& [id, st] : staged) {
    if (st.leaf) {
      g.diagram.nodes.push_back(LeafNode{st.value});
    } else {
      auto t = remap.find(st.when_true);
      auto f = remap.find(st.when_false);
      if (t == remap.end())
        detail::parse_fail(st.line, "edge to undefined node " + std::to_string(st.when_true));
      if (f == remap.end())
        detail::parse_fail(st.line, "edge to undefined node " + std::to_string(st.when_false));
      g.diagram.nodes.push_back(InternalNode{st.atom, t->second, f->second});
    }
  }
  auto r = remap.find(root_id);
  if (r == remap.end()) detail::parse_fail(root_line, "root refers to undefined node");
  g.diagram.root = r->second;

  auto problems = validate_gfodd(g);
  if (!problems.empty()) throw std::runtime_error("invalid diagram: " + problems.front());
  return g;
}

inline std::string render_gfodd(const Gfodd& g) {
  std::ostringstream out;
  for (const auto& p : g.signature.predicates())
    out << "pred " << p.name << "/" << p.arity << "\n";
  for (const auto& c : g.signature.constants()) out << "const " << c << "\n";
  if (!g.aggregation.empty()) {
    out << "agg ";
    for (std::size_t i = 0; i < g.aggregation.entries.size(); ++i) {
      if (i) out << ", ";
      out << agg_op_name(g.aggregation.entries[i].op) << " " << g.aggregation.entries[i].variable;
    }
    out << "\n";
  }
  for (NodeId id = 0; id < g.diagram.size(); ++id) {
    if (g.diagram.is_leaf(id)) {
      out << "leaf " << id << " = " << g.diagram.leaf(id).value.str() << "\n";
    } else {
      const auto& n = g.diagram.internal(id);
      out << "node " << id << " = " << atom_text(n.label) << " ? " << n.when_true << " : "
          << n.when_false << "\n";
    }
  }
  out << "root " << g.diagram.root << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Interpretation files
// ---------------------------------------------------------------------------
//
//   domain 3
//   const c1 = 0
//   E: (0,2) (2,0)

inline Interpretation parse_interpretation(const std::string& text, const Signature& sig) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw std::runtime_error("empty interpretation");
  {
    auto ws = detail::words(lines.front().second);
    if (ws.size() != 2 || ws[0] != "domain")
      detail::parse_fail(lines.front().first, "first line must be: domain N");
  }

  std::uint32_t domain = 0;
  try {
    domain = static_cast<std::uint32_t>(std::stoul(detail::words(lines.front().second)[1]));
  } catch (const std::exception&) {
    detail::parse_fail(lines.front().first, "bad domain size");
  }
  if (domain == 0) detail::parse_fail(lines.front().first, "domain must be positive");

  Interpretation interp(sig, domain);
  auto parse_obj = [&](int line, const std::string& s) -> ObjectId {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      if (v >= domain) detail::parse_fail(line, "object " + s + " outside domain");
      return static_cast<ObjectId>(v);
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception&) {
      detail::parse_fail(line, "bad object: " + s);
    }
  };

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& [line, raw] = lines[li];
    auto ws = detail::words(raw);
    if (ws[0] == "const") {
      if (ws.size() != 4 || ws[2] != "=") detail::parse_fail(line, "expected: const NAME = OBJ");
      try {
        interp.set_constant(ws[1], parse_obj(line, ws[3]));
      } catch (const std::runtime_error&) {
        throw;
      } catch (const std::exception& e) {
        detail::parse_fail(line, e.what());
      }
    } else {
      auto colon = raw.find(':');
      if (colon == std::string::npos)
        detail::parse_fail(line, "expected 'const NAME = OBJ' or 'PRED: (tuples)'");
      std::string pred = detail::trim(raw.substr(0, colon));
      std::string rest = detail::trim(raw.substr(colon + 1));
      std::size_t pos = 0;
      while (pos < rest.size()) {
        if (rest[pos] != '(') detail::parse_fail(line, "expected tuple list after " + pred + ":");
        auto close = rest.find(')', pos);
        if (close == std::string::npos) detail::parse_fail(line, "unclosed tuple");
        std::string inner = detail::trim(rest.substr(pos + 1, close - pos - 1));
        Tuple tuple;
        if (!inner.empty())
          for (const auto& part : detail::split(inner, ',')) tuple.push_back(parse_obj(line, part));
        try {
          interp.add_fact(pred, tuple);
        } catch (const std::runtime_error&) {
          throw;
        } catch (const std::exception& e) {
          detail::parse_fail(line, e.what());
        }
        pos = close + 1;
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
      }
    }
  }
  return interp;
}

inline std::string render_interpretation(const Interpretation& interp) {
  std::ostringstream out;
  out << "domain " << interp.domain_size() << "\n";
  for (const auto& [name, obj] : interp.constants()) out << "const " << name << " = " << obj << "\n";
  for (const auto& [pred, tuples] : interp.extensions()) {
    out << pred << ":";
    for (const auto& t : tuples) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ",";
        out << t[i];
      }
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DIMACS / QDIMACS
// ---------------------------------------------------------------------------

// DIMACS CNF restricted to exactly three literals per clause.
inline Cnf parse_dimacs_cnf(const std::string& text) {
  Cnf f;
  bool have_header = false;
  std::size_t announced = 0;
  std::vector<Literal> pending;
  for (const auto& [line, raw] : detail::content_lines(text)) {
    auto ws = detail::words(raw);
    if (ws[0] == "c") continue;
    if (ws[0] == "p") {
      if (have_header) detail::parse_fail(line, "duplicate header");
      if (ws.size() != 4 || ws[1] != "cnf") detail::parse_fail(line, "expected: p cnf VARS CLAUSES");
      try {
        f.variables = static_cast<std::uint32_t>(std::stoul(ws[2]));
        announced = std::stoul(ws[3]);
      } catch (const std::exception&) {
        detail::parse_fail(line, "bad header numbers");
      }
      have_header = true;
      continue;
    }
    if (!have_header) detail::parse_fail(line, "clause before header");
    for (const auto& w : ws) {
      int lit = 0;
      try {
        lit = std::stoi(w);
      } catch (const std::exception&) {
        detail::parse_fail(line, "bad literal: " + w);
      }
      if (lit == 0) {
        if (pending.size() != 3)
          detail::parse_fail(line, "clauses must have exactly three literals");
        f.clauses.push_back({{pending[0], pending[1], pending[2]}});
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!have_header) throw std::runtime_error("missing 'p cnf' header");
  if (!pending.empty()) throw std::runtime_error("unterminated clause");
  if (f.clauses.size() != announced)
    throw std::runtime_error("clause count does not match header");
  f.check();
  return f;
}

// QDIMACS: quantifier lines (e/a, outermost first) between the header and
// the clauses. Every variable must be quantified.
inline Qbf parse_qdimacs(const std::string& text) {
  Qbf q;
  bool have_header = false;
  bool clauses_started = false;
  std::size_t announced = 0;
  std::vector<Literal> pending;
  for (const auto& [line, raw] : detail::content_lines(text)) {
    auto ws = detail::words(raw);
    if (ws[0] == "c") continue;
    if (ws[0] == "p") {
      if (have_header) detail::parse_fail(line, "duplicate header");
      if (ws.size() != 4 || ws[1] != "cnf") detail::parse_fail(line, "expected: p cnf VARS CLAUSES");
      try {
        q.matrix.variables = static_cast<std::uint32_t>(std::stoul(ws[2]));
        announced = std::stoul(ws[3]);
      } catch (const std::exception&) {
        detail::parse_fail(line, "bad header numbers");
      }
      have_header = true;
      continue;
    }
    if (!have_header) detail::parse_fail(line, "content before header");
    if (ws[0] == "e" || ws[0] == "a") {
      if (clauses_started) detail::parse_fail(line, "quantifier after clauses");
      QuantifierBlock block;
      block.kind = ws[0] == "e" ? Quantifier::exists : Quantifier::forall;
      for (std::size_t i = 1; i < ws.size(); ++i) {
        int v = 0;
        try {
          v = std::stoi(ws[i]);
        } catch (const std::exception&) {
          detail::parse_fail(line, "bad variable: " + ws[i]);
        }
        if (v == 0) break;
        if (v < 0) detail::parse_fail(line, "negative variable in prefix");
        block.variables.push_back(static_cast<std::uint32_t>(v));
      }
      if (block.variables.empty()) detail::parse_fail(line, "empty quantifier block");
      q.prefix.push_back(block);
      continue;
    }
    clauses_started = true;
    for (const auto& w : ws) {
      int lit = 0;
      try {
        lit = std::stoi(w);
      } catch (const std::exception&) {
        detail::parse_fail(line, "bad literal: " + w);
      }
      if (lit == 0) {
        if (pending.size() != 3)
          detail::parse_fail(line, "clauses must have exactly three literals");
        q.matrix.clauses.push_back({{pending[0], pending[1], pending[2]}});
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!have_header) throw std::runtime_error("missing 'p cnf' header");
  if (!pending.empty()) throw std::runtime_error("unterminated clause");
  if (q.matrix.clauses.size() != announced)
    throw std::runtime_error("clause count does not match header");
  q.check();  // rejects unquantified variables
  return q;
}

// ---------------------------------------------------------------------------
// Graph files
// ---------------------------------------------------------------------------
//
//   nodes 3
//   edge 0 1
//   edge 1 2

namespace detail {

template <typename Graph>
Graph parse_graph(const std::string& text) {
  Graph g;
  bool have_nodes = false;
  for (const auto& [line, raw] : content_lines(text)) {
    auto ws = words(raw);
    if (ws[0] == "nodes") {
      if (have_nodes) parse_fail(line, "duplicate nodes directive");
      if (ws.size() != 2) parse_fail(line, "expected: nodes N");
      try {
        g.vertices = static_cast<std::uint32_t>(std::stoul(ws[1]));
      } catch (const std::exception&) {
        parse_fail(line, "bad node count");
      }
      have_nodes = true;
    } else if (ws[0] == "edge") {
      if (!have_nodes) parse_fail(line, "edge before nodes directive");
      if (ws.size() != 3) parse_fail(line, "expected: edge U V");
      try {
        g.add_edge(static_cast<std::uint32_t>(std::stoul(ws[1])),
                   static_cast<std::uint32_t>(std::stoul(ws[2])));
      } catch (const std::runtime_error&) {
        throw;
      } catch (const std::exception& e) {
        parse_fail(line, e.what());
      }
    } else {
      parse_fail(line, "unknown directive: " + ws[0]);
    }
  }
  if (!have_nodes) throw std::runtime_error("missing nodes directive");
  return g;
}

}  // namespace detail

inline DiGraph parse_digraph(const std::string& text) {
  return detail::parse_graph<DiGraph>(text);
}
inline UGraph parse_ugraph(const std::string& text) { return detail::parse_graph<UGraph>(text); }

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

// Graphviz rendering: internal nodes as ellipses, leaves as boxes, true
// edges solid, false edges dashed, aggregation in the graph label.
inline std::string export_dot(const Gfodd& g) {
  std::ostringstream out;
  out << "digraph gfodd {\n";
  if (!g.aggregation.empty()) {
    out << "  label=\"";
    for (std::size_t i = 0; i < g.aggregation.entries.size(); ++i) {
      if (i) out << ", ";
      out << agg_op_name(g.aggregation.entries[i].op) << " " << g.aggregation.entries[i].variable;
    }
    out << "\";\n  labelloc=top;\n";
  }
  for (NodeId id : g.diagram.reachable()) {
    if (g.diagram.is_leaf(id)) {
      out << "  n" << id << " [shape=box,label=\"" << g.diagram.leaf(id).value.str() << "\"];\n";
    } else {
      const auto& n = g.diagram.internal(id);
      out << "  n" << id << " [shape=ellipse,label=\"" << atom_text(n.label) << "\"];\n";
      out << "  n" << id << " -> n" << n.when_true << ";\n";
      out << "  n" << id << " -> n" << n.when_false << " [style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace gfodd
