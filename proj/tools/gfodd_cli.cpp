// Command-line driver: validate and evaluate diagram files, run the
// bounded decision procedures, combine diagrams, and generate the
// hardness-construction instances from standard SAT/QBF/graph inputs.
//
// Exit codes: 0 = yes / success, 1 = no, 2 = error, 3 = budget exhausted.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfodd/gfodd.hpp"

using namespace gfodd;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cout << "wrote " << path << "\n";
}

Gfodd load_gfodd(const std::string& path) { return parse_gfodd(slurp(path)); }

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

// Emit is piped to stdout unless --out was given.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    spill(out_path, text);
}

void print_search_space(const Signature& sig, std::uint32_t max_objects) {
  for (std::uint32_t n = 1; n <= max_objects; ++n)
    std::cout << "search space (" << n << " objects): " << search_space(sig, n).str() << "\n";
}

int report_outcome(const DecisionOutcome& o) {
  std::cout << "answer: " << answer_name(o.answer) << "\n";
  std::cout << "interpretations checked: " << o.interpretations_checked << "\n";
  if (!o.note.empty()) std::cout << "note: " << o.note << "\n";
  if (o.witness) {
    std::cout << "witness:\n" << render_interpretation(*o.witness);
  }
  if (o.counterexample) {
    std::cout << "counterexample (values " << o.counterexample->value1.str() << " vs "
              << o.counterexample->value2.str() << "):\n"
              << render_interpretation(o.counterexample->interpretation);
  }
  switch (o.answer) {
    case Answer::yes: return 0;
    case Answer::no: return 1;
    case Answer::budget_exhausted: return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision diagrams with min/max aggregation over first-order atoms"};
  app.require_subcommand(1);

  // Shared decision-procedure options; each subcommand binds the ones it uses.
  std::uint32_t max_objects = 3;
  std::uint64_t max_interpretations = 0;
  std::uint64_t time_limit_ms = 0;
  unsigned jobs = 1;

  auto add_budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-objects", max_objects, "Largest domain size searched")
        ->capture_default_str();
    sub->add_option("--max-interpretations", max_interpretations,
                    "Stop after this many interpretations (0 = unlimited)");
    sub->add_option("--time-limit-ms", time_limit_ms, "Wall-clock budget (0 = unlimited)");
  };
  auto add_jobs_flag = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "Evaluate the outermost variable in parallel when > 1");
  };
  auto budget = [&]() {
    SearchBudget b;
    b.max_objects = max_objects;
    b.max_interpretations = max_interpretations;
    b.time_limit = std::chrono::milliseconds(time_limit_ms);
    return b;
  };
  auto eval_config = [&]() {
    EvalConfig cfg;
    cfg.parallel_outer = jobs > 1;
    return cfg;
  };

  // ----- check ---------------------------------------------------------
  std::string check_file, check_preds, check_consts, check_vars;
  CLI::App* check = app.add_subcommand("check", "Validate a diagram file and report ordering");
  check->add_option("diagram", check_file, "Diagram file")->required();
  check->add_option("--pred-order", check_preds, "Comma-separated predicate ranking (incl. =)");
  check->add_option("--const-order", check_consts, "Comma-separated constant ranking");
  check->add_option("--var-order", check_vars, "Comma-separated variable ranking");

  // ----- eval ----------------------------------------------------------
  std::string eval_diagram, eval_interp, eval_value;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate the map value on an interpretation");
  eval->add_option("diagram", eval_diagram, "Diagram file")->required();
  eval->add_option("interpretation", eval_interp, "Interpretation file")->required();
  eval->add_option("--value", eval_value, "Decide map value >= this rational instead");
  add_jobs_flag(eval);

  // ----- sat -----------------------------------------------------------
  std::string sat_diagram;
  bool sat_complete = false;
  CLI::App* sat = app.add_subcommand("sat", "Search for an interpretation with map value 1");
  sat->add_option("diagram", sat_diagram, "Diagram file (binary leaves)")->required();
  sat->add_flag("--fodd", sat_complete,
                "All-max diagrams: search up to variables + constants (complete)");
  add_budget_flags(sat);
  add_jobs_flag(sat);

  // ----- value ---------------------------------------------------------
  std::string value_diagram, value_target;
  CLI::App* value = app.add_subcommand("value", "Search for map value >= target");
  value->add_option("diagram", value_diagram, "Diagram file")->required();
  value->add_option("--target", value_target, "Target rational value")->required();
  add_budget_flags(value);
  add_jobs_flag(value);

  // ----- equiv ---------------------------------------------------------
  std::string equiv_left, equiv_right;
  CLI::App* equiv = app.add_subcommand("equiv", "Compare two diagrams on bounded domains");
  equiv->add_option("left", equiv_left, "First diagram file")->required();
  equiv->add_option("right", equiv_right, "Second diagram file")->required();
  add_budget_flags(equiv);
  add_jobs_flag(equiv);

  // ----- edge-removal --------------------------------------------------
  std::string er_left, er_right;
  CLI::App* er = app.add_subcommand(
      "edge-removal", "Check whether redirecting one edge to 0 preserves the map");
  er->add_option("left", er_left, "Original diagram file")->required();
  er->add_option("right", er_right, "Diagram with one edge redirected to 0")->required();
  add_budget_flags(er);
  add_jobs_flag(er);

  // ----- apply ---------------------------------------------------------
  std::string apply_left, apply_right, apply_op = "plus", apply_policy = "concat", apply_out;
  CLI::App* ap = app.add_subcommand("apply", "Combine two diagrams pointwise");
  ap->add_option("left", apply_left, "First diagram file")->required();
  ap->add_option("right", apply_right, "Second diagram file")->required();
  ap->add_option("--op", apply_op, "Operator")
      ->check(CLI::IsMember({"plus", "and"}))
      ->capture_default_str();
  ap->add_option("--policy", apply_policy, "Aggregation interleaving")
      ->check(CLI::IsMember({"concat", "block-merge"}))
      ->capture_default_str();
  ap->add_option("--out", apply_out, "Write the result here instead of stdout");

  // ----- complement ----------------------------------------------------
  std::string comp_diagram, comp_max = "1", comp_out;
  CLI::App* comp = app.add_subcommand("complement", "Subtract every leaf from a bound");
  comp->add_option("diagram", comp_diagram, "Diagram file")->required();
  comp->add_option("--max", comp_max, "Upper bound m (rational)")->capture_default_str();
  comp->add_option("--out", comp_out, "Write the result here instead of stdout");

  // ----- gen -----------------------------------------------------------
  std::string gen_kind, gen_dir = ".";
  std::vector<std::string> gen_inputs;
  CLI::App* gen = app.add_subcommand("gen", "Generate a hardness-construction instance");
  gen->add_option("kind", gen_kind, "Instance family")
      ->required()
      ->check(CLI::IsMember(
          {"hampath", "3sat", "qbf-eval", "qbf-sat", "qbf-equiv", "arrowing", "value-instance"}));
  gen->add_option("inputs", gen_inputs,
                  "hampath: vertex count or digraph file; 3sat: DIMACS file; qbf-*: QDIMACS "
                  "file; arrowing: three graph files (pattern, red target, blue target); "
                  "value-instance: two DIMACS files");
  gen->add_option("--out-dir", gen_dir, "Directory for the generated files")
      ->capture_default_str();

  // ----- export-dot ----------------------------------------------------
  std::string dot_diagram, dot_out;
  CLI::App* dot = app.add_subcommand("export-dot", "Render a diagram as Graphviz DOT");
  dot->add_option("diagram", dot_diagram, "Diagram file")->required();
  dot->add_option("--out", dot_out, "Write the DOT text here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      Gfodd g = load_gfodd(check_file);  // parse runs full validation
      AtomOrder order = AtomOrder::defaults(g.signature);
      if (!check_preds.empty()) order.predicate_rank = split_csv(check_preds);
      if (!check_consts.empty()) order.constant_rank = split_csv(check_consts);
      if (!check_vars.empty()) order.variable_rank = split_csv(check_vars);
      std::cout << "diagram is valid: " << g.diagram.nodes.size() << " nodes, "
                << g.aggregation.size()
                << (g.aggregation.size() == 1 ? " aggregated variable\n" : " aggregated variables\n");
      auto violations = check_ordering(g.diagram, order);
      if (violations.empty()) {
        std::cout << "ordering: sorted\n";
        return 0;
      }
      for (const auto& v : violations) std::cout << "ordering: " << v.describe() << "\n";
      return 1;
    }

    if (*eval) {
      Gfodd g = load_gfodd(eval_diagram);
      Interpretation i = parse_interpretation(slurp(eval_interp), g.signature);
      Rational v = eval_map(g, i, eval_config());
      std::cout << "map value: " << v.str() << "\n";
      if (!eval_value.empty()) {
        Rational target = Rational::parse(eval_value);
        bool ok = v >= target;
        std::cout << "map value >= " << target.str() << ": " << (ok ? "yes" : "no") << "\n";
        return ok ? 0 : 1;
      }
      return 0;
    }

    if (*sat) {
      Gfodd g = load_gfodd(sat_diagram);
      if (sat_complete) return report_outcome(fodd_sat(g, eval_config()));
      print_search_space(g.signature, max_objects);
      return report_outcome(gfodd_sat(g, budget(), eval_config()));
    }

    if (*value) {
      Gfodd g = load_gfodd(value_diagram);
      print_search_space(g.signature, max_objects);
      return report_outcome(gfodd_value(g, Rational::parse(value_target), budget(), eval_config()));
    }

    if (*equiv) {
      Gfodd g1 = load_gfodd(equiv_left);
      Gfodd g2 = load_gfodd(equiv_right);
      print_search_space(g1.signature, max_objects);
      return report_outcome(gfodd_equiv(g1, g2, budget(), eval_config()));
    }

    if (*er) {
      Gfodd g1 = load_gfodd(er_left);
      Gfodd g2 = load_gfodd(er_right);
      auto edge = verify_edge_removal_shape(g1, g2);
      if (edge)
        std::cout << "redirected edge: node " << edge->node << ", "
                  << (edge->when_true ? "true" : "false") << " branch\n";
      print_search_space(g1.signature, max_objects);
      return report_outcome(edge_removal_check(g1, g2, budget(), eval_config()));
    }

    if (*ap) {
      Gfodd g1 = load_gfodd(apply_left);
      Gfodd g2 = load_gfodd(apply_right);
      // Rank the union of the two vocabularies, first input's names first.
      AtomOrder order = AtomOrder::defaults(g1.signature);
      auto rank = [](std::vector<std::string>& into, const std::string& name) {
        if (std::find(into.begin(), into.end(), name) == into.end()) into.push_back(name);
      };
      for (const auto& p : g2.signature.predicates()) rank(order.predicate_rank, p.name);
      for (const auto& c : g2.signature.constants()) rank(order.constant_rank, c);
      BinaryOp op = apply_op == "plus" ? BinaryOp::plus : BinaryOp::times;
      auto policy =
          apply_policy == "concat" ? InterleavePolicy::concat : InterleavePolicy::block_merge;
      ApplyResult r = apply(g1, g2, op, policy, order);
      for (const auto& [from, to] : r.renames.renamed)
        std::cerr << "note: renamed " << from << " -> " << to << " in the second input\n";
      emit(apply_out, render_gfodd(r.gfodd));
      return 0;
    }

    if (*comp) {
      Gfodd g = load_gfodd(comp_diagram);
      emit(comp_out, render_gfodd(complement(g, Rational::parse(comp_max))));
      return 0;
    }

    if (*gen) {
      namespace fs = std::filesystem;
      fs::create_directories(gen_dir);
      auto path = [&](const char* name) { return (fs::path(gen_dir) / name).string(); };
      auto need = [&](std::size_t n, const char* what) {
        if (gen_inputs.size() != n)
          throw std::runtime_error("gen " + gen_kind + " expects " + what);
      };
      auto csv = [](const std::vector<std::string>& names) {
        std::string s;
        for (const auto& n : names) {
          if (!s.empty()) s += ",";
          s += n;
        }
        return s;
      };
      // The written diagrams are label-sorted under the instance's own atom
      // order, not necessarily under the defaults `check` uses.
      auto order_hint = [&](const AtomOrder& order) {
        std::cout << "check with:";
        if (!order.predicate_rank.empty()) std::cout << " --pred-order " << csv(order.predicate_rank);
        if (!order.constant_rank.empty()) std::cout << " --const-order " << csv(order.constant_rank);
        if (!order.variable_rank.empty()) std::cout << " --var-order " << csv(order.variable_rank);
        std::cout << "\n";
      };

      if (gen_kind == "hampath") {
        need(1, "one input: a vertex count or a digraph file");
        DiGraph g;
        bool numeric = !gen_inputs[0].empty() &&
                       std::all_of(gen_inputs[0].begin(), gen_inputs[0].end(),
                                   [](unsigned char c) { return std::isdigit(c); });
        if (numeric)
          g.vertices = static_cast<std::uint32_t>(std::stoul(gen_inputs[0]));
        else
          g = parse_digraph(slurp(gen_inputs[0]));
        HampathInstance inst = gen_hampath(g);
        spill(path("hampath.gfodd"), render_gfodd(inst.gfodd));
        if (!numeric) spill(path("hampath.interp"), render_interpretation(inst.interpretation));
        std::cout << "map value is 1 exactly when the graph has a Hamiltonian path\n";
        order_hint(inst.order);
      } else if (gen_kind == "3sat") {
        need(1, "one input: a DIMACS file");
        SatInstance inst = gen_3sat(parse_dimacs_cnf(slurp(gen_inputs[0])));
        spill(path("sat.gfodd"), render_gfodd(inst.gfodd));
        spill(path("sat.interp"), render_interpretation(inst.interpretation));
        std::cout << "satisfiable inputs reach map value 1 on the written interpretation;\n"
                  << "recommended max objects for the sat search: "
                  << inst.recommended_max_objects << "\n";
        order_hint(inst.order);
      } else if (gen_kind == "qbf-eval") {
        need(1, "one input: a QDIMACS file");
        QbfEvalInstance inst = gen_qbf_eval(parse_qdimacs(slurp(gen_inputs[0])));
        spill(path("qbf_eval.gfodd"), render_gfodd(inst.gfodd));
        spill(path("qbf_eval.interp"), render_interpretation(inst.interpretation));
        std::cout << "map value on the written interpretation equals the formula's truth\n";
        order_hint(inst.order);
      } else if (gen_kind == "qbf-sat") {
        need(1, "one input: a QDIMACS file (existential-leading, depth >= 2)");
        SatInstance inst = gen_qbf_sat(parse_qdimacs(slurp(gen_inputs[0])));
        spill(path("qbf_sat.gfodd"), render_gfodd(inst.gfodd));
        spill(path("qbf_sat.interp"), render_interpretation(inst.interpretation));
        std::cout << "recommended max objects for the sat search: "
                  << inst.recommended_max_objects << "\n";
        order_hint(inst.order);
      } else if (gen_kind == "qbf-equiv") {
        need(1, "one input: a QDIMACS file (universal-leading, depth >= 3)");
        EquivInstance inst = gen_qbf_equiv_simple(parse_qdimacs(slurp(gen_inputs[0])));
        spill(path("qbf_equiv_left.gfodd"), render_gfodd(inst.left));
        spill(path("qbf_equiv_right.gfodd"), render_gfodd(inst.right));
        std::cout << "diagrams are equivalent at " << inst.recommended_max_objects
                  << " objects exactly when the formula is true\n";
        order_hint(inst.order);
      } else if (gen_kind == "arrowing") {
        need(3, "three inputs: pattern, red target, blue target graph files");
        ArrowingInstance inst =
            gen_arrowing(parse_ugraph(slurp(gen_inputs[0])), parse_ugraph(slurp(gen_inputs[1])),
                         parse_ugraph(slurp(gen_inputs[2])));
        spill(path("arrowing_left.gfodd"), render_gfodd(inst.left));
        spill(path("arrowing_right.gfodd"), render_gfodd(inst.right));
        std::cout << "right diagram redirects the false branch of node " << inst.redirected_node
                  << " to 0; the diagrams are equivalent on coloring interpretations exactly "
                     "when the pattern arrows the target pair\n";
        order_hint(inst.order);
      } else {  // value-instance
        need(2, "two inputs: two DIMACS files");
        ValueInstance inst = gen_value_instance(parse_dimacs_cnf(slurp(gen_inputs[0])),
                                                parse_dimacs_cnf(slurp(gen_inputs[1])));
        spill(path("value.gfodd"), render_gfodd(inst.gfodd));
        std::cout << "map value reaches " << inst.target.str()
                  << " exactly when either formula is satisfiable (2 when both);\n"
                  << "recommended max objects for the value search: "
                  << inst.recommended_max_objects << "\n";
        order_hint(inst.order);
      }
      return 0;
    }

    if (*dot) {
      emit(dot_out, export_dot(load_gfodd(dot_diagram)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
