// krlc: Past LTL, KR-Logic programs, automata cascades, and the translations
// between them, from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "krlc/algebra.hpp"
#include "krlc/automata.hpp"
#include "krlc/cascades.hpp"
#include "krlc/compile.hpp"
#include "krlc/core.hpp"
#include "krlc/equiv.hpp"
#include "krlc/errors.hpp"
#include "krlc/operators.hpp"
#include "krlc/pltl.hpp"
#include "krlc/programs.hpp"

namespace {

constexpr int kSchemaVersion = 1;

using nlohmann::json;
using namespace krlc;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileNotFound", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail("FileNotFound", path);
  out << text;
}

std::vector<Variable> split_vars(const std::string& csv) {
  std::vector<Variable> vars;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string v = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!v.empty()) vars.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return vars;
}

std::size_t budget_from_env() {
  if (const char* env = std::getenv("KRLC_BUDGET")) {
    return static_cast<std::size_t>(std::stoull(env));
  }
  return 10000000;
}

struct Artifact {
  enum Kind { FormulaKind, ProgramKind, AutomatonKind, CascadeKind } kind;
  FormulaPtr formula;
  Program program;
  Variable accept_var;
  Automaton automaton;
  AutoCascade cascade;
};

// A literal formula, a .krl path (with an optional :var accept suffix), or a
// .json automaton/cascade path, sniffed by extension unless `kind` is given.
Artifact load_artifact(const std::string& spec, OperatorRegistry& registry,
                       const std::string& kind) {
  Artifact a{Artifact::FormulaKind, {}, {}, {}, {}, {}};
  std::string path = spec;
  std::string var;
  auto colon = spec.rfind(':');
  if (colon != std::string::npos && spec.find(".krl:", 0) != std::string::npos) {
    path = spec.substr(0, colon);
    var = spec.substr(colon + 1);
  }
  std::string sniffed = kind;
  if (sniffed.empty()) {
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".krl") == 0) sniffed = "program";
    else if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0) sniffed = "json";
    else sniffed = "formula";
  }
  if (sniffed == "formula") {
    a.kind = Artifact::FormulaKind;
    a.formula = parse_formula(spec);
  } else if (sniffed == "program") {
    a.kind = Artifact::ProgramKind;
    a.program = parse_program(read_file(path), registry);
    if (var.empty()) fail("UsageError", "program artifact needs an accept variable: " + path + ":v");
    a.accept_var = var;
  } else {
    json j = json::parse(read_file(path));
    if (j.contains("components")) {
      a.kind = Artifact::CascadeKind;
      a.cascade = cascade_from_json(j);
    } else {
      a.kind = Artifact::AutomatonKind;
      a.automaton = automaton_from_json(j);
    }
  }
  return a;
}

Recognizer recognizer_of_artifact(const Artifact& a, const std::vector<Variable>& universe) {
  switch (a.kind) {
    case Artifact::FormulaKind: return recognizer_of_formula(a.formula, universe);
    case Artifact::ProgramKind: return recognizer_of_program(a.program, a.accept_var, universe);
    case Artifact::AutomatonKind: return recognizer_of_automaton(a.automaton, universe);
    case Artifact::CascadeKind: return recognizer_of_cascade(a.cascade, universe);
  }
  fail("Internal", "unreachable");
}

std::vector<Variable> default_universe(const Artifact& a) {
  switch (a.kind) {
    case Artifact::FormulaKind: return variables_of(a.formula);
    case Artifact::ProgramKind: return a.program.input_vars;
    default: return {};
  }
}

json trace_json(const Trace& I) {
  json steps = json::array();
  for (std::size_t t = 0; t < I.steps.size(); ++t) {
    json step = json::array();
    for (std::size_t i = 0; i < I.universe.size(); ++i) {
      if (I.steps[t][i]) step.push_back(I.universe[i]);
    }
    steps.push_back(step);
  }
  return steps;
}

void emit(bool as_json, const json& payload, const std::string& text) {
  if (as_json) {
    json j = payload;
    j["schema_version"] = kSchemaVersion;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

int run_main(int argc, char** argv) {
  CLI::App app{"Past LTL, KR-Logic programs, and automata cascades"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string convention = "literal";
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--counter-convention", convention, "C<n> increment reading")
      ->check(CLI::IsMember({"literal", "intent"}));

  std::string formula_text, trace_text, program_path, var, automaton_path, cascade_path;
  std::string input_text, to_target, out_path, left_spec, right_spec, vars_csv, kind;
  std::string similar_left, similar_right;
  long long at = -1;
  std::size_t maxlen = 5;

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a trace");
  eval->add_option("--formula", formula_text)->required();
  eval->add_option("--trace", trace_text)->required();
  eval->add_option("--at", at, "time index (default: last instant)");
  eval->add_option("--vars", vars_csv, "trace universe (default: formula variables)");

  auto* evalp = app.add_subcommand("eval-program", "evaluate a program variable on a trace");
  evalp->add_option("--program", program_path)->required();
  evalp->add_option("--trace", trace_text)->required();
  evalp->add_option("--var", var)->required();
  evalp->add_option("--at", at, "time index (default: last instant)");

  auto* run_cmd = app.add_subcommand("run", "run an automaton on an input word");
  run_cmd->add_option("--automaton", automaton_path)->required();
  run_cmd->add_option("--input", input_text)->required();

  auto* runc = app.add_subcommand("run-cascade", "run a cascade on an input word");
  runc->add_option("--cascade", cascade_path)->required();
  runc->add_option("--input", input_text)->required();

  auto* compile_cmd = app.add_subcommand("compile", "translate between representations");
  compile_cmd->add_option("--program", program_path);
  compile_cmd->add_option("--cascade", cascade_path);
  compile_cmd->add_option("--formula", formula_text);
  compile_cmd->add_option("--to", to_target)->required()->check(
      CLI::IsMember({"cascade", "program", "normal-program"}));
  compile_cmd->add_option("-o,--out", out_path, "output file (default: stdout)");

  auto* unfold_cmd = app.add_subcommand("unfold", "unfold a program variable to a formula");
  unfold_cmd->add_option("--program", program_path)->required();
  unfold_cmd->add_option("--var", var)->required();

  auto* normalize = app.add_subcommand("normalize", "formula to a normal program");
  normalize->add_option("--formula", formula_text)->required();

  auto* algebra_cmd = app.add_subcommand("algebra", "characteristic semigroup report");
  algebra_cmd->add_option("--automaton", automaton_path);
  algebra_cmd->add_option("--similar", similar_left, "first operator name");
  algebra_cmd->add_option("--with", similar_right, "second operator name");

  auto* equiv_cmd = app.add_subcommand("equiv", "bounded language comparison");
  equiv_cmd->add_option("--left", left_spec)->required();
  equiv_cmd->add_option("--right", right_spec)->required();
  equiv_cmd->add_option("--maxlen", maxlen)->required();
  equiv_cmd->add_option("--vars", vars_csv, "shared universe");
  equiv_cmd->add_option("--kind", kind, "force artifact kind for literals");

  auto* operators_cmd = app.add_subcommand("operators", "list built-in operators");

  // App-level flags (--json, --counter-convention) may follow the subcommand.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  CounterConvention conv =
      convention == "literal" ? CounterConvention::Literal : CounterConvention::Intent;
  OperatorRegistry registry(conv);
  std::size_t budget = budget_from_env();

  if (*eval) {
    FormulaPtr f = parse_formula(formula_text);
    std::vector<Variable> universe = vars_csv.empty() ? variables_of(f) : split_vars(vars_csv);
    Trace I = parse_trace(trace_text, universe);
    std::size_t t = at < 0 ? I.length() : static_cast<std::size_t>(at);
    bool value = eval_formula(f, I, t);
    emit(as_json, {{"result", value}, {"at", t}}, value ? "true" : "false");
    return 0;
  }
  if (*evalp) {
    Program p = parse_program(read_file(program_path), registry);
    std::vector<Variable> universe = p.input_vars;
    Trace I = parse_trace(trace_text, universe);
    std::size_t t = at < 0 ? I.length() : static_cast<std::size_t>(at);
    bool value = eval_program(p, I, t, var);
    emit(as_json, {{"result", value}, {"at", t}, {"var", var}}, value ? "true" : "false");
    return 0;
  }
  if (*run_cmd) {
    Automaton a = automaton_from_json(json::parse(read_file(automaton_path)));
    std::vector<int> input = parse_letters(a.semi.input, input_text);
    RunResult r = run(a, input);
    json states = json::array(), outputs = json::array();
    std::string text = "states:";
    for (int q : r.states) {
      states.push_back(a.semi.states[q]);
      text += " " + a.semi.states[q];
    }
    text += "\noutputs:";
    for (int g : r.outputs) {
      outputs.push_back(a.output.letter_name(g));
      text += " " + a.output.letter_name(g);
    }
    emit(as_json, {{"states", states}, {"outputs", outputs}}, text);
    return 0;
  }
  if (*runc) {
    AutoCascade c = cascade_from_json(json::parse(read_file(cascade_path)));
    std::vector<int> input = parse_letters(c.external, input_text);
    CascadeRun r = run_cascade(c, input);
    json outputs = json::array();
    std::string text = "outputs:";
    for (int g : r.outputs) {
      outputs.push_back(c.output().letter_name(g));
      text += " " + c.output().letter_name(g);
    }
    json states = json::array();
    for (const auto& joint : r.states) {
      json js = json::array();
      for (std::size_t i = 0; i < joint.size(); ++i) {
        js.push_back(c.components[i].semi.states[joint[i]]);
      }
      states.push_back(js);
    }
    emit(as_json, {{"states", states}, {"outputs", outputs}}, text);
    return 0;
  }
  if (*compile_cmd) {
    if (!program_path.empty() && to_target == "cascade") {
      Program p = parse_program(read_file(program_path), registry);
      auto [c, w] = program_to_cascade(p);
      json j = cascade_to_json(c);
      json bits = json::object();
      for (const auto& [v, loc] : w.defined_bits) {
        bits[v] = {{"component", loc.first}, {"bit", loc.second}};
      }
      j["wiring"] = {{"input_vars", w.input_vars}, {"defined_bits", bits}};
      write_output(out_path, j.dump(2));
      return 0;
    }
    if (!cascade_path.empty() && to_target == "program") {
      AutoCascade c = cascade_from_json(json::parse(read_file(cascade_path)));
      auto [p, w] = cascade_to_program(c);
      std::string text = to_string(p);
      text += "% inputs:";
      for (const auto& v : w.input_vars) text += " " + v;
      text += "\n% outputs:";
      for (const auto& v : w.output_vars) text += " " + v;
      write_output(out_path, text + "\n");
      return 0;
    }
    if (!formula_text.empty() && (to_target == "program" || to_target == "normal-program")) {
      FormulaPtr f = parse_formula(formula_text);
      auto [p, accept] = to_target == "program" ? pltl_to_program(f) : formula_to_normal_program(f);
      write_output(out_path, to_string(p) + "% accept: " + accept + "\n");
      return 0;
    }
    fail("UsageError", "unsupported compile source/target combination");
  }
  if (*unfold_cmd) {
    Program p = parse_program(read_file(program_path), registry);
    FormulaPtr f = unfold_program(p, var);
    emit(as_json, {{"formula", to_string(f)}}, to_string(f));
    return 0;
  }
  if (*normalize) {
    FormulaPtr f = parse_formula(formula_text);
    auto [p, accept] = formula_to_normal_program(f);
    emit(as_json, {{"program", to_string(p)}, {"accept", accept}},
         to_string(p) + "% accept: " + accept);
    return 0;
  }
  if (*algebra_cmd) {
    if (!similar_left.empty()) {
      if (similar_right.empty()) fail("UsageError", "--similar needs --with");
      auto factored = [&](const std::string& name) -> FactoredOperator {
        if (name == "F") return factored_flip_flop();
        if (name == "S") return factored_since();
        if (name == "P") return factored_parity();
        if (name.rfind("Cs", 0) == 0) return factored_simplified_counter(std::stoi(name.substr(2)));
        if (name.rfind("C", 0) == 0) return factored_counter(std::stoi(name.substr(1)), conv);
        fail("UnknownOperator", name);
      };
      bool similar = operators_similar(factored(similar_left), factored(similar_right));
      emit(as_json, {{"similar", similar}}, similar ? "similar" : "not similar");
      return similar ? 0 : 1;
    }
    Automaton a = automaton_from_json(json::parse(read_file(automaton_path)));
    Semigroup s = characteristic_semigroup(a.semi);
    std::string classification = s.flip_flop_monoid ? "flip-flop monoid"
                                 : s.group          ? "group"
                                                    : "other";
    bool simple = s.group && is_simple_group(s);
    int permutations = 0, resets = 0, identities = 0;
    for (const auto& tau : distinct_transformations(a.semi)) {
      if (is_identity(tau)) ++identities;
      if (is_permutation(tau)) ++permutations;
      if (is_reset(tau)) ++resets;
    }
    std::ostringstream text;
    text << classification << ", " << s.size() << " elements";
    if (s.group) text << (simple ? ", simple" : ", not simple");
    text << "; letter transformations: " << permutations << " permutations (" << identities
         << " identity), " << resets << " resets";
    emit(as_json,
         {{"elements", s.size()},
          {"classification", classification},
          {"simple", simple},
          {"permutations", permutations},
          {"identities", identities},
          {"resets", resets}},
         text.str());
    return 0;
  }
  if (*equiv_cmd) {
    Artifact left = load_artifact(left_spec, registry, kind);
    Artifact right = load_artifact(right_spec, registry, kind);
    std::vector<Variable> universe =
        !vars_csv.empty() ? split_vars(vars_csv) : default_universe(left);
    if (universe.empty()) universe = default_universe(right);
    if (universe.empty()) fail("UsageError", "pass --vars to fix the universe");
    EquivReport report =
        bounded_equiv(recognizer_of_artifact(left, universe),
                      recognizer_of_artifact(right, universe), maxlen, budget);
    if (report.equal) {
      emit(as_json, {{"equal", true}, {"traces_checked", report.traces_checked}},
           "equal up to length " + std::to_string(maxlen));
      return 0;
    }
    emit(as_json,
         {{"equal", false},
          {"counterexample", trace_json(*report.counterexample)},
          {"accepted_by", report.left_accepts ? "left" : "right"}},
         "counterexample: " + serialize_trace(*report.counterexample) + " (accepted by " +
             (report.left_accepts ? "left" : "right") + ")");
    return 1;
  }
  if (*operators_cmd) {
    json ops = json::array();
    std::string text;
    for (const std::string name : {"F", "S", "P", "C3", "Cs3"}) {
      const OperatorAutomaton& op = registry.lookup(name);
      ops.push_back({{"name", name}, {"arity", op.arity}, {"states", op.state_count()}});
      text += name + ": arity " + std::to_string(op.arity) + ", " +
              std::to_string(op.state_count()) + " states\n";
    }
    text += "C<n>, Cs<n> available for any n >= 2";
    emit(as_json, {{"operators", ops}}, text);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const krlc::error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
