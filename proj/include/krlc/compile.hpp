#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "krlc/automata.hpp"
#include "krlc/cascades.hpp"
#include "krlc/errors.hpp"
#include "krlc/operators.hpp"
#include "krlc/pltl.hpp"
#include "krlc/programs.hpp"

namespace krlc {

/// Maps variables to bit positions across a translation.
struct VariableWiring {
  std::vector<Variable> input_vars;   // external input bits, in order
  std::vector<Variable> output_vars;  // output bits, in order (automaton/cascade to program)
  // program to cascade: defined variable -> (component index, bit within its output)
  std::map<Variable, std::pair<std::size_t, std::size_t>> defined_bits;
};

namespace detail {

inline bool eval_static_formula(const FormulaPtr& f,
                                const std::function<bool(const Variable&)>& env) {
  switch (f->kind) {
    case FKind::Top: return true;
    case FKind::Bot: return false;
    case FKind::Atom: return env(f->atom);
    case FKind::Not: return !eval_static_formula(f->lhs, env);
    case FKind::And: return eval_static_formula(f->lhs, env) && eval_static_formula(f->rhs, env);
    case FKind::Or: return eval_static_formula(f->lhs, env) || eval_static_formula(f->rhs, env);
    default: fail("Internal", "formula is not static");
  }
}

/// Full-minterm DNF of a truth table over the variables the function actually
/// depends on; no further minimization.
inline FormulaPtr dnf_from_table(const std::vector<Variable>& vars,
                                 const std::function<bool(const std::vector<bool>&)>& truth) {
  std::size_t n = std::size_t{1} << vars.size();
  std::vector<bool> table(n);
  for (std::size_t idx = 0; idx < n; ++idx) table[idx] = truth(bits_from_index(idx, vars.size()));

  // Keep only variables whose flip changes the function somewhere.
  std::vector<Variable> kept;
  std::vector<std::size_t> kept_pos;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::size_t mask = std::size_t{1} << (vars.size() - 1 - i);
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (table[idx] != table[idx ^ mask]) {
        kept.push_back(vars[i]);
        kept_pos.push_back(i);
        break;
      }
    }
  }

  FormulaPtr result;
  std::size_t m = std::size_t{1} << kept.size();
  for (std::size_t idx = 0; idx < m; ++idx) {
    std::vector<bool> bits = bits_from_index(idx, kept.size());
    std::vector<bool> full(vars.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) full[kept_pos[i]] = bits[i];
    if (!table[index_from_bits(full)]) continue;
    FormulaPtr term;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      FormulaPtr lit = bits[i] ? f_atom(kept[i]) : f_not(f_atom(kept[i]));
      term = term ? f_and(term, lit) : lit;
    }
    if (!term) term = f_top();  // constant-true function
    result = result ? f_or(result, term) : term;
  }
  return result ? result : f_bot();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rule-to-automaton constructions.
// ---------------------------------------------------------------------------

/// Flip-flop with phi(1)=set, phi(0)=reset; outputs the pre-update state,
/// which is the truth of Y q at the current instant.
inline Automaton delay_rule_to_automaton(const DelayRule&) {
  Semiautomaton ff = canonical_flip_flop();
  // canonical letters: set=0, reset=1, read=2
  InputFunction phi{Alphabet::bitvec(1), ff.input, {1, 0}};
  Automaton a;
  a.semi = compose(phi, ff);
  a.init = 0;  // low
  a.output = Alphabet::bitvec(1);
  a.theta = {{0, 0}, {1, 1}};  // output = current state (low=0, high=1)
  return a;
}

/// The operator's semiautomaton with the one-hot encoding of the post-update
/// state as output.
inline Automaton dynamic_rule_to_automaton(const DynamicRule& r) {
  int n = r.op.state_count();
  Automaton a;
  a.semi = r.op.semi;
  a.init = r.op.init;
  a.output = Alphabet::bitvec(n);
  a.theta.assign(n, std::vector<int>(a.semi.input.size()));
  for (int q = 0; q < n; ++q) {
    for (std::size_t sigma = 0; sigma < a.semi.input.size(); ++sigma) {
      int next = a.semi.delta[q][sigma];
      a.theta[q][sigma] = 1 << (n - 1 - next);
    }
  }
  return a;
}

/// Trivial automaton outputting the truth of the body under the current
/// letter; input bits are the body's variables in first-occurrence order.
inline Automaton static_rule_to_automaton(const StaticRule& r) {
  std::vector<Variable> vars = variables_of(r.body);
  Automaton a;
  a.semi.input = Alphabet::bitvec(static_cast<int>(vars.size()));
  a.semi.states = {"q1"};
  a.semi.delta = {std::vector<int>(a.semi.input.size(), 0)};
  a.init = 0;
  a.output = Alphabet::bitvec(1);
  a.theta.resize(1);
  for (std::size_t sigma = 0; sigma < a.semi.input.size(); ++sigma) {
    std::vector<bool> bits = bits_from_index(sigma, vars.size());
    bool v = detail::eval_static_formula(r.body, [&](const Variable& x) {
      auto it = std::find(vars.begin(), vars.end(), x);
      return bits[static_cast<std::size_t>(it - vars.begin())];
    });
    a.theta[0].push_back(v ? 1 : 0);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Program -> cascade.
// ---------------------------------------------------------------------------

/// One component per rule, in dependency order; each component projects the
/// bits of its rule's body variables out of the structured letter.
inline std::pair<AutoCascade, VariableWiring> program_to_cascade(const Program& p) {
  std::vector<const Rule*> order = topological_rules(p);
  VariableWiring w;
  w.input_vars = p.input_vars;
  std::size_t m = p.input_vars.size();

  AutoCascade c;
  c.external = Alphabet::bitvec(static_cast<int>(m));

  // Bit position of each variable in the structured letter
  // [input bits][component 1 output bits]...; filled as components are built.
  std::map<Variable, std::size_t> bit_of;
  for (std::size_t i = 0; i < m; ++i) bit_of[p.input_vars[i]] = i;
  std::size_t total_bits = m;

  for (std::size_t ci = 0; ci < order.size(); ++ci) {
    const Rule& r = *order[ci];
    Automaton raw;
    std::vector<Variable> body_vars;
    std::vector<Variable> heads;
    if (const auto* s = std::get_if<StaticRule>(&r)) {
      raw = static_rule_to_automaton(*s);
      body_vars = variables_of(s->body);
      heads = {s->head};
    } else if (const auto* d = std::get_if<DelayRule>(&r)) {
      raw = delay_rule_to_automaton(*d);
      // Seed the latch with the body's value at the virtual instant: true
      // exactly when the body is the initial head of a dynamic rule.
      for (const Rule& other : p.rules) {
        if (const auto* dyn = std::get_if<DynamicRule>(&other)) {
          if (dyn->heads[static_cast<std::size_t>(dyn->op.init)] == d->body) raw.init = 1;
        }
      }
      body_vars = {d->body};
      heads = {d->head};
    } else {
      const auto& dyn = std::get<DynamicRule>(r);
      raw = dynamic_rule_to_automaton(dyn);
      body_vars = dyn.args;
      heads = dyn.heads;
    }

    InputFunction phi;
    phi.from = Alphabet::bitvec(static_cast<int>(total_bits));
    phi.to = raw.semi.input;
    std::vector<std::size_t> positions;
    for (const Variable& v : body_vars) positions.push_back(bit_of.at(v));
    phi.map.resize(phi.from.size());
    for (std::size_t sigma = 0; sigma < phi.from.size(); ++sigma) {
      std::size_t target = 0;
      for (std::size_t b : positions) {
        target = (target << 1) | ((sigma >> (total_bits - 1 - b)) & 1u);
      }
      phi.map[sigma] = static_cast<int>(target);
    }
    c.components.push_back(compose_automaton(phi, raw));

    std::size_t width = static_cast<std::size_t>(raw.output.bits);
    for (std::size_t i = 0; i < heads.size(); ++i) {
      std::size_t bit = heads.size() == 1 ? 0 : i;  // one-hot bit i for dynamic heads
      w.defined_bits[heads[i]] = {ci, bit};
      bit_of[heads[i]] = total_bits + bit;
    }
    total_bits += width;
  }
  c.validate();
  return {std::move(c), std::move(w)};
}

/// Truth of a defined variable at 1-based instant t along a cascade run
/// produced from program_to_cascade.
inline bool cascade_variable_holds(const AutoCascade& c, const VariableWiring& w,
                                   const CascadeRun& run, std::size_t t, const Variable& v) {
  auto it = w.defined_bits.find(v);
  if (it == w.defined_bits.end()) fail("UnknownVariable", v);
  auto [ci, bit] = it->second;
  if (t < 1 || t > run.component_outputs.size()) fail("TimeOutOfRange", "t=" + std::to_string(t));
  int gamma = run.component_outputs[t - 1][ci];
  int width = c.components[ci].output.bits;
  return (gamma >> (width - 1 - static_cast<int>(bit))) & 1;
}

// ---------------------------------------------------------------------------
// Automaton -> program, cascade -> program.
// ---------------------------------------------------------------------------

namespace detail {

struct FreshNames {
  std::size_t next = 1;
  Variable make(const std::string& base) { return fresh_variable(base, next++); }
};

/// Shared worker: compiles one automaton (factored as phi over a core) into
/// rules appended to `rules`, given names for its input bits.  Returns the
/// fresh output variable names.
inline std::vector<Variable> automaton_rules(const Automaton& a, const InputFunction& phi,
                                             const Semiautomaton& core,
                                             const std::vector<Variable>& inputs,
                                             FreshNames& fresh, std::vector<Rule>* rules) {
  if (!a.semi.input.is_bits() || !a.output.is_bits() || !phi.to.is_bits())
    fail("NotBitAlphabet", "automaton-to-program needs bit alphabets");
  if (static_cast<std::size_t>(a.semi.input.bits) != inputs.size())
    fail("ArityMismatch", "one input variable per input bit required");

  std::size_t n = core.state_count();
  std::size_t k = static_cast<std::size_t>(phi.to.bits);
  std::size_t h = static_cast<std::size_t>(a.output.bits);

  std::vector<Variable> qs, qps, bs;
  if (n > 1) {
    // Internal input bits b_i defined by the bits of phi.
    for (std::size_t i = 0; i < k; ++i) {
      Variable b = fresh.make("b");
      bs.push_back(b);
      rules->push_back(StaticRule{
          b, dnf_from_table(inputs, [&](const std::vector<bool>& bits) {
            int target = phi.map[index_from_bits(bits)];
            return ((target >> (k - 1 - i)) & 1) != 0;
          })});
    }
    for (std::size_t i = 0; i < n; ++i) qs.push_back(fresh.make("q"));
    DynamicRule dyn;
    dyn.heads = qs;
    dyn.op_name = "A";
    dyn.op.arity = static_cast<int>(k);
    dyn.op.semi = core;
    dyn.op.init = a.init;
    dyn.args = bs;
    rules->push_back(std::move(dyn));
    for (std::size_t i = 0; i < n; ++i) {
      Variable qp = fresh.make("qp");
      qps.push_back(qp);
      rules->push_back(DelayRule{qp, qs[i]});
    }
  }

  // Output bits c_i over the delayed state one-hot and the external inputs;
  // the all-false delayed row (t=1) reads as the initial state.
  std::vector<Variable> cs;
  std::vector<Variable> out_vars = qps;
  out_vars.insert(out_vars.end(), inputs.begin(), inputs.end());
  for (std::size_t i = 0; i < h; ++i) {
    Variable cv = fresh.make("c");
    cs.push_back(cv);
    rules->push_back(StaticRule{
        cv, dnf_from_table(out_vars, [&](const std::vector<bool>& bits) {
          int state = a.init;
          for (std::size_t s = 0; s < n && n > 1; ++s) {
            if (bits[s]) {
              state = static_cast<int>(s);
              break;
            }
          }
          std::vector<bool> sigma(bits.begin() + static_cast<long>(qps.size()), bits.end());
          int out = a.theta[state][index_from_bits(sigma)];
          return ((out >> (h - 1 - i)) & 1) != 0;
        })});
  }
  return cs;
}

}  // namespace detail

/// Program with one dynamic rule over the core, delay rules exposing the
/// previous state, and static rules for the input function and outputs.
/// One-state automata compile to output rules only.
inline std::pair<Program, VariableWiring> automaton_to_program(
    const Automaton& a, const InputFunction& phi, const Semiautomaton& core,
    std::vector<Variable> input_names = {}) {
  if (!a.semi.input.is_bits()) fail("NotBitAlphabet", "automaton input must be a bit alphabet");
  detail::FreshNames fresh;
  if (input_names.empty()) {
    for (int i = 0; i < a.semi.input.bits; ++i) input_names.push_back(fresh.make("a"));
  }
  std::vector<Rule> rules;
  std::vector<Variable> outputs = detail::automaton_rules(a, phi, core, input_names, fresh, &rules);
  VariableWiring w;
  w.input_vars = input_names;
  w.output_vars = outputs;
  return {make_program(std::move(rules)), std::move(w)};
}

inline std::pair<Program, VariableWiring> automaton_to_program(const Automaton& a,
                                                               std::vector<Variable> input_names = {}) {
  return automaton_to_program(a, InputFunction::identity(a.semi.input), a.semi,
                              std::move(input_names));
}

/// Union of per-component programs; each component reads the external input
/// variables plus the output variables of the earlier components.
inline std::pair<Program, VariableWiring> cascade_to_program(const AutoCascade& c,
                                                             std::vector<Variable> input_names = {}) {
  c.validate();
  if (!c.external.is_bits()) fail("NotBitAlphabet", "cascade external alphabet must be bits");
  detail::FreshNames fresh;
  if (input_names.empty()) {
    for (int i = 0; i < c.external.bits; ++i) input_names.push_back(fresh.make("a"));
  }
  std::vector<Rule> rules;
  std::vector<Variable> feed = input_names;  // structured-letter bit variables
  std::vector<Variable> outputs;
  VariableWiring w;
  for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
    const Automaton& comp = c.components[ci];
    if (!comp.output.is_bits()) fail("NotBitAlphabet", "component outputs must be bit alphabets");
    outputs = detail::automaton_rules(comp, InputFunction::identity(comp.semi.input), comp.semi,
                                      feed, fresh, &rules);
    for (std::size_t i = 0; i < outputs.size(); ++i) w.defined_bits[outputs[i]] = {ci, i};
    feed.insert(feed.end(), outputs.begin(), outputs.end());
  }
  w.input_vars = input_names;
  w.output_vars = outputs;
  return {make_program(std::move(rules)), std::move(w)};
}

// ---------------------------------------------------------------------------
// PLTL -> program and back.
// ---------------------------------------------------------------------------

/// One rule per non-atom node of the desugared formula; constants share a
/// single static rule.  The accept variable names the root.
inline std::pair<Program, Variable> pltl_to_program(const FormulaPtr& formula) {
  FormulaPtr core = desugar(formula);
  detail::FreshNames fresh;
  std::vector<Rule> rules;
  OperatorRegistry registry;
  std::map<FKind, Variable> constants;

  std::function<Variable(const FormulaPtr&)> compile = [&](const FormulaPtr& f) -> Variable {
    switch (f->kind) {
      case FKind::Atom:
        return f->atom;
      case FKind::Top:
      case FKind::Bot: {
        auto it = constants.find(f->kind);
        if (it != constants.end()) return it->second;
        Variable v = fresh.make("v");
        rules.push_back(StaticRule{v, f->kind == FKind::Top ? f_top() : f_bot()});
        constants.emplace(f->kind, v);
        return v;
      }
      case FKind::Not: {
        Variable x = compile(f->lhs);
        Variable v = fresh.make("v");
        rules.push_back(StaticRule{v, f_not(f_atom(x))});
        return v;
      }
      case FKind::And:
      case FKind::Or: {
        Variable x = compile(f->lhs);
        Variable y = compile(f->rhs);
        Variable v = fresh.make("v");
        FormulaPtr body = f->kind == FKind::And ? f_and(f_atom(x), f_atom(y))
                                                : f_or(f_atom(x), f_atom(y));
        rules.push_back(StaticRule{v, body});
        return v;
      }
      case FKind::Before: {
        Variable x = compile(f->lhs);
        Variable v = fresh.make("v");
        rules.push_back(DelayRule{v, x});
        return v;
      }
      case FKind::Since: {
        Variable x = compile(f->lhs);
        Variable y = compile(f->rhs);
        DynamicRule r;
        Variable v = fresh.make("v");
        r.heads = {fresh.make("q"), v};
        r.op_name = "S";
        r.op = registry.lookup("S");
        r.args = {x, y};
        rules.push_back(std::move(r));
        return v;
      }
      default:
        fail("Internal", "unexpected sugar after desugar");
    }
  };

  Variable accept = compile(core);
  Program p;
  p.rules = std::move(rules);
  validate_program(p);
  return {std::move(p), accept};
}

/// Iterative substitution of rule bodies: since-rule heads become (the
/// negation of) b S c, delay heads become Y of the unfolded body.
inline FormulaPtr unfold_program(const Program& p, const Variable& a) {
  std::map<Variable, FormulaPtr> memo;
  std::function<FormulaPtr(const Variable&)> unfold = [&](const Variable& v) -> FormulaPtr {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    FormulaPtr result;
    if (!p.defines(v)) {
      result = f_atom(v);
    } else {
      for (const Rule& r : p.rules) {
        if (const auto* s = std::get_if<StaticRule>(&r)) {
          if (s->head != v) continue;
          std::function<FormulaPtr(const FormulaPtr&)> subst =
              [&](const FormulaPtr& f) -> FormulaPtr {
            switch (f->kind) {
              case FKind::Top: return f_top();
              case FKind::Bot: return f_bot();
              case FKind::Atom: return unfold(f->atom);
              case FKind::Not: return f_not(subst(f->lhs));
              case FKind::And: return f_and(subst(f->lhs), subst(f->rhs));
              case FKind::Or: return f_or(subst(f->lhs), subst(f->rhs));
              default: fail("Internal", "static body with temporal node");
            }
          };
          result = subst(s->body);
          break;
        }
        if (const auto* d = std::get_if<DelayRule>(&r)) {
          if (d->head != v) continue;
          result = f_before(unfold(d->body));
          break;
        }
        const auto& dyn = std::get<DynamicRule>(r);
        auto pos = std::find(dyn.heads.begin(), dyn.heads.end(), v);
        if (pos == dyn.heads.end()) continue;
        if (!is_since_rule(dyn))
          fail("UnsupportedOperator", "unfolding requires since rules, got " + dyn.op_name);
        FormulaPtr since = f_since(unfold(dyn.args[0]), unfold(dyn.args[1]));
        result = pos == dyn.heads.begin() ? f_not(since) : since;
        break;
      }
    }
    if (!result) fail("Internal", "no defining rule found");
    memo.emplace(v, result);
    return result;
  };
  if (!p.mentions(a)) fail("UnknownVariable", a);
  return unfold(a);
}

/// Normal treelike-leaning construction: temporal operands that are
/// themselves temporally defined get a static alias rule, so delay and since
/// rules only mention statically-defined or input variables, and static
/// bodies only mention temporally-defined or input variables.
inline std::pair<Program, Variable> formula_to_normal_program(const FormulaPtr& formula) {
  FormulaPtr core = desugar(formula);
  detail::FreshNames fresh;
  std::vector<Rule> rules;
  OperatorRegistry registry;
  std::set<Variable> temporal_heads;

  // Compiles to either an input/defined variable or a static formula over
  // temporally-defined and input variables.
  struct Compiled {
    Variable var;      // set when the node is a variable
    FormulaPtr formula;  // set when the node is a static combination
  };

  std::function<Compiled(const FormulaPtr&)> compile;

  // Returns a variable usable as a temporal-rule operand: not temporally
  // defined.
  auto operand = [&](const FormulaPtr& f) -> Variable {
    Compiled c = compile(f);
    if (!c.var.empty() && !temporal_heads.count(c.var)) return c.var;
    FormulaPtr body = c.var.empty() ? c.formula : f_atom(c.var);
    Variable v = fresh.make("v");
    rules.push_back(StaticRule{v, body});
    return v;
  };

  compile = [&](const FormulaPtr& f) -> Compiled {
    switch (f->kind) {
      case FKind::Atom: return {f->atom, {}};
      case FKind::Top: return {{}, f_top()};
      case FKind::Bot: return {{}, f_bot()};
      case FKind::Not: {
        Compiled c = compile(f->lhs);
        return {{}, f_not(c.var.empty() ? c.formula : f_atom(c.var))};
      }
      case FKind::And:
      case FKind::Or: {
        Compiled l = compile(f->lhs);
        Compiled r = compile(f->rhs);
        FormulaPtr lf = l.var.empty() ? l.formula : f_atom(l.var);
        FormulaPtr rf = r.var.empty() ? r.formula : f_atom(r.var);
        return {{}, f->kind == FKind::And ? f_and(lf, rf) : f_or(lf, rf)};
      }
      case FKind::Before: {
        Variable x = operand(f->lhs);
        Variable v = fresh.make("v");
        rules.push_back(DelayRule{v, x});
        temporal_heads.insert(v);
        return {v, {}};
      }
      case FKind::Since: {
        Variable x = operand(f->lhs);
        Variable y = operand(f->rhs);
        DynamicRule r;
        Variable v = fresh.make("v");
        Variable q = fresh.make("q");
        r.heads = {q, v};
        r.op_name = "S";
        r.op = registry.lookup("S");
        r.args = {x, y};
        rules.push_back(std::move(r));
        temporal_heads.insert(v);
        temporal_heads.insert(q);
        return {v, {}};
      }
      default:
        fail("Internal", "unexpected sugar after desugar");
    }
  };

  Compiled root = compile(core);
  Variable accept = root.var;
  if (accept.empty()) {
    accept = fresh.make("v");
    rules.push_back(StaticRule{accept, root.formula});
  }
  Program p;
  p.rules = std::move(rules);
  validate_program(p);
  return {std::move(p), accept};
}

// ---------------------------------------------------------------------------
// Flip-flop automata and their PLTL programs.
// ---------------------------------------------------------------------------

/// A flip-flop automaton given symbolically: static programs computing the
/// latch command from the inputs and the outputs from the (pre-update) state
/// and the inputs.
struct FlipFlopAutomatonSpec {
  std::vector<Variable> input_vars;
  Program p_phi;    // static rules defining `set` and `reset` over input_vars
  Program p_theta;  // static rules over {high, low} and input_vars
  std::vector<Variable> output_vars;  // heads of p_theta exposed as output bits
  int init = 0;                       // 0 = low, 1 = high
};

namespace detail {

inline FormulaPtr static_head_body(const Program& p, const Variable& head) {
  for (const Rule& r : p.rules) {
    if (const auto* s = std::get_if<StaticRule>(&r)) {
      if (s->head == head) return s->body;
    }
  }
  fail("UnknownVariable", "no static rule for " + head);
}

}  // namespace detail

/// Direct Mealy form of the specified flip-flop automaton.
inline Automaton flipflop_automaton(const FlipFlopAutomatonSpec& spec) {
  std::size_t m = spec.input_vars.size();
  FormulaPtr set_body = detail::static_head_body(spec.p_phi, "set");
  FormulaPtr reset_body = detail::static_head_body(spec.p_phi, "reset");
  Automaton out;
  out.semi.input = Alphabet::bitvec(static_cast<int>(m));
  out.semi.states = {"low", "high"};
  out.semi.delta.assign(2, std::vector<int>(out.semi.input.size()));
  out.init = spec.init;
  out.output = Alphabet::bitvec(static_cast<int>(spec.output_vars.size()));
  out.theta.assign(2, std::vector<int>(out.semi.input.size()));
  for (std::size_t sigma = 0; sigma < out.semi.input.size(); ++sigma) {
    std::vector<bool> bits = bits_from_index(sigma, m);
    auto env = [&](const Variable& v) {
      auto it = std::find(spec.input_vars.begin(), spec.input_vars.end(), v);
      if (it == spec.input_vars.end()) fail("UnknownVariable", v);
      return bits[static_cast<std::size_t>(it - spec.input_vars.begin())];
    };
    bool s = detail::eval_static_formula(set_body, env);
    bool r = detail::eval_static_formula(reset_body, env);
    for (int q = 0; q < 2; ++q) {
      out.semi.delta[q][sigma] = s ? 1 : (r ? 0 : q);
      auto theta_env = [&](const Variable& v) -> bool {
        if (v == "high") return q == 1;
        if (v == "low") return q == 0;
        return env(v);
      };
      int gamma = 0;
      for (const Variable& ov : spec.output_vars) {
        gamma = (gamma << 1) |
                (detail::eval_static_formula(detail::static_head_body(spec.p_theta, ov), theta_env)
                     ? 1
                     : 0);
      }
      out.theta[q][sigma] = gamma;
    }
  }
  return out;
}

/// PLTL program for a flip-flop automaton starting low:
/// high :- Y (!reset S set), low :- !high, plus the input and output rules.
inline Program flipflop_automaton_to_pltl_program(const FlipFlopAutomatonSpec& spec) {
  if (spec.init != 0)
    fail("UnsupportedInitialState", "only the low initial state is supported");
  OperatorRegistry registry;
  std::vector<Rule> rules;
  for (const Rule& r : spec.p_phi.rules) rules.push_back(r);
  Variable nreset = fresh_variable("nr", 1);
  Variable strack = fresh_variable("s", 1);
  rules.push_back(StaticRule{nreset, f_not(f_atom("reset"))});
  DynamicRule since;
  since.heads = {fresh_variable("q", 1), strack};
  since.op_name = "S";
  since.op = registry.lookup("S");
  since.args = {nreset, "set"};
  rules.push_back(std::move(since));
  rules.push_back(DelayRule{"high", strack});
  rules.push_back(StaticRule{"low", f_not(f_atom("high"))});
  for (const Rule& r : spec.p_theta.rules) rules.push_back(r);
  return make_program(std::move(rules));
}

}  // namespace krlc
