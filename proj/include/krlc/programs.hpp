#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "krlc/core.hpp"
#include "krlc/errors.hpp"
#include "krlc/operators.hpp"
#include "krlc/pltl.hpp"

namespace krlc {

struct StaticRule {
  Variable head;
  FormulaPtr body;  // no temporal nodes
};

struct DelayRule {
  Variable head;
  Variable body;
};

struct DynamicRule {
  std::vector<Variable> heads;  // head i true iff the operator is in state i
  std::string op_name;
  OperatorAutomaton op;
  std::vector<Variable> args;
};

using Rule = std::variant<StaticRule, DelayRule, DynamicRule>;

inline const std::vector<Variable>& heads_of(const Rule& r, std::vector<Variable>& scratch) {
  if (const auto* s = std::get_if<StaticRule>(&r)) {
    scratch = {s->head};
    return scratch;
  }
  if (const auto* d = std::get_if<DelayRule>(&r)) {
    scratch = {d->head};
    return scratch;
  }
  return std::get<DynamicRule>(r).heads;
}

inline std::vector<Variable> body_variables_of(const Rule& r) {
  if (const auto* s = std::get_if<StaticRule>(&r)) return variables_of(s->body);
  if (const auto* d = std::get_if<DelayRule>(&r)) return {d->body};
  return std::get<DynamicRule>(r).args;
}

/// A nonrecursive definitorial set of static, delay, and dynamic rules.
struct Program {
  std::vector<Rule> rules;          // textual order
  std::vector<Variable> input_vars;  // mentioned, never defined; first-mention order
  std::vector<Variable> defined_vars;

  bool defines(const Variable& v) const {
    return std::find(defined_vars.begin(), defined_vars.end(), v) != defined_vars.end();
  }

  bool mentions(const Variable& v) const {
    return defines(v) ||
           std::find(input_vars.begin(), input_vars.end(), v) != input_vars.end();
  }

  std::vector<Variable> all_variables() const {
    std::vector<Variable> vars = input_vars;
    vars.insert(vars.end(), defined_vars.begin(), defined_vars.end());
    return vars;
  }
};

/// Derives input/defined partitions and checks definitoriality,
/// nonrecursiveness, and dynamic-rule arities.
inline void validate_program(Program& p) {
  p.input_vars.clear();
  p.defined_vars.clear();
  std::vector<Variable> scratch;
  for (const Rule& r : p.rules) {
    if (const auto* d = std::get_if<DynamicRule>(&r)) {
      if (static_cast<int>(d->args.size()) != d->op.arity)
        fail("ArityMismatch", "operator " + d->op_name + " expects " +
                                  std::to_string(d->op.arity) + " arguments, got " +
                                  std::to_string(d->args.size()));
      if (static_cast<int>(d->heads.size()) != d->op.state_count())
        fail("ArityMismatch", "operator " + d->op_name + " has " +
                                  std::to_string(d->op.state_count()) + " states, got " +
                                  std::to_string(d->heads.size()) + " heads");
      std::set<Variable> distinct(d->heads.begin(), d->heads.end());
      if (distinct.size() != d->heads.size())
        fail("DoubleDefinition", "dynamic rule heads must be pairwise distinct");
    }
    for (const Variable& h : heads_of(r, scratch)) {
      if (std::find(p.defined_vars.begin(), p.defined_vars.end(), h) != p.defined_vars.end())
        fail("DoubleDefinition", h);
      p.defined_vars.push_back(h);
    }
  }
  for (const Rule& r : p.rules) {
    for (const Variable& v : body_variables_of(r)) {
      if (!p.defines(v) &&
          std::find(p.input_vars.begin(), p.input_vars.end(), v) == p.input_vars.end())
        p.input_vars.push_back(v);
    }
  }

  // Cycle check on the head -> body-variable dependency graph.
  std::map<Variable, const Rule*> rule_of;
  for (const Rule& r : p.rules) {
    for (const Variable& h : heads_of(r, scratch)) rule_of[h] = &r;
  }
  std::map<Variable, int> mark;  // 0 unseen, 1 on stack, 2 done
  std::vector<Variable> stack;
  std::function<void(const Variable&)> visit = [&](const Variable& v) {
    auto it = rule_of.find(v);
    if (it == rule_of.end()) return;
    int& m = mark[v];
    if (m == 2) return;
    if (m == 1) {
      std::string cycle;
      auto pos = std::find(stack.begin(), stack.end(), v);
      for (auto s = pos; s != stack.end(); ++s) cycle += *s + " -> ";
      fail("RecursiveProgram", "cycle: " + cycle + v);
    }
    m = 1;
    stack.push_back(v);
    for (const Variable& w : body_variables_of(*it->second)) visit(w);
    stack.pop_back();
    m = 2;
  };
  for (const Variable& v : p.defined_vars) visit(v);
}

/// Rules in dependency order (a rule after every rule defining one of its
/// body variables), stable by textual order.
inline std::vector<const Rule*> topological_rules(const Program& p) {
  std::map<Variable, std::size_t> rule_index;
  std::vector<Variable> scratch;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    for (const Variable& h : heads_of(p.rules[i], scratch)) rule_index[h] = i;
  }
  std::vector<const Rule*> order;
  std::vector<int> state(p.rules.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (state[i]) return;
    state[i] = 1;
    for (const Variable& v : body_variables_of(p.rules[i])) {
      auto it = rule_index.find(v);
      if (it != rule_index.end()) visit(it->second);
    }
    order.push_back(&p.rules[i]);
  };
  for (std::size_t i = 0; i < p.rules.size(); ++i) visit(i);
  return order;
}

// ---------------------------------------------------------------------------
// Parsing.  One rule per line, each ending with '.':
//   p :- <static-formula>.
//   p :- Y q.
//   p :- q S r.                       (sugar: dynamic S-rule, second head p)
//   p1,...,pn :- Op(a1,...,am).
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t fresh_counter_next(std::size_t* counter) { return (*counter)++; }

inline std::vector<Variable> parse_name_list(const std::string& text, std::size_t& pos) {
  std::vector<Variable> names;
  while (true) {
    skip_ws(text, pos);
    std::string name = read_identifier(text, pos);
    if (name.empty()) throw syntax_error("expected variable name", pos);
    if (!is_valid_variable_name(name)) throw syntax_error("invalid variable name '" + name + "'", pos);
    names.push_back(name);
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    return names;
  }
}

}  // namespace detail

/// Fresh generated variable; '$' keeps it out of the user namespace.
inline Variable fresh_variable(const std::string& base, std::size_t k) {
  return base + "$" + std::to_string(k);
}

inline Program parse_program(const std::string& text, OperatorRegistry& registry) {
  if (text.find('$') != std::string::npos)
    throw syntax_error("'$' is reserved for generated variables", text.find('$'));
  Program p;
  std::size_t fresh = 1;
  std::size_t pos = 0;
  detail::skip_ws(text, pos);
  while (pos < text.size()) {
    std::vector<Variable> heads = detail::parse_name_list(text, pos);
    detail::skip_ws(text, pos);
    if (text.compare(pos, 2, ":-") != 0) throw syntax_error("expected ':-'", pos);
    pos += 2;
    detail::skip_ws(text, pos);
    std::size_t dot = text.find('.', pos);
    if (dot == std::string::npos) throw syntax_error("rule must end with '.'", text.size());
    std::string body = text.substr(pos, dot - pos);
    pos = dot + 1;

    // Dynamic form: a lone identifier applied to an argument list.
    std::size_t bpos = 0;
    detail::skip_ws(body, bpos);
    std::size_t id_start = bpos;
    std::string op_name = detail::read_identifier(body, bpos);
    detail::skip_ws(body, bpos);
    bool dynamic_form = !op_name.empty() && bpos < body.size() && body[bpos] == '(' &&
                        (registry.known(op_name) || heads.size() > 1);
    if (dynamic_form && op_name != "Y" && op_name != "O" && op_name != "H") {
      if (!registry.known(op_name)) fail("UnknownOperator", op_name);
      ++bpos;  // '('
      DynamicRule r;
      r.heads = heads;
      r.op_name = op_name;
      r.op = registry.lookup(op_name);
      r.args = detail::parse_name_list(body, bpos);
      detail::skip_ws(body, bpos);
      if (bpos >= body.size() || body[bpos] != ')') throw syntax_error("expected ')'", id_start + bpos);
      ++bpos;
      detail::skip_ws(body, bpos);
      if (bpos != body.size()) throw syntax_error("unexpected trailing input in rule body", bpos);
      p.rules.push_back(std::move(r));
    } else {
      if (heads.size() != 1)
        throw syntax_error("multiple heads require a dynamic rule body", id_start);
      FormulaPtr f = parse_formula(body);
      if (f->kind == FKind::Before && f->lhs->kind == FKind::Atom) {
        p.rules.push_back(DelayRule{heads[0], f->lhs->atom});
      } else if (f->kind == FKind::Since && f->lhs->kind == FKind::Atom &&
                 f->rhs->kind == FKind::Atom) {
        DynamicRule r;
        r.heads = {fresh_variable("q", fresh++), heads[0]};
        r.op_name = "S";
        r.op = registry.lookup("S");
        r.args = {f->lhs->atom, f->rhs->atom};
        p.rules.push_back(std::move(r));
      } else if (is_static(f)) {
        p.rules.push_back(StaticRule{heads[0], f});
      } else {
        throw syntax_error(
            "rule body must be a static formula, 'Y q', 'q S r', or an operator application", 0);
      }
    }
    detail::skip_ws(text, pos);
  }
  if (p.rules.empty()) throw syntax_error("empty program", 0);
  validate_program(p);
  return p;
}

inline Program parse_program(const std::string& text) {
  OperatorRegistry registry;
  return parse_program(text, registry);
}

inline Program make_program(std::vector<Rule> rules) {
  Program p;
  p.rules = std::move(rules);
  validate_program(p);
  return p;
}

inline std::string to_string(const Rule& r) {
  if (const auto* s = std::get_if<StaticRule>(&r)) return s->head + " :- " + to_string(s->body) + ".";
  if (const auto* d = std::get_if<DelayRule>(&r)) return d->head + " :- Y " + d->body + ".";
  const auto& dyn = std::get<DynamicRule>(r);
  std::string out;
  for (std::size_t i = 0; i < dyn.heads.size(); ++i) {
    if (i) out += ", ";
    out += dyn.heads[i];
  }
  out += " :- " + dyn.op_name + "(";
  for (std::size_t i = 0; i < dyn.args.size(); ++i) {
    if (i) out += ", ";
    out += dyn.args[i];
  }
  return out + ").";
}

inline std::string to_string(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules) {
    out += to_string(r);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantics.  One forward pass fills a valuation table for instants 0..l;
// instant 0 is virtual: inputs, static heads, and delay heads are false,
// dynamic heads are the one-hot encoding of the initial state.
// ---------------------------------------------------------------------------

struct ProgramEvaluation {
  std::vector<Variable> variables;
  std::vector<std::vector<bool>> valuation;  // rows 0..l

  bool holds(std::size_t t, const Variable& v) const {
    auto it = std::find(variables.begin(), variables.end(), v);
    if (it == variables.end()) fail("UnknownVariable", v);
    if (t >= valuation.size()) fail("TimeOutOfRange", "t=" + std::to_string(t));
    return valuation[t][static_cast<std::size_t>(it - variables.begin())];
  }
};

inline ProgramEvaluation evaluate_program(const Program& p, const Trace& I) {
  ProgramEvaluation ev;
  ev.variables = p.all_variables();
  std::map<Variable, std::size_t> index;
  for (std::size_t i = 0; i < ev.variables.size(); ++i) index[ev.variables[i]] = i;
  std::vector<const Rule*> order = topological_rules(p);

  std::size_t l = I.length();
  ev.valuation.assign(l + 1, std::vector<bool>(ev.variables.size(), false));

  // Instant 0: dynamic heads one-hot at the initial state.
  for (const Rule* r : order) {
    if (const auto* d = std::get_if<DynamicRule>(r)) {
      ev.valuation[0][index.at(d->heads[d->op.init])] = true;
    }
  }

  for (std::size_t t = 1; t <= l; ++t) {
    auto& row = ev.valuation[t];
    const auto& prev = ev.valuation[t - 1];
    for (const Variable& v : p.input_vars) {
      if (I.var_index(v)) row[index.at(v)] = I.holds(t, v);
    }
    for (const Rule* r : order) {
      if (const auto* s = std::get_if<StaticRule>(r)) {
        detail::PltlEvaluator body_ev(
            [&](const Variable& v, std::size_t) {
              auto it = index.find(v);
              if (it == index.end()) fail("UnknownVariable", v);
              return static_cast<bool>(row[it->second]);
            },
            t, t, false);
        row[index.at(s->head)] = body_ev.eval(s->body, t);
      } else if (const auto* d = std::get_if<DelayRule>(r)) {
        row[index.at(d->head)] = prev[index.at(d->body)];
      } else {
        const auto& dyn = std::get<DynamicRule>(*r);
        int state = -1;
        for (std::size_t i = 0; i < dyn.heads.size(); ++i) {
          if (prev[index.at(dyn.heads[i])]) {
            state = static_cast<int>(i);
            break;
          }
        }
        if (state < 0) fail("Internal", "dynamic rule heads are not one-hot");
        std::vector<bool> bits;
        for (const Variable& a : dyn.args) bits.push_back(row[index.at(a)]);
        int next = dyn.op.semi.delta[state][index_from_bits(bits)];
        row[index.at(dyn.heads[next])] = true;
      }
    }
  }
  return ev;
}

/// Satisfaction of an arbitrary formula over the program's variables at
/// instant t (t = 0 is the virtual instant).
inline bool eval_program(const Program& p, const Trace& I, std::size_t t, const FormulaPtr& f) {
  if (t > I.length()) fail("TimeOutOfRange", "t=" + std::to_string(t));
  for (const Variable& v : variables_of(f)) {
    if (!p.mentions(v)) fail("UnknownVariable", v);
  }
  ProgramEvaluation table = evaluate_program(p, I);
  FormulaPtr core = desugar(f);
  detail::PltlEvaluator ev(
      [&table](const Variable& v, std::size_t u) { return table.holds(u, v); }, 0, I.length(),
      false);
  return ev.eval(core, t);
}

inline bool eval_program(const Program& p, const Trace& I, std::size_t t, const Variable& v) {
  return eval_program(p, I, t, f_atom(v));
}

inline bool recognizes_program(const Program& p, const Trace& I, const Variable& accept_var) {
  if (!p.mentions(accept_var)) fail("UnknownVariable", accept_var);
  return eval_program(p, I, I.length(), f_atom(accept_var));
}

// ---------------------------------------------------------------------------
// Normal and treelike classification.
// ---------------------------------------------------------------------------

/// Variables defined by delay rules or dynamic-rule heads.
inline std::set<Variable> temporally_defined(const Program& p) {
  std::set<Variable> out;
  for (const Rule& r : p.rules) {
    if (const auto* d = std::get_if<DelayRule>(&r)) out.insert(d->head);
    if (const auto* dyn = std::get_if<DynamicRule>(&r)) out.insert(dyn->heads.begin(), dyn->heads.end());
  }
  return out;
}

inline std::set<Variable> statically_defined(const Program& p) {
  std::set<Variable> out;
  for (const Rule& r : p.rules) {
    if (const auto* s = std::get_if<StaticRule>(&r)) out.insert(s->head);
  }
  return out;
}

inline bool is_since_rule(const DynamicRule& d) {
  OperatorAutomaton s = since_operator();
  return d.op.arity == s.arity && d.op.semi.delta == s.semi.delta && d.op.init == s.init;
}

/// Normal: temporal rules are delay or since rules whose bodies avoid
/// temporally-defined variables, and static bodies avoid statically-defined
/// variables.  Returns human-readable violations.
inline bool is_normal(const Program& p, std::vector<std::string>* diagnostics = nullptr) {
  std::set<Variable> temporal = temporally_defined(p);
  std::set<Variable> stat = statically_defined(p);
  bool ok = true;
  auto report = [&](const std::string& msg) {
    ok = false;
    if (diagnostics) diagnostics->push_back(msg);
  };
  for (const Rule& r : p.rules) {
    if (const auto* s = std::get_if<StaticRule>(&r)) {
      for (const Variable& v : variables_of(s->body)) {
        if (stat.count(v))
          report("static rule for " + s->head + " mentions statically-defined " + v);
      }
    } else if (const auto* d = std::get_if<DelayRule>(&r)) {
      if (temporal.count(d->body))
        report("delay rule for " + d->head + " mentions temporally-defined " + d->body);
    } else {
      const auto& dyn = std::get<DynamicRule>(r);
      if (!is_since_rule(dyn)) {
        report("dynamic rule for " + dyn.heads[0] + " uses operator " + dyn.op_name +
               ", not a since rule");
        continue;
      }
      for (const Variable& v : dyn.args) {
        if (temporal.count(v))
          report("since rule for " + dyn.heads[1] + " mentions temporally-defined " + v);
      }
    }
  }
  return ok;
}

/// Treelike: every rule body contains at most one defined variable.
inline bool is_treelike(const Program& p) {
  for (const Rule& r : p.rules) {
    int defined = 0;
    for (const Variable& v : body_variables_of(r)) {
      if (p.defines(v)) ++defined;
    }
    if (defined > 1) return false;
  }
  return true;
}

/// Size: heads plus body nodes per rule (delay body counts the operator and
/// its variable).
inline std::size_t program_size(const Program& p) {
  std::size_t n = 0;
  for (const Rule& r : p.rules) {
    if (const auto* s = std::get_if<StaticRule>(&r)) {
      n += 1 + formula_size(s->body);
    } else if (std::get_if<DelayRule>(&r)) {
      n += 3;
    } else {
      const auto& dyn = std::get<DynamicRule>(r);
      n += dyn.heads.size() + 1 + dyn.args.size();
    }
  }
  return n;
}

}  // namespace krlc
