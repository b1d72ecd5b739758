#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "krlc/core.hpp"
#include "krlc/errors.hpp"

namespace krlc {

enum class FKind { Top, Bot, Atom, Not, And, Or, Before, Since, Once, Hist };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Past LTL abstract syntax. Once and Hist are sugar with fixed expansions
/// (T S f) and !(T S !f); desugar() removes them.
struct Formula {
  FKind kind;
  Variable atom;        // Atom only
  FormulaPtr lhs, rhs;  // rhs for binary nodes only
};

inline FormulaPtr f_top() { return std::make_shared<Formula>(Formula{FKind::Top, {}, {}, {}}); }
inline FormulaPtr f_bot() { return std::make_shared<Formula>(Formula{FKind::Bot, {}, {}, {}}); }
inline FormulaPtr f_atom(Variable v) {
  return std::make_shared<Formula>(Formula{FKind::Atom, std::move(v), {}, {}});
}
inline FormulaPtr f_not(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FKind::Not, {}, std::move(f), {}});
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FKind::And, {}, std::move(a), std::move(b)});
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FKind::Or, {}, std::move(a), std::move(b)});
}
inline FormulaPtr f_before(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FKind::Before, {}, std::move(f), {}});
}
inline FormulaPtr f_since(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FKind::Since, {}, std::move(a), std::move(b)});
}
inline FormulaPtr f_once(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FKind::Once, {}, std::move(f), {}});
}
inline FormulaPtr f_hist(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FKind::Hist, {}, std::move(f), {}});
}

/// Node count of the tree as written (sugar counts as one node).
inline std::size_t formula_size(const FormulaPtr& f) {
  std::size_t n = 1;
  if (f->lhs) n += formula_size(f->lhs);
  if (f->rhs) n += formula_size(f->rhs);
  return n;
}

/// Expand Once/Hist into their Since definitions.
inline FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Top:
    case FKind::Bot:
    case FKind::Atom:
      return f;
    case FKind::Not:
      return f_not(desugar(f->lhs));
    case FKind::And:
      return f_and(desugar(f->lhs), desugar(f->rhs));
    case FKind::Or:
      return f_or(desugar(f->lhs), desugar(f->rhs));
    case FKind::Before:
      return f_before(desugar(f->lhs));
    case FKind::Since:
      return f_since(desugar(f->lhs), desugar(f->rhs));
    case FKind::Once:
      return f_since(f_top(), desugar(f->lhs));
    case FKind::Hist:
      return f_not(f_since(f_top(), f_not(desugar(f->lhs))));
  }
  fail("Internal", "unreachable");
}

inline bool is_static(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Before:
    case FKind::Since:
    case FKind::Once:
    case FKind::Hist:
      return false;
    default:
      break;
  }
  if (f->lhs && !is_static(f->lhs)) return false;
  if (f->rhs && !is_static(f->rhs)) return false;
  return true;
}

/// Variables of the formula in first-occurrence order.
inline std::vector<Variable> variables_of(const FormulaPtr& f) {
  std::vector<Variable> vars;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    if (g->kind == FKind::Atom) {
      if (std::find(vars.begin(), vars.end(), g->atom) == vars.end()) vars.push_back(g->atom);
    }
    if (g->lhs) walk(g->lhs);
    if (g->rhs) walk(g->rhs);
  };
  walk(f);
  return vars;
}

// ---------------------------------------------------------------------------
// Parsing.  Precedence: ! > Y,O,H > & > | > S; S is right-associative.
// ---------------------------------------------------------------------------

namespace detail {

class FormulaParser {
public:
  explicit FormulaParser(const std::string& text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = since();
    skip_ws(text_, pos_);
    if (pos_ != text_.size()) throw syntax_error("unexpected trailing input", pos_);
    return f;
  }

private:
  FormulaPtr since() {
    FormulaPtr lhs = or_expr();
    skip_ws(text_, pos_);
    if (match_keyword("S")) {
      return f_since(lhs, since());
    }
    return lhs;
  }

  FormulaPtr or_expr() {
    FormulaPtr lhs = and_expr();
    while (true) {
      skip_ws(text_, pos_);
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = f_or(lhs, and_expr());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr and_expr() {
    FormulaPtr lhs = unary();
    while (true) {
      skip_ws(text_, pos_);
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = f_and(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr unary() {
    skip_ws(text_, pos_);
    if (pos_ < text_.size() && text_[pos_] == '!') {
      ++pos_;
      return f_not(unary());
    }
    if (match_keyword("Y")) return f_before(unary());
    if (match_keyword("O")) return f_once(unary());
    if (match_keyword("H")) return f_hist(unary());
    return primary();
  }

  FormulaPtr primary() {
    skip_ws(text_, pos_);
    if (pos_ >= text_.size()) throw syntax_error("unexpected end of formula", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      FormulaPtr f = since();
      skip_ws(text_, pos_);
      if (pos_ >= text_.size() || text_[pos_] != ')') throw syntax_error("expected ')'", pos_);
      ++pos_;
      return f;
    }
    std::size_t start = pos_;
    std::string name = read_identifier(text_, pos_);
    if (name.empty()) throw syntax_error("expected atom or '('", pos_);
    if (name == "true") return f_top();
    if (name == "false") return f_bot();
    if (name == "S" || name == "Y" || name == "O" || name == "H") {
      throw syntax_error("operator '" + name + "' used as atom", start);
    }
    if (!is_valid_variable_name(name)) throw syntax_error("invalid variable name", start);
    return f_atom(name);
  }

  // Matches a keyword token followed by a non-identifier character.
  bool match_keyword(const std::string& kw) {
    skip_ws(text_, pos_);
    if (text_.compare(pos_, kw.size(), kw) != 0) return false;
    std::size_t end = pos_ + kw.size();
    if (end < text_.size()) {
      char c = text_[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') return false;
    }
    pos_ = end;
    return true;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  return detail::FormulaParser(text).parse();
}

inline std::string to_string(const FormulaPtr& f);

namespace detail {

// Binding strength used to insert only the necessary parentheses.
inline int precedence_of(FKind k) {
  switch (k) {
    case FKind::Since: return 1;
    case FKind::Or: return 2;
    case FKind::And: return 3;
    case FKind::Before:
    case FKind::Once:
    case FKind::Hist: return 4;
    case FKind::Not: return 5;
    default: return 6;
  }
}

inline std::string print(const FormulaPtr& f, int parent_prec) {
  int prec = precedence_of(f->kind);
  std::string s;
  switch (f->kind) {
    case FKind::Top: s = "true"; break;
    case FKind::Bot: s = "false"; break;
    case FKind::Atom: s = f->atom; break;
    case FKind::Not: s = "!" + print(f->lhs, prec); break;
    case FKind::And: s = print(f->lhs, prec) + " & " + print(f->rhs, prec + 1); break;
    case FKind::Or: s = print(f->lhs, prec) + " | " + print(f->rhs, prec + 1); break;
    case FKind::Before: s = "Y " + print(f->lhs, prec); break;
    case FKind::Once: s = "O " + print(f->lhs, prec); break;
    case FKind::Hist: s = "H " + print(f->lhs, prec); break;
    case FKind::Since:
      // Right-associative: the left operand needs parens at equal precedence.
      s = print(f->lhs, prec + 1) + " S " + print(f->rhs, prec);
      break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) { return detail::print(f, 0); }

// ---------------------------------------------------------------------------
// Evaluation.  Two interchangeable semantics for Since: the direct
// "exists j in [1,t]" clause and the inductive characterisation.
// ---------------------------------------------------------------------------

namespace detail {

/// Shared evaluator core, parameterised by an atom lookup so that the
/// program semantics can reuse it.  `atom_at(v, t)` must be defined for all
/// t in [min_t, max_t]; Before below min_t is false.
class PltlEvaluator {
public:
  using AtomFn = std::function<bool(const Variable&, std::size_t)>;

  PltlEvaluator(AtomFn atom_at, std::size_t min_t, std::size_t max_t, bool inductive)
      : atom_at_(std::move(atom_at)), min_t_(min_t), max_t_(max_t), inductive_(inductive) {}

  bool eval(const FormulaPtr& f, std::size_t t) {
    if (t < min_t_ || t > max_t_) fail("TimeOutOfRange", "t=" + std::to_string(t));
    return eval_at(f.get(), t);
  }

private:
  bool eval_at(const Formula* f, std::size_t t) {
    auto key = std::make_pair(f, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool value = compute(f, t);
    memo_.emplace(key, value);
    return value;
  }

  bool compute(const Formula* f, std::size_t t) {
    switch (f->kind) {
      case FKind::Top: return true;
      case FKind::Bot: return false;
      case FKind::Atom: return atom_at_(f->atom, t);
      case FKind::Not: return !eval_at(f->lhs.get(), t);
      case FKind::And: return eval_at(f->lhs.get(), t) && eval_at(f->rhs.get(), t);
      case FKind::Or: return eval_at(f->lhs.get(), t) || eval_at(f->rhs.get(), t);
      case FKind::Before:
        // t-1 below the evaluable range is out of scope and reads false.
        if (t <= min_t_) return false;
        return eval_at(f->lhs.get(), t - 1);
      case FKind::Since: {
        if (inductive_) {
          if (eval_at(f->rhs.get(), t)) return true;
          if (t < 2 || t <= min_t_) return false;
          return eval_at(f, t - 1) && eval_at(f->lhs.get(), t);
        }
        std::size_t lo = std::max<std::size_t>(min_t_, 1);
        for (std::size_t j = t + 1; j-- > lo;) {
          if (!eval_at(f->rhs.get(), j)) continue;
          bool all = true;
          for (std::size_t k = j + 1; k <= t; ++k) {
            if (!eval_at(f->lhs.get(), k)) {
              all = false;
              break;
            }
          }
          if (all) return true;
        }
        return false;
      }
      case FKind::Once:
      case FKind::Hist: {
        auto it = expansions_.find(f);
        if (it == expansions_.end()) {
          FormulaPtr expanded = f->kind == FKind::Once
                                    ? f_since(f_top(), f->lhs)
                                    : f_not(f_since(f_top(), f_not(f->lhs)));
          it = expansions_.emplace(f, std::move(expanded)).first;
        }
        return eval_at(it->second.get(), t);
      }
    }
    fail("Internal", "unreachable");
  }

  AtomFn atom_at_;
  std::size_t min_t_, max_t_;
  bool inductive_;
  std::map<std::pair<const Formula*, std::size_t>, bool> memo_;
  // Sugar expansions are pinned here so memo keys stay valid.
  std::map<const Formula*, FormulaPtr> expansions_;
};

}  // namespace detail

/// Direct semantics: Since via the "exists j in [1,t]" clause.
inline bool eval_formula(const FormulaPtr& f, const Trace& I, std::size_t t) {
  if (t < 1 || t > I.length()) fail("TimeOutOfRange", "t=" + std::to_string(t));
  FormulaPtr core = desugar(f);
  detail::PltlEvaluator ev([&I](const Variable& v, std::size_t u) { return I.holds(u, v); }, 1,
                           I.length(), /*inductive=*/false);
  return ev.eval(core, t);
}

/// Inductive semantics: Since by recursion on t.  Agrees with eval_formula
/// everywhere.
inline bool eval_formula_inductive(const FormulaPtr& f, const Trace& I, std::size_t t) {
  if (t < 1 || t > I.length()) fail("TimeOutOfRange", "t=" + std::to_string(t));
  FormulaPtr core = desugar(f);
  detail::PltlEvaluator ev([&I](const Variable& v, std::size_t u) { return I.holds(u, v); }, 1,
                           I.length(), /*inductive=*/true);
  return ev.eval(core, t);
}

/// A formula accepts a trace iff it holds at the last instant.
inline bool recognizes(const FormulaPtr& f, const Trace& I) {
  return eval_formula(f, I, I.length());
}

}  // namespace krlc
