#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "krlc/automata.hpp"
#include "krlc/cascades.hpp"
#include "krlc/compile.hpp"
#include "krlc/core.hpp"
#include "krlc/errors.hpp"
#include "krlc/pltl.hpp"
#include "krlc/programs.hpp"

namespace krlc {

/// Uniform acceptance interface over formulas, programs, automata, and
/// cascades sharing one input-variable universe.
struct Recognizer {
  std::vector<Variable> universe;
  std::function<bool(const Trace&)> accepts;
  std::string description;
};

/// Trace steps as letter indices of the bit-vector alphabet over the
/// universe, in universe order.
inline std::vector<int> trace_to_letters(const Trace& I, const std::vector<Variable>& universe) {
  std::vector<int> letters;
  for (std::size_t t = 1; t <= I.length(); ++t) {
    std::vector<bool> bits;
    for (const Variable& v : universe) bits.push_back(I.holds(t, v));
    letters.push_back(static_cast<int>(index_from_bits(bits)));
  }
  return letters;
}

inline Trace trace_from_letters(const std::vector<int>& letters,
                                const std::vector<Variable>& universe) {
  Trace I;
  I.universe = universe;
  for (int l : letters) I.steps.push_back(bits_from_index(static_cast<std::size_t>(l), universe.size()));
  return I;
}

inline Recognizer recognizer_of_formula(FormulaPtr f, std::vector<Variable> universe) {
  Recognizer r;
  r.universe = std::move(universe);
  r.description = to_string(f);
  r.accepts = [f](const Trace& I) { return recognizes(f, I); };
  return r;
}

inline Recognizer recognizer_of_program(Program p, Variable accept_var,
                                        std::vector<Variable> universe) {
  Recognizer r;
  r.universe = std::move(universe);
  r.description = "program:" + accept_var;
  auto prog = std::make_shared<Program>(std::move(p));
  r.accepts = [prog, accept_var](const Trace& I) {
    return recognizes_program(*prog, I, accept_var);
  };
  return r;
}

inline Recognizer recognizer_of_automaton(Automaton a, std::vector<Variable> universe) {
  if (!a.is_acceptor()) fail("NotAnAcceptor", "automaton output alphabet is not {0,1}");
  if (!a.semi.input.is_bits() ||
      static_cast<std::size_t>(a.semi.input.bits) != universe.size())
    fail("AlphabetMismatch", "automaton input arity must match the universe");
  Recognizer r;
  r.universe = universe;
  r.description = "automaton";
  auto aut = std::make_shared<Automaton>(std::move(a));
  r.accepts = [aut, universe](const Trace& I) {
    return accepts(*aut, trace_to_letters(I, universe));
  };
  return r;
}

inline Recognizer recognizer_of_cascade(AutoCascade c, std::vector<Variable> universe) {
  if (!c.external.is_bits() || static_cast<std::size_t>(c.external.bits) != universe.size())
    fail("AlphabetMismatch", "cascade external arity must match the universe");
  Recognizer r;
  r.universe = universe;
  r.description = "cascade";
  auto cas = std::make_shared<AutoCascade>(std::move(c));
  r.accepts = [cas, universe](const Trace& I) {
    return cascade_accepts(*cas, trace_to_letters(I, universe));
  };
  return r;
}

/// Acceptance of a single defined variable of a compiled cascade at the last
/// instant.
inline Recognizer recognizer_of_cascade_variable(AutoCascade c, VariableWiring w, Variable v) {
  Recognizer r;
  r.universe = w.input_vars;
  r.description = "cascade:" + v;
  auto cas = std::make_shared<AutoCascade>(std::move(c));
  auto wiring = std::make_shared<VariableWiring>(std::move(w));
  r.accepts = [cas, wiring, v](const Trace& I) {
    CascadeRun run = run_cascade(*cas, trace_to_letters(I, wiring->input_vars));
    return cascade_variable_holds(*cas, *wiring, run, I.length(), v);
  };
  return r;
}

struct EquivReport {
  bool equal = false;
  std::optional<Trace> counterexample;
  bool left_accepts = false;  // which side accepts the counterexample
  std::size_t traces_checked = 0;
  double wall_seconds = 0.0;
};

namespace detail {

/// Calls fn on every trace over the universe with length in [1, max_len], in
/// shortlex order; stops early when fn returns false.
inline void for_each_trace(const std::vector<Variable>& universe, std::size_t max_len,
                           std::size_t budget, std::size_t* used,
                           const std::function<bool(const Trace&)>& fn) {
  std::size_t letters = std::size_t{1} << universe.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<int> word(len, 0);
    while (true) {
      if (++*used > budget) fail("BudgetExceeded", "trace enumeration exceeded the budget");
      if (!fn(trace_from_letters(word, universe))) return;
      std::size_t i = len;
      while (i > 0 && word[i - 1] == static_cast<int>(letters) - 1) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
  }
}

}  // namespace detail

/// Exhaustive comparison on all traces of length 1..max_len, shortlex order.
/// The first differing trace is re-verified on both sides before it is
/// reported.
inline EquivReport bounded_equiv(const Recognizer& r1, const Recognizer& r2, std::size_t max_len,
                                 std::size_t budget = 10000000) {
  if (r1.universe != r2.universe)
    fail("AlphabetMismatch", "recognizers must share one universe");
  if (max_len < 1) fail("EmptyInput", "max length must be at least 1");
  EquivReport report;
  auto start = std::chrono::steady_clock::now();
  std::size_t used = 0;
  detail::for_each_trace(r1.universe, max_len, budget, &used, [&](const Trace& I) {
    bool a = r1.accepts(I);
    bool b = r2.accepts(I);
    if (a != b) {
      report.counterexample = I;
      report.left_accepts = a;
      return false;
    }
    return true;
  });
  report.traces_checked = used;
  if (report.counterexample) {
    bool a = r1.accepts(*report.counterexample);
    bool b = r2.accepts(*report.counterexample);
    if (a == b) fail("Internal", "counterexample did not re-verify");
    report.equal = false;
  } else {
    report.equal = true;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// All accepted traces of length 1..max_len, in shortlex order.
inline std::vector<Trace> enumerate_language(const Recognizer& r, std::size_t max_len,
                                             std::size_t budget = 10000000) {
  std::vector<Trace> out;
  std::size_t used = 0;
  detail::for_each_trace(r.universe, max_len, budget, &used, [&](const Trace& I) {
    if (r.accepts(I)) out.push_back(I);
    return true;
  });
  return out;
}

/// All formulas over the universe up to the size bound, with commutative
/// arguments canonicalized by enumeration index and double negation pruned.
inline std::vector<FormulaPtr> enumerate_formulas(const std::vector<Variable>& universe,
                                                  std::size_t max_size) {
  std::vector<std::vector<FormulaPtr>> by_size(max_size + 1);
  if (max_size >= 1) {
    by_size[1].push_back(f_top());
    by_size[1].push_back(f_bot());
    for (const Variable& v : universe) by_size[1].push_back(f_atom(v));
  }
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const FormulaPtr& f : by_size[s - 1]) {
      if (f->kind != FKind::Not) by_size[s].push_back(f_not(f));
      by_size[s].push_back(f_before(f));
    }
    for (std::size_t ls = 1; ls + 1 < s + 1; ++ls) {
      std::size_t rs = s - 1 - ls;
      if (rs < 1 || rs > max_size) continue;
      for (std::size_t i = 0; i < by_size[ls].size(); ++i) {
        for (std::size_t j = 0; j < by_size[rs].size(); ++j) {
          const FormulaPtr& l = by_size[ls][i];
          const FormulaPtr& r = by_size[rs][j];
          if (ls < rs || (ls == rs && i <= j)) {
            by_size[s].push_back(f_and(l, r));
            by_size[s].push_back(f_or(l, r));
          }
          by_size[s].push_back(f_since(l, r));
        }
      }
    }
  }
  std::vector<FormulaPtr> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    out.insert(out.end(), by_size[s].begin(), by_size[s].end());
  }
  return out;
}

/// Searches for a formula of size <= max_size agreeing with the target on
/// all traces of length <= max_len.  Absence is evidence, not proof.
inline std::optional<FormulaPtr> bounded_nonexpressibility(const Recognizer& target,
                                                           const std::vector<Variable>& universe,
                                                           std::size_t max_size,
                                                           std::size_t max_len,
                                                           std::size_t budget = 10000000) {
  std::vector<Trace> traces;
  std::vector<bool> wanted;
  std::size_t used = 0;
  detail::for_each_trace(universe, max_len, budget, &used, [&](const Trace& I) {
    traces.push_back(I);
    wanted.push_back(target.accepts(I));
    return true;
  });
  for (const FormulaPtr& f : enumerate_formulas(universe, max_size)) {
    bool match = true;
    for (std::size_t i = 0; i < traces.size() && match; ++i) {
      if (++used > budget) fail("BudgetExceeded", "formula search exceeded the budget");
      match = recognizes(f, traces[i]) == wanted[i];
    }
    if (match) return f;
  }
  return std::nullopt;
}

}  // namespace krlc
