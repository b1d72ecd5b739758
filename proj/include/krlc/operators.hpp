#pragma once

#include <map>
#include <memory>
#include <string>

#include "krlc/automata.hpp"
#include "krlc/errors.hpp"

namespace krlc {

/// Semiautomaton on bit-vector inputs with 1-based integer-indexed states
/// and an initial state, usable as the body of a dynamic rule.  State k is
/// stored internally at index k-1.
struct OperatorAutomaton {
  int arity = 0;  // input arity m, letters are B^m
  Semiautomaton semi;
  int init = 0;  // 0-based

  int state_count() const { return static_cast<int>(semi.state_count()); }
};

inline OperatorAutomaton make_operator(int arity, int n_states,
                                       std::vector<std::vector<int>> delta, int init) {
  OperatorAutomaton op;
  op.arity = arity;
  op.semi.input = Alphabet::bitvec(arity);
  for (int i = 1; i <= n_states; ++i) op.semi.states.push_back("q" + std::to_string(i));
  op.semi.delta = std::move(delta);
  op.init = init;
  op.semi.validate();
  return op;
}

/// Flip-flop operator F: delta(q,00)=q, delta(q,10)=delta(q,11)=2, delta(q,01)=1.
inline OperatorAutomaton flip_flop_operator() {
  // letter order 00,01,10,11
  return make_operator(2, 2, {{0, 0, 1, 1}, {1, 0, 1, 1}}, 0);
}

/// Since operator S: delta(q,10)=q, delta(q,01)=delta(q,11)=2, delta(q,00)=1.
inline OperatorAutomaton since_operator() {
  return make_operator(2, 2, {{0, 1, 0, 1}, {0, 1, 1, 1}}, 0);
}

enum class CounterConvention {
  Literal,  // j = min({1} union {k | b_k = 1})
  Intent,   // j = least k with b_k = 1, else 0
};

/// Counter C_n on B^n: state value i goes to i + j mod n, where j is picked
/// from the input bits b_0..b_{n-1} per the chosen convention.
inline OperatorAutomaton counter_operator(int n, CounterConvention conv = CounterConvention::Literal) {
  if (n < 2) fail("ArityError", "counter requires n >= 2");
  if (n > 16) fail("ArityError", "counter arity too large");
  std::size_t letters = std::size_t{1} << n;
  std::vector<std::vector<int>> delta(n, std::vector<int>(letters));
  for (std::size_t sigma = 0; sigma < letters; ++sigma) {
    auto bits = bits_from_index(sigma, n);  // bits[k] = b_k
    int j;
    if (conv == CounterConvention::Literal) {
      j = 1;
      for (int k = 0; k < n; ++k) {
        if (bits[k]) {
          j = std::min(j, k);
          break;
        }
      }
    } else {
      j = 0;
      for (int k = 0; k < n; ++k) {
        if (bits[k]) {
          j = k;
          break;
        }
      }
    }
    for (int i = 0; i < n; ++i) delta[i][sigma] = (i + j) % n;
  }
  OperatorAutomaton op;
  op.arity = n;
  op.semi.input = Alphabet::bitvec(n);
  for (int i = 1; i <= n; ++i) op.semi.states.push_back("q" + std::to_string(i));
  op.semi.delta = std::move(delta);
  op.init = 0;
  return op;
}

/// Simplified counter Cs_n on B: delta(i,j) = i + j mod n on values 0..n-1.
inline OperatorAutomaton simplified_counter_operator(int n) {
  if (n < 2) fail("ArityError", "counter requires n >= 2");
  std::vector<std::vector<int>> delta(n, std::vector<int>(2));
  for (int i = 0; i < n; ++i) {
    delta[i][0] = i;
    delta[i][1] = (i + 1) % n;
  }
  return make_operator(1, n, std::move(delta), 0);
}

/// Parity P = Cs_2; head 1 true iff the argument held an even number of times.
inline OperatorAutomaton parity_operator() { return simplified_counter_operator(2); }

/// Name -> operator map.  F, S, P are preloaded; C<n> and Cs<n> resolve
/// lazily on lookup.  Mutation requires external synchronization.
class OperatorRegistry {
public:
  OperatorRegistry(CounterConvention conv = CounterConvention::Literal) : conv_(conv) {
    table_.emplace("F", flip_flop_operator());
    table_.emplace("S", since_operator());
    table_.emplace("P", parity_operator());
  }

  void register_operator(const std::string& name, OperatorAutomaton op) {
    if (table_.count(name) || parse_counter_name(name))
      fail("DuplicateName", "operator '" + name + "' already defined");
    table_.emplace(name, std::move(op));
  }

  const OperatorAutomaton& lookup(const std::string& name) {
    auto it = table_.find(name);
    if (it != table_.end()) return it->second;
    if (auto counter = parse_counter_name(name)) {
      auto [simplified, n] = *counter;
      OperatorAutomaton op = simplified ? simplified_counter_operator(n) : counter_operator(n, conv_);
      return table_.emplace(name, std::move(op)).first->second;
    }
    fail("UnknownOperator", name);
  }

  bool known(const std::string& name) const {
    return table_.count(name) || parse_counter_name(name).has_value();
  }

private:
  static std::optional<std::pair<bool, int>> parse_counter_name(const std::string& name) {
    std::size_t digits = 0;
    bool simplified = false;
    if (name.rfind("Cs", 0) == 0) {
      simplified = true;
      digits = 2;
    } else if (name.rfind("C", 0) == 0) {
      digits = 1;
    } else {
      return std::nullopt;
    }
    if (digits >= name.size()) return std::nullopt;
    int n = 0;
    for (std::size_t i = digits; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      n = n * 10 + (name[i] - '0');
      if (n > 1000) return std::nullopt;
    }
    if (n < 2) return std::nullopt;
    return std::make_pair(simplified, n);
  }

  CounterConvention conv_;
  std::map<std::string, OperatorAutomaton> table_;
};

/// Factorization of an operator as an input function over a core
/// semiautomaton: compose(phi, core) must equal the operator's semiautomaton.
struct FactoredOperator {
  OperatorAutomaton op;
  InputFunction phi;
  Semiautomaton core;

  void validate() const {
    Semiautomaton composed = compose(phi, core);
    if (!(composed.input == op.semi.input) || composed.delta != op.semi.delta ||
        composed.state_count() != op.semi.state_count())
      fail("InvalidFactorization", "phi composed with core does not match the operator");
  }

  static FactoredOperator trivial(OperatorAutomaton op) {
    FactoredOperator f;
    f.phi = InputFunction::identity(op.semi.input);
    f.core = op.semi;
    f.op = std::move(op);
    return f;
  }
};

/// F factored through the SR latch: 00->read, 10->set, 11->set, 01->reset,
/// onto the canonical flip-flop.
inline FactoredOperator factored_flip_flop() {
  FactoredOperator f;
  f.op = flip_flop_operator();
  f.core = canonical_flip_flop();
  // canonical letters: set=0, reset=1, read=2; op letters 00,01,10,11
  f.phi = InputFunction{Alphabet::bitvec(2), f.core.input, {2, 1, 0, 0}};
  // the operator's states q1,q2 map onto low,high positionally
  f.op.semi.states = f.core.states;
  f.validate();
  return f;
}

/// S factored: 10->read, 01->set, 11->set, 00->reset.
inline FactoredOperator factored_since() {
  FactoredOperator f;
  f.op = since_operator();
  f.core = canonical_flip_flop();
  f.phi = InputFunction{Alphabet::bitvec(2), f.core.input, {1, 0, 2, 0}};
  f.op.semi.states = f.core.states;
  f.validate();
  return f;
}

/// Cs_n factored through the canonical n-counter via phi(b) = b.
/// Not surjective for n >= 3.
inline FactoredOperator factored_simplified_counter(int n) {
  FactoredOperator f;
  f.op = simplified_counter_operator(n);
  f.core = canonical_counter(n);
  f.phi = InputFunction{Alphabet::bitvec(1), f.core.input, {0, 1}};
  f.op.semi.states = f.core.states;
  f.validate();
  return f;
}

inline FactoredOperator factored_parity() { return factored_simplified_counter(2); }

/// C_n factored through the canonical n-counter: phi extracts the increment j.
inline FactoredOperator factored_counter(int n, CounterConvention conv = CounterConvention::Literal) {
  FactoredOperator f;
  f.op = counter_operator(n, conv);
  f.core = canonical_counter(n);
  std::size_t letters = std::size_t{1} << n;
  f.phi = InputFunction{Alphabet::bitvec(n), f.core.input, std::vector<int>(letters)};
  for (std::size_t sigma = 0; sigma < letters; ++sigma) {
    // j is recoverable from delta at state value 0
    f.phi.map[sigma] = f.op.semi.delta[0][sigma];
  }
  f.op.semi.states = f.core.states;
  f.validate();
  return f;
}

}  // namespace krlc
