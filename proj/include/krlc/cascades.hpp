#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "krlc/automata.hpp"
#include "krlc/errors.hpp"

namespace krlc {

/// Sequence of Mealy components with feed-forward wiring: component i
/// consumes the external letter plus the outputs of components 1..i-1.
/// Structured letters are encoded mixed-radix, external part most
/// significant; for bit alphabets this coincides with bit concatenation.
struct AutoCascade {
  Alphabet external;
  std::vector<Automaton> components;

  std::size_t expected_input_size(std::size_t i) const {
    std::size_t n = external.size();
    for (std::size_t j = 0; j < i; ++j) n *= components[j].output.size();
    return n;
  }

  void validate() const {
    if (components.empty()) fail("WiringMismatch", "cascade needs at least one component");
    for (std::size_t i = 0; i < components.size(); ++i) {
      components[i].validate();
      if (components[i].semi.input.size() != expected_input_size(i))
        fail("WiringMismatch", "component " + std::to_string(i + 1) + " expects " +
                                   std::to_string(components[i].semi.input.size()) +
                                   " letters, wiring provides " +
                                   std::to_string(expected_input_size(i)));
    }
  }

  const Alphabet& output() const { return components.back().output; }

  bool is_simple() const {
    for (std::size_t i = 0; i + 1 < components.size(); ++i) {
      const Automaton& a = components[i];
      for (std::size_t q = 0; q < a.semi.state_count(); ++q) {
        for (std::size_t s = 0; s < a.semi.input.size(); ++s) {
          if (a.theta[q][s] != static_cast<int>(q)) return false;
        }
      }
    }
    return true;
  }
};

/// Component whose output is its own (pre-update) state, for representing
/// semiautomata cascades.
inline Automaton state_output_component(const Semiautomaton& d, int init) {
  Automaton a;
  a.semi = d;
  a.init = init;
  a.output = Alphabet::named(d.states);
  a.theta.resize(d.state_count());
  for (std::size_t q = 0; q < d.state_count(); ++q) {
    a.theta[q].assign(d.input.size(), static_cast<int>(q));
  }
  return a;
}

struct CascadeRun {
  std::vector<std::vector<int>> states;            // joint states q_0 .. q_n
  std::vector<std::vector<int>> component_outputs;  // per step, one output per component
  std::vector<int> outputs;                         // final component's outputs
};

inline CascadeRun run_cascade(const AutoCascade& c, const std::vector<int>& input) {
  c.validate();
  std::size_t d = c.components.size();
  std::vector<int> q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = c.components[i].init;
  CascadeRun r;
  r.states.push_back(q);
  for (int sigma : input) {
    if (sigma < 0 || static_cast<std::size_t>(sigma) >= c.external.size())
      fail("LetterNotInAlphabet", "letter index " + std::to_string(sigma));
    std::vector<int> gammas(d);
    std::size_t structured = static_cast<std::size_t>(sigma);
    for (std::size_t i = 0; i < d; ++i) {
      const Automaton& a = c.components[i];
      gammas[i] = a.theta[q[i]][structured];
      int next = a.semi.delta[q[i]][structured];
      if (i + 1 < d) {
        structured = structured * c.components[i].output.size() +
                     static_cast<std::size_t>(gammas[i]);
      }
      q[i] = next;
    }
    r.states.push_back(q);
    r.component_outputs.push_back(gammas);
    r.outputs.push_back(gammas[d - 1]);
  }
  return r;
}

inline bool cascade_accepts(const AutoCascade& c, const std::vector<int>& input) {
  if (!(c.output().is_bits() && c.output().bits == 1) &&
      !(c.output().letters == std::vector<std::string>{"0", "1"}))
    fail("NotAnAcceptor", "cascade output alphabet is not {0,1}");
  if (input.empty()) fail("EmptyInput", "acceptance is defined on non-empty input");
  return run_cascade(c, input).outputs.back() == 1;
}

/// Product automaton over Q_1 x ... x Q_d, first component most significant.
inline Automaton flatten(const AutoCascade& c, std::size_t max_states = 1000000) {
  c.validate();
  std::size_t d = c.components.size();
  std::size_t n = 1;
  for (const Automaton& a : c.components) {
    n *= a.semi.state_count();
    if (n > max_states) fail("StateSpaceTooLarge", std::to_string(n) + " product states");
  }
  Automaton out;
  out.semi.input = c.external;
  out.output = c.output();

  std::vector<int> q(d);
  auto decode = [&](std::size_t idx) {
    for (std::size_t i = d; i-- > 0;) {
      std::size_t size = c.components[i].semi.state_count();
      q[i] = static_cast<int>(idx % size);
      idx /= size;
    }
  };
  auto encode = [&]() {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) {
      idx = idx * c.components[i].semi.state_count() + static_cast<std::size_t>(q[i]);
    }
    return idx;
  };

  out.semi.delta.assign(n, std::vector<int>(c.external.size()));
  out.theta.assign(n, std::vector<int>(c.external.size()));
  for (std::size_t idx = 0; idx < n; ++idx) {
    decode(idx);
    std::string name;
    for (std::size_t i = 0; i < d; ++i) {
      if (i) name += ',';
      name += c.components[i].semi.states[q[i]];
    }
    out.semi.states.push_back(name);
    for (std::size_t sigma = 0; sigma < c.external.size(); ++sigma) {
      decode(idx);
      std::size_t structured = sigma;
      int gamma = 0;
      for (std::size_t i = 0; i < d; ++i) {
        const Automaton& a = c.components[i];
        gamma = a.theta[q[i]][structured];
        int next = a.semi.delta[q[i]][structured];
        if (i + 1 < d) structured = structured * a.output.size() + static_cast<std::size_t>(gamma);
        q[i] = next;
      }
      std::size_t target = encode();
      out.semi.delta[idx][sigma] = static_cast<int>(target);
      out.theta[idx][sigma] = gamma;
    }
  }
  for (std::size_t i = 0; i < d; ++i) q[i] = c.components[i].init;
  out.init = static_cast<int>(encode());
  out.validate();
  return out;
}

inline nlohmann::json cascade_to_json(const AutoCascade& c) {
  nlohmann::json j;
  j["external_inputs"] = alphabet_to_json(c.external);
  j["components"] = nlohmann::json::array();
  for (const Automaton& a : c.components) j["components"].push_back(automaton_to_json(a));
  return j;
}

inline AutoCascade cascade_from_json(const nlohmann::json& j) {
  AutoCascade c;
  c.external = alphabet_from_json(j.at("external_inputs"));
  for (const auto& comp : j.at("components")) c.components.push_back(automaton_from_json(comp));
  c.validate();
  return c;
}

}  // namespace krlc
