#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "krlc/core.hpp"
#include "krlc/errors.hpp"

namespace krlc {

/// An alphabet is either an explicit list of named letters or the set of all
/// bit-vectors of a fixed arity.  Bit-vector letters are indexed by binary
/// value, first bit most significant.
struct Alphabet {
  std::vector<std::string> letters;  // used when bits < 0
  int bits = -1;                     // >= 0 for a bit-vector alphabet

  static Alphabet named(std::vector<std::string> names) { return Alphabet{std::move(names), -1}; }
  static Alphabet bitvec(int arity) { return Alphabet{{}, arity}; }

  bool is_bits() const { return bits >= 0; }

  std::size_t size() const {
    return is_bits() ? (std::size_t{1} << bits) : letters.size();
  }

  std::string letter_name(std::size_t i) const {
    if (is_bits()) return bits_to_string(bits_from_index(i, static_cast<std::size_t>(bits)));
    return letters.at(i);
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    if (is_bits()) {
      if (name.size() != static_cast<std::size_t>(bits)) return std::nullopt;
      std::vector<bool> b;
      for (char c : name) {
        if (c != '0' && c != '1') return std::nullopt;
        b.push_back(c == '1');
      }
      return index_from_bits(b);
    }
    auto it = std::find(letters.begin(), letters.end(), name);
    if (it == letters.end()) return std::nullopt;
    return static_cast<std::size_t>(it - letters.begin());
  }

  bool operator==(const Alphabet& other) const = default;
};

/// States and total transition table, indexed (state, letter).
struct Semiautomaton {
  Alphabet input;
  std::vector<std::string> states;
  std::vector<std::vector<int>> delta;

  std::size_t state_count() const { return states.size(); }
  bool trivial() const { return states.size() == 1; }

  void validate() const {
    if (states.empty()) fail("InvalidAutomaton", "at least one state required");
    if (delta.size() != states.size()) fail("InvalidAutomaton", "delta must have one row per state");
    for (const auto& row : delta) {
      if (row.size() != input.size()) fail("InvalidAutomaton", "delta row arity mismatch");
      for (int q : row) {
        if (q < 0 || static_cast<std::size_t>(q) >= states.size())
          fail("InvalidAutomaton", "delta target out of range");
      }
    }
  }

  std::optional<std::size_t> state_index(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
  }
};

/// Mealy automaton: semiautomaton plus initial state and output function.
struct Automaton {
  Semiautomaton semi;
  int init = 0;
  Alphabet output;
  std::vector<std::vector<int>> theta;

  bool is_acceptor() const {
    if (output.is_bits()) return output.bits == 1;
    return output.letters == std::vector<std::string>{"0", "1"};
  }

  void validate() const {
    semi.validate();
    if (init < 0 || static_cast<std::size_t>(init) >= semi.state_count())
      fail("InvalidAutomaton", "initial state out of range");
    if (theta.size() != semi.state_count()) fail("InvalidAutomaton", "theta row count mismatch");
    for (const auto& row : theta) {
      if (row.size() != semi.input.size()) fail("InvalidAutomaton", "theta row arity mismatch");
      for (int g : row) {
        if (g < 0 || static_cast<std::size_t>(g) >= output.size())
          fail("InvalidAutomaton", "theta target out of range");
      }
    }
  }
};

struct RunResult {
  std::vector<int> states;   // q_0 .. q_n
  std::vector<int> outputs;  // gamma_1 .. gamma_n
};

/// Execute on a sequence of input letter indices.
inline RunResult run(const Automaton& a, const std::vector<int>& input) {
  RunResult r;
  int q = a.init;
  r.states.push_back(q);
  for (int sigma : input) {
    if (sigma < 0 || static_cast<std::size_t>(sigma) >= a.semi.input.size())
      fail("LetterNotInAlphabet", "letter index " + std::to_string(sigma));
    r.outputs.push_back(a.theta[q][sigma]);
    q = a.semi.delta[q][sigma];
    r.states.push_back(q);
  }
  return r;
}

/// Resolve a comma-separated list of letter names against an alphabet.
inline std::vector<int> parse_letters(const Alphabet& alpha, const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string name = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    // trim
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (!name.empty()) {
      auto idx = alpha.index_of(name);
      if (!idx) fail("LetterNotInAlphabet", name);
      out.push_back(static_cast<int>(*idx));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline bool accepts(const Automaton& a, const std::vector<int>& input) {
  if (!a.is_acceptor()) fail("NotAnAcceptor", "output alphabet is not {0,1}");
  if (input.empty()) fail("EmptyInput", "acceptance is defined on non-empty input");
  return run(a, input).outputs.back() == 1;
}

/// Total map from external letters to internal letters.
struct InputFunction {
  Alphabet from, to;
  std::vector<int> map;

  void validate() const {
    if (map.size() != from.size()) fail("InvalidInputFunction", "map must be total");
    for (int p : map) {
      if (p < 0 || static_cast<std::size_t>(p) >= to.size())
        fail("InvalidInputFunction", "target letter out of range");
    }
  }

  bool surjective() const {
    std::vector<bool> hit(to.size(), false);
    for (int p : map) hit[p] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  static InputFunction identity(const Alphabet& alpha) {
    InputFunction phi{alpha, alpha, {}};
    phi.map.resize(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) phi.map[i] = static_cast<int>(i);
    return phi;
  }
};

/// delta_phi(q, sigma) = delta(q, phi(sigma)).
inline Semiautomaton compose(const InputFunction& phi, const Semiautomaton& d) {
  phi.validate();
  if (!(phi.to == d.input)) fail("AlphabetMismatch", "input function codomain != semiautomaton alphabet");
  Semiautomaton out;
  out.input = phi.from;
  out.states = d.states;
  out.delta.resize(d.states.size());
  for (std::size_t q = 0; q < d.states.size(); ++q) {
    out.delta[q].resize(phi.from.size());
    for (std::size_t s = 0; s < phi.from.size(); ++s) {
      out.delta[q][s] = d.delta[q][phi.map[s]];
    }
  }
  return out;
}

/// Composition lifted to automata: output is rewired the same way.
inline Automaton compose_automaton(const InputFunction& phi, const Automaton& a) {
  Automaton out;
  out.semi = compose(phi, a.semi);
  out.init = a.init;
  out.output = a.output;
  out.theta.resize(a.semi.state_count());
  for (std::size_t q = 0; q < a.semi.state_count(); ++q) {
    out.theta[q].resize(phi.from.size());
    for (std::size_t s = 0; s < phi.from.size(); ++s) {
      out.theta[q][s] = a.theta[q][phi.map[s]];
    }
  }
  return out;
}

using Transformation = std::vector<int>;

inline Transformation transformation_of(const Semiautomaton& d, std::size_t letter) {
  Transformation tau(d.state_count());
  for (std::size_t q = 0; q < d.state_count(); ++q) tau[q] = d.delta[q][letter];
  return tau;
}

/// One transformation per letter, in letter order.
inline std::vector<Transformation> letter_transformations(const Semiautomaton& d) {
  std::vector<Transformation> out;
  for (std::size_t s = 0; s < d.input.size(); ++s) out.push_back(transformation_of(d, s));
  return out;
}

/// The set of state transformations: duplicates collapse.
inline std::vector<Transformation> distinct_transformations(const Semiautomaton& d) {
  std::set<Transformation> set;
  for (std::size_t s = 0; s < d.input.size(); ++s) set.insert(transformation_of(d, s));
  return {set.begin(), set.end()};
}

inline bool is_permutation(const Transformation& tau) {
  std::vector<bool> hit(tau.size(), false);
  for (int q : tau) {
    if (q < 0 || static_cast<std::size_t>(q) >= tau.size() || hit[q]) return false;
    hit[q] = true;
  }
  return true;
}

inline bool is_reset(const Transformation& tau) {
  return std::all_of(tau.begin(), tau.end(), [&](int q) { return q == tau[0]; });
}

inline bool is_identity(const Transformation& tau) {
  for (std::size_t q = 0; q < tau.size(); ++q) {
    if (tau[q] != static_cast<int>(q)) return false;
  }
  return true;
}

/// Mealy automaton mimicking a Moore-style state labelling:
/// theta(q, sigma) = label(delta(q, sigma)).
inline Automaton from_moore(const Semiautomaton& d, int init, const Alphabet& output,
                            const std::vector<int>& state_labels) {
  if (state_labels.size() != d.state_count()) fail("InvalidAutomaton", "one label per state required");
  Automaton a;
  a.semi = d;
  a.init = init;
  a.output = output;
  a.theta.resize(d.state_count());
  for (std::size_t q = 0; q < d.state_count(); ++q) {
    a.theta[q].resize(d.input.size());
    for (std::size_t s = 0; s < d.input.size(); ++s) {
      a.theta[q][s] = state_labels[d.delta[q][s]];
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Canonical semiautomata.
// ---------------------------------------------------------------------------

/// Inputs {set, reset, read}, states {low, high}; set forces high, reset
/// forces low, read keeps the state.
inline Semiautomaton canonical_flip_flop() {
  Semiautomaton d;
  d.input = Alphabet::named({"set", "reset", "read"});
  d.states = {"low", "high"};
  d.delta = {{1, 0, 0},   // from low
             {1, 0, 1}};  // from high
  return d;
}

/// Letters and states [0, n-1]; delta(i, j) = i + j mod n.
inline Semiautomaton canonical_counter(int n) {
  if (n < 1) fail("ArityError", "counter modulus must be positive");
  Semiautomaton d;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  d.input = Alphabet::named(names);
  d.states = names;
  d.delta.resize(n);
  for (int i = 0; i < n; ++i) {
    d.delta[i].resize(n);
    for (int j = 0; j < n; ++j) d.delta[i][j] = (i + j) % n;
  }
  return d;
}

// ---------------------------------------------------------------------------
// JSON interchange.
// ---------------------------------------------------------------------------

inline nlohmann::json alphabet_to_json(const Alphabet& a) {
  if (a.is_bits()) return nlohmann::json{{"bits", a.bits}};
  return nlohmann::json(a.letters);
}

inline Alphabet alphabet_from_json(const nlohmann::json& j) {
  if (j.is_object()) return Alphabet::bitvec(j.at("bits").get<int>());
  return Alphabet::named(j.get<std::vector<std::string>>());
}

inline nlohmann::json automaton_to_json(const Automaton& a) {
  nlohmann::json j;
  j["inputs"] = alphabet_to_json(a.semi.input);
  j["states"] = a.semi.states;
  j["init"] = a.semi.states[a.init];
  j["delta"] = a.semi.delta;
  j["outputs"] = alphabet_to_json(a.output);
  j["theta"] = a.theta;
  return j;
}

inline Automaton automaton_from_json(const nlohmann::json& j) {
  Automaton a;
  a.semi.input = alphabet_from_json(j.at("inputs"));
  a.semi.states = j.at("states").get<std::vector<std::string>>();
  a.semi.delta = j.at("delta").get<std::vector<std::vector<int>>>();
  if (j.at("init").is_string()) {
    auto idx = a.semi.state_index(j.at("init").get<std::string>());
    if (!idx) fail("InvalidAutomaton", "unknown initial state");
    a.init = static_cast<int>(*idx);
  } else {
    a.init = j.at("init").get<int>();
  }
  a.output = alphabet_from_json(j.at("outputs"));
  a.theta = j.at("theta").get<std::vector<std::vector<int>>>();
  a.validate();
  return a;
}

}  // namespace krlc
