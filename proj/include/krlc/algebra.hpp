#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "krlc/automata.hpp"
#include "krlc/errors.hpp"
#include "krlc/operators.hpp"

namespace krlc {

/// Composition in string order: (a * b)(q) = b(a(q)), a applied first.
inline Transformation compose_transformations(const Transformation& a, const Transformation& b) {
  Transformation out(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) out[q] = b[a[q]];
  return out;
}

/// Finite set of state transformations closed under composition.
struct Semigroup {
  std::vector<Transformation> elements;
  std::vector<std::vector<int>> table;  // table[i][j] = elements[i] * elements[j]
  std::optional<int> identity;
  bool group = false;
  bool flip_flop_monoid = false;

  std::size_t size() const { return elements.size(); }

  int index_of(const Transformation& t) const {
    auto it = std::find(elements.begin(), elements.end(), t);
    if (it == elements.end()) fail("Internal", "element not in semigroup");
    return static_cast<int>(it - elements.begin());
  }
};

namespace detail {

inline void compute_semigroup_flags(Semigroup& s) {
  std::size_t n = s.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool id = true;
    for (std::size_t x = 0; x < n && id; ++x) {
      id = s.table[e][x] == static_cast<int>(x) && s.table[x][e] == static_cast<int>(x);
    }
    if (id) {
      s.identity = static_cast<int>(e);
      break;
    }
  }
  s.group = s.identity.has_value();
  if (s.group) {
    for (std::size_t x = 0; x < n && s.group; ++x) {
      bool invertible = false;
      for (std::size_t y = 0; y < n; ++y) {
        if (s.table[x][y] == *s.identity && s.table[y][x] == *s.identity) {
          invertible = true;
          break;
        }
      }
      s.group = invertible;
    }
  }
  // Flip-flop monoid: {e, s, r} with x*x = x, x*y = y for x,y != e.
  s.flip_flop_monoid = false;
  if (n == 3 && s.identity) {
    std::vector<int> rest;
    for (int i = 0; i < 3; ++i) {
      if (i != *s.identity) rest.push_back(i);
    }
    int a = rest[0], b = rest[1];
    s.flip_flop_monoid = s.table[a][a] == a && s.table[b][b] == b && s.table[a][b] == b &&
                         s.table[b][a] == a;
  }
}

}  // namespace detail

inline Semigroup semigroup_from_elements(std::vector<Transformation> elements) {
  Semigroup s;
  s.elements = std::move(elements);
  std::size_t n = s.size();
  s.table.assign(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s.table[i][j] = s.index_of(compose_transformations(s.elements[i], s.elements[j]));
    }
  }
  detail::compute_semigroup_flags(s);
  return s;
}

/// Closure of the letter transformations under composition.
inline Semigroup characteristic_semigroup(const Semiautomaton& d, std::size_t max_states = 8) {
  if (d.state_count() > max_states)
    fail("StateSpaceTooLarge", std::to_string(d.state_count()) + " states exceeds cap " +
                                   std::to_string(max_states));
  std::vector<Transformation> generators = distinct_transformations(d);
  std::vector<Transformation> elements;
  std::set<Transformation> seen;
  std::vector<Transformation> frontier;
  for (const auto& g : generators) {
    if (seen.insert(g).second) {
      elements.push_back(g);
      frontier.push_back(g);
    }
  }
  while (!frontier.empty()) {
    std::vector<Transformation> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        Transformation y = compose_transformations(x, g);
        if (seen.insert(y).second) {
          elements.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return semigroup_from_elements(std::move(elements));
}

/// A_S = <S u {e}, S, delta(s1, s2) = s1 * s2>: states are the elements with
/// an identity adjoined, letters are the elements.
inline Semiautomaton semiautomaton_of_semigroup(const Semigroup& s) {
  std::vector<Transformation> states = s.elements;
  int identity_state;
  if (s.identity) {
    identity_state = *s.identity;
  } else {
    // Adjoin a formal identity as an extra state.
    identity_state = static_cast<int>(states.size());
    states.push_back({});
  }
  Semiautomaton d;
  std::vector<std::string> letter_names;
  for (std::size_t i = 0; i < s.size(); ++i) letter_names.push_back("s" + std::to_string(i));
  d.input = Alphabet::named(letter_names);
  for (std::size_t i = 0; i < states.size(); ++i) {
    d.states.push_back(static_cast<int>(i) == identity_state && !s.identity
                           ? "e"
                           : "s" + std::to_string(i));
  }
  d.delta.assign(states.size(), std::vector<int>(s.size()));
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (static_cast<int>(q) == identity_state && !s.identity) {
        d.delta[q][l] = static_cast<int>(l);  // e * s = s
      } else {
        d.delta[q][l] = s.table[q][l];
      }
    }
  }
  return d;
}

inline bool is_group(const Semigroup& s) { return s.group; }

namespace detail {

inline std::set<int> generated_subgroup(const Semigroup& g, std::set<int> seed) {
  seed.insert(*g.identity);
  while (true) {
    std::set<int> next = seed;
    for (int a : seed) {
      for (int b : seed) next.insert(g.table[a][b]);
    }
    if (next == seed) return seed;
    seed = std::move(next);
  }
}

inline std::vector<std::set<int>> all_subgroups(const Semigroup& g) {
  std::set<std::set<int>> subs;
  for (std::size_t x = 0; x < g.size(); ++x) {
    subs.insert(generated_subgroup(g, {static_cast<int>(x)}));
  }
  // Close the collection under pairwise join.
  while (true) {
    std::set<std::set<int>> next = subs;
    for (const auto& a : subs) {
      for (const auto& b : subs) {
        std::set<int> u = a;
        u.insert(b.begin(), b.end());
        next.insert(generated_subgroup(g, std::move(u)));
      }
    }
    if (next == subs) break;
    subs = std::move(next);
  }
  return {subs.begin(), subs.end()};
}

inline bool is_normal_subgroup(const Semigroup& g, const std::set<int>& h) {
  for (std::size_t x = 0; x < g.size(); ++x) {
    std::set<int> left, right;
    for (int e : h) {
      left.insert(g.table[x][e]);
      right.insert(g.table[e][x]);
    }
    if (left != right) return false;
  }
  return true;
}

}  // namespace detail

/// Simple: the only normal subgroups are trivial and the whole group.
/// The trivial group is not simple.
inline bool is_simple_group(const Semigroup& s, std::size_t max_size = 24) {
  if (!s.group) fail("NotAGroup", "simplicity is defined for groups");
  if (s.size() > max_size) fail("TooLarge", std::to_string(s.size()) + " elements");
  if (s.size() == 1) return false;
  for (const auto& h : detail::all_subgroups(s)) {
    if (h.size() == 1 || h.size() == s.size()) continue;
    if (detail::is_normal_subgroup(s, h)) return false;
  }
  return true;
}

/// Brute-force search for a table-respecting bijection.
inline std::optional<std::vector<int>> semigroups_isomorphic(const Semigroup& s, const Semigroup& t,
                                                             std::size_t max_size = 8) {
  if (s.size() != t.size()) return std::nullopt;
  if (s.size() > max_size) fail("TooLarge", std::to_string(s.size()) + " elements");
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      for (std::size_t j = 0; j < s.size() && ok; ++j) {
        ok = perm[s.table[i][j]] == t.table[perm[i]][perm[j]];
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Isomorphism of semiautomata: bijections on states and letters preserving
/// the transition function.
inline bool semiautomata_isomorphic(const Semiautomaton& d1, const Semiautomaton& d2,
                                    std::size_t max_states = 8) {
  if (d1.state_count() != d2.state_count() || d1.input.size() != d2.input.size()) return false;
  if (d1.state_count() > max_states) fail("TooLarge", "state space exceeds isomorphism cap");
  std::size_t n = d1.state_count();

  std::map<Transformation, int> d2_counts;
  for (std::size_t l = 0; l < d2.input.size(); ++l) ++d2_counts[transformation_of(d2, l)];

  std::vector<int> psi(n);
  std::iota(psi.begin(), psi.end(), 0);
  do {
    std::map<Transformation, int> counts = d2_counts;
    bool ok = true;
    for (std::size_t l = 0; l < d1.input.size() && ok; ++l) {
      Transformation tau = transformation_of(d1, l);
      Transformation conj(n);
      for (std::size_t q = 0; q < n; ++q) conj[psi[q]] = psi[tau[q]];
      auto it = counts.find(conj);
      ok = it != counts.end() && it->second > 0;
      if (ok) --it->second;
    }
    if (ok) return true;
  } while (std::next_permutation(psi.begin(), psi.end()));
  return false;
}

/// One letter per distinct transformation.
inline Semiautomaton collapse_letters(const Semiautomaton& d) {
  Semiautomaton out;
  out.states = d.states;
  std::vector<Transformation> distinct = distinct_transformations(d);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < distinct.size(); ++i) names.push_back("t" + std::to_string(i));
  out.input = Alphabet::named(names);
  out.delta.assign(d.state_count(), std::vector<int>(distinct.size()));
  for (std::size_t l = 0; l < distinct.size(); ++l) {
    for (std::size_t q = 0; q < d.state_count(); ++q) out.delta[q][l] = distinct[l][q];
  }
  return out;
}

/// Structural flip-flop: two states whose transformation set is exactly
/// {identity, constant-to-a, constant-to-b}.
inline bool is_flip_flop_semiautomaton(const Semiautomaton& d) {
  if (d.state_count() != 2) return false;
  std::set<Transformation> set;
  for (const auto& t : distinct_transformations(d)) set.insert(t);
  return set == std::set<Transformation>{{0, 1}, {0, 0}, {1, 1}};
}

/// Prime: a surjective input function over a core that is a flip-flop or is
/// defined (up to isomorphism, after letter collapse) by a simple group.
inline bool is_prime_operator(const FactoredOperator& f) {
  f.validate();
  if (!f.phi.surjective()) return false;
  if (is_flip_flop_semiautomaton(f.core)) return true;
  Semigroup s = characteristic_semigroup(f.core);
  if (!s.group) return false;
  if (!is_simple_group(s)) return false;
  Semiautomaton a_s = semiautomaton_of_semigroup(s);
  return semiautomata_isomorphic(collapse_letters(f.core), collapse_letters(a_s));
}

/// Similar operators have isomorphic cores.
inline bool operators_similar(const FactoredOperator& f1, const FactoredOperator& f2) {
  return semiautomata_isomorphic(f1.core, f2.core);
}

// ---------------------------------------------------------------------------
// Homomorphisms: psi_1 maps letters, psi_2 maps states, both surjective onto
// the target, with psi_2(delta(q, sigma)) = delta'(psi_2(q), psi_1(sigma)).
// ---------------------------------------------------------------------------

struct HomomorphismWitness {
  std::vector<int> sub_states;   // source subsemiautomaton, state indices
  std::vector<int> sub_letters;  // source letter indices
  std::map<int, int> psi1;       // letter -> target letter
  std::map<int, int> psi2;       // state -> target state
};

struct HomomorphismCheck {
  bool ok = false;
  std::string reason;
  int bad_state = -1, bad_letter = -1;
};

inline HomomorphismCheck verify_homomorphism(const HomomorphismWitness& w, const Semiautomaton& d1,
                                             const Semiautomaton& d2) {
  HomomorphismCheck r;
  for (int q : w.sub_states) {
    if (!w.psi2.count(q)) {
      r.reason = "psi2 undefined on state " + d1.states[q];
      return r;
    }
  }
  for (int l : w.sub_letters) {
    if (!w.psi1.count(l)) {
      r.reason = "psi1 undefined on letter " + d1.input.letter_name(l);
      return r;
    }
  }
  std::set<int> state_image, letter_image;
  for (int q : w.sub_states) state_image.insert(w.psi2.at(q));
  for (int l : w.sub_letters) letter_image.insert(w.psi1.at(l));
  if (state_image.size() != d2.state_count()) {
    r.reason = "psi2 is not surjective onto the target states";
    return r;
  }
  if (letter_image.size() != d2.input.size()) {
    r.reason = "psi1 is not surjective onto the target letters";
    return r;
  }
  std::set<int> subset(w.sub_states.begin(), w.sub_states.end());
  for (int q : w.sub_states) {
    for (int l : w.sub_letters) {
      int target = d1.delta[q][l];
      if (!subset.count(target)) {
        r.reason = "subsemiautomaton not closed at (" + d1.states[q] + ", " +
                   d1.input.letter_name(l) + ")";
        r.bad_state = q;
        r.bad_letter = l;
        return r;
      }
      if (w.psi2.at(target) != d2.delta[w.psi2.at(q)][w.psi1.at(l)]) {
        r.reason = "homomorphism equation fails at (" + d1.states[q] + ", " +
                   d1.input.letter_name(l) + ")";
        r.bad_state = q;
        r.bad_letter = l;
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

/// Given a verified homomorphism of a subsemiautomaton of d1 onto d2 and an
/// acceptor running on d2, build an acceptor on d1 recognizing the same
/// language.  Letters and the initial state are pulled back to their first
/// preimages.
inline Automaton transport_acceptor(const HomomorphismWitness& w, const Semiautomaton& d1,
                                    const Automaton& a2) {
  auto check = verify_homomorphism(w, d1, a2.semi);
  if (!check.ok) fail("InvalidWitness", check.reason);
  auto pick_letter = [&](int target) {
    for (int l : w.sub_letters) {
      if (w.psi1.at(l) == target) return l;
    }
    fail("Internal", "surjectivity guaranteed a preimage");
  };
  Automaton a1;
  a1.semi.input = a2.semi.input;
  a1.semi.states = d1.states;
  a1.semi.delta.assign(d1.state_count(), std::vector<int>(a2.semi.input.size(), 0));
  a1.output = a2.output;
  a1.theta.assign(d1.state_count(), std::vector<int>(a2.semi.input.size(), 0));
  for (std::size_t sigma = 0; sigma < a2.semi.input.size(); ++sigma) {
    int pre = pick_letter(static_cast<int>(sigma));
    for (std::size_t q = 0; q < d1.state_count(); ++q) {
      a1.semi.delta[q][sigma] = d1.delta[q][pre];
      if (w.psi2.count(static_cast<int>(q))) {
        a1.theta[q][sigma] = a2.theta[w.psi2.at(static_cast<int>(q))][sigma];
      }
    }
  }
  int init = -1;
  for (int q : w.sub_states) {
    if (w.psi2.at(q) == a2.init) {
      init = q;
      break;
    }
  }
  if (init < 0) fail("NoInitialPreimage", "no subsemiautomaton state maps to the initial state");
  a1.init = init;
  a1.validate();
  return a1;
}

}  // namespace krlc
