#include <catch2/catch_amalgamated.hpp>

#include "krlc/algebra.hpp"
#include "krlc/equiv.hpp"

using namespace krlc;

TEST_CASE("characteristic semigroup of the canonical flip-flop") {
  Semigroup s = characteristic_semigroup(canonical_flip_flop());
  REQUIRE(s.size() == 3);
  CHECK(s.flip_flop_monoid);
  REQUIRE(s.identity.has_value());
  // relations: e*x = x*e = x, x*x = x, x*y = y for the two resets x,y
  int e = *s.identity;
  std::vector<int> rest;
  for (int i = 0; i < 3; ++i) {
    if (i != e) rest.push_back(i);
  }
  int a = rest[0], b = rest[1];
  CHECK(s.table[e][a] == a);
  CHECK(s.table[a][e] == a);
  CHECK(s.table[a][a] == a);
  CHECK(s.table[b][b] == b);
  CHECK(s.table[a][b] == b);
  CHECK(s.table[b][a] == a);
  CHECK_FALSE(s.group);
}

TEST_CASE("characteristic semigroup of counters is cyclic") {
  for (int n : {2, 3, 4, 5, 6, 7}) {
    Semigroup s = characteristic_semigroup(canonical_counter(n));
    CHECK(s.size() == static_cast<std::size_t>(n));
    CHECK(s.group);
  }
}

TEST_CASE("trivial semiautomaton gives the one-element semigroup") {
  Semiautomaton trivial{Alphabet::named({"x", "y"}), {"q"}, {{0, 0}}};
  CHECK(characteristic_semigroup(trivial).size() == 1);
}

TEST_CASE("state cap enforced") {
  CHECK_THROWS_MATCHES(characteristic_semigroup(canonical_counter(9)), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == "StateSpaceTooLarge";
                       }));
}

TEST_CASE("semiautomaton of a semigroup") {
  Semigroup ff = characteristic_semigroup(canonical_flip_flop());
  Semiautomaton a_ff = semiautomaton_of_semigroup(ff);
  CHECK(a_ff.state_count() == 3);  // identity already present
  CHECK(a_ff.input.size() == 3);

  Semigroup c2 = characteristic_semigroup(canonical_counter(2));
  Semiautomaton a_c2 = semiautomaton_of_semigroup(c2);
  CHECK(semiautomata_isomorphic(a_c2, canonical_counter(2)));

  // A one-element semigroup is trivially a monoid: no state is adjoined.
  Semiautomaton once_core{Alphabet::named({"go"}), {"low", "high"}, {{1}, {1}}};
  Semigroup s = characteristic_semigroup(once_core);
  CHECK(s.size() == 1);
  CHECK(s.identity.has_value());
  CHECK(semiautomaton_of_semigroup(s).state_count() == 1);

  // Two distinct resets compose to a right-zero semigroup without identity,
  // so a formal identity is adjoined as a state.
  Semiautomaton resets{Alphabet::named({"go1", "go2"}), {"1", "2"}, {{0, 1}, {0, 1}}};
  Semigroup rz = characteristic_semigroup(resets);
  REQUIRE(rz.size() == 2);
  CHECK_FALSE(rz.identity.has_value());
  CHECK(semiautomaton_of_semigroup(rz).state_count() == 3);
}

TEST_CASE("simplicity of cyclic groups") {
  auto cyclic = [](int n) { return characteristic_semigroup(canonical_counter(n)); };
  for (int n : {2, 3, 5, 7}) CHECK(is_simple_group(cyclic(n)));
  for (int n : {4, 6}) CHECK_FALSE(is_simple_group(cyclic(n)));
  CHECK_THROWS_MATCHES(is_simple_group(characteristic_semigroup(canonical_flip_flop())), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == "NotAGroup"; }));
}

TEST_CASE("semigroup isomorphism") {
  Semigroup ff = characteristic_semigroup(canonical_flip_flop());
  CHECK(semigroups_isomorphic(ff, ff).has_value());

  // A second flip-flop monoid over renamed states.
  Semiautomaton other{Alphabet::named({"a", "b", "c"}), {"x", "y"}, {{0, 1, 0}, {0, 1, 1}}};
  Semigroup ff2 = characteristic_semigroup(other);
  CHECK(ff2.flip_flop_monoid);
  CHECK(semigroups_isomorphic(ff, ff2).has_value());

  Semigroup c2 = characteristic_semigroup(canonical_counter(2));
  CHECK_FALSE(semigroups_isomorphic(ff, c2).has_value());

  // {identity, one reset} is a 2-element non-group; C2 is a 2-element group.
  Semiautomaton once_like{Alphabet::named({"go", "stay"}), {"low", "high"}, {{1, 0}, {1, 1}}};
  Semigroup m = characteristic_semigroup(once_like);
  REQUIRE(m.size() == 2);
  CHECK_FALSE(semigroups_isomorphic(c2, m).has_value());
}

TEST_CASE("flip-flop recognition is structural") {
  CHECK(is_flip_flop_semiautomaton(canonical_flip_flop()));
  CHECK(is_flip_flop_semiautomaton(factored_since().core));
  CHECK_FALSE(is_flip_flop_semiautomaton(canonical_counter(2)));
  Semiautomaton once_core{Alphabet::named({"go", "stay"}), {"low", "high"}, {{1, 0}, {1, 1}}};
  CHECK_FALSE(is_flip_flop_semiautomaton(once_core));
}

TEST_CASE("prime operators") {
  CHECK(is_prime_operator(factored_since()));
  CHECK(is_prime_operator(factored_flip_flop()));
  CHECK(is_prime_operator(factored_parity()));

  // Once-like operator: flip-flop operator with the reset letter removed is
  // factored over a subsemiautomaton with no reset transformation.
  OperatorAutomaton once;
  once.arity = 1;
  once.semi.input = Alphabet::bitvec(1);
  once.semi.states = {"low", "high"};
  once.semi.delta = {{0, 1}, {1, 1}};
  once.init = 0;
  FactoredOperator f = FactoredOperator::trivial(once);
  CHECK_FALSE(is_prime_operator(f));
}

TEST_CASE("similarity") {
  CHECK(operators_similar(factored_since(), factored_flip_flop()));
  CHECK_FALSE(operators_similar(factored_parity(), factored_since()));
  CHECK(operators_similar(factored_parity(), factored_parity()));
  CHECK(operators_similar(factored_simplified_counter(3), factored_counter(3)));
}

TEST_CASE("semiautomata isomorphism needs matching structure") {
  CHECK(semiautomata_isomorphic(canonical_counter(3), canonical_counter(3)));
  CHECK_FALSE(semiautomata_isomorphic(canonical_counter(3), canonical_counter(2)));
  // same sizes, different structure: C3 vs a 3-state, 3-letter all-reset
  Semiautomaton resets{Alphabet::named({"a", "b", "c"}),
                       {"1", "2", "3"},
                       {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  CHECK_FALSE(semiautomata_isomorphic(canonical_counter(3), resets));
}

TEST_CASE("homomorphism verification") {
  Semiautomaton ff = canonical_flip_flop();
  HomomorphismWitness identity;
  for (int q = 0; q < 2; ++q) {
    identity.sub_states.push_back(q);
    identity.psi2[q] = q;
  }
  for (int l = 0; l < 3; ++l) {
    identity.sub_letters.push_back(l);
    identity.psi1[l] = l;
  }
  CHECK(verify_homomorphism(identity, ff, ff).ok);

  // SR-latch letters of the flip-flop operator onto the canonical flip-flop.
  FactoredOperator since = factored_since();
  Semiautomaton op = since.op.semi;
  HomomorphismWitness w;
  for (int q = 0; q < 2; ++q) {
    w.sub_states.push_back(q);
    w.psi2[q] = q;
  }
  for (int l = 0; l < 4; ++l) {
    w.sub_letters.push_back(l);
    w.psi1[l] = since.phi.map[l];
  }
  CHECK(verify_homomorphism(w, op, canonical_flip_flop()).ok);

  // Mislabeling a letter that keeps the map surjective trips the equation.
  HomomorphismWitness corrupted = w;
  corrupted.psi1[3] = 2;  // a set letter relabeled as read
  auto check = verify_homomorphism(corrupted, op, canonical_flip_flop());
  CHECK_FALSE(check.ok);
  CHECK(check.bad_state >= 0);

  // Dropping a letter class breaks surjectivity instead.
  HomomorphismWitness gap = w;
  gap.psi1[0] = 2;  // the only reset letter relabeled as read
  CHECK_FALSE(verify_homomorphism(gap, op, canonical_flip_flop()).ok);
}

TEST_CASE("acceptor transport along a homomorphism") {
  FactoredOperator since = factored_since();
  Semiautomaton op = since.op.semi;
  HomomorphismWitness w;
  for (int q = 0; q < 2; ++q) {
    w.sub_states.push_back(q);
    w.psi2[q] = q;
  }
  for (int l = 0; l < 4; ++l) {
    w.sub_letters.push_back(l);
    w.psi1[l] = since.phi.map[l];
  }
  // acceptor on the canonical flip-flop: outputs 1 when moving to high
  Automaton a2 = from_moore(canonical_flip_flop(), 0, Alphabet::named({"0", "1"}), {0, 1});
  Automaton a1 = transport_acceptor(w, op, a2);
  CHECK(a1.init == 0);
  for (std::vector<int> word : {std::vector<int>{0}, {0, 1}, {1, 2, 0}, {2, 2, 1}}) {
    CHECK(accepts(a1, word) == accepts(a2, word));
  }
}

TEST_CASE("transport without an initial preimage fails") {
  Semiautomaton ff = canonical_flip_flop();
  HomomorphismWitness w;
  w.sub_states = {0, 1};
  w.psi2[0] = 0;
  w.psi2[1] = 1;
  for (int l = 0; l < 3; ++l) {
    w.sub_letters.push_back(l);
    w.psi1[l] = l;
  }
  Automaton a2 = from_moore(ff, 0, Alphabet::named({"0", "1"}), {0, 1});
  // restrict the witness domain so nothing maps to the initial state
  HomomorphismWitness narrowed = w;
  narrowed.psi2[0] = 1;
  narrowed.psi2[1] = 1;
  auto check = verify_homomorphism(narrowed, ff, a2.semi);
  CHECK_FALSE(check.ok);  // no longer surjective, so transport must refuse too
  CHECK_THROWS_AS(transport_acceptor(narrowed, ff, a2), error);
}
