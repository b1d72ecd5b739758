#include <catch2/catch_amalgamated.hpp>

#include "krlc/automata.hpp"

using namespace krlc;

namespace {

Automaton flip_flop_acceptor() {
  // Canonical flip-flop reporting whether the next state is high.
  Semiautomaton ff = canonical_flip_flop();
  return from_moore(ff, 0, Alphabet::named({"0", "1"}), {0, 1});
}

}  // namespace

TEST_CASE("flip-flop trajectory") {
  Automaton a = flip_flop_acceptor();
  std::vector<int> input = parse_letters(a.semi.input, "set,read,reset");
  RunResult r = run(a, input);
  std::vector<std::string> names;
  for (int q : r.states) names.push_back(a.semi.states[q]);
  CHECK(names == std::vector<std::string>{"low", "high", "high", "low"});
  CHECK(r.outputs == std::vector<int>{1, 1, 0});
}

TEST_CASE("empty input yields only the initial state") {
  Automaton a = flip_flop_acceptor();
  RunResult r = run(a, {});
  CHECK(r.states == std::vector<int>{0});
  CHECK(r.outputs.empty());
}

TEST_CASE("canonical 3-counter trajectory") {
  Semiautomaton c3 = canonical_counter(3);
  Automaton a = from_moore(c3, 0, Alphabet::named(c3.states), {0, 1, 2});
  RunResult r = run(a, parse_letters(a.semi.input, "1,2,2"));
  CHECK(r.states == std::vector<int>{0, 1, 0, 2});
}

TEST_CASE("run length contracts") {
  Automaton a = flip_flop_acceptor();
  for (std::size_t n : {0u, 1u, 4u}) {
    std::vector<int> input(n, 2);
    RunResult r = run(a, input);
    CHECK(r.states.size() == n + 1);
    CHECK(r.outputs.size() == n);
  }
}

TEST_CASE("acceptance") {
  Automaton a = flip_flop_acceptor();
  CHECK(accepts(a, parse_letters(a.semi.input, "set,read")));
  CHECK_FALSE(accepts(a, parse_letters(a.semi.input, "set,reset")));
  CHECK_THROWS_AS(accepts(a, {}), error);
  Automaton not_acceptor = a;
  not_acceptor.output = Alphabet::named({"x", "y"});
  CHECK_THROWS_AS(accepts(not_acceptor, {0}), error);
}

TEST_CASE("letters outside the alphabet are rejected") {
  Automaton a = flip_flop_acceptor();
  CHECK_THROWS_AS(run(a, {7}), error);
  CHECK_THROWS_AS(parse_letters(a.semi.input, "set,zap"), error);
}

TEST_CASE("identity composition is the identity") {
  Semiautomaton ff = canonical_flip_flop();
  Semiautomaton composed = compose(InputFunction::identity(ff.input), ff);
  CHECK(composed.delta == ff.delta);
}

TEST_CASE("sr-latch composition yields the flip-flop operator core") {
  Semiautomaton ff = canonical_flip_flop();
  // 00 -> read, 10 -> set, 11 -> set, 01 -> reset
  InputFunction phi{Alphabet::bitvec(2), ff.input, {2, 1, 0, 0}};
  Semiautomaton d = compose(phi, ff);
  // delta(q,00)=q, delta(q,10)=delta(q,11)=high, delta(q,01)=low
  CHECK(d.delta == std::vector<std::vector<int>>{{0, 0, 1, 1}, {1, 0, 1, 1}});
}

TEST_CASE("composition rejects mismatched alphabets") {
  Semiautomaton ff = canonical_flip_flop();
  InputFunction phi{Alphabet::bitvec(1), Alphabet::bitvec(2), {0, 1}};
  CHECK_THROWS_AS(compose(phi, ff), error);
}

TEST_CASE("transformations classify") {
  Semiautomaton ff = canonical_flip_flop();
  auto taus = distinct_transformations(ff);
  REQUIRE(taus.size() == 3);
  int identities = 0, resets = 0;
  for (const auto& t : taus) {
    if (is_identity(t)) ++identities;
    if (is_reset(t)) ++resets;
  }
  CHECK(identities == 1);
  CHECK(resets == 2);

  Semiautomaton c2 = canonical_counter(2);
  for (const auto& t : distinct_transformations(c2)) CHECK(is_permutation(t));
  CHECK(distinct_transformations(c2).size() == 2);

  Semiautomaton trivial{Alphabet::named({"x"}), {"q"}, {{0}}};
  auto tt = distinct_transformations(trivial);
  REQUIRE(tt.size() == 1);
  CHECK(is_identity(tt[0]));
  CHECK(is_reset(tt[0]));
}

TEST_CASE("input function surjectivity") {
  Semiautomaton ff = canonical_flip_flop();
  InputFunction onto{Alphabet::bitvec(2), ff.input, {2, 1, 0, 0}};
  CHECK(onto.surjective());
  InputFunction not_onto{Alphabet::bitvec(1), ff.input, {0, 2}};
  CHECK_FALSE(not_onto.surjective());
}

TEST_CASE("json round-trip") {
  Automaton a = flip_flop_acceptor();
  Automaton back = automaton_from_json(automaton_to_json(a));
  CHECK(back.semi.delta == a.semi.delta);
  CHECK(back.theta == a.theta);
  CHECK(back.init == a.init);
  CHECK(back.semi.states == a.semi.states);
  CHECK(back.semi.input == a.semi.input);
}

TEST_CASE("bit alphabets name letters by binary value") {
  Alphabet b = Alphabet::bitvec(2);
  CHECK(b.size() == 4);
  CHECK(b.letter_name(2) == "10");
  CHECK(b.index_of("01") == 1);
  CHECK_FALSE(b.index_of("012").has_value());
}
