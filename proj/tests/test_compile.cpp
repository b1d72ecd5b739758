#include <catch2/catch_amalgamated.hpp>

#include "krlc/compile.hpp"
#include "krlc/equiv.hpp"

using namespace krlc;

namespace {

bool programs_agree(const Program& p, const Variable& v, const Recognizer& other,
                    std::size_t max_len) {
  return bounded_equiv(recognizer_of_program(p, v, other.universe), other, max_len).equal;
}

}  // namespace

TEST_CASE("delay rule automaton") {
  Automaton a = delay_rule_to_automaton(DelayRule{"p", "q"});
  CHECK(run(a, {1, 0}).outputs == std::vector<int>{0, 1});
  CHECK(run(a, {0}).outputs == std::vector<int>{0});
  CHECK(run(a, {1, 1, 0, 0}).outputs == std::vector<int>{0, 1, 1, 0});

  Program p = parse_program("p :- Y q.\n");
  Recognizer aut = recognizer_of_automaton(a, {"q"});
  CHECK(programs_agree(p, "p", aut, 6));
}

TEST_CASE("dynamic rule automaton outputs the one-hot next state") {
  Program parity = parse_program("even, odd :- P(a).\n");
  const auto& rule = std::get<DynamicRule>(parity.rules[0]);
  Automaton a = dynamic_rule_to_automaton(rule);
  CHECK(run(a, {1}).outputs == std::vector<int>{1});  // "01": state 2 one-hot
  CHECK(run(a, {1, 1}).outputs == std::vector<int>{1, 2});

  Program since_prog = parse_program("q1, q2 :- S(a, b).\n");
  Automaton s = dynamic_rule_to_automaton(std::get<DynamicRule>(since_prog.rules[0]));
  auto one = s.semi.input.index_of("01");
  REQUIRE(one.has_value());
  CHECK(run(s, {static_cast<int>(*one)}).outputs == std::vector<int>{1});
}

TEST_CASE("static rule automaton is a truth table") {
  StaticRule r{"h", parse_formula("a & !b")};
  Automaton a = static_rule_to_automaton(r);
  CHECK(a.semi.state_count() == 1);
  CHECK(a.theta[0] == std::vector<int>{0, 0, 1, 0});  // letters 00,01,10,11

  Automaton top = static_rule_to_automaton(StaticRule{"h", parse_formula("true")});
  CHECK(top.theta[0] == std::vector<int>{1});
}

TEST_CASE("program to cascade structure") {
  Program one_rule = parse_program("h :- a | b.\n");
  auto [c1, w1] = program_to_cascade(one_rule);
  CHECK(c1.components.size() == 1);

  Program p = parse_program("q1, q2 :- S(a, b).\nh :- q2 & a.\n");
  auto [c, w] = program_to_cascade(p);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].semi.state_count() == 2);
  CHECK(c.components[1].semi.state_count() == 1);
  for (const Variable v : {"q1", "q2", "h"}) {
    CHECK(programs_agree(p, v, recognizer_of_cascade_variable(c, w, v), 5));
  }
}

TEST_CASE("program to cascade handles every rule form together") {
  Program p = parse_program(
      "e, o :- P(a).\n"
      "s :- o | b.\n"
      "d :- Y s.\n"
      "h :- d & e.\n");
  auto [c, w] = program_to_cascade(p);
  CHECK(c.components.size() == 4);
  for (const Variable v : {"e", "o", "s", "d", "h"}) {
    CHECK(programs_agree(p, v, recognizer_of_cascade_variable(c, w, v), 4));
  }
}

TEST_CASE("automaton to program construction counts") {
  Automaton acceptor;
  acceptor.semi = flip_flop_operator().semi;
  acceptor.init = 0;
  acceptor.output = Alphabet::bitvec(1);
  acceptor.theta = {{0, 0, 1, 1}, {1, 0, 1, 1}};  // next-state bit
  auto [p, w] = automaton_to_program(acceptor, {"x", "y"});
  std::size_t dynamic = 0, delay = 0, stat = 0;
  for (const Rule& r : p.rules) {
    if (std::holds_alternative<DynamicRule>(r)) ++dynamic;
    if (std::holds_alternative<DelayRule>(r)) ++delay;
    if (std::holds_alternative<StaticRule>(r)) ++stat;
  }
  CHECK(dynamic == 1);
  CHECK(delay == 2);
  CHECK(stat == 3);  // 2 input bits + 1 output bit
  REQUIRE(w.output_vars.size() == 1);
  CHECK(programs_agree(p, w.output_vars[0], recognizer_of_automaton(acceptor, {"x", "y"}), 6));
}

TEST_CASE("one-state automata compile to static rules only") {
  StaticRule r{"h", parse_formula("a & b")};
  Automaton a = static_rule_to_automaton(r);
  auto [p, w] = automaton_to_program(a, InputFunction::identity(a.semi.input), a.semi, {"a", "b"});
  for (const Rule& rule : p.rules) CHECK(std::holds_alternative<StaticRule>(rule));
  CHECK(programs_agree(p, w.output_vars[0], recognizer_of_automaton(a, {"a", "b"}), 5));
}

TEST_CASE("cascade to program base case and round-trip") {
  Program p = parse_program("q1, q2 :- S(a, b).\nh :- q2.\n");
  auto [c, wc] = program_to_cascade(p);
  auto [back, wb] = cascade_to_program(c, {"a", "b"});
  std::size_t dynamic = 0;
  for (const Rule& r : back.rules) {
    if (std::holds_alternative<DynamicRule>(r)) ++dynamic;
  }
  CHECK(dynamic == 1);  // only the since component has more than one state
  Recognizer orig = recognizer_of_program(p, "h", {"a", "b"});
  CHECK(bounded_equiv(orig, recognizer_of_program(back, wb.output_vars[0], {"a", "b"}), 5).equal);
}

TEST_CASE("pltl to program") {
  auto [p, accept] = pltl_to_program(parse_formula("a S b"));
  CHECK(p.rules.size() <= 3);
  CHECK(bounded_equiv(recognizer_of_formula(parse_formula("a S b"), {"a", "b"}),
                      recognizer_of_program(p, accept, {"a", "b"}), 6)
            .equal);

  auto [p2, accept2] = pltl_to_program(parse_formula("a"));
  CHECK(p2.rules.empty());
  CHECK(accept2 == "a");

  auto [p3, accept3] = pltl_to_program(parse_formula("Y (a S b) & c"));
  std::size_t dynamic = 0, delay = 0, stat = 0;
  for (const Rule& r : p3.rules) {
    if (std::holds_alternative<DynamicRule>(r)) ++dynamic;
    if (std::holds_alternative<DelayRule>(r)) ++delay;
    if (std::holds_alternative<StaticRule>(r)) ++stat;
  }
  CHECK(dynamic == 1);
  CHECK(delay == 1);
  CHECK(stat == 1);
  CHECK(bounded_equiv(recognizer_of_formula(parse_formula("Y (a S b) & c"), {"a", "b", "c"}),
                      recognizer_of_program(p3, accept3, {"a", "b", "c"}), 4)
            .equal);
}

TEST_CASE("pltl to program rule count is linear") {
  for (const char* text : {"a S b", "(a S b) S (Y a)", "!(a & Y b) | (a S a)", "Y Y Y a"}) {
    FormulaPtr f = parse_formula(text);
    auto [p, accept] = pltl_to_program(f);
    CHECK(p.rules.size() <= formula_size(f));
    CHECK(bounded_equiv(recognizer_of_formula(f, {"a", "b"}),
                        recognizer_of_program(p, accept, {"a", "b"}), 4)
              .equal);
  }
}

TEST_CASE("unfold inverts pltl_to_program") {
  for (const char* text : {"a S b", "Y a | b", "(a S b) & Y b", "!(a S b)"}) {
    FormulaPtr f = parse_formula(text);
    auto [p, accept] = pltl_to_program(f);
    FormulaPtr back = unfold_program(p, accept);
    CHECK(bounded_equiv(recognizer_of_formula(f, {"a", "b"}),
                        recognizer_of_formula(back, {"a", "b"}), 5)
              .equal);
  }
}

TEST_CASE("unfold of the since rule names both heads") {
  Program p = parse_program("q1, q2 :- S(a, b).\n");
  CHECK(to_string(unfold_program(p, "q2")) == "a S b");
  CHECK(to_string(unfold_program(p, "q1")) == "!(a S b)");
  CHECK(to_string(unfold_program(p, "a")) == "a");
}

TEST_CASE("unfold rejects non-since operators") {
  Program p = parse_program("e, o :- P(a).\n");
  CHECK_THROWS_MATCHES(unfold_program(p, "e"), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == "UnsupportedOperator";
                       }));
}

TEST_CASE("treelike normal programs unfold with linear size") {
  for (const char* text : {"h :- Y p.\np :- a & b.\n", "h :- q & a.\nq :- p S b.\n",
                           "h :- Y p.\np :- a | !b.\n"}) {
    Program p = parse_program(text);
    REQUIRE(is_normal(p));
    REQUIRE(is_treelike(p));
    FormulaPtr f = unfold_program(p, "h");
    CHECK(formula_size(f) <= 3 * program_size(p));
  }
}

TEST_CASE("shared subterms unfold exponentially") {
  for (int k = 3; k <= 8; ++k) {
    std::string text = "p1 :- a & a.\n";
    for (int i = 2; i <= k; ++i) {
      std::string prev = "p" + std::to_string(i - 1);
      text += "p" + std::to_string(i) + " :- " + prev + " & " + prev + ".\n";
    }
    Program p = parse_program(text);
    FormulaPtr f = unfold_program(p, "p" + std::to_string(k));
    CHECK(formula_size(f) >= (std::size_t{1} << k));
  }
}

TEST_CASE("formula to normal program") {
  for (const char* text : {"a S b", "Y (a S b)", "Y Y Y a", "(Y a) & (Y b)", "O a", "H a"}) {
    FormulaPtr f = parse_formula(text);
    auto [p, accept] = formula_to_normal_program(f);
    INFO(text);
    CHECK(is_normal(p));
    CHECK(p.rules.size() <= 2 * formula_size(desugar(f)));
    CHECK(bounded_equiv(recognizer_of_formula(f, {"a", "b"}),
                        recognizer_of_program(p, accept, {"a", "b"}), 5)
              .equal);
  }
}

TEST_CASE("formula to normal program is treelike without shared temporal joins") {
  auto [p, accept] = formula_to_normal_program(parse_formula("Y (a S b)"));
  CHECK(is_treelike(p));
  (void)accept;
}

TEST_CASE("flip-flop automaton simulation and translation") {
  FlipFlopAutomatonSpec spec;
  spec.input_vars = {"s", "r"};
  spec.p_phi = parse_program("set :- s & !r.\nreset :- r & !s.\n");
  spec.p_theta = parse_program("out :- high.\n");
  spec.output_vars = {"out"};

  Automaton a = flipflop_automaton(spec);
  // inputs set,read,read: states low,high,high,high; outputs report q_{t-1}
  auto letters = [&](const std::string& srbits) {
    std::vector<int> out;
    for (char c : srbits) out.push_back(c - '0');
    return out;
  };
  (void)letters;
  std::vector<int> w = {2, 0, 0};  // s=1,r=0 then s=0,r=0 twice
  RunResult r = run(a, w);
  CHECK(r.outputs == std::vector<int>{0, 1, 1});

  Program p = flipflop_automaton_to_pltl_program(spec);
  Trace I;
  I.universe = {"s", "r"};
  I.steps = {{true, false}, {false, false}, {false, false}};
  CHECK_FALSE(eval_program(p, I, 1, Variable("high")));
  CHECK(eval_program(p, I, 2, Variable("high")));
  CHECK(eval_program(p, I, 3, Variable("high")));

  CHECK(bounded_equiv(recognizer_of_program(p, "out", {"s", "r"}),
                      recognizer_of_automaton(a, {"s", "r"}), 6)
            .equal);
}

TEST_CASE("reset-only input stays low") {
  FlipFlopAutomatonSpec spec;
  spec.input_vars = {"s", "r"};
  spec.p_phi = parse_program("set :- s & !r.\nreset :- r & !s.\n");
  spec.p_theta = parse_program("out :- high.\n");
  spec.output_vars = {"out"};
  Program p = flipflop_automaton_to_pltl_program(spec);
  Trace I;
  I.universe = {"s", "r"};
  I.steps = {{false, true}, {false, true}};
  CHECK(eval_program(p, I, 1, Variable("low")));
  CHECK(eval_program(p, I, 2, Variable("low")));
}

TEST_CASE("high initial state is rejected") {
  FlipFlopAutomatonSpec spec;
  spec.input_vars = {"s"};
  spec.p_phi = parse_program("set :- s.\nreset :- !s.\n");
  spec.p_theta = parse_program("out :- high.\n");
  spec.output_vars = {"out"};
  spec.init = 1;
  CHECK_THROWS_MATCHES(flipflop_automaton_to_pltl_program(spec), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == "UnsupportedInitialState";
                       }));
}
