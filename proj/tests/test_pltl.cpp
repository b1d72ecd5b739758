#include <catch2/catch_amalgamated.hpp>

#include "krlc/equiv.hpp"
#include "krlc/pltl.hpp"

using namespace krlc;

TEST_CASE("parser shapes") {
  CHECK(parse_formula("a S b")->kind == FKind::Since);
  CHECK(parse_formula("O a")->kind == FKind::Once);
  FormulaPtr f = parse_formula("Y (a & !b)");
  REQUIRE(f->kind == FKind::Before);
  REQUIRE(f->lhs->kind == FKind::And);
  CHECK(f->lhs->rhs->kind == FKind::Not);
}

TEST_CASE("precedence and associativity") {
  // ! > Y > & > | > S, S right-associative.
  CHECK(to_string(parse_formula("a | b & c")) == "a | b & c");
  CHECK(parse_formula("a | b & c")->kind == FKind::Or);
  CHECK(parse_formula("Y a & b")->kind == FKind::And);
  CHECK(parse_formula("!a S b | c")->kind == FKind::Since);
  FormulaPtr f = parse_formula("a S b S c");
  REQUIRE(f->kind == FKind::Since);
  CHECK(f->rhs->kind == FKind::Since);
  CHECK(f->lhs->kind == FKind::Atom);
}

TEST_CASE("printer round-trips") {
  for (const char* text :
       {"a S b", "(a S b) S c", "Y (a | b)", "!(a & b)", "H (a S !b)", "O a & b",
        "true S (false | a)"}) {
    FormulaPtr f = parse_formula(text);
    CHECK(to_string(parse_formula(to_string(f))) == to_string(f));
  }
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_formula("a &"), syntax_error);
  CHECK_THROWS_AS(parse_formula("S a"), syntax_error);
  CHECK_THROWS_AS(parse_formula("(a"), syntax_error);
  CHECK_THROWS_AS(parse_formula("a b"), syntax_error);
}

TEST_CASE("before boundary") {
  FormulaPtr f = parse_formula("Y a");
  Trace I = parse_trace("{a}; {}", {"a"});
  CHECK(eval_formula(f, I, 2));
  CHECK_FALSE(eval_formula(f, I, 1));
  CHECK_THROWS_AS(eval_formula(f, I, 0), error);
  CHECK_THROWS_AS(eval_formula(f, I, 3), error);
}

TEST_CASE("since by the direct clause") {
  FormulaPtr f = parse_formula("a S b");
  CHECK(eval_formula(f, parse_trace("{b}; {a}; {a}", {"a", "b"}), 3));
  CHECK_FALSE(eval_formula(f, parse_trace("{b}; {}; {a}", {"a", "b"}), 3));
  CHECK(eval_formula(f, parse_trace("{b}; {a}", {"a", "b"}), 2));
}

TEST_CASE("since at the first instant") {
  FormulaPtr f = parse_formula("a S b");
  CHECK(eval_formula_inductive(f, parse_trace("{b}", {"a", "b"}), 1));
  CHECK_FALSE(eval_formula_inductive(f, parse_trace("{}", {"a", "b"}), 1));
}

TEST_CASE("recognizes evaluates at the last instant") {
  CHECK(recognizes(parse_formula("O a"), parse_trace("{}; {a}; {}", {"a"})));
  CHECK(recognizes(parse_formula("H a"), parse_trace("{a}; {a}", {"a"})));
  CHECK_FALSE(recognizes(parse_formula("H a"), parse_trace("{a}; {}", {"a"})));
  CHECK(recognizes(parse_formula("a S b"), parse_trace("{b}; {a}", {"a", "b"})));
}

TEST_CASE("sugar matches its expansion") {
  Trace I = parse_trace("{}; {a}; {}; {a,b}", {"a", "b"});
  for (std::size_t t = 1; t <= 4; ++t) {
    CHECK(eval_formula(parse_formula("O a"), I, t) ==
          eval_formula(parse_formula("true S a"), I, t));
    CHECK(eval_formula(parse_formula("H a"), I, t) ==
          eval_formula(parse_formula("!(true S !a)"), I, t));
  }
}

TEST_CASE("de morgan pointwise") {
  Trace I = parse_trace("{a}; {b}; {a,b}; {}", {"a", "b"});
  for (std::size_t t = 1; t <= 4; ++t) {
    CHECK(eval_formula(parse_formula("!(a & b)"), I, t) ==
          eval_formula(parse_formula("!a | !b"), I, t));
  }
}

TEST_CASE("direct and inductive semantics agree on small formulas") {
  // Spot sample here; the exhaustive sweep is in the acceptance suite.
  std::vector<Variable> universe{"a", "b"};
  for (const char* text : {"a S b", "(Y a) S b", "a S (b S a)", "!(a S b)", "Y (a S b)"}) {
    FormulaPtr f = parse_formula(text);
    std::size_t used = 0;
    detail::for_each_trace(universe, 4, 1000000, &used, [&](const Trace& I) {
      for (std::size_t t = 1; t <= I.length(); ++t) {
        REQUIRE(eval_formula(f, I, t) == eval_formula_inductive(f, I, t));
      }
      return true;
    });
  }
}

TEST_CASE("formula size counts nodes, sugar included") {
  CHECK(formula_size(parse_formula("a")) == 1);
  CHECK(formula_size(parse_formula("O a")) == 2);
  CHECK(formula_size(parse_formula("a S (b & c)")) == 5);
  CHECK(formula_size(desugar(parse_formula("O a"))) == 3);
}

TEST_CASE("variables in first-occurrence order") {
  CHECK(variables_of(parse_formula("b S (a & b)")) == std::vector<Variable>{"b", "a"});
}

TEST_CASE("static detection") {
  CHECK(is_static(parse_formula("a & !b | true")));
  CHECK_FALSE(is_static(parse_formula("a & Y b")));
  CHECK_FALSE(is_static(parse_formula("O a")));
}
