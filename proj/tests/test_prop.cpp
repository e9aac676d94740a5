#include <doctest.h>

#include "gla/prop.hpp"
#include "support/oracles.hpp"

using namespace gla;

namespace {

Formula F(const char* s) { return parse_formula(s); }

bool only_classical(const Derivation& d) {
  for (const auto& s : d.steps) {
    const auto& j = s.justification;
    if (j.rule == Justification::Rule::Axiom && !is_classical(j.schema)) return false;
    if (j.rule != Justification::Rule::Axiom && j.rule != Justification::Rule::Mp &&
        j.rule != Justification::Rule::Hyp)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("is_tautology examples") {
  CHECK(is_tautology(F("P -> P")));
  CHECK_FALSE(is_tautology(F("[]P -> P")));
  CHECK(is_tautology(F("([]^2 P -> []P) & ([]P -> P) -> ([]^2 P -> P)")));
  CHECK(is_tautology(F("~false")));
  CHECK_FALSE(is_tautology(F("false")));
  CHECK(is_tautology(F("u : P | ~u : P")));
  CHECK_FALSE(is_tautology(F("u : P -> v : P")));
}

TEST_CASE("abstraction") {
  const Formula f = F("[]P & u : Q -> ~[]P | R");
  const Abstraction a = abstract(f);
  REQUIRE(a.letters.size() == 3);
  CHECK(a.letters[0] == F("[]P"));
  CHECK(a.letters[1] == F("u : Q"));
  CHECK(a.letters[2] == F("R"));
  CHECK(print_formula(a.abstracted) == "X1 & X2 -> ~X1 | X3");
  CHECK(print_formula(a.restore(a.abstracted)) == print_formula(f));
  CHECK_FALSE(evaluate(a, {true, true, false}));
  CHECK(evaluate(a, {true, true, true}));
  CHECK(evaluate(a, {false, true, false}));
}

TEST_CASE("compile_tautology examples") {
  Derivation d = compile_tautology(F("P -> P"));
  CHECK(check(d).ok);
  CHECK(d.steps.size() == 5);
  CHECK(d.conclusion() == F("P -> P"));

  CHECK_THROWS_AS(compile_tautology(F("P -> Q")), NotTautologyError);

  Derivation e = compile_tautology(F("~u:P -> (u:P -> false)"));
  CHECK(check(e).ok);
  CHECK(only_classical(e));
  CHECK(e.hypotheses.empty());
  CHECK(e.cs.empty());
}

TEST_CASE("compile_tautology on an axiom instance is one step") {
  Derivation d = compile_tautology(F("false -> []false"));
  CHECK(d.steps.size() == 1);
  CHECK(check(d).ok);
}

TEST_CASE("compile_consequence examples") {
  const Formula X = F("[]Q"), Y = F("u : R");
  Derivation d = compile_consequence({Formula::impl(Formula::neg(X), Y), Formula::impl(X, Y)}, Y);
  CHECK(check(d).ok);
  CHECK(d.conclusion() == Y);
  CHECK(d.hypotheses.size() == 2);
  CHECK(d.taint().back());

  Derivation l = compile_consequence({F("[]false -> false")}, F("~[]false"));
  CHECK(check(l).ok);
  CHECK(l.conclusion() == F("~[]false"));

  Derivation t = compile_consequence({}, F("P -> P"));
  CHECK(check(t).ok);
  CHECK(t.hypotheses.empty());

  CHECK_THROWS_AS(compile_consequence({F("P")}, F("Q")), NotTautologyError);
}

TEST_CASE("compiler handles every connective") {
  for (const char* s : {"P & Q -> Q & P", "P | Q -> Q | P", "~~P -> P", "P -> ~~P", "(P -> Q) -> ~Q -> ~P",
                        "((P -> Q) -> P) -> P", "~(P & ~P)", "P & (Q | R) -> P & Q | P & R", "false -> P",
                        "(P -> false) -> ~P", "~P -> P -> false", "[]P | ~[]P"}) {
    CAPTURE(s);
    const Formula f = parse_formula(s);
    REQUIRE(is_tautology(f));
    Derivation d = compile_tautology(f);
    CHECK(check(d).ok);
    CHECK(d.conclusion() == f);
    CHECK(only_classical(d));
  }
}

TEST_CASE("property: is_tautology matches truth tables and compiled proofs check") {
  oracle::Rng rng(0x7a07);
  std::size_t tautologies = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = oracle::random_formula(rng, 4, {4, false, false});
    // Bias towards tautologies by closing some formulas under excluded middle shapes.
    if (i % 3 == 0) f = Formula::impl(f, Formula::disj(f, oracle::random_formula(rng, 2, {4, false, false})));
    const bool expected = oracle::truth_table_tautology(f);
    CAPTURE(print_formula(f));
    REQUIRE(is_tautology(f) == expected);
    if (expected) {
      ++tautologies;
      Derivation d = compile_tautology(f);
      CHECK(check(d).ok);
      CHECK(d.conclusion() == f);
    } else {
      CHECK_THROWS_AS(compile_tautology(f), NotTautologyError);
    }
  }
  CHECK(tautologies >= 50);
}

TEST_CASE("property: abstraction is injective and restores exactly") {
  oracle::Rng rng(0xab57);
  for (int i = 0; i < 300; ++i) {
    const Formula f = oracle::random_formula(rng, 5);
    const Abstraction a = abstract(f);
    CHECK(print_formula(a.restore(a.abstracted)) == print_formula(f));
    for (std::size_t x = 0; x < a.letters.size(); ++x)
      for (std::size_t y = x + 1; y < a.letters.size(); ++y) CHECK_FALSE(a.letters[x] == a.letters[y]);
  }
}
