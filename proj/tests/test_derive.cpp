#include <doctest.h>

#include <set>

#include "gla/derive.hpp"
#include "gla/prop.hpp"
#include "support/oracles.hpp"

using namespace gla;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

// Expected conclusions spelled out as text, independent of the claim helpers.
std::string bot(std::size_t k) { return "[]^" + std::to_string(k) + " false"; }

void require_proves(const Derivation& d, const Formula& want) {
  auto r = check(d);
  CAPTURE(r.str());
  REQUIRE(r.ok);
  CHECK(d.conclusion() == want);
}

bool uses_rule(const Derivation& d, Justification::Rule rule) {
  for (const auto& s : d.steps)
    if (s.justification.rule == rule) return true;
  return false;
}

std::set<std::string> constants_in(const Derivation& d) {
  std::set<std::string> out;
  for (const auto& e : d.cs.entries()) out.insert(e.constant);
  for (const auto& s : d.steps) collect_constants(s.formula, out);
  return out;
}

}  // namespace

TEST_CASE("distribute_box examples") {
  Derivation base = compile_tautology(F("~[]Q -> ([]Q -> u : R)"));
  CHECK(distribute_box(base, 0) == base);
  require_proves(distribute_box(base, 1), F("[]~[]Q -> [](([]Q -> u : R))"));
  require_proves(distribute_box(compile_tautology(F("P -> P")), 2), F("[]^2 P -> []^2 P"));

  Derivation with_hyp = compile_consequence({F("P")}, F("P | Q"));
  CHECK_THROWS_AS(distribute_box(with_hyp, 1), std::invalid_argument);
  CHECK_THROWS_AS(distribute_box(compile_tautology(F("P | ~P")), 1), std::invalid_argument);
}

TEST_CASE("box_mono examples") {
  require_proves(box_mono(F("P"), 1), F("[]P -> []P"));
  Derivation two = box_mono(F("P"), 2);
  require_proves(two, F("[]P -> [][]P"));
  CHECK(two.steps.size() == 1);
  CHECK(two.steps[0].justification == Justification::axiom(AxiomSchemaId::GL2));
  require_proves(box_mono(F("P"), 3), F("[]P -> [][][]P"));
  require_proves(box_mono(F("~u : P"), 4), F("[]~u : P -> []^4 ~u : P"));
  CHECK_THROWS_AS(box_mono(F("P"), 0), std::invalid_argument);
}

TEST_CASE("distribute_impl examples") {
  Derivation one = distribute_impl(1, F("P"), F("Q"));
  require_proves(one, F("[](P -> Q) -> ([]P -> []Q)"));
  CHECK(one.steps.size() == 1);
  require_proves(distribute_impl(2, F("u : P"), F("false")),
                 F("[]^2 (u : P -> false) -> ([]^2 u : P -> []^2 false)"));
  require_proves(distribute_impl(3, F("P"), F("P")), F("[]^3 (P -> P) -> ([]^3 P -> []^3 P)"));
  CHECK_THROWS_AS(distribute_impl(0, F("P"), F("Q")), std::invalid_argument);
}

TEST_CASE("build_theorem1") {
  for (std::size_t n : {1, 2, 5}) {
    CAPTURE(n);
    CertificatePair p = build_theorem1(n);
    require_proves(p.forward, F("[]P -> []^" + std::to_string(n) + " P"));
    CHECK(p.forward.hypotheses.empty());
    require_proves(p.backward, F("[]^" + std::to_string(n) + " P -> P"));
    REQUIRE(p.backward.hypotheses.size() == n);
    for (std::size_t i = n; i >= 1; --i)
      CHECK(p.backward.hypotheses[n - i] ==
            F("[]^" + std::to_string(i) + " P -> []^" + std::to_string(i - 1) + " P"));
    CHECK_FALSE(p.note.empty());
  }
  CertificatePair one = build_theorem1(1);
  CHECK(one.backward.hypotheses == std::vector<Formula>{F("[]P -> P")});
  CHECK_THROWS_AS(build_theorem1(0), std::invalid_argument);
}

TEST_CASE("build_theorem2 examples") {
  Derivation base = build_theorem2({});
  require_proves(base, F("u : P -> P"));
  CHECK(base.steps.size() == 1);

  Derivation var = build_theorem2({PrefixOp::variable("v")});
  require_proves(var, F("u : v : P -> P"));
  CHECK(var.steps.size() <= 8);

  Derivation box = build_theorem2({PrefixOp::box()});
  require_proves(box, F("u : []P -> P"));
  CHECK(uses_rule(box, Justification::Rule::Refl));
  CHECK(box.hypotheses.empty());

  require_proves(build_theorem2({PrefixOp::box(), PrefixOp::box(), PrefixOp::variable("w"), PrefixOp::box()}, "x"),
                 F("x : [][]w : []P -> P"));
}

TEST_CASE("build_theorem2 preconditions") {
  CHECK_THROWS_AS(build_theorem2({PrefixOp::variable("u")}), std::invalid_argument);
  CHECK_THROWS_AS(build_theorem2({PrefixOp::variable("v"), PrefixOp::variable("v")}), std::invalid_argument);
  CHECK_THROWS_AS(build_theorem2({}, "a"), std::invalid_argument);
}

TEST_CASE("property: build_theorem2 matches the folded generator for variable-only prefixes") {
  Prefix prefix;
  std::string text = "u : ";
  for (int i = 1; i <= 5; ++i) {
    prefix.push_back(PrefixOp::variable("v" + std::to_string(i)));
    text += "v" + std::to_string(i) + " : ";
    require_proves(build_theorem2(prefix), F(text + "P -> P"));
  }
}

TEST_CASE("build_theorem6") {
  require_proves(build_theorem6(0), F("~false -> (u : P -> P)"));
  for (std::size_t k : {1, 3}) {
    CAPTURE(k);
    const std::string K = std::to_string(k);
    Derivation d = build_theorem6(k);
    require_proves(d, F("~[]^" + K + " false -> ([]^" + K + " u : P -> P)"));
    CHECK(d.hypotheses.empty());
  }
}

TEST_CASE("build_lemma2a") {
  Derivation one = build_lemma2a(1);
  require_proves(one, F("false -> []false"));
  CHECK(one.steps[0].justification == Justification::axiom(AxiomSchemaId::KF));
  Derivation two = build_lemma2a(2);
  require_proves(two, F("[]false -> [][]false"));
  CHECK(two.steps[0].justification == Justification::axiom(AxiomSchemaId::GL2));
  require_proves(build_lemma2a(4), F(bot(3) + " -> " + bot(4)));
  CHECK_THROWS_AS(build_lemma2a(0), std::invalid_argument);
}

TEST_CASE("build_lemma2b") {
  Derivation zero = build_lemma2b(0);
  require_proves(zero, F("~false"));
  CHECK(zero.hypotheses.empty());
  Derivation two = build_lemma2b(2);
  require_proves(two, F("~[][]false"));
  CHECK(two.hypotheses == std::vector<Formula>{F("[][]false -> []false"), F("[]false -> false")});
  require_proves(build_lemma2b(4), F("~" + bot(4)));
}

TEST_CASE("lift examples") {
  Derivation axiom;
  axiom.name = "ax";
  axiom.steps.push_back({F("u : P -> P"), Justification::axiom(AxiomSchemaId::LP4)});
  Lifted l = lift(axiom);
  CHECK(l.proof == Term::constant("c1000"));
  require_proves(l.derivation, F("c1000 : (u : P -> P)"));
  CHECK(l.derivation.cs.contains("c1000", F("u : P -> P")));

  // A derivation ending in necessitation.
  Derivation nec = axiom;
  nec.steps.push_back({F("[](u : P -> P)"), Justification::nec(1)});
  Lifted ln = lift(nec);
  require_proves(ln.derivation, Formula::proves(ln.proof, F("[](u : P -> P)")));
  REQUIRE(ln.proof.is(Term::Kind::App));
  CHECK(ln.proof.right().is(Term::Kind::Check));
  CHECK(ln.proof.left().is(Term::Kind::Const));

  Derivation t2 = build_theorem2({PrefixOp::box()});
  Lifted lt = lift(t2);
  require_proves(lt.derivation, Formula::proves(lt.proof, t2.conclusion()));
}

TEST_CASE("lift skips constants already in use") {
  Derivation d;
  d.cs.add("c1000", F("u : P -> P"));
  d.steps.push_back({F("c1000 : (u : P -> P)"), Justification::cs("c1000")});
  d.steps.push_back({F("[](c1000 : (u : P -> P))"), Justification::nec(1)});
  REQUIRE(check(d).ok);
  Lifted l = lift(d);
  require_proves(l.derivation, Formula::proves(l.proof, d.conclusion()));
  std::set<std::string> proof_consts;
  collect_constants(l.proof, proof_consts);
  CHECK(proof_consts.contains("c1000"));  // via !c1000
  for (const auto& e : l.derivation.cs.entries())
    if (e.constant == "c1000") CHECK(e.formula == F("u : P -> P"));
}

TEST_CASE("lift preconditions") {
  CHECK_THROWS_AS(lift(build_lemma2b(1)), std::invalid_argument);
  Derivation taut;
  taut.steps.push_back({F("P | ~P"), Justification::taut()});
  CHECK_THROWS_AS(lift(taut), std::invalid_argument);
}

TEST_CASE("property: lift freshness, soundness and double lift") {
  std::vector<Derivation> corpus = {build_theorem1(3).forward, build_theorem6(1), build_lemma2a(2),
                                    build_theorem2({PrefixOp::variable("v"), PrefixOp::box()}),
                                    distribute_impl(2, F("P"), F("Q"))};
  for (const auto& d : corpus) {
    CAPTURE(d.name);
    const std::set<std::string> before = constants_in(d);
    Lifted l = lift(d);
    require_proves(l.derivation, Formula::proves(l.proof, d.conclusion()));
    for (const auto& e : d.cs.entries()) CHECK(l.derivation.cs.contains(e.constant, e.formula));
    for (const auto& e : l.derivation.cs.entries())
      if (!d.cs.contains(e.constant, e.formula)) CHECK_FALSE(before.contains(e.constant));
    Lifted ll = lift(l.derivation);
    require_proves(ll.derivation, Formula::proves(ll.proof, l.derivation.conclusion()));
  }
}
