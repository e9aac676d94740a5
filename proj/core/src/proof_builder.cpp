#include "gla/proof_builder.hpp"

#include <algorithm>
#include <stdexcept>

namespace gla {

ProofBuilder::ProofBuilder(std::vector<Formula> hypotheses, ConstantSpecification cs)
    : hypotheses_(std::move(hypotheses)), cs_(std::move(cs)) {}

ProofBuilder::Ref ProofBuilder::push(Formula f, Justification j, bool tainted) {
  if (auto it = proved_.find(f); it != proved_.end()) {
    if (!tainted_[it->second - 1] || tainted) return it->second;
  }
  steps_.push_back({f, std::move(j)});
  tainted_.push_back(tainted);
  const Ref r = steps_.size();
  proved_.insert_or_assign(std::move(f), r);
  return r;
}

ProofBuilder::Ref ProofBuilder::hypothesis(std::size_t index) {
  if (index == 0 || index > hypotheses_.size()) throw std::out_of_range("no hypothesis " + std::to_string(index));
  return push(hypotheses_[index - 1], Justification::hyp(index), true);
}

ProofBuilder::Ref ProofBuilder::assume(const Formula& f) {
  auto it = std::find(hypotheses_.begin(), hypotheses_.end(), f);
  if (it == hypotheses_.end()) {
    hypotheses_.push_back(f);
    return hypothesis(hypotheses_.size());
  }
  return hypothesis(static_cast<std::size_t>(it - hypotheses_.begin()) + 1);
}

ProofBuilder::Ref ProofBuilder::axiom(AxiomSchemaId id, Formula f) {
  return push(std::move(f), Justification::axiom(id), false);
}

ProofBuilder::Ref ProofBuilder::axiom(Formula f) {
  auto m = match_axiom(f);
  if (!m) throw std::logic_error("not an axiom instance: " + print_formula(f));
  return axiom(m->schema, std::move(f));
}

ProofBuilder::Ref ProofBuilder::constant(const std::string& c, Formula a) {
  cs_.add(c, a);
  return push(Formula::proves(Term::constant(c), std::move(a)), Justification::cs(c), false);
}

ProofBuilder::Ref ProofBuilder::mp(Ref a, Ref ab) {
  const Formula& imp = formula(ab);
  if (!imp.is(Formula::Kind::Impl) || !(imp.lhs() == formula(a)))
    throw std::logic_error("modus ponens mismatch: " + print_formula(formula(a)) + " against " + print_formula(imp));
  return push(imp.rhs(), Justification::mp(a, ab), tainted(a) || tainted(ab));
}

ProofBuilder::Ref ProofBuilder::nec(Ref a) {
  if (tainted(a)) throw std::logic_error("necessitation over hypothesis-tainted step");
  return push(Formula::box(formula(a)), Justification::nec(a), false);
}

ProofBuilder::Ref ProofBuilder::refl(Ref a) {
  const Formula& f = formula(a);
  if (tainted(a)) throw std::logic_error("reflection rule over hypothesis-tainted step");
  if (!f.is(Formula::Kind::Box)) throw std::logic_error("reflection rule needs a boxed premise");
  return push(f.body(), Justification::refl(a), false);
}

ProofBuilder::Ref ProofBuilder::splice(const Derivation& d, const Substitution& subst) {
  if (d.steps.empty()) throw std::invalid_argument("cannot splice an empty derivation");
  const bool identity_subst = subst.formulas.empty() && subst.terms.empty();
  auto map_formula = [&](const Formula& f) { return identity_subst ? f : subst.apply(f); };

  for (const auto& e : d.cs.entries()) cs_.add(e.constant, map_formula(e.formula));
  std::vector<Ref> local(d.steps.size() + 1, 0);
  for (std::size_t n = 1; n <= d.steps.size(); ++n) {
    const Step& s = d.steps[n - 1];
    const Justification& j = s.justification;
    switch (j.rule) {
      case Justification::Rule::Axiom:
        local[n] = axiom(j.schema, map_formula(s.formula));
        break;
      case Justification::Rule::Cs:
        local[n] = constant(j.constant, map_formula(s.formula.body()));
        break;
      case Justification::Rule::Hyp:
        local[n] = assume(map_formula(d.hypotheses.at(j.first - 1)));
        break;
      case Justification::Rule::Mp:
        local[n] = mp(local[j.first], local[j.second]);
        break;
      case Justification::Rule::Nec:
        local[n] = nec(local[j.first]);
        break;
      case Justification::Rule::Refl:
        local[n] = refl(local[j.first]);
        break;
      case Justification::Rule::Taut:
        local[n] = push(map_formula(s.formula), j, false);
        break;
    }
  }
  return local[d.steps.size()];
}

Derivation ProofBuilder::build(std::string name, Ref conclusion) const {
  if (conclusion == 0 || conclusion > steps_.size()) throw std::out_of_range("no step " + std::to_string(conclusion));
  std::vector<bool> keep(conclusion + 1, false);
  keep[conclusion] = true;
  for (Ref r = conclusion; r >= 1; --r) {
    if (!keep[r]) continue;
    for (auto p : steps_[r - 1].justification.premises()) keep[p] = true;
  }
  std::vector<std::size_t> renumber(conclusion + 1, 0);
  Derivation d;
  d.name = std::move(name);
  d.hypotheses = hypotheses_;
  std::set<std::string> used_constants;
  for (Ref r = 1; r <= conclusion; ++r) {
    if (!keep[r]) continue;
    Step s = steps_[r - 1];
    auto& j = s.justification;
    if (j.rule == Justification::Rule::Mp) {
      j.first = renumber[j.first];
      j.second = renumber[j.second];
    } else if (j.rule == Justification::Rule::Nec || j.rule == Justification::Rule::Refl) {
      j.first = renumber[j.first];
    } else if (j.rule == Justification::Rule::Cs) {
      used_constants.insert(j.constant);
    }
    d.steps.push_back(std::move(s));
    renumber[r] = d.steps.size();
  }
  for (const auto& e : cs_.entries())
    if (used_constants.contains(e.constant)) d.cs.add(e.constant, e.formula);
  return d;
}

// ---------------------------------------------------------------------------

ProofBuilder::Ref weaken(ProofBuilder& b, ProofBuilder::Ref x, const Formula& h) {
  const Formula& f = b.formula(x);
  auto k1a = b.axiom(AxiomSchemaId::K1a, Formula::impl(f, Formula::impl(h, f)));
  return b.mp(x, k1a);
}

ProofBuilder::Ref mp_under(ProofBuilder& b, ProofBuilder::Ref ha, ProofBuilder::Ref hab) {
  const Formula& f_ha = b.formula(ha);
  const Formula& f_hab = b.formula(hab);
  if (!f_ha.is(Formula::Kind::Impl) || !f_hab.is(Formula::Kind::Impl) || !f_hab.rhs().is(Formula::Kind::Impl))
    throw std::logic_error("mp_under: malformed premises");
  const Formula& h = f_ha.lhs();
  const Formula& bb = f_hab.rhs().rhs();
  auto k1b = b.axiom(AxiomSchemaId::K1b,
                     Formula::impl(f_ha, Formula::impl(f_hab, Formula::impl(h, bb))));
  return b.mp(hab, b.mp(ha, k1b));
}

ProofBuilder::Ref chain(ProofBuilder& b, ProofBuilder::Ref ab, ProofBuilder::Ref bc) {
  const Formula a = b.formula(ab).lhs();
  return mp_under(b, ab, weaken(b, bc, a));
}

ProofBuilder::Ref identity(ProofBuilder& b, const Formula& a) {
  const Formula aa = Formula::impl(a, a);
  auto s1 = b.axiom(AxiomSchemaId::K1a, Formula::impl(a, aa));
  auto s2 = b.axiom(AxiomSchemaId::K1a, Formula::impl(a, Formula::impl(aa, a)));
  auto s3 = b.axiom(AxiomSchemaId::K1b,
                    Formula::impl(b.formula(s1), Formula::impl(b.formula(s2), aa)));
  return b.mp(s2, b.mp(s1, s3));
}

// ---------------------------------------------------------------------------

Derivation discharge(const Derivation& d) {
  if (d.hypotheses.empty()) throw std::invalid_argument("discharge: derivation has no hypotheses");
  const std::size_t last = d.hypotheses.size();
  const Formula h = d.hypotheses.back();
  std::vector<Formula> rest(d.hypotheses.begin(), d.hypotheses.end() - 1);
  ProofBuilder b(rest, d.cs);

  using Ref = ProofBuilder::Ref;
  const std::size_t n_steps = d.steps.size();
  std::vector<bool> depends(n_steps + 1, false);
  // plain[n]: step n itself (independent steps); under[n]: H -> step n.
  std::vector<Ref> plain(n_steps + 1, 0), under(n_steps + 1, 0);

  auto lifted = [&](std::size_t n) -> Ref {
    if (!under[n]) under[n] = weaken(b, plain[n], h);
    return under[n];
  };

  for (std::size_t n = 1; n <= n_steps; ++n) {
    const Step& s = d.steps[n - 1];
    const Justification& j = s.justification;
    for (auto p : j.premises())
      if (depends[p]) depends[n] = true;
    if (j.rule == Justification::Rule::Hyp && j.first == last) depends[n] = true;

    if (!depends[n]) {
      switch (j.rule) {
        case Justification::Rule::Axiom: plain[n] = b.axiom(j.schema, s.formula); break;
        case Justification::Rule::Cs: plain[n] = b.constant(j.constant, s.formula.body()); break;
        case Justification::Rule::Hyp: plain[n] = b.hypothesis(j.first); break;
        case Justification::Rule::Mp: plain[n] = b.mp(plain[j.first], plain[j.second]); break;
        case Justification::Rule::Nec: plain[n] = b.nec(plain[j.first]); break;
        case Justification::Rule::Refl: plain[n] = b.refl(plain[j.first]); break;
        case Justification::Rule::Taut:
          throw std::invalid_argument("discharge: TAUT steps are not supported");
      }
      continue;
    }
    switch (j.rule) {
      case Justification::Rule::Hyp:
        under[n] = identity(b, h);
        break;
      case Justification::Rule::Mp:
        under[n] = mp_under(b, lifted(j.first), lifted(j.second));
        break;
      default:
        throw std::invalid_argument("discharge: step " + std::to_string(n) +
                                    " applies a rule that cannot depend on the discharged hypothesis");
    }
  }
  Ref conclusion = lifted(n_steps);
  return b.build(d.name, conclusion);
}

}  // namespace gla
