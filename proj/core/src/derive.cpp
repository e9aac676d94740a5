#include "gla/derive.hpp"

#include <set>
#include <span>
#include <stdexcept>

#include "gla/prop.hpp"

namespace gla {

namespace {

using Ref = ProofBuilder::Ref;

const Formula& atom_p() {
  static const Formula p = Formula::atom("P");
  return p;
}

Formula imp(Formula a, Formula b) { return Formula::impl(std::move(a), std::move(b)); }
Formula no(Formula a) { return Formula::neg(std::move(a)); }
Formula boxes(std::size_t n, Formula f) { return Formula::boxes(n, std::move(f)); }

void require_checked(const Derivation& d, const char* what) {
  for (const auto& s : d.steps)
    if (s.justification.rule == Justification::Rule::Hyp || s.justification.rule == Justification::Rule::Taut)
      throw std::invalid_argument(std::string(what) + ": input must be hypothesis-free and TAUT-free");
  if (!d.hypotheses.empty()) throw std::invalid_argument(std::string(what) + ": input has hypotheses");
  auto report = check(d, CheckMode::Strict);
  if (!report.ok) throw std::invalid_argument(std::string(what) + ": input does not check: " + report.error->reason);
}

}  // namespace

namespace steps {

Ref tautology(ProofBuilder& b, const Formula& f) { return b.splice(compile_tautology(f)); }

Ref consequence(ProofBuilder& b, std::initializer_list<Ref> premises, const Formula& conclusion) {
  Formula curried = conclusion;
  for (auto it = std::rbegin(premises); it != std::rend(premises); ++it) curried = imp(b.formula(*it), curried);
  Ref r = tautology(b, curried);
  for (Ref p : premises) r = b.mp(p, r);
  return r;
}

Ref box_each(ProofBuilder& b, Ref ab, std::size_t k) {
  Ref r = ab;
  for (std::size_t i = 0; i < k; ++i) {
    const Formula f = b.formula(r);
    Ref boxed = b.nec(r);
    Ref gl1 = b.axiom(AxiomSchemaId::GL1,
                      imp(Formula::box(f), imp(Formula::box(f.lhs()), Formula::box(f.rhs()))));
    r = b.mp(boxed, gl1);
  }
  return r;
}

Ref box_mono(ProofBuilder& b, const Formula& f, std::size_t n) {
  if (n == 0) throw std::invalid_argument("box_mono: n must be at least 1");
  if (n == 1) return identity(b, Formula::box(f));
  Ref r = b.axiom(AxiomSchemaId::GL2, imp(Formula::box(f), boxes(2, f)));
  for (std::size_t j = 3; j <= n; ++j)
    r = chain(b, r, b.axiom(AxiomSchemaId::GL2, imp(boxes(j - 1, f), boxes(j, f))));
  return r;
}

Ref distribute_impl(ProofBuilder& b, std::size_t k, const Formula& a, const Formula& c) {
  if (k == 0) throw std::invalid_argument("distribute_impl: k must be at least 1");
  Ref r = b.axiom(AxiomSchemaId::GL1, imp(Formula::box(imp(a, c)), imp(Formula::box(a), Formula::box(c))));
  for (std::size_t i = 2; i <= k; ++i) {
    // r : []^(i-1)(a -> c) -> ([]^(i-1) a -> []^(i-1) c)
    Ref outer = box_each(b, r, 1);
    const Formula inner = b.formula(r).rhs();
    Ref gl1 = b.axiom(AxiomSchemaId::GL1,
                      imp(Formula::box(inner), imp(Formula::box(inner.lhs()), Formula::box(inner.rhs()))));
    r = chain(b, outer, gl1);
  }
  return r;
}

}  // namespace steps

Derivation distribute_box(const Derivation& d, std::size_t k) {
  require_checked(d, "distribute_box");
  if (d.steps.empty() || !d.conclusion().is(Formula::Kind::Impl))
    throw std::invalid_argument("distribute_box: conclusion must be an implication");
  if (k == 0) return d;
  ProofBuilder b({}, d.cs);
  Ref r = steps::box_each(b, b.splice(d), k);
  return b.build("distribute_box", r);
}

Derivation box_mono(const Formula& f, std::size_t n) {
  ProofBuilder b;
  return b.build("box_mono", steps::box_mono(b, f, n));
}

Derivation distribute_impl(std::size_t k, const Formula& a, const Formula& b_) {
  ProofBuilder b;
  return b.build("distribute_impl", steps::distribute_impl(b, k, a, b_));
}

// ---------------------------------------------------------------------------

Formula theorem1_forward_claim(std::size_t n) { return imp(Formula::box(atom_p()), boxes(n, atom_p())); }
Formula theorem1_backward_claim(std::size_t n) { return imp(boxes(n, atom_p()), atom_p()); }

CertificatePair build_theorem1(std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_theorem1: n must be at least 1");
  CertificatePair pair;
  pair.forward = box_mono(atom_p(), n);
  pair.forward.name = "theorem1_forward";
  std::vector<Formula> hyps;
  for (std::size_t i = n; i >= 1; --i) hyps.push_back(imp(boxes(i, atom_p()), boxes(i - 1, atom_p())));
  pair.backward = compile_consequence(hyps, theorem1_backward_claim(n));
  pair.backward.name = "theorem1_backward";
  pair.note = "forward: []P -> []^" + std::to_string(n) +
              " P is a theorem, so []P -> P is below []^n P -> P; backward: []^n P -> P follows from instances "
              "of []P -> P, so []^n P -> P is below []P -> P";
  return pair;
}

namespace {

// Proves u : fold(prefix, P) -> P.
Ref reflect(ProofBuilder& b, const std::string& u, std::span<const PrefixOp> prefix) {
  const Term ut = Term::var(u);
  const Formula body = fold_prefix(prefix, atom_p());
  const Formula x = Formula::proves(ut, body);
  if (prefix.empty()) return b.axiom(AxiomSchemaId::LP4, imp(x, atom_p()));

  if (!prefix.front().is_box()) {
    const std::string& v = prefix.front().var;
    Ref head = b.axiom(AxiomSchemaId::LP4, imp(x, body));  // u:(v:G) -> v:G
    Ref tail = reflect(b, v, prefix.subspan(1));            // v:G -> P
    return chain(b, head, tail);
  }

  std::size_t m = 0;
  while (m < prefix.size() && prefix[m].is_box()) ++m;
  const auto rest = prefix.subspan(m);
  const Formula f = fold_prefix(rest, atom_p());
  const Formula boxed_f = boxes(m, f);  // []^m F; x is u : []^m F
  const Formula x_to_f = imp(x, f);

  Ref lp4 = b.axiom(AxiomSchemaId::LP4, imp(x, boxed_f));
  Ref s1 = steps::consequence(b, {lp4}, imp(no(boxed_f), no(x)));              // 1
  Ref s2 = b.axiom(AxiomSchemaId::C2, imp(no(x), Formula::box(no(x))));         // 2
  Ref s3 = steps::box_each(b, steps::tautology(b, imp(no(x), x_to_f)), 1);      // 3
  Ref s4 = chain(b, chain(b, s1, s2), s3);                                      // 4
  Ref s5 = steps::box_mono(b, x_to_f, m);                                       // 5
  Ref s6 = chain(b, s4, s5);                                                    // 6
  Ref k1a = b.axiom(AxiomSchemaId::K1a, imp(f, x_to_f));
  Ref s7 = steps::box_each(b, k1a, m);                                          // 7
  Ref s8 = steps::consequence(b, {s6, s7}, boxes(m, x_to_f));                   // 8
  Ref r = s8;
  for (std::size_t i = 0; i < m; ++i) r = b.refl(r);                            // 9
  if (rest.empty()) return r;
  return chain(b, r, reflect(b, rest.front().var, rest.subspan(1)));
}

}  // namespace

Formula theorem2_claim(const Prefix& prefix, const std::string& u) {
  return imp(Formula::proves(Term::var(u), fold_prefix(prefix, atom_p())), atom_p());
}

Derivation build_theorem2(const Prefix& prefix, const std::string& u) {
  if (!is_var_name(u)) throw std::invalid_argument("build_theorem2: '" + u + "' is not a proof variable");
  std::set<std::string> seen{u};
  for (const auto& op : prefix) {
    if (op.is_box()) continue;
    if (!is_var_name(op.var)) throw std::invalid_argument("build_theorem2: '" + op.var + "' is not a proof variable");
    if (!seen.insert(op.var).second)
      throw std::invalid_argument("build_theorem2: variable '" + op.var + "' is not fresh");
  }
  ProofBuilder b;
  return b.build("theorem2", reflect(b, u, prefix));
}

Formula theorem6_claim(std::size_t k) {
  const Formula up = Formula::proves(Term::var("u"), atom_p());
  return imp(no(boxes(k, Formula::falsum())), imp(boxes(k, up), atom_p()));
}

Derivation build_theorem6(std::size_t k) {
  const Formula up = Formula::proves(Term::var("u"), atom_p());
  const Formula bot = Formula::falsum();
  ProofBuilder b;
  Ref lp4 = b.axiom(AxiomSchemaId::LP4, imp(up, atom_p()));
  if (k == 0) return b.build("theorem6", steps::consequence(b, {lp4}, theorem6_claim(0)));

  Ref contra = steps::consequence(b, {lp4}, imp(no(atom_p()), no(up)));       // ~P -> ~u:P
  Ref c2 = b.axiom(AxiomSchemaId::C2, imp(no(up), Formula::box(no(up))));     // ~u:P -> []~u:P
  Ref trans = steps::box_mono(b, no(up), k);                                  // []~u:P -> []^k ~u:P
  Ref np_to_boxed = chain(b, chain(b, contra, c2), trans);                    // ~P -> []^k ~u:P
  Ref clash = steps::box_each(b, steps::tautology(b, imp(no(up), imp(up, bot))), k);
  Ref dist = steps::distribute_impl(b, k, up, bot);
  Ref assembled = chain(b, chain(b, np_to_boxed, clash), dist);               // ~P -> ([]^k u:P -> []^k false)
  return b.build("theorem6", steps::consequence(b, {assembled}, theorem6_claim(k)));
}

Formula lemma2a_claim(std::size_t k) {
  if (k == 0) throw std::invalid_argument("lemma2a: k must be at least 1");
  return imp(boxes(k - 1, Formula::falsum()), boxes(k, Formula::falsum()));
}

Derivation build_lemma2a(std::size_t k) {
  const Formula claim = lemma2a_claim(k);
  ProofBuilder b;
  if (k == 1) return b.build("lemma2a", steps::tautology(b, claim));
  return b.build("lemma2a", b.axiom(AxiomSchemaId::GL2, claim));
}

Formula lemma2b_claim(std::size_t k) { return no(boxes(k, Formula::falsum())); }

Derivation build_lemma2b(std::size_t k) {
  std::vector<Formula> hyps;
  for (std::size_t i = k; i >= 1; --i)
    hyps.push_back(imp(boxes(i, Formula::falsum()), boxes(i - 1, Formula::falsum())));
  Derivation d = compile_consequence(hyps, lemma2b_claim(k));
  d.name = "lemma2b";
  return d;
}

// ---------------------------------------------------------------------------

Lifted lift(const Derivation& d) {
  require_checked(d, "lift");
  std::set<std::string> used;
  for (const auto& e : d.cs.entries()) {
    used.insert(e.constant);
    collect_constants(e.formula, used);
  }
  for (const auto& s : d.steps) collect_constants(s.formula, used);

  std::size_t counter = 1000;
  auto fresh = [&] {
    std::string name;
    do name = "c" + std::to_string(counter++);
    while (used.contains(name));
    used.insert(name);
    return name;
  };

  ProofBuilder b({}, d.cs);
  const std::size_t n_steps = d.steps.size();
  std::vector<Ref> refs(n_steps + 1, 0);

  // t : A  ->  !t : t : A
  auto checked = [&](Ref r) {
    const Formula& f = b.formula(r);
    const Formula lifted = Formula::proves(Term::check(f.term()), f);
    return b.mp(r, b.axiom(AxiomSchemaId::LP2, imp(f, lifted)));
  };
  // s : (A -> B), t : A  ->  s * t : B
  auto apply = [&](Ref s_ab, Ref t_a) {
    const Formula fab = b.formula(s_ab);
    const Formula fa = b.formula(t_a);
    const Formula result = Formula::proves(Term::app(fab.term(), fa.term()), fab.body().rhs());
    Ref lp1 = b.axiom(AxiomSchemaId::LP1, imp(fab, imp(fa, result)));
    return b.mp(t_a, b.mp(s_ab, lp1));
  };

  for (std::size_t n = 1; n <= n_steps; ++n) {
    const Step& s = d.steps[n - 1];
    const Justification& j = s.justification;
    switch (j.rule) {
      case Justification::Rule::Axiom:
        refs[n] = b.constant(fresh(), s.formula);
        break;
      case Justification::Rule::Cs:
        refs[n] = checked(b.constant(j.constant, s.formula.body()));
        break;
      case Justification::Rule::Mp:
        refs[n] = apply(refs[j.second], refs[j.first]);
        break;
      case Justification::Rule::Nec: {
        const Formula tf = b.formula(refs[j.first]);  // t : A
        const Formula c1 = imp(tf, Formula::box(tf.body()));
        Ref cert = b.constant(fresh(), c1);
        refs[n] = apply(cert, checked(refs[j.first]));
        break;
      }
      case Justification::Rule::Refl: {
        const Formula qf = b.formula(refs[j.first]);  // q : []A
        const Formula c3 = imp(qf, qf.body().body());
        Ref cert = b.constant(fresh(), c3);
        refs[n] = apply(cert, checked(refs[j.first]));
        break;
      }
      default:
        throw std::invalid_argument("lift: unsupported step " + std::to_string(n));
    }
  }
  Derivation built = b.build(d.name + "_lifted", refs[n_steps]);
  Derivation out;
  out.name = built.name;
  out.cs = d.cs;
  out.cs.merge(built.cs);
  out.steps = std::move(built.steps);
  return {out.conclusion().term(), std::move(out)};
}

}  // namespace gla
