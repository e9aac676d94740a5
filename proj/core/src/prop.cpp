#include "gla/prop.hpp"

#include <optional>
#include <unordered_map>
#include <utility>

#include "gla/proof_builder.hpp"

namespace gla {

namespace {

using K = Formula::Kind;
using Ref = ProofBuilder::Ref;

bool is_letter(const Formula& f) { return f.is(K::Atom) || f.is(K::Box) || f.is(K::Proves); }

Formula abstract_into(const Formula& f, std::unordered_map<Formula, std::size_t>& ids,
                      std::vector<Formula>& letters) {
  if (is_letter(f)) {
    auto [it, inserted] = ids.try_emplace(f, letters.size());
    if (inserted) letters.push_back(f);
    return Formula::atom(Abstraction::letter_name(it->second));
  }
  if (f.is(K::Falsum)) return f;
  if (f.is(K::Neg)) return Formula::neg(abstract_into(f.body(), ids, letters));
  // left to right, so letter numbering follows reading order
  Formula l = abstract_into(f.lhs(), ids, letters);
  Formula r = abstract_into(f.rhs(), ids, letters);
  switch (f.kind()) {
    case K::And: return Formula::conj(std::move(l), std::move(r));
    case K::Or: return Formula::disj(std::move(l), std::move(r));
    default: return Formula::impl(std::move(l), std::move(r));
  }
}

// Kleene three-valued evaluation under a partial assignment of letters.
using Partial = std::unordered_map<Formula, bool>;

std::optional<bool> eval3(const Formula& f, const Partial& v) {
  if (is_letter(f)) {
    auto it = v.find(f);
    if (it == v.end()) return std::nullopt;
    return it->second;
  }
  switch (f.kind()) {
    case K::Falsum:
      return false;
    case K::Neg: {
      auto a = eval3(f.body(), v);
      if (!a) return std::nullopt;
      return !*a;
    }
    case K::And: {
      auto a = eval3(f.lhs(), v);
      if (a && !*a) return false;
      auto b = eval3(f.rhs(), v);
      if (b && !*b) return false;
      if (a && b) return true;
      return std::nullopt;
    }
    case K::Or: {
      auto a = eval3(f.lhs(), v);
      if (a && *a) return true;
      auto b = eval3(f.rhs(), v);
      if (b && *b) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    default: {
      auto a = eval3(f.lhs(), v);
      if (a && !*a) return true;
      auto b = eval3(f.rhs(), v);
      if (b && *b) return true;
      if (a && b) return false;
      return std::nullopt;
    }
  }
}

void letters_in_order(const Formula& f, std::vector<Formula>& out, std::unordered_map<Formula, bool>& seen) {
  if (is_letter(f)) {
    if (seen.try_emplace(f, true).second) out.push_back(f);
    return;
  }
  switch (f.kind()) {
    case K::Falsum: return;
    case K::Neg: letters_in_order(f.body(), out, seen); return;
    default:
      letters_in_order(f.lhs(), out, seen);
      letters_in_order(f.rhs(), out, seen);
  }
}

std::vector<Formula> letters_of(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_map<Formula, bool> seen;
  letters_in_order(f, out, seen);
  return out;
}

// Searches for a falsifying assignment by splitting on letters in order of
// first occurrence, pruning as soon as the value is determined.
bool valid_from(const Formula& f, const std::vector<Formula>& letters, std::size_t next, Partial& v) {
  auto value = eval3(f, v);
  if (value) return *value;
  while (v.contains(letters[next])) ++next;
  for (bool b : {true, false}) {
    v[letters[next]] = b;
    const bool ok = valid_from(f, letters, next + 1, v);
    v.erase(letters[next]);
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lemma templates. Atoms A, B, D, F are metavariables; instances are obtained
// by substitution, which preserves axiom instances and modus ponens.

const Formula kA = Formula::atom("A");
const Formula kB = Formula::atom("B");
const Formula kD = Formula::atom("D");
const Formula kF = Formula::atom("F");

Formula imp(Formula a, Formula b) { return Formula::impl(std::move(a), std::move(b)); }
Formula no(Formula a) { return Formula::neg(std::move(a)); }

// (X -> Y) -> ((X -> ~Y) -> ~X), then two modus ponens.
Ref reductio(ProofBuilder& b, Ref xy, Ref xny) {
  const Formula x = b.formula(xy).lhs();
  auto k7 = b.axiom(AxiomSchemaId::K7, imp(b.formula(xy), imp(b.formula(xny), no(x))));
  return b.mp(xny, b.mp(xy, k7));
}

Derivation discharged(const ProofBuilder& b, Ref r, std::size_t times) {
  Derivation d = b.build("lemma", r);
  for (std::size_t i = 0; i < times; ++i) d = discharge(d);
  return d;
}

struct Templates {
  Derivation not_false;      // ~false
  Derivation double_neg;     // A -> ~~A
  Derivation ex_falso;       // ~A -> (A -> B)
  Derivation and_left;       // ~A -> ~(A & B)
  Derivation and_right;      // ~B -> ~(A & B)
  Derivation or_false;       // ~A -> (~B -> ~(A | B))
  Derivation impl_false;     // A -> (~B -> ~(A -> B))
  Derivation excluded;       // A | ~A
  Derivation merge;          // ((D & A) -> F) -> (((D & ~A) -> F) -> (D -> F))
};

Templates make_templates() {
  Templates t;
  {
    ProofBuilder b;
    auto ff = b.axiom(AxiomSchemaId::KF, imp(Formula::falsum(), Formula::falsum()));
    auto fnf = b.axiom(AxiomSchemaId::KF, imp(Formula::falsum(), no(Formula::falsum())));
    t.not_false = b.build("not_false", reductio(b, ff, fnf));
  }
  {
    ProofBuilder b({kA});
    auto a = b.hypothesis(1);
    auto na_a = weaken(b, a, no(kA));
    auto na_na = identity(b, no(kA));
    t.double_neg = discharged(b, reductio(b, na_a, na_na), 1);
  }
  {
    ProofBuilder b({no(kA), kA});
    auto na = b.hypothesis(1);
    auto a = b.hypothesis(2);
    auto nnb = reductio(b, weaken(b, a, no(kB)), weaken(b, na, no(kB)));
    auto k8 = b.axiom(AxiomSchemaId::K8, imp(no(no(kB)), kB));
    t.ex_falso = discharged(b, b.mp(nnb, k8), 2);
  }
  {
    ProofBuilder b({no(kA)});
    auto ab_a = b.axiom(AxiomSchemaId::K4a, imp(Formula::conj(kA, kB), kA));
    auto ab_na = weaken(b, b.hypothesis(1), Formula::conj(kA, kB));
    t.and_left = discharged(b, reductio(b, ab_a, ab_na), 1);
  }
  {
    ProofBuilder b({no(kB)});
    auto ab_b = b.axiom(AxiomSchemaId::K4b, imp(Formula::conj(kA, kB), kB));
    auto ab_nb = weaken(b, b.hypothesis(1), Formula::conj(kA, kB));
    t.and_right = discharged(b, reductio(b, ab_b, ab_nb), 1);
  }
  {
    ProofBuilder b({no(kA), no(kB)});
    auto na = b.hypothesis(1);
    auto nb = b.hypothesis(2);
    Substitution swap;
    swap.formulas.emplace("A", kB);
    swap.formulas.emplace("B", kA);
    auto efq = b.splice(t.ex_falso, swap);  // ~B -> (B -> A)
    auto b_a = b.mp(nb, efq);
    auto a_a = identity(b, kA);
    const Formula a_or_b = Formula::disj(kA, kB);
    auto k6 = b.axiom(AxiomSchemaId::K6, imp(b.formula(a_a), imp(b.formula(b_a), imp(a_or_b, kA))));
    auto or_a = b.mp(b_a, b.mp(a_a, k6));
    t.or_false = discharged(b, reductio(b, or_a, weaken(b, na, a_or_b)), 2);
  }
  {
    const Formula a_b = imp(kA, kB);
    ProofBuilder inner({kA, no(kB), a_b});
    auto got_b = inner.mp(inner.hypothesis(1), inner.hypothesis(3));
    Derivation ab_to_b = discharged(inner, got_b, 1);  // A, ~B |- (A -> B) -> B

    ProofBuilder b({kA, no(kB)});
    auto abb = b.splice(ab_to_b);
    auto ab_nb = weaken(b, b.hypothesis(2), a_b);
    t.impl_false = discharged(b, reductio(b, abb, ab_nb), 2);
  }
  {
    const Formula em = Formula::disj(kA, no(kA));
    ProofBuilder b({no(em)});
    auto h = b.hypothesis(1);
    auto na = reductio(b, b.axiom(AxiomSchemaId::K5a, imp(kA, em)), weaken(b, h, kA));
    auto nna = reductio(b, b.axiom(AxiomSchemaId::K5b, imp(no(kA), em)), weaken(b, h, no(kA)));
    Derivation to_na = discharged(b, na, 1);
    Derivation to_nna = discharged(b, nna, 1);

    ProofBuilder c;
    auto r1 = c.splice(to_na);
    auto r2 = c.splice(to_nna);
    auto nnem = reductio(c, r1, r2);
    auto k8 = c.axiom(AxiomSchemaId::K8, imp(no(no(em)), em));
    t.excluded = c.build("excluded_middle", c.mp(nnem, k8));
  }
  {
    const Formula da = Formula::conj(kD, kA);
    const Formula dna = Formula::conj(kD, no(kA));
    const Formula h1 = imp(da, kF);
    const Formula h2 = imp(dna, kF);
    auto branch = [&](const Formula& lit, const Formula& conj, std::size_t which) {
      ProofBuilder b({h1, h2, kD, lit});
      auto k3 = b.axiom(AxiomSchemaId::K3, imp(kD, imp(lit, conj)));
      auto both = b.mp(b.hypothesis(4), b.mp(b.hypothesis(3), k3));
      return discharged(b, b.mp(both, b.hypothesis(which)), 1);
    };
    Derivation pos = branch(kA, da, 1);
    Derivation neg = branch(no(kA), dna, 2);

    ProofBuilder b({h1, h2, kD});
    auto a_f = b.splice(pos);
    auto na_f = b.splice(neg);
    auto em = b.splice(t.excluded);
    auto k6 = b.axiom(AxiomSchemaId::K6,
                      imp(b.formula(a_f), imp(b.formula(na_f), imp(b.formula(em), kF))));
    auto f = b.mp(em, b.mp(na_f, b.mp(a_f, k6)));
    t.merge = discharged(b, f, 3);
  }
  return t;
}

const Templates& templates() {
  static const Templates t = make_templates();
  return t;
}

Ref instantiate(ProofBuilder& b, const Derivation& lemma, std::initializer_list<std::pair<const char*, Formula>> bind) {
  Substitution s;
  for (const auto& [name, f] : bind) s.formulas.insert_or_assign(name, f);
  return b.splice(lemma, s);
}

// ---------------------------------------------------------------------------
// Kalmar-style compilation. Contexts are left-nested conjunctions
// C0 = ~false, C(k+1) = C(k) & lit(k+1). For each branch of a splitting tree
// over the letters we prove C -> T, then merge sibling branches.

class TautologyCompiler {
 public:
  TautologyCompiler(ProofBuilder& b, Formula target) : b_(b), target_(std::move(target)) {
    letters_ = letters_of(target_);
  }

  Ref run() {
    contexts_.push_back(no(Formula::falsum()));
    literals_.push_back(no(Formula::falsum()));
    Ref under = prove_branch(0);
    Ref nf = b_.splice(templates().not_false);
    return b_.mp(nf, under);
  }

 private:
  // Proves C(k) -> target, where k = literals_.size() - 1.
  Ref prove_branch(std::size_t next) {
    if (auto v = eval3(target_, assignment_)) {
      if (!*v) throw NotTautologyError("not a tautology: " + print_formula(target_));
      std::unordered_map<Formula, Ref> memo;
      return literal(target_, memo);
    }
    while (assignment_.contains(letters_[next])) ++next;
    const Formula& p = letters_[next];
    const Formula d = contexts_.back();

    Ref branches[2];
    for (int i = 0; i < 2; ++i) {
      const bool value = i == 0;
      const Formula lit = value ? p : no(p);
      assignment_[p] = value;
      contexts_.push_back(Formula::conj(d, lit));
      literals_.push_back(lit);
      branches[i] = prove_branch(next + 1);
      contexts_.pop_back();
      literals_.pop_back();
      assignment_.erase(p);
    }
    auto merge = instantiate(b_, templates().merge, {{"D", d}, {"A", p}, {"F", target_}});
    return b_.mp(branches[1], b_.mp(branches[0], merge));
  }

  const Formula& context() const { return contexts_.back(); }

  // C(k) -> C(j) for j <= k.
  Ref to_prefix(std::size_t j) {
    const std::size_t k = contexts_.size() - 1;
    if (j == k) return identity(b_, context());
    Ref r = b_.axiom(AxiomSchemaId::K4a, imp(contexts_[k], contexts_[k - 1]));
    for (std::size_t i = k - 1; i > j; --i)
      r = chain(b_, r, b_.axiom(AxiomSchemaId::K4a, imp(contexts_[i], contexts_[i - 1])));
    return r;
  }

  // C(k) -> literal j.
  Ref project(std::size_t j) {
    if (j == 0) {
      return contexts_.size() == 1 ? identity(b_, context()) : to_prefix(0);
    }
    Ref last = b_.axiom(AxiomSchemaId::K4b, imp(contexts_[j], literals_[j]));
    if (j == contexts_.size() - 1) return last;
    return chain(b_, to_prefix(j), last);
  }

  Ref project_literal(const Formula& lit) {
    for (std::size_t j = 0; j < literals_.size(); ++j)
      if (literals_[j] == lit) return project(j);
    throw std::logic_error("literal not in context: " + print_formula(lit));
  }

  // C -> X and lemma X -> Y give C -> Y.
  Ref apply1(Ref cx, Ref lemma) { return chain(b_, cx, lemma); }

  // C -> X, C -> Y and lemma X -> (Y -> Z) give C -> Z.
  Ref apply2(Ref cx, Ref cy, Ref lemma) {
    Ref w = weaken(b_, lemma, context());
    return mp_under(b_, cy, mp_under(b_, cx, w));
  }

  // C -> G if G is true under the current assignment, C -> ~G if false.
  Ref literal(const Formula& g, std::unordered_map<Formula, Ref>& memo) {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Ref r = literal_uncached(g, memo);
    memo.emplace(g, r);
    return r;
  }

  Ref literal_uncached(const Formula& g, std::unordered_map<Formula, Ref>& memo) {
    const auto& tpl = templates();
    const bool value = *eval3(g, assignment_);
    if (is_letter(g)) return project_literal(value ? g : no(g));
    switch (g.kind()) {
      case K::Falsum:
        return project(0);
      case K::Neg: {
        const Formula& a = g.body();
        Ref ra = literal(a, memo);
        if (!value) return apply1(ra, instantiate(b_, tpl.double_neg, {{"A", a}}));
        return ra;  // C -> ~a is already C -> g
      }
      case K::And: {
        const Formula& a = g.lhs();
        const Formula& c = g.rhs();
        if (value) {
          Ref k3 = b_.axiom(AxiomSchemaId::K3, imp(a, imp(c, g)));
          return apply2(literal(a, memo), literal(c, memo), k3);
        }
        if (eval3(a, assignment_) == std::optional<bool>(false))
          return apply1(literal(a, memo), instantiate(b_, tpl.and_left, {{"A", a}, {"B", c}}));
        return apply1(literal(c, memo), instantiate(b_, tpl.and_right, {{"A", a}, {"B", c}}));
      }
      case K::Or: {
        const Formula& a = g.lhs();
        const Formula& c = g.rhs();
        if (!value)
          return apply2(literal(a, memo), literal(c, memo),
                        instantiate(b_, tpl.or_false, {{"A", a}, {"B", c}}));
        if (eval3(a, assignment_) == std::optional<bool>(true))
          return apply1(literal(a, memo), b_.axiom(AxiomSchemaId::K5a, imp(a, g)));
        return apply1(literal(c, memo), b_.axiom(AxiomSchemaId::K5b, imp(c, g)));
      }
      default: {
        const Formula& a = g.lhs();
        const Formula& c = g.rhs();
        if (!value)
          return apply2(literal(a, memo), literal(c, memo),
                        instantiate(b_, tpl.impl_false, {{"A", a}, {"B", c}}));
        if (eval3(a, assignment_) == std::optional<bool>(false))
          return apply1(literal(a, memo), instantiate(b_, tpl.ex_falso, {{"A", a}, {"B", c}}));
        return apply1(literal(c, memo), b_.axiom(AxiomSchemaId::K1a, imp(c, g)));
      }
    }
  }

  ProofBuilder& b_;
  Formula target_;
  std::vector<Formula> letters_;
  Partial assignment_;
  std::vector<Formula> contexts_;
  std::vector<Formula> literals_;
};

Formula curry(const std::vector<Formula>& premises, const Formula& conclusion) {
  Formula f = conclusion;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) f = Formula::impl(*it, f);
  return f;
}

}  // namespace

Formula Abstraction::restore(const Formula& f) const {
  Substitution s;
  for (std::size_t i = 0; i < letters.size(); ++i) s.formulas.emplace(letter_name(i), letters[i]);
  return s.apply(f);
}

Abstraction abstract(const Formula& f) {
  Abstraction a;
  std::unordered_map<Formula, std::size_t> ids;
  a.abstracted = abstract_into(f, ids, a.letters);
  return a;
}

bool evaluate(const Abstraction& a, const std::vector<bool>& value) {
  Partial v;
  for (std::size_t i = 0; i < a.letters.size(); ++i) v.emplace(Formula::atom(Abstraction::letter_name(i)), value.at(i));
  return *eval3(a.abstracted, v);
}

bool is_tautology(const Formula& f) {
  auto letters = letters_of(f);
  Partial v;
  if (letters.empty()) return *eval3(f, v);
  return valid_from(f, letters, 0, v);
}

Derivation compile_tautology(const Formula& f) {
  ProofBuilder b;
  if (auto m = match_axiom(f); m && is_classical(m->schema))
    return b.build("tautology", b.axiom(m->schema, f));
  if (f.is(Formula::Kind::Impl) && f.lhs() == f.rhs()) return b.build("tautology", identity(b, f.lhs()));
  if (!is_tautology(f)) throw NotTautologyError("not a tautology: " + print_formula(f));
  TautologyCompiler compiler(b, f);
  return b.build("tautology", compiler.run());
}

Derivation compile_consequence(const std::vector<Formula>& premises, const Formula& conclusion) {
  const Formula curried = curry(premises, conclusion);
  if (!is_tautology(curried))
    throw NotTautologyError("not a propositional consequence: " + print_formula(curried));
  ProofBuilder b(premises);
  Ref r = b.splice(compile_tautology(curried));
  for (std::size_t i = 1; i <= premises.size(); ++i) r = b.mp(b.hypothesis(i), r);
  return b.build("consequence", r);
}

}  // namespace gla
