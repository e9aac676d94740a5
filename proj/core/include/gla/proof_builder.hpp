// Incremental construction of derivations.
//
// ProofBuilder appends steps, reuses an existing step whenever the same
// formula has already been proved with no more hypothesis dependence, and
// emits a pruned derivation containing only the steps the chosen conclusion
// depends on. Nothing here is trusted: every output is meant to go through
// gla::check.

#ifndef GLA_PROOF_BUILDER_HPP_
#define GLA_PROOF_BUILDER_HPP_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "gla/kernel.hpp"

namespace gla {

class ProofBuilder {
 public:
  /// 1-based step number.
  using Ref = std::size_t;

  ProofBuilder() = default;
  explicit ProofBuilder(std::vector<Formula> hypotheses, ConstantSpecification cs = {});

  /// Hyp step for hypothesis `index` (1-based).
  Ref hypothesis(std::size_t index);
  /// Hyp step for f, appending f to the hypothesis list if needed.
  Ref assume(const Formula& f);
  Ref axiom(AxiomSchemaId id, Formula f);
  /// Axiom step justified by the first matching schema. Throws std::logic_error
  /// if f is not an axiom instance.
  Ref axiom(Formula f);
  /// Step `c : a` justified by the constant specification; adds the entry.
  Ref constant(const std::string& c, Formula a);
  /// From `a` proving A and `ab` proving A -> B, a step proving B.
  Ref mp(Ref a, Ref ab);
  Ref nec(Ref a);
  Ref refl(Ref a);

  /// Copies the steps of d (with `subst` applied to every formula) and returns
  /// the step holding its conclusion. Hypotheses of d are mapped onto this
  /// builder's hypotheses by formula, appending missing ones.
  Ref splice(const Derivation& d, const Substitution& subst = {});

  const Formula& formula(Ref r) const { return steps_.at(r - 1).formula; }
  bool tainted(Ref r) const { return tainted_.at(r - 1); }
  std::size_t size() const noexcept { return steps_.size(); }
  const std::vector<Formula>& hypotheses() const noexcept { return hypotheses_; }
  const ConstantSpecification& cs() const noexcept { return cs_; }

  /// Derivation whose last step is `conclusion`, keeping only its dependencies.
  Derivation build(std::string name, Ref conclusion) const;

 private:
  Ref push(Formula f, Justification j, bool tainted);

  std::vector<Formula> hypotheses_;
  ConstantSpecification cs_;
  std::vector<Step> steps_;
  std::vector<bool> tainted_;
  std::unordered_map<Formula, Ref> proved_;
};

// Classical step combinators. Each works on proved steps of the builder.

/// `x : X` to `H -> X` (K1a).
ProofBuilder::Ref weaken(ProofBuilder& b, ProofBuilder::Ref x, const Formula& h);
/// `H -> A` and `H -> (A -> B)` to `H -> B` (K1b).
ProofBuilder::Ref mp_under(ProofBuilder& b, ProofBuilder::Ref ha, ProofBuilder::Ref hab);
/// `A -> B` and `B -> C` to `A -> C`.
ProofBuilder::Ref chain(ProofBuilder& b, ProofBuilder::Ref ab, ProofBuilder::Ref bc);
/// `A -> A` in five steps.
ProofBuilder::Ref identity(ProofBuilder& b, const Formula& a);

/// Deduction theorem: discharges the last hypothesis H of d, producing a
/// derivation of H -> C from the remaining hypotheses. Throws
/// std::invalid_argument if d has no hypotheses or applies NEC / REFL to a
/// step depending on H.
Derivation discharge(const Derivation& d);

}  // namespace gla

#endif  // GLA_PROOF_BUILDER_HPP_
