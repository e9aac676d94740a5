// Parametric derivation builders and the internalization (lifting)
// transformer. Builders throw std::invalid_argument on precondition
// violations; their outputs are ordinary derivations for gla::check.

#ifndef GLA_DERIVE_HPP_
#define GLA_DERIVE_HPP_

#include <cstddef>
#include <string>
#include <utility>

#include "gla/kernel.hpp"
#include "gla/proof_builder.hpp"

namespace gla {

struct CertificatePair {
  Derivation forward;
  Derivation backward;
  std::string note;
};

/// From a hypothesis-free derivation of A -> B, a derivation of []^k A -> []^k B.
Derivation distribute_box(const Derivation& d, std::size_t k);
/// []f -> []^n f, n >= 1.
Derivation box_mono(const Formula& f, std::size_t n);
/// []^k (a -> b) -> ([]^k a -> []^k b), k >= 1.
Derivation distribute_impl(std::size_t k, const Formula& a, const Formula& b);

/// forward: []P -> []^n P. backward: []^n P -> P from the hypotheses
/// []^i P -> []^(i-1) P, i = n..1.
CertificatePair build_theorem1(std::size_t n);
/// u : (Q1 ... Qn P) -> P for the given prefix.
Derivation build_theorem2(const Prefix& prefix, const std::string& u = "u");
/// ~[]^k false -> ([]^k u : P -> P).
Derivation build_theorem6(std::size_t k);
/// []^(k-1) false -> []^k false, k >= 1.
Derivation build_lemma2a(std::size_t k);
/// ~[]^k false from the hypotheses []^i false -> []^(i-1) false, i = k..1.
Derivation build_lemma2b(std::size_t k);

// Conclusions the builders promise, computed directly from the parameters.
Formula theorem1_forward_claim(std::size_t n);
Formula theorem1_backward_claim(std::size_t n);
Formula theorem2_claim(const Prefix& prefix, const std::string& u = "u");
Formula theorem6_claim(std::size_t k);
Formula lemma2a_claim(std::size_t k);
Formula lemma2b_claim(std::size_t k);

struct Lifted {
  Term proof;
  Derivation derivation;
};

/// Internalization: from a hypothesis-free derivation of F, a derivation of
/// p : F. Fresh constants are named c1000, c1001, ... skipping names already
/// used by d.
Lifted lift(const Derivation& d);

// Builder-level versions, used to assemble larger derivations in place.
namespace steps {

using Ref = ProofBuilder::Ref;

/// Splices compile_tautology(f).
Ref tautology(ProofBuilder& b, const Formula& f);
/// From proved premises, a step proving `conclusion` via a compiled
/// tautology premises -> conclusion.
Ref consequence(ProofBuilder& b, std::initializer_list<Ref> premises, const Formula& conclusion);
/// `ab` proves A -> B (untainted): returns []^k A -> []^k B.
Ref box_each(ProofBuilder& b, Ref ab, std::size_t k);
Ref box_mono(ProofBuilder& b, const Formula& f, std::size_t n);
Ref distribute_impl(ProofBuilder& b, std::size_t k, const Formula& a, const Formula& c);

}  // namespace steps

}  // namespace gla

#endif  // GLA_DERIVE_HPP_
