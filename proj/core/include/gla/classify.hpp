// Canonical classes of reflection principles, their linear order, and
// certificate bundles that can be re-verified with the kernel and the
// model checker.

#ifndef GLA_CLASSIFY_HPP_
#define GLA_CLASSIFY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gla/kernel.hpp"
#include "gla/semantics.hpp"
#include "gla/syntax.hpp"

namespace gla {

struct CanonicalClass {
  enum class Kind { BoxReflection, ExplicitK };
  Kind kind = Kind::BoxReflection;
  std::size_t k = 0;  // ExplicitK only
  bool provable_outright = false;

  static CanonicalClass box_reflection() { return {Kind::BoxReflection, 0, false}; }
  static CanonicalClass explicit_k(std::size_t k) { return {Kind::ExplicitK, k, k == 0}; }

  /// `BoxReflection` or `ExplicitK <k>`.
  std::string str() const;
  friend bool operator==(const CanonicalClass&, const CanonicalClass&) = default;
};

enum class OrderResult { Equal, StrictlyLess, StrictlyGreater };

/// "=", "<" or ">".
std::string to_string(OrderResult r);

CanonicalClass canonicalize(const Generator& g);
OrderResult compare(const CanonicalClass& a, const CanonicalClass& b);
OrderResult compare(const Generator& g1, const Generator& g2);
/// ExplicitK(k) maps to ~[]^k false; BoxReflection has no single equivalent.
std::optional<Formula> consistency_equivalent(const CanonicalClass& c);

struct RefutationRecord {
  KripkeModel model;
  World world = 0;
  Formula refutes;
};

struct CertificateBundle {
  Generator generator;
  CanonicalClass cls;
  std::map<std::string, Derivation> derivations;
  std::map<std::string, RefutationRecord> countermodels;
  std::vector<std::string> notes;
};

CertificateBundle certificate(const Generator& g);

/// Recomputes the expected contents from the generator and checks every
/// derivation (strict) and countermodel against them. On failure the error
/// reason names the offending derivation or model.
CheckReport verify_certificate(const CertificateBundle& b);

class BundleFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_bundle(const CertificateBundle& b, const std::string& dir);
CertificateBundle read_bundle(const std::string& dir);

}  // namespace gla

#endif  // GLA_CLASSIFY_HPP_
