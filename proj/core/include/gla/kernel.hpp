// The trusted checker for Hilbert-style derivations.
//
// A derivation carries a constant specification, a list of hypotheses and a
// numbered list of steps. Every step names the rule that justifies it; the
// checker re-validates each one and reports the first failure. Steps that
// depend on a hypothesis are "tainted" and may not feed necessitation or the
// reflection rule.

#ifndef GLA_KERNEL_HPP_
#define GLA_KERNEL_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gla/syntax.hpp"

namespace gla {

enum class AxiomSchemaId : std::uint8_t {
  K1a, K1b, K3, K4a, K4b, K5a, K5b, K6, K7, K8, KF,
  GL1, GL2, GL3,
  LP1, LP2, LP3a, LP3b, LP4,
  C1, C2, C3,
};

inline constexpr std::array kAllSchemas = {
    AxiomSchemaId::K1a, AxiomSchemaId::K1b, AxiomSchemaId::K3,  AxiomSchemaId::K4a,
    AxiomSchemaId::K4b, AxiomSchemaId::K5a, AxiomSchemaId::K5b, AxiomSchemaId::K6,
    AxiomSchemaId::K7,  AxiomSchemaId::K8,  AxiomSchemaId::KF,  AxiomSchemaId::GL1,
    AxiomSchemaId::GL2, AxiomSchemaId::GL3, AxiomSchemaId::LP1, AxiomSchemaId::LP2,
    AxiomSchemaId::LP3a, AxiomSchemaId::LP3b, AxiomSchemaId::LP4, AxiomSchemaId::C1,
    AxiomSchemaId::C2,  AxiomSchemaId::C3,
};

std::string_view to_string(AxiomSchemaId id);
std::optional<AxiomSchemaId> schema_from_string(std::string_view name);
/// Classical propositional schemas (K1a..K8, KF).
bool is_classical(AxiomSchemaId id);

/// Schema pattern: formula metavariables are atoms, term metavariables are
/// proof variables.
const Formula& schema_pattern(AxiomSchemaId id);

struct Substitution {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Term> terms;

  Formula apply(const Formula& pattern) const;
  Term apply(const Term& pattern) const;
};

/// Matches f against a single schema.
std::optional<Substitution> match_schema(AxiomSchemaId id, const Formula& f);

struct AxiomMatch {
  AxiomSchemaId schema;
  Substitution substitution;
};

/// First schema (in declaration order) that f instantiates.
std::optional<AxiomMatch> match_axiom(const Formula& f);

struct CsEntry {
  std::string constant;
  Formula formula;
  friend bool operator==(const CsEntry&, const CsEntry&) = default;
};

/// Finite association of proof constants with axiom instances. One constant
/// may certify several formulas.
class ConstantSpecification {
 public:
  /// Adds an entry unless it is already present.
  void add(std::string constant, Formula formula);
  void merge(const ConstantSpecification& other);
  bool contains(const std::string& constant, const Formula& formula) const;
  bool mentions(const std::string& constant) const { return index_.contains(constant); }
  const std::vector<CsEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const ConstantSpecification& a, const ConstantSpecification& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<CsEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> index_;
};

struct CsViolation {
  std::string constant;
  Formula formula;
  std::string reason;
};

std::vector<CsViolation> validate_cs(const ConstantSpecification& cs);

struct Justification {
  enum class Rule : std::uint8_t { Axiom, Cs, Hyp, Mp, Nec, Refl, Taut };

  Rule rule = Rule::Taut;
  AxiomSchemaId schema = AxiomSchemaId::K1a;  // Axiom
  std::string constant;                       // Cs
  // 1-based. Hyp: hypothesis index in `first`. Mp: premise A in `first`,
  // implication A -> B in `second`. Nec / Refl: premise in `first`.
  std::size_t first = 0;
  std::size_t second = 0;

  static Justification axiom(AxiomSchemaId id) { return {Rule::Axiom, id, {}, 0, 0}; }
  static Justification cs(std::string c) { return {Rule::Cs, AxiomSchemaId::K1a, std::move(c), 0, 0}; }
  static Justification hyp(std::size_t i) { return {Rule::Hyp, AxiomSchemaId::K1a, {}, i, 0}; }
  static Justification mp(std::size_t a, std::size_t ab) { return {Rule::Mp, AxiomSchemaId::K1a, {}, a, ab}; }
  static Justification nec(std::size_t i) { return {Rule::Nec, AxiomSchemaId::K1a, {}, i, 0}; }
  static Justification refl(std::size_t i) { return {Rule::Refl, AxiomSchemaId::K1a, {}, i, 0}; }
  static Justification taut() { return {}; }

  /// Step indices this justification refers to.
  std::vector<std::size_t> premises() const;
  std::string str() const;

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct Step {
  Formula formula;
  Justification justification;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Derivation {
  std::string name = "unnamed";
  ConstantSpecification cs;
  std::vector<Formula> hypotheses;
  std::vector<Step> steps;

  /// Formula of the last step. Throws std::logic_error on an empty derivation.
  const Formula& conclusion() const;
  /// Per-step hypothesis dependence; index 0 is step 1.
  std::vector<bool> taint() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

enum class CheckMode { Strict, Extended };

struct CheckError {
  std::size_t step = 0;  // 0 refers to the header (constant specification)
  std::string reason;
};

struct CheckReport {
  bool ok = true;
  CheckMode mode = CheckMode::Strict;
  std::optional<CheckError> error;
  std::size_t step_count = 0;
  std::size_t axiom_count = 0;

  std::string str() const;
};

CheckReport check(const Derivation& d, CheckMode mode = CheckMode::Strict);

// ---------------------------------------------------------------------------
// Derivation files

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Derivation read_derivation(std::string_view text);
std::string write_derivation(const Derivation& d);
Derivation load_derivation(const std::string& path);
void save_derivation(const Derivation& d, const std::string& path);

}  // namespace gla

#endif  // GLA_KERNEL_HPP_
