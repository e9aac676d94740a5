// Abstract syntax of the joint modal / explicit-proof language: proof terms,
// formulas, and reflection-principle generators, together with the textual
// grammar shared by every file format in the toolkit.
//
//   formula := or ('->' formula)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | '[]' unary | '[]^' NAT unary | term ':' unary | primary
//   primary := ATOM | 'false' | '(' formula ')'
//   term    := tapp ('+' tapp)*
//   tapp    := tunary ('*' tunary)*
//   tunary  := '!' tunary | VAR | CONST | '(' term ')'

#ifndef GLA_SYNTAX_HPP_
#define GLA_SYNTAX_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gla {

/// Immutable proof term. Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const, App, Sum, Check };

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term app(Term fn, Term arg);
  static Term sum(Term lhs, Term rhs);
  static Term check(Term inner);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }
  /// Name of a Var or Const.
  const std::string& name() const;
  /// Operands of App / Sum.
  const Term& left() const;
  const Term& right() const;
  /// Operand of Check.
  const Term& inner() const;

  std::size_t hash() const noexcept;
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Immutable formula. Equality is structural; hashes are cached so repeated
/// comparisons of large shared subtrees stay cheap.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Falsum, Neg, And, Or, Impl, Box, Proves };

  static Formula atom(std::string name);
  static Formula falsum();
  static Formula neg(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula impl(Formula lhs, Formula rhs);
  static Formula box(Formula f);
  static Formula proves(Term t, Formula body);
  /// `[]^n f`; n = 0 returns f.
  static Formula boxes(std::size_t n, Formula f);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }
  /// Atom name.
  const std::string& name() const;
  /// Operands of And / Or / Impl.
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Operand of Neg / Box / Proves.
  const Formula& body() const;
  /// Proof term of Proves.
  const Term& term() const;

  std::size_t hash() const noexcept;
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::size_t box_depth(const Formula& f);
/// True iff f has no Proves subformula.
bool is_box_only(const Formula& f);
/// Atom names occurring in f, sorted.
std::set<std::string> atom_names(const Formula& f);
/// Names of proof constants occurring in t / f.
void collect_constants(const Term& t, std::set<std::string>& out);
void collect_constants(const Formula& f, std::set<std::string>& out);
void collect_variables(const Term& t, std::set<std::string>& out);

bool is_var_name(std::string_view s);
bool is_const_name(std::string_view s);
bool is_atom_name(std::string_view s);

/// Error raised by the parser; `offset()` is a byte offset into the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

// ---------------------------------------------------------------------------
// Generators

struct PrefixOp {
  enum class Kind : std::uint8_t { Box, Var };
  Kind kind = Kind::Box;
  std::string var;  // set iff kind == Var

  static PrefixOp box() { return {Kind::Box, {}}; }
  static PrefixOp variable(std::string name) { return {Kind::Var, std::move(name)}; }
  bool is_box() const noexcept { return kind == Kind::Box; }

  friend bool operator==(const PrefixOp&, const PrefixOp&) = default;
};

using Prefix = std::vector<PrefixOp>;

/// Applies the prefix operators right-to-left: [Box, Var u] over F is `[]u : F`.
Formula fold_prefix(std::span<const PrefixOp> prefix, Formula body);

/// Q1 Q2 ... Qm P -> P.
struct Generator {
  Prefix prefix;
  std::string target = "P";

  Formula antecedent() const;
  Formula formula() const;
  std::string str() const { return print_formula(formula()); }

  friend bool operator==(const Generator&, const Generator&) = default;
};

class GeneratorError : public std::runtime_error {
 public:
  enum class Reason { Shape, DuplicateVariable };
  GeneratorError(Reason reason, const std::string& message)
      : std::runtime_error(message), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Validates the generator shape of an already-parsed formula.
Generator as_generator(const Formula& f);
/// parse_formula followed by as_generator. Throws SyntaxError or GeneratorError.
Generator parse_generator(std::string_view text);

}  // namespace gla

template <>
struct std::hash<gla::Formula> {
  std::size_t operator()(const gla::Formula& f) const noexcept { return f.hash(); }
};
template <>
struct std::hash<gla::Term> {
  std::size_t operator()(const gla::Term& t) const noexcept { return t.hash(); }
};

#endif  // GLA_SYNTAX_HPP_
