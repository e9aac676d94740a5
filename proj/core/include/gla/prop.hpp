// Propositional reasoning under abstraction: maximal Box-, Proves- and
// Atom-rooted subformulas are treated as opaque letters, `false` is the
// constant false. Tautologies are compiled into strict-mode derivations
// that use only the classical schemas and modus ponens.

#ifndef GLA_PROP_HPP_
#define GLA_PROP_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "gla/kernel.hpp"

namespace gla {

/// Propositional skeleton of a formula. Letter i (0-based) of `letters`
/// appears in `abstracted` as the atom `letter_name(i)`.
struct Abstraction {
  std::vector<Formula> letters;
  Formula abstracted = Formula::falsum();

  static std::string letter_name(std::size_t i) { return "X" + std::to_string(i + 1); }
  /// Replaces abstraction atoms by the subformulas they stand for.
  Formula restore(const Formula& f) const;
};

Abstraction abstract(const Formula& f);

/// Truth value of f's abstraction; `value[i]` is the value of letter i.
bool evaluate(const Abstraction& a, const std::vector<bool>& value);

bool is_tautology(const Formula& f);

class NotTautologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hypothesis-free derivation of f. Throws NotTautologyError.
Derivation compile_tautology(const Formula& f);

/// Derivation of `conclusion` from hypotheses `premises`: the compiled
/// curried implication premises -> conclusion followed by modus ponens.
/// Throws NotTautologyError if the implication is not a tautology.
Derivation compile_consequence(const std::vector<Formula>& premises, const Formula& conclusion);

}  // namespace gla

#endif  // GLA_PROP_HPP_
