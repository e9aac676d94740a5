// Kripke semantics for the box-only fragment: finite irreflexive transitive
// frames, forcing, the linear model family and bounded countermodel search.

#ifndef GLA_SEMANTICS_HPP_
#define GLA_SEMANTICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gla/syntax.hpp"

namespace gla {

using World = std::size_t;

struct KripkeModel {
  std::string name = "model";
  std::size_t worlds = 0;
  std::set<std::pair<World, World>> relation;
  std::map<World, std::set<std::string>> valuation;

  std::vector<World> successors(World w) const;
  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

struct FrameViolation {
  enum class Kind { Reflexive, Intransitive, UndeclaredWorld };
  Kind kind;
  // Reflexive: {w, w}. Intransitive: (a, b) and (b, c) present, (a, c) missing.
  // UndeclaredWorld: first is the offending index.
  World a = 0, b = 0, c = 0;

  std::string str() const;
};

std::vector<FrameViolation> validate_frame(const KripkeModel& m);

/// Raised when a formula outside the box-only fragment reaches the model checker.
class ProofTermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ProofTermError for Proves subformulas, std::out_of_range for an
/// undeclared world.
bool forces(const KripkeModel& m, World w, const Formula& f);

/// Worlds 0..k-1, relation {(i, j) : i < j}, empty valuation; root is 0.
KripkeModel linear_model(std::size_t k);

struct Countermodel {
  KripkeModel model;
  World world = 0;
};

inline constexpr std::size_t kMaxSearchWorlds = 6;

/// Smallest model (by world count, up to max_worlds) refuting f at some world.
/// Absence is bounded refutation only, not a validity proof.
std::optional<Countermodel> find_countermodel(const Formula& f, std::size_t max_worlds);

class ModelFormatError : public std::runtime_error {
 public:
  ModelFormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message) {}
};

KripkeModel read_model(std::string_view text);
std::string write_model(const KripkeModel& m);

}  // namespace gla

#endif  // GLA_SEMANTICS_HPP_
