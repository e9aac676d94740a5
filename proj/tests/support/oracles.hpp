// Random generators and independent reference implementations used as test
// oracles. Nothing here calls into the code under test except for the AST
// constructors.

#ifndef GLA_TESTS_ORACLES_HPP_
#define GLA_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gla/syntax.hpp"

namespace oracle {

using gla::Formula;
using gla::Term;
using Kind = Formula::Kind;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 eng_;
};

inline Term random_term(Rng& r, int depth) {
  static const char* vars[] = {"u", "v", "w", "x1", "y"};
  static const char* consts[] = {"a", "b", "c1", "e9"};
  if (depth <= 0 || r.below(3) == 0)
    return r.coin() ? Term::var(vars[r.below(5)]) : Term::constant(consts[r.below(4)]);
  switch (r.below(3)) {
    case 0: return Term::app(random_term(r, depth - 1), random_term(r, depth - 1));
    case 1: return Term::sum(random_term(r, depth - 1), random_term(r, depth - 1));
    default: return Term::check(random_term(r, depth - 1));
  }
}

struct FormulaShape {
  std::size_t atoms = 3;
  bool boxes = true;
  bool proofs = true;
};

inline Formula random_formula(Rng& r, int depth, const FormulaShape& s = {}) {
  static const char* names[] = {"P", "Q", "R", "S", "Alpha1", "B2"};
  if (depth <= 0 || r.below(4) == 0) {
    if (r.below(6) == 0) return Formula::falsum();
    return Formula::atom(names[r.below(s.atoms)]);
  }
  std::size_t choices = 4 + (s.boxes ? 1 : 0) + (s.proofs ? 1 : 0);
  std::size_t c = r.below(choices);
  switch (c) {
    case 0: return Formula::neg(random_formula(r, depth - 1, s));
    case 1: return Formula::conj(random_formula(r, depth - 1, s), random_formula(r, depth - 1, s));
    case 2: return Formula::disj(random_formula(r, depth - 1, s), random_formula(r, depth - 1, s));
    case 3: return Formula::impl(random_formula(r, depth - 1, s), random_formula(r, depth - 1, s));
    case 4:
      if (s.boxes) return Formula::box(random_formula(r, depth - 1, s));
      [[fallthrough]];
    default: return Formula::proves(random_term(r, 2), random_formula(r, depth - 1, s));
  }
}

// ---------------------------------------------------------------------------
// Truth tables over maximal non-propositional subformulas.

inline void collect_letters(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Kind::Falsum: return;
    case Kind::Neg: collect_letters(f.body(), out); return;
    case Kind::And:
    case Kind::Or:
    case Kind::Impl:
      collect_letters(f.lhs(), out);
      collect_letters(f.rhs(), out);
      return;
    default:
      for (const auto& g : out)
        if (g == f) return;
      out.push_back(f);
  }
}

inline bool eval_prop(const Formula& f, const std::vector<Formula>& letters, std::uint64_t bits) {
  switch (f.kind()) {
    case Kind::Falsum: return false;
    case Kind::Neg: return !eval_prop(f.body(), letters, bits);
    case Kind::And: return eval_prop(f.lhs(), letters, bits) && eval_prop(f.rhs(), letters, bits);
    case Kind::Or: return eval_prop(f.lhs(), letters, bits) || eval_prop(f.rhs(), letters, bits);
    case Kind::Impl: return !eval_prop(f.lhs(), letters, bits) || eval_prop(f.rhs(), letters, bits);
    default:
      for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] == f) return (bits >> i) & 1U;
      return false;
  }
}

inline bool truth_table_tautology(const Formula& f) {
  std::vector<Formula> letters;
  collect_letters(f, letters);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << letters.size()); ++bits)
    if (!eval_prop(f, letters, bits)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Kripke models as plain adjacency matrices.

struct Model {
  std::size_t n = 0;
  std::vector<std::vector<bool>> rel;             // rel[i][j]
  std::vector<std::set<std::string>> val;         // val[i]
};

inline bool holds(const Model& m, std::size_t w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return m.val[w].contains(f.name());
    case Kind::Falsum: return false;
    case Kind::Neg: return !holds(m, w, f.body());
    case Kind::And: return holds(m, w, f.lhs()) && holds(m, w, f.rhs());
    case Kind::Or: return holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    case Kind::Impl: return !holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    case Kind::Box:
      for (std::size_t v = 0; v < m.n; ++v)
        if (m.rel[w][v] && !holds(m, v, f.body())) return false;
      return true;
    case Kind::Proves: break;
  }
  throw std::logic_error("oracle: proves in box-only evaluation");
}

inline bool is_strict_order(const std::vector<std::vector<bool>>& rel) {
  const std::size_t n = rel.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rel[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k] && !rel[i][k]) return false;
  }
  return true;
}

/// Every irreflexive transitive relation on n worlds (no symmetry reduction).
inline std::vector<std::vector<std::vector<bool>>> all_strict_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) cells.push_back({i, j});
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t c = 0; c < cells.size(); ++c)
      if ((mask >> c) & 1U) rel[cells[c].first][cells[c].second] = true;
    if (is_strict_order(rel)) out.push_back(std::move(rel));
  }
  return out;
}

inline void atoms_of(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom: out.insert(f.name()); return;
    case Kind::Falsum: return;
    case Kind::Neg:
    case Kind::Box:
    case Kind::Proves: atoms_of(f.body(), out); return;
    default:
      atoms_of(f.lhs(), out);
      atoms_of(f.rhs(), out);
  }
}

/// Smallest world count with a refutation, by exhaustive nested loops.
inline std::optional<std::size_t> brute_force_refutation_size(const Formula& f, std::size_t max_worlds) {
  std::set<std::string> atom_set;
  atoms_of(f, atom_set);
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    for (const auto& rel : all_strict_orders(n)) {
      const std::size_t bits = n * atoms.size();
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
        Model m{n, rel, std::vector<std::set<std::string>>(n)};
        for (std::size_t a = 0; a < atoms.size(); ++a)
          for (std::size_t w = 0; w < n; ++w)
            if ((v >> (a * n + w)) & 1U) m.val[w].insert(atoms[a]);
        for (std::size_t w = 0; w < n; ++w)
          if (!holds(m, w, f)) return n;
      }
    }
  }
  return std::nullopt;
}

inline Model random_model(Rng& r, std::size_t max_worlds, const std::vector<std::string>& atoms) {
  Model m;
  m.n = 1 + r.below(max_worlds);
  // Random relation on a random linear order, closed transitively.
  std::vector<std::size_t> rank(m.n);
  for (std::size_t i = 0; i < m.n; ++i) rank[i] = i;
  for (std::size_t i = m.n; i > 1; --i) std::swap(rank[i - 1], rank[r.below(i)]);
  m.rel.assign(m.n, std::vector<bool>(m.n, false));
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (rank[i] < rank[j] && r.coin()) m.rel[i][j] = true;
  for (std::size_t k = 0; k < m.n; ++k)
    for (std::size_t i = 0; i < m.n; ++i)
      for (std::size_t j = 0; j < m.n; ++j)
        if (m.rel[i][k] && m.rel[k][j]) m.rel[i][j] = true;
  m.val.assign(m.n, {});
  for (std::size_t w = 0; w < m.n; ++w)
    for (const auto& a : atoms)
      if (r.coin()) m.val[w].insert(a);
  return m;
}

// ---------------------------------------------------------------------------
// Generators

/// Shape predicate on an AST: Q1 ... Qm T -> T, m >= 1, Qi = [] or var:, vars distinct.
inline bool generator_shape(const Formula& f) {
  if (f.kind() != Kind::Impl || f.rhs().kind() != Kind::Atom) return false;
  const std::string target = f.rhs().name();
  Formula cur = f.lhs();
  std::set<std::string> vars;
  std::size_t m = 0;
  while (cur.kind() == Kind::Box || cur.kind() == Kind::Proves) {
    if (cur.kind() == Kind::Proves) {
      if (cur.term().kind() != Term::Kind::Var || !vars.insert(cur.term().name()).second) return false;
    }
    ++m;
    cur = cur.body();
  }
  return m >= 1 && cur.kind() == Kind::Atom && cur.name() == target;
}

/// Leading boxes before the first variable, or nullopt when there is none.
inline std::optional<std::size_t> leading_boxes(const std::vector<bool>& is_box) {
  std::size_t count = 0;
  for (bool b : is_box) {
    if (!b) return count;
    ++count;
  }
  return std::nullopt;
}

/// Text of the generator with the given shape; variables named v1, v2, ...
inline std::string generator_text(const std::vector<bool>& is_box) {
  std::string s;
  std::size_t next = 1;
  for (bool b : is_box) s += b ? "[] " : "v" + std::to_string(next++) + " : ";
  return s + "P -> P";
}

/// All non-empty box/variable shapes of length <= max_len.
inline std::vector<std::vector<bool>> all_shapes(std::size_t max_len, bool include_empty = false) {
  std::vector<std::vector<bool>> out;
  if (include_empty) out.push_back({});
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      std::vector<bool> s(len);
      for (std::size_t i = 0; i < len; ++i) s[i] = (mask >> i) & 1U;
      out.push_back(s);
    }
  return out;
}

}  // namespace oracle

#endif  // GLA_TESTS_ORACLES_HPP_
