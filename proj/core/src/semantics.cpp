#include "gla/semantics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace gla {

std::vector<World> KripkeModel::successors(World w) const {
  std::vector<World> out;
  for (auto it = relation.lower_bound({w, 0}); it != relation.end() && it->first == w; ++it) out.push_back(it->second);
  return out;
}

std::string FrameViolation::str() const {
  switch (kind) {
    case Kind::Reflexive:
      return "irreflexive violation at " + std::to_string(a);
    case Kind::Intransitive:
      return "transitivity violation (" + std::to_string(a) + "," + std::to_string(b) + "),(" + std::to_string(b) +
             "," + std::to_string(c) + ")";
    case Kind::UndeclaredWorld:
      return "undeclared world " + std::to_string(a);
  }
  return "?";
}

std::vector<FrameViolation> validate_frame(const KripkeModel& m) {
  std::vector<FrameViolation> out;
  auto undeclared = [&](World w) {
    if (w < m.worlds) return false;
    out.push_back({FrameViolation::Kind::UndeclaredWorld, w});
    return true;
  };
  for (const auto& [a, b] : m.relation) {
    if (undeclared(a) || undeclared(b)) continue;
    if (a == b) out.push_back({FrameViolation::Kind::Reflexive, a, a});
  }
  for (const auto& [w, atoms] : m.valuation) undeclared(w);
  for (const auto& [a, b] : m.relation)
    for (World c : m.successors(b))
      if (!m.relation.contains({a, c})) out.push_back({FrameViolation::Kind::Intransitive, a, b, c});
  return out;
}

namespace {

std::vector<bool> truth_set(const KripkeModel& m, const std::vector<std::vector<World>>& succ, const Formula& f) {
  const std::size_t n = m.worlds;
  std::vector<bool> out(n, false);
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (World w = 0; w < n; ++w) {
        auto it = m.valuation.find(w);
        out[w] = it != m.valuation.end() && it->second.contains(f.name());
      }
      return out;
    case Formula::Kind::Falsum:
      return out;
    case Formula::Kind::Proves:
      throw ProofTermError("proof-term subformula '" + print_formula(f) + "' has no Kripke semantics here");
    case Formula::Kind::Neg: {
      auto a = truth_set(m, succ, f.body());
      for (World w = 0; w < n; ++w) out[w] = !a[w];
      return out;
    }
    case Formula::Kind::Box: {
      auto a = truth_set(m, succ, f.body());
      for (World w = 0; w < n; ++w)
        out[w] = std::all_of(succ[w].begin(), succ[w].end(), [&](World v) { return a[v]; });
      return out;
    }
    default: {
      auto a = truth_set(m, succ, f.lhs());
      auto b = truth_set(m, succ, f.rhs());
      for (World w = 0; w < n; ++w) {
        if (f.is(Formula::Kind::And)) out[w] = a[w] && b[w];
        else if (f.is(Formula::Kind::Or)) out[w] = a[w] || b[w];
        else out[w] = !a[w] || b[w];
      }
      return out;
    }
  }
}

}  // namespace

bool forces(const KripkeModel& m, World w, const Formula& f) {
  if (!is_box_only(f)) throw ProofTermError("formula contains a proof-term subformula: " + print_formula(f));
  if (w >= m.worlds) throw std::out_of_range("undeclared world " + std::to_string(w));
  std::vector<std::vector<World>> succ(m.worlds);
  for (const auto& [a, b] : m.relation)
    if (a < m.worlds && b < m.worlds) succ[a].push_back(b);
  return truth_set(m, succ, f)[w];
}

KripkeModel linear_model(std::size_t k) {
  if (k == 0) throw std::invalid_argument("linear_model: k must be at least 1");
  KripkeModel m;
  m.name = "linear" + std::to_string(k);
  m.worlds = k;
  for (World i = 0; i < k; ++i)
    for (World j = i + 1; j < k; ++j) m.relation.insert({i, j});
  return m;
}

// ---------------------------------------------------------------------------
// Countermodel search over strict partial orders. Every finite strict order
// has a linear extension, so up to isomorphism it suffices to enumerate
// transitive relations contained in {(i, j) : i < j}.

namespace {

using Mask = std::uint32_t;  // world set or adjacency row

struct Frame {
  std::size_t n;
  std::vector<Mask> succ;  // succ[w]: bit v set iff w R v
};

std::vector<std::pair<World, World>> upper_pairs(std::size_t n) {
  std::vector<std::pair<World, World>> out;
  for (World i = 0; i < n; ++i)
    for (World j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

std::uint64_t encode(const std::vector<Mask>& succ, const std::vector<World>& perm) {
  const std::size_t n = succ.size();
  std::uint64_t code = 0;
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j) {
      code <<= 1;
      if (succ[perm[i]] >> perm[j] & 1U) code |= 1;
    }
  return code;
}

std::vector<Frame> frames_of_size(std::size_t n) {
  const auto pairs = upper_pairs(n);
  std::vector<Frame> out;
  std::set<std::uint64_t> seen;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << pairs.size()); ++subset) {
    std::vector<Mask> succ(n, 0);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (subset >> p & 1U) succ[pairs[p].first] |= Mask{1} << pairs[p].second;
    bool transitive = true;
    for (World a = 0; a < n && transitive; ++a)
      for (World b = 0; b < n && transitive; ++b)
        if ((succ[a] >> b & 1U) && (succ[b] & ~succ[a])) transitive = false;
    if (!transitive) continue;
    std::vector<World> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t canonical = UINT64_MAX;
    do canonical = std::min(canonical, encode(succ, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(canonical).second) out.push_back({n, std::move(succ)});
  }
  return out;
}

Mask eval_mask(const Formula& f, const Frame& fr, const std::map<std::string, std::size_t>& atom_index,
               const std::vector<Mask>& atom_truth) {
  const Mask all = (Mask{1} << fr.n) - 1;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return atom_truth[atom_index.at(f.name())];
    case Formula::Kind::Falsum:
      return 0;
    case Formula::Kind::Neg:
      return ~eval_mask(f.body(), fr, atom_index, atom_truth) & all;
    case Formula::Kind::Box: {
      const Mask a = eval_mask(f.body(), fr, atom_index, atom_truth);
      Mask out = 0;
      for (World w = 0; w < fr.n; ++w)
        if ((fr.succ[w] & ~a) == 0) out |= Mask{1} << w;
      return out;
    }
    case Formula::Kind::And:
      return eval_mask(f.lhs(), fr, atom_index, atom_truth) & eval_mask(f.rhs(), fr, atom_index, atom_truth);
    case Formula::Kind::Or:
      return eval_mask(f.lhs(), fr, atom_index, atom_truth) | eval_mask(f.rhs(), fr, atom_index, atom_truth);
    case Formula::Kind::Impl:
      return (~eval_mask(f.lhs(), fr, atom_index, atom_truth) & all) | eval_mask(f.rhs(), fr, atom_index, atom_truth);
    case Formula::Kind::Proves:
      break;
  }
  throw ProofTermError("proof-term subformula in countermodel search");
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& f, std::size_t max_worlds) {
  if (!is_box_only(f)) throw ProofTermError("formula contains a proof-term subformula: " + print_formula(f));
  if (max_worlds > kMaxSearchWorlds)
    throw std::invalid_argument("find_countermodel: bound " + std::to_string(max_worlds) + " exceeds " +
                                std::to_string(kMaxSearchWorlds));
  const auto atoms = atom_names(f);
  std::map<std::string, std::size_t> atom_index;
  for (const auto& a : atoms) atom_index.emplace(a, atom_index.size());
  const std::size_t n_atoms = atoms.size();

  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::size_t bits = n * n_atoms;
    if (bits >= 40) throw std::invalid_argument("find_countermodel: valuation space too large");
    const Mask all = (Mask{1} << n) - 1;
    for (const Frame& fr : frames_of_size(n)) {
      for (std::uint64_t val = 0; val < (std::uint64_t{1} << bits); ++val) {
        std::vector<Mask> atom_truth(n_atoms);
        for (std::size_t i = 0; i < n_atoms; ++i) atom_truth[i] = static_cast<Mask>(val >> (i * n)) & all;
        const Mask truth = eval_mask(f, fr, atom_index, atom_truth);
        if (truth == all) continue;
        Countermodel cm;
        cm.model.name = "countermodel";
        cm.model.worlds = n;
        for (World a = 0; a < n; ++a)
          for (World b = 0; b < n; ++b)
            if (fr.succ[a] >> b & 1U) cm.model.relation.insert({a, b});
        for (const auto& [name, i] : atom_index)
          for (World w = 0; w < n; ++w)
            if (atom_truth[i] >> w & 1U) cm.model.valuation[w].insert(name);
        cm.world = static_cast<World>(std::countr_zero(~truth & all));
        return cm;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

World parse_world(std::string_view s, std::size_t line) {
  World v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ModelFormatError(line, "expected a world index, found '" + std::string(s) + "'");
  return v;
}

}  // namespace

KripkeModel read_model(std::string_view text) {
  KripkeModel m;
  bool have_header = false, have_worlds = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string tok; ls >> tok;) w.push_back(tok);
    if (w.empty()) continue;
    if (w[0] == "MODEL") {
      if (have_header || w.size() != 2) throw ModelFormatError(line, "expected a single MODEL <name> header");
      m.name = w[1];
      have_header = true;
      continue;
    }
    if (!have_header) throw ModelFormatError(line, "expected MODEL header");
    if (w[0] == "WORLDS") {
      if (have_worlds || w.size() != 2) throw ModelFormatError(line, "expected a single WORLDS <n> line");
      m.worlds = parse_world(w[1], line);
      have_worlds = true;
    } else if (w[0] == "REL") {
      if (w.size() != 3) throw ModelFormatError(line, "expected REL <i> <j>");
      m.relation.insert({parse_world(w[1], line), parse_world(w[2], line)});
    } else if (w[0] == "VAL") {
      if (w.size() != 3 || !is_atom_name(w[2])) throw ModelFormatError(line, "expected VAL <i> <Atom>");
      m.valuation[parse_world(w[1], line)].insert(w[2]);
    } else {
      throw ModelFormatError(line, "unknown directive '" + w[0] + "'");
    }
  }
  if (!have_header) throw ModelFormatError(line, "expected MODEL header");
  if (!have_worlds) throw ModelFormatError(line, "missing WORLDS line");
  return m;
}

std::string write_model(const KripkeModel& m) {
  std::ostringstream os;
  os << "MODEL " << m.name << "\nWORLDS " << m.worlds << '\n';
  for (const auto& [a, b] : m.relation) os << "REL " << a << ' ' << b << '\n';
  for (const auto& [w, atoms] : m.valuation)
    for (const auto& a : atoms) os << "VAL " << w << ' ' << a << '\n';
  return os.str();
}

}  // namespace gla
