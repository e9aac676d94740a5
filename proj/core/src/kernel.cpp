#include "gla/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "gla/prop.hpp"

namespace gla {

namespace {

struct SchemaInfo {
  AxiomSchemaId id;
  std::string_view name;
  std::string_view pattern;
};

// Formula metavariables: A, B, C. Term metavariables: x, y.
constexpr std::array<SchemaInfo, kAllSchemas.size()> kSchemaTable = {{
    {AxiomSchemaId::K1a, "K1a", "A -> (B -> A)"},
    {AxiomSchemaId::K1b, "K1b", "(A -> B) -> ((A -> (B -> C)) -> (A -> C))"},
    {AxiomSchemaId::K3, "K3", "A -> (B -> A & B)"},
    {AxiomSchemaId::K4a, "K4a", "A & B -> A"},
    {AxiomSchemaId::K4b, "K4b", "A & B -> B"},
    {AxiomSchemaId::K5a, "K5a", "A -> A | B"},
    {AxiomSchemaId::K5b, "K5b", "B -> A | B"},
    {AxiomSchemaId::K6, "K6", "(A -> C) -> ((B -> C) -> (A | B -> C))"},
    {AxiomSchemaId::K7, "K7", "(A -> B) -> ((A -> ~B) -> ~A)"},
    {AxiomSchemaId::K8, "K8", "~~A -> A"},
    {AxiomSchemaId::KF, "KF", "false -> A"},
    {AxiomSchemaId::GL1, "GL1", "[](A -> B) -> ([]A -> []B)"},
    {AxiomSchemaId::GL2, "GL2", "[]A -> [][]A"},
    {AxiomSchemaId::GL3, "GL3", "[]([]A -> A) -> []A"},
    {AxiomSchemaId::LP1, "LP1", "x : (A -> B) -> (y : A -> x * y : B)"},
    {AxiomSchemaId::LP2, "LP2", "x : A -> !x : x : A"},
    {AxiomSchemaId::LP3a, "LP3a", "x : A -> x + y : A"},
    {AxiomSchemaId::LP3b, "LP3b", "y : A -> x + y : A"},
    {AxiomSchemaId::LP4, "LP4", "x : A -> A"},
    {AxiomSchemaId::C1, "C1", "x : A -> []A"},
    {AxiomSchemaId::C2, "C2", "~x : A -> []~x : A"},
    {AxiomSchemaId::C3, "C3", "x : []A -> A"},
}};

const SchemaInfo& info(AxiomSchemaId id) { return kSchemaTable[static_cast<std::size_t>(id)]; }

bool match_term(const Term& pat, const Term& t, Substitution& s) {
  switch (pat.kind()) {
    case Term::Kind::Var: {
      auto [it, inserted] = s.terms.try_emplace(pat.name(), t);
      return inserted || it->second == t;
    }
    case Term::Kind::Const:
      return t.is(Term::Kind::Const) && t.name() == pat.name();
    case Term::Kind::Check:
      return t.is(Term::Kind::Check) && match_term(pat.inner(), t.inner(), s);
    default:
      return t.kind() == pat.kind() && match_term(pat.left(), t.left(), s) &&
             match_term(pat.right(), t.right(), s);
  }
}

bool match_formula(const Formula& pat, const Formula& f, Substitution& s) {
  switch (pat.kind()) {
    case Formula::Kind::Atom: {
      auto [it, inserted] = s.formulas.try_emplace(pat.name(), f);
      return inserted || it->second == f;
    }
    case Formula::Kind::Falsum:
      return f.is(Formula::Kind::Falsum);
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
      return f.kind() == pat.kind() && match_formula(pat.body(), f.body(), s);
    case Formula::Kind::Proves:
      return f.is(Formula::Kind::Proves) && match_term(pat.term(), f.term(), s) &&
             match_formula(pat.body(), f.body(), s);
    default:
      return f.kind() == pat.kind() && match_formula(pat.lhs(), f.lhs(), s) &&
             match_formula(pat.rhs(), f.rhs(), s);
  }
}

}  // namespace

std::string_view to_string(AxiomSchemaId id) { return info(id).name; }

std::optional<AxiomSchemaId> schema_from_string(std::string_view name) {
  for (const auto& e : kSchemaTable)
    if (e.name == name) return e.id;
  return std::nullopt;
}

bool is_classical(AxiomSchemaId id) { return static_cast<int>(id) <= static_cast<int>(AxiomSchemaId::KF); }

const Formula& schema_pattern(AxiomSchemaId id) {
  static const std::vector<Formula> patterns = [] {
    std::vector<Formula> out;
    for (const auto& e : kSchemaTable) out.push_back(parse_formula(e.pattern));
    return out;
  }();
  return patterns[static_cast<std::size_t>(id)];
}

Term Substitution::apply(const Term& pattern) const {
  switch (pattern.kind()) {
    case Term::Kind::Var: {
      auto it = terms.find(pattern.name());
      return it == terms.end() ? pattern : it->second;
    }
    case Term::Kind::Const:
      return pattern;
    case Term::Kind::Check:
      return Term::check(apply(pattern.inner()));
    case Term::Kind::App:
      return Term::app(apply(pattern.left()), apply(pattern.right()));
    case Term::Kind::Sum:
      return Term::sum(apply(pattern.left()), apply(pattern.right()));
  }
  return pattern;
}

Formula Substitution::apply(const Formula& pattern) const {
  switch (pattern.kind()) {
    case Formula::Kind::Atom: {
      auto it = formulas.find(pattern.name());
      return it == formulas.end() ? pattern : it->second;
    }
    case Formula::Kind::Falsum:
      return pattern;
    case Formula::Kind::Neg:
      return Formula::neg(apply(pattern.body()));
    case Formula::Kind::Box:
      return Formula::box(apply(pattern.body()));
    case Formula::Kind::Proves:
      return Formula::proves(terms.empty() ? pattern.term() : apply(pattern.term()), apply(pattern.body()));
    case Formula::Kind::And:
      return Formula::conj(apply(pattern.lhs()), apply(pattern.rhs()));
    case Formula::Kind::Or:
      return Formula::disj(apply(pattern.lhs()), apply(pattern.rhs()));
    case Formula::Kind::Impl:
      return Formula::impl(apply(pattern.lhs()), apply(pattern.rhs()));
  }
  return pattern;
}

std::optional<Substitution> match_schema(AxiomSchemaId id, const Formula& f) {
  Substitution s;
  if (match_formula(schema_pattern(id), f, s)) return s;
  return std::nullopt;
}

std::optional<AxiomMatch> match_axiom(const Formula& f) {
  for (auto id : kAllSchemas)
    if (auto s = match_schema(id, f)) return AxiomMatch{id, std::move(*s)};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constant specifications

void ConstantSpecification::add(std::string constant, Formula formula) {
  if (contains(constant, formula)) return;
  index_[constant].push_back(entries_.size());
  entries_.push_back({std::move(constant), std::move(formula)});
}

void ConstantSpecification::merge(const ConstantSpecification& other) {
  for (const auto& e : other.entries_) add(e.constant, e.formula);
}

bool ConstantSpecification::contains(const std::string& constant, const Formula& formula) const {
  auto it = index_.find(constant);
  if (it == index_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::size_t i) { return entries_[i].formula == formula; });
}

std::vector<CsViolation> validate_cs(const ConstantSpecification& cs) {
  std::vector<CsViolation> out;
  for (const auto& e : cs.entries()) {
    if (!is_const_name(e.constant))
      out.push_back({e.constant, e.formula, "'" + e.constant + "' is not a proof constant name"});
    else if (!match_axiom(e.formula))
      out.push_back({e.constant, e.formula, e.constant + " certifies a non-axiom: " + print_formula(e.formula)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivations

std::vector<std::size_t> Justification::premises() const {
  switch (rule) {
    case Rule::Mp:
      return {first, second};
    case Rule::Nec:
    case Rule::Refl:
      return {first};
    default:
      return {};
  }
}

std::string Justification::str() const {
  switch (rule) {
    case Rule::Axiom: return "AXIOM " + std::string(to_string(schema));
    case Rule::Cs: return "CS " + constant;
    case Rule::Hyp: return "HYP " + std::to_string(first);
    case Rule::Mp: return "MP " + std::to_string(first) + " " + std::to_string(second);
    case Rule::Nec: return "NEC " + std::to_string(first);
    case Rule::Refl: return "REFL " + std::to_string(first);
    case Rule::Taut: return "TAUT";
  }
  return "?";
}

const Formula& Derivation::conclusion() const {
  if (steps.empty()) throw std::logic_error("derivation '" + name + "' has no steps");
  return steps.back().formula;
}

std::vector<bool> Derivation::taint() const {
  std::vector<bool> out(steps.size(), false);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& j = steps[i].justification;
    if (j.rule == Justification::Rule::Hyp) {
      out[i] = true;
      continue;
    }
    for (auto p : j.premises())
      if (p >= 1 && p <= i && out[p - 1]) out[i] = true;
  }
  return out;
}

std::string CheckReport::str() const {
  std::ostringstream os;
  os << (ok ? "OK" : "FAILED") << " (" << (mode == CheckMode::Strict ? "strict" : "extended") << ", "
     << step_count << " steps, " << axiom_count << " axiom instances)";
  if (error) os << "\n  step " << error->step << ": " << error->reason;
  return os.str();
}

CheckReport check(const Derivation& d, CheckMode mode) {
  CheckReport report;
  report.mode = mode;
  report.step_count = d.steps.size();
  auto fail = [&](std::size_t step, std::string reason) {
    report.ok = false;
    report.error = CheckError{step, std::move(reason)};
    return report;
  };

  if (auto violations = validate_cs(d.cs); !violations.empty())
    return fail(0, "constant specification: " + violations.front().reason);
  if (d.steps.empty()) return fail(0, "derivation has no steps");

  std::vector<bool> tainted(d.steps.size(), false);
  for (std::size_t n = 1; n <= d.steps.size(); ++n) {
    const Step& step = d.steps[n - 1];
    const Justification& j = step.justification;
    for (auto p : j.premises())
      if (p == 0 || p >= n) return fail(n, "premise " + std::to_string(p) + " does not precede step " + std::to_string(n));
    auto premise = [&](std::size_t p) -> const Formula& { return d.steps[p - 1].formula; };

    switch (j.rule) {
      case Justification::Rule::Axiom:
        if (!match_schema(j.schema, step.formula))
          return fail(n, "not an instance of axiom schema " + std::string(to_string(j.schema)));
        ++report.axiom_count;
        break;
      case Justification::Rule::Cs:
        if (!step.formula.is(Formula::Kind::Proves) || !step.formula.term().is(Term::Kind::Const) ||
            step.formula.term().name() != j.constant)
          return fail(n, "constant step must have the form " + j.constant + " : A");
        if (!d.cs.contains(j.constant, step.formula.body()))
          return fail(n, "constant specification has no entry " + j.constant + " : " + print_formula(step.formula.body()));
        break;
      case Justification::Rule::Hyp:
        if (j.first == 0 || j.first > d.hypotheses.size())
          return fail(n, "no hypothesis " + std::to_string(j.first));
        if (!(d.hypotheses[j.first - 1] == step.formula))
          return fail(n, "formula differs from hypothesis " + std::to_string(j.first));
        tainted[n - 1] = true;
        break;
      case Justification::Rule::Mp: {
        const Formula& a = premise(j.first);
        const Formula& ab = premise(j.second);
        if (!ab.is(Formula::Kind::Impl)) return fail(n, "modus ponens: step " + std::to_string(j.second) + " is not an implication");
        if (!(ab.lhs() == a)) return fail(n, "modus ponens: antecedent of step " + std::to_string(j.second) + " differs from step " + std::to_string(j.first));
        if (!(ab.rhs() == step.formula)) return fail(n, "modus ponens: consequent differs from step formula");
        tainted[n - 1] = tainted[j.first - 1] || tainted[j.second - 1];
        break;
      }
      case Justification::Rule::Nec:
        if (tainted[j.first - 1]) return fail(n, "necessitation over hypothesis-tainted step");
        if (!step.formula.is(Formula::Kind::Box) || !(step.formula.body() == premise(j.first)))
          return fail(n, "necessitation: formula is not [] of step " + std::to_string(j.first));
        break;
      case Justification::Rule::Refl:
        if (tainted[j.first - 1]) return fail(n, "reflection rule over hypothesis-tainted step");
        if (!premise(j.first).is(Formula::Kind::Box) || !(premise(j.first).body() == step.formula))
          return fail(n, "reflection rule: step " + std::to_string(j.first) + " is not [] of this formula");
        break;
      case Justification::Rule::Taut:
        if (mode == CheckMode::Strict) return fail(n, "TAUT steps are not allowed in strict mode");
        if (!is_tautology(step.formula)) return fail(n, "not a propositional tautology");
        break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw FormatError(line, "expected a number, found '" + std::string(s) + "'");
  return v;
}

Formula parse_at(std::string_view text, std::size_t line) {
  try {
    return parse_formula(text);
  } catch (const SyntaxError& e) {
    throw FormatError(line, e.what());
  }
}

Justification parse_justification(std::string_view text, std::size_t line) {
  auto w = words(text);
  if (w.empty()) throw FormatError(line, "missing justification");
  auto arity = [&](std::size_t n) {
    if (w.size() != n + 1) throw FormatError(line, "justification " + std::string(w[0]) + " takes " + std::to_string(n) + " argument(s)");
  };
  if (w[0] == "AXIOM") {
    arity(1);
    auto id = schema_from_string(w[1]);
    if (!id) throw FormatError(line, "unknown axiom schema '" + std::string(w[1]) + "'");
    return Justification::axiom(*id);
  }
  if (w[0] == "CS") {
    arity(1);
    return Justification::cs(std::string(w[1]));
  }
  if (w[0] == "HYP") {
    arity(1);
    return Justification::hyp(parse_index(w[1], line));
  }
  if (w[0] == "MP") {
    arity(2);
    return Justification::mp(parse_index(w[1], line), parse_index(w[2], line));
  }
  if (w[0] == "NEC") {
    arity(1);
    return Justification::nec(parse_index(w[1], line));
  }
  if (w[0] == "REFL") {
    arity(1);
    return Justification::refl(parse_index(w[1], line));
  }
  if (w[0] == "TAUT") {
    arity(0);
    return Justification::taut();
  }
  throw FormatError(line, "unknown justification '" + std::string(w[0]) + "'");
}

}  // namespace

Derivation read_derivation(std::string_view text) {
  Derivation d;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    auto space = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, space);
    std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

    if (keyword == "DERIVATION") {
      if (have_header) throw FormatError(line_no, "duplicate DERIVATION header");
      if (rest.empty()) throw FormatError(line_no, "DERIVATION needs a name");
      d.name = std::string(rest);
      have_header = true;
      continue;
    }
    if (!have_header) throw FormatError(line_no, "expected DERIVATION header");
    if (keyword == "CS") {
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) throw FormatError(line_no, "expected CS <const> : <formula>");
      std::string constant(trim(rest.substr(0, colon)));
      if (!is_const_name(constant)) throw FormatError(line_no, "'" + constant + "' is not a proof constant");
      d.cs.add(constant, parse_at(rest.substr(colon + 1), line_no));
    } else if (keyword == "HYP") {
      if (!d.steps.empty()) throw FormatError(line_no, "HYP lines must precede steps");
      d.hypotheses.push_back(parse_at(rest, line_no));
    } else if (keyword == "STEP") {
      auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) throw FormatError(line_no, "expected STEP <n> <formula> BY <justification>");
      std::size_t n = parse_index(rest.substr(0, sp), line_no);
      if (n != d.steps.size() + 1)
        throw FormatError(line_no, "step number " + std::to_string(n) + " out of sequence (expected " + std::to_string(d.steps.size() + 1) + ")");
      std::string_view body = rest.substr(sp);
      auto by = body.rfind(" BY ");
      if (by == std::string_view::npos) throw FormatError(line_no, "missing BY");
      Formula f = parse_at(body.substr(0, by), line_no);
      d.steps.push_back({std::move(f), parse_justification(body.substr(by + 4), line_no)});
    } else {
      throw FormatError(line_no, "unknown directive '" + std::string(keyword) + "'");
    }
  }
  if (!have_header) throw FormatError(line_no, "expected DERIVATION header");
  return d;
}

std::string write_derivation(const Derivation& d) {
  std::ostringstream os;
  os << "DERIVATION " << d.name << '\n';
  for (const auto& e : d.cs.entries()) os << "CS " << e.constant << " : " << print_formula(e.formula) << '\n';
  for (const auto& h : d.hypotheses) os << "HYP " << print_formula(h) << '\n';
  for (std::size_t i = 0; i < d.steps.size(); ++i)
    os << "STEP " << i + 1 << ' ' << print_formula(d.steps[i].formula) << " BY " << d.steps[i].justification.str() << '\n';
  return os.str();
}

Derivation load_derivation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_derivation(buf.str());
}

void save_derivation(const Derivation& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_derivation(d);
}

}  // namespace gla
