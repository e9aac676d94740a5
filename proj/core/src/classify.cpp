#include "gla/classify.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gla/derive.hpp"

namespace gla {

namespace fs = std::filesystem;

std::string CanonicalClass::str() const {
  return kind == Kind::BoxReflection ? "BoxReflection" : "ExplicitK " + std::to_string(k);
}

std::string to_string(OrderResult r) {
  switch (r) {
    case OrderResult::Equal: return "=";
    case OrderResult::StrictlyLess: return "<";
    case OrderResult::StrictlyGreater: return ">";
  }
  return "?";
}

CanonicalClass canonicalize(const Generator& g) {
  auto first_var = std::find_if(g.prefix.begin(), g.prefix.end(), [](const PrefixOp& op) { return !op.is_box(); });
  if (first_var == g.prefix.end()) return CanonicalClass::box_reflection();
  return CanonicalClass::explicit_k(static_cast<std::size_t>(first_var - g.prefix.begin()));
}

OrderResult compare(const CanonicalClass& a, const CanonicalClass& b) {
  using K = CanonicalClass::Kind;
  if (a.kind == K::BoxReflection && b.kind == K::BoxReflection) return OrderResult::Equal;
  if (a.kind == K::BoxReflection) return OrderResult::StrictlyGreater;
  if (b.kind == K::BoxReflection) return OrderResult::StrictlyLess;
  if (a.k == b.k) return OrderResult::Equal;
  return a.k < b.k ? OrderResult::StrictlyLess : OrderResult::StrictlyGreater;
}

OrderResult compare(const Generator& g1, const Generator& g2) { return compare(canonicalize(g1), canonicalize(g2)); }

std::optional<Formula> consistency_equivalent(const CanonicalClass& c) {
  if (c.kind == CanonicalClass::Kind::BoxReflection) return std::nullopt;
  return Formula::neg(Formula::boxes(c.k, Formula::falsum()));
}

// ---------------------------------------------------------------------------

namespace {

struct Expected {
  std::vector<Formula> hypotheses;
  Formula conclusion;
};

const Formula& atom_p() {
  static const Formula p = Formula::atom("P");
  return p;
}

Formula bot_chain(std::size_t k) {
  return Formula::impl(Formula::boxes(k, Formula::falsum()), Formula::boxes(k - 1, Formula::falsum()));
}

constexpr std::size_t kLemma2bSamples = 4;

// Explicit part of the prefix: the first variable and everything after it.
Prefix explicit_tail(const Generator& g, std::size_t k) { return Prefix(g.prefix.begin() + k + 1, g.prefix.end()); }

std::map<std::string, Expected> expected_derivations(const Generator& g, const CanonicalClass& c) {
  std::map<std::string, Expected> out;
  if (c.kind == CanonicalClass::Kind::BoxReflection) {
    const std::size_t n = g.prefix.size();
    std::vector<Formula> chain;
    for (std::size_t i = n; i >= 1; --i)
      chain.push_back(Formula::impl(Formula::boxes(i, atom_p()), Formula::boxes(i - 1, atom_p())));
    out.emplace("theorem1_forward", Expected{{}, theorem1_forward_claim(n)});
    out.emplace("theorem1_backward", Expected{chain, theorem1_backward_claim(n)});
    for (std::size_t k = 0; k < kLemma2bSamples; ++k) {
      std::vector<Formula> hyps;
      for (std::size_t i = k; i >= 1; --i) hyps.push_back(bot_chain(i));
      out.emplace("lemma2b_" + std::to_string(k), Expected{hyps, lemma2b_claim(k)});
    }
    return out;
  }
  const std::string& u = g.prefix[c.k].var;
  out.emplace("theorem2", Expected{{}, theorem2_claim(explicit_tail(g, c.k), u)});
  if (c.k >= 1) {
    out.emplace("theorem6", Expected{{}, theorem6_claim(c.k)});
    out.emplace("lemma2a", Expected{{}, lemma2a_claim(c.k)});
  }
  return out;
}

std::map<std::string, Formula> expected_refutations(const CanonicalClass& c) {
  std::map<std::string, Formula> out;
  if (c.kind == CanonicalClass::Kind::ExplicitK && c.k >= 1) out.emplace("strictness", bot_chain(c.k));
  return out;
}

std::vector<std::string> notes_for(const CanonicalClass& c) {
  std::vector<std::string> notes{
      "Reducing a mixed prefix to its leading boxes followed by a single proof variable is an argument about "
      "arithmetical interpretations carried out in PA, in both directions; it has no GLA derivation here.",
      "That []^k u : P -> P implies ~[]^k false is likewise a PA-level argument and is not certified. The converse "
      "direction is certified by a theorem6 derivation where the bundle contains one.",
      "That []P -> P does not follow from ~[]^k false for any k is a PA-level fact and is not certified.",
  };
  if (c.kind == CanonicalClass::Kind::ExplicitK && c.k >= 1)
    notes.push_back("The strictness model refutes []^" + std::to_string(c.k) + " false -> []^" +
                    std::to_string(c.k - 1) +
                    " false in GL; unprovability in PA follows from arithmetical completeness of GL, which is "
                    "not certified.");
  if (c.kind == CanonicalClass::Kind::ExplicitK && c.k == 0)
    notes.push_back("The generator is provable outright; the theorem2 derivation proves it.");
  if (c.kind == CanonicalClass::Kind::BoxReflection)
    notes.push_back("The lemma2b derivations obtain ~[]^k false from instances of []P -> P, placing this class "
                    "above every ExplicitK class.");
  return notes;
}

}  // namespace

CertificateBundle certificate(const Generator& g) {
  CertificateBundle b;
  b.generator = g;
  b.cls = canonicalize(g);
  auto put = [&](const std::string& name, Derivation d) {
    d.name = name;
    b.derivations.emplace(name, std::move(d));
  };
  if (b.cls.kind == CanonicalClass::Kind::BoxReflection) {
    CertificatePair pair = build_theorem1(g.prefix.size());
    put("theorem1_forward", std::move(pair.forward));
    put("theorem1_backward", std::move(pair.backward));
    for (std::size_t k = 0; k < kLemma2bSamples; ++k) put("lemma2b_" + std::to_string(k), build_lemma2b(k));
  } else {
    const std::size_t k = b.cls.k;
    put("theorem2", build_theorem2(explicit_tail(g, k), g.prefix[k].var));
    if (k >= 1) {
      put("theorem6", build_theorem6(k));
      put("lemma2a", build_lemma2a(k));
      b.countermodels.emplace("strictness", RefutationRecord{linear_model(k), 0, bot_chain(k)});
    }
  }
  b.notes = notes_for(b.cls);
  return b;
}

CheckReport verify_certificate(const CertificateBundle& b) {
  CheckReport report;
  auto fail = [&](std::size_t step, std::string reason) {
    report.ok = false;
    report.error = CheckError{step, std::move(reason)};
    return report;
  };

  const CanonicalClass cls = canonicalize(b.generator);
  if (!(cls == b.cls)) return fail(0, "class mismatch: bundle declares " + b.cls.str() + ", generator is " + cls.str());

  const auto expected = expected_derivations(b.generator, cls);
  for (const auto& [name, d] : b.derivations)
    if (!expected.contains(name)) return fail(0, "derivation " + name + ": not expected for class " + cls.str());
  for (const auto& [name, want] : expected) {
    auto it = b.derivations.find(name);
    if (it == b.derivations.end()) return fail(0, "derivation " + name + ": missing");
    const Derivation& d = it->second;
    CheckReport r = check(d, CheckMode::Strict);
    report.step_count += r.step_count;
    report.axiom_count += r.axiom_count;
    if (!r.ok) return fail(r.error->step, "derivation " + name + ": " + r.error->reason);
    if (d.hypotheses != want.hypotheses) return fail(0, "derivation " + name + ": unexpected hypotheses");
    if (!(d.conclusion() == want.conclusion))
      return fail(d.steps.size(), "derivation " + name + ": concludes " + print_formula(d.conclusion()) +
                                      ", expected " + print_formula(want.conclusion));
  }

  const auto refutations = expected_refutations(cls);
  for (const auto& [name, rec] : b.countermodels)
    if (!refutations.contains(name)) return fail(0, "countermodel " + name + ": not expected for class " + cls.str());
  for (const auto& [name, formula] : refutations) {
    auto it = b.countermodels.find(name);
    if (it == b.countermodels.end()) return fail(0, "countermodel " + name + ": missing");
    const RefutationRecord& rec = it->second;
    if (!(rec.refutes == formula))
      return fail(0, "countermodel " + name + ": refutes " + print_formula(rec.refutes) + ", expected " +
                         print_formula(formula));
    if (auto v = validate_frame(rec.model); !v.empty()) return fail(0, "countermodel " + name + ": " + v.front().str());
    if (rec.world >= rec.model.worlds)
      return fail(0, "countermodel " + name + ": undeclared world " + std::to_string(rec.world));
    if (forces(rec.model, rec.world, rec.refutes))
      return fail(0, "countermodel " + name + ": world " + std::to_string(rec.world) + " forces the formula");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Bundle directories

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw BundleFormatError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw BundleFormatError("cannot write " + p.string());
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

CanonicalClass parse_class(const std::string& text) {
  std::istringstream in(text);
  std::string kind, flag;
  in >> kind;
  CanonicalClass c;
  if (kind == "BoxReflection") {
    c = CanonicalClass::box_reflection();
  } else if (kind == "ExplicitK") {
    std::string num;
    in >> num;
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec != std::errc() || p != num.data() + num.size()) throw BundleFormatError("class.txt: bad k '" + num + "'");
    c = CanonicalClass::explicit_k(k);
  } else {
    throw BundleFormatError("class.txt: unknown class '" + kind + "'");
  }
  in >> flag;
  if (flag == "provable=true") c.provable_outright = true;
  else if (flag == "provable=false") c.provable_outright = false;
  else throw BundleFormatError("class.txt: expected provable=true|false");
  return c;
}

}  // namespace

void write_bundle(const CertificateBundle& b, const std::string& dir) {
  const fs::path root(dir);
  fs::create_directories(root);
  spit(root / "generator.txt", b.generator.str() + "\n");
  spit(root / "class.txt",
       b.cls.str() + " provable=" + (b.cls.provable_outright ? "true" : "false") + "\n");
  for (const auto& [name, d] : b.derivations) spit(root / (name + ".der"), write_derivation(d));
  for (const auto& [name, rec] : b.countermodels) {
    spit(root / (name + ".model"), write_model(rec.model));
    spit(root / (name + ".refutes"), print_formula(rec.refutes) + "\n" + std::to_string(rec.world) + "\n");
  }
  std::string notes;
  for (const auto& n : b.notes) notes += n + "\n";
  spit(root / "notes.txt", notes);
}

CertificateBundle read_bundle(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw BundleFormatError("not a directory: " + dir);
  CertificateBundle b;
  auto gen_lines = lines_of(slurp(root / "generator.txt"));
  if (gen_lines.size() != 1) throw BundleFormatError("generator.txt: expected one formula line");
  b.generator = parse_generator(gen_lines.front());
  b.cls = parse_class(slurp(root / "class.txt"));
  if (fs::exists(root / "notes.txt")) b.notes = lines_of(slurp(root / "notes.txt"));

  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(root)) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  for (const auto& p : entries) {
    const std::string stem = p.stem().string();
    if (p.extension() == ".der") {
      try {
        b.derivations.emplace(stem, read_derivation(slurp(p)));
      } catch (const std::exception& e) {
        throw BundleFormatError(p.filename().string() + ": " + e.what());
      }
    } else if (p.extension() == ".model") {
      RefutationRecord rec{read_model(slurp(p)), 0, Formula::falsum()};
      const fs::path ref = root / (stem + ".refutes");
      auto lines = lines_of(slurp(ref));
      if (lines.size() != 2) throw BundleFormatError(ref.filename().string() + ": expected formula and world lines");
      rec.refutes = parse_formula(lines[0]);
      auto [q, ec] = std::from_chars(lines[1].data(), lines[1].data() + lines[1].size(), rec.world);
      if (ec != std::errc() || q != lines[1].data() + lines[1].size())
        throw BundleFormatError(ref.filename().string() + ": bad world index");
      b.countermodels.emplace(stem, std::move(rec));
    }
  }
  return b;
}

}  // namespace gla
