#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gla/classify.hpp"
#include "gla/derive.hpp"
#include "gla/kernel.hpp"
#include "gla/prop.hpp"
#include "gla/semantics.hpp"
#include "gla/syntax.hpp"

namespace gla::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw UsageError(std::string(what) + ": expected a non-negative integer, found '" + s + "'");
  return v;
}

// Prefix tokens: `[]`, `[]^N`, `v`, `v:` or `v :`.
Prefix parse_prefix(const std::string& text) {
  Prefix out;
  std::istringstream in(text);
  for (std::string tok; in >> tok;) {
    if (tok == ":") continue;
    if (tok == "[]") {
      out.push_back(PrefixOp::box());
    } else if (tok.starts_with("[]^")) {
      for (std::size_t n = parse_count(tok.substr(3), "prefix"); n > 0; --n) out.push_back(PrefixOp::box());
    } else {
      if (tok.ends_with(":")) tok.pop_back();
      if (!is_var_name(tok)) throw UsageError("prefix: unexpected token '" + tok + "'");
      out.push_back(PrefixOp::variable(tok));
    }
  }
  return out;
}

void emit(const Derivation& d, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << write_derivation(d);
    return;
  }
  save_derivation(d, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string file, out_path, mode = "strict", formula, builder, var = "u", g1, g2, dir;
  std::optional<std::string> param1, param2;
  std::vector<std::string> params() const {
    std::vector<std::string> v;
    for (const auto* p : {&param1, &param2})
      if (*p) v.push_back(**p);
    return v;
  }
  std::size_t max_worlds = 4;
};

int cmd_check(const Options& o, std::ostream& out) {
  const Derivation d = read_derivation(read_file(o.file));
  const CheckReport r = check(d, o.mode == "extended" ? CheckMode::Extended : CheckMode::Strict);
  out << d.name << ": " << r.str() << '\n';
  if (r.ok) out << "conclusion: " << print_formula(d.conclusion()) << '\n';
  return r.ok ? kOk : kNegative;
}

int cmd_lift(const Options& o, std::ostream& out, std::ostream& err) {
  const Derivation d = read_derivation(read_file(o.file));
  const Lifted l = lift(d);
  if (o.out_path.empty()) {
    err << "proof term: " << print_term(l.proof) << '\n';
    out << write_derivation(l.derivation);
  } else {
    save_derivation(l.derivation, o.out_path);
    out << print_term(l.proof) << '\n';
  }
  return kOk;
}

int cmd_taut(const Options& o, std::ostream& out, std::ostream& err) {
  const Formula f = parse_formula(o.formula);
  try {
    emit(compile_tautology(f), o.out_path, out);
  } catch (const NotTautologyError& e) {
    err << e.what() << '\n';
    return kNegative;
  }
  if (!o.out_path.empty()) out << "wrote " << o.out_path << '\n';
  return kOk;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const std::vector<std::string> params = o.params();
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw UsageError("derive " + o.builder + ": expected " + std::to_string(n) + " parameter(s)");
  };
  std::vector<Derivation> ds;
  if (o.builder == "theorem1") {
    need(1);
    CertificatePair p = build_theorem1(parse_count(params[0], "n"));
    ds = {p.forward, p.backward};
  } else if (o.builder == "theorem2") {
    need(1);
    ds = {build_theorem2(parse_prefix(params[0]), o.var)};
  } else if (o.builder == "theorem6") {
    need(1);
    ds = {build_theorem6(parse_count(params[0], "k"))};
  } else if (o.builder == "lemma2a") {
    need(1);
    ds = {build_lemma2a(parse_count(params[0], "k"))};
  } else if (o.builder == "lemma2b") {
    need(1);
    ds = {build_lemma2b(parse_count(params[0], "k"))};
  } else if (o.builder == "boxmono") {
    need(2);
    ds = {box_mono(parse_formula(params[0]), parse_count(params[1], "n"))};
  } else {
    throw UsageError("derive: unknown builder '" + o.builder + "'");
  }
  if (ds.size() == 1) {
    emit(ds.front(), o.out_path, out);
  } else if (o.out_path.empty()) {
    for (const auto& d : ds) out << write_derivation(d);
  } else {
    // theorem1 yields a pair: <out> holds the forward half, <stem>_backward<ext> the other.
    const auto dot = o.out_path.rfind('.');
    const bool has_ext = dot != std::string::npos && o.out_path.find('/', dot) == std::string::npos;
    const std::string stem = has_ext ? o.out_path.substr(0, dot) : o.out_path;
    const std::string ext = has_ext ? o.out_path.substr(dot) : "";
    save_derivation(ds[0], o.out_path);
    save_derivation(ds[1], stem + "_backward" + ext);
  }
  if (!o.out_path.empty())
    for (const auto& d : ds) out << d.name << ": " << print_formula(d.conclusion()) << '\n';
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Generator g = parse_generator(o.formula);
  out << canonicalize(g).str() << '\n';
  if (!o.dir.empty()) write_bundle(certificate(g), o.dir);
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  out << to_string(compare(parse_generator(o.g1), parse_generator(o.g2))) << '\n';
  return kOk;
}

int cmd_countermodel(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.formula);
  if (o.max_worlds > kMaxSearchWorlds)
    throw UsageError("--max-worlds must be at most " + std::to_string(kMaxSearchWorlds));
  auto cm = find_countermodel(f, o.max_worlds);
  if (!cm) {
    out << "NONE (bound " << o.max_worlds << ")\n";
    return kOk;
  }
  out << write_model(cm->model) << "# refuted at world " << cm->world << '\n';
  return kNegative;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const CertificateBundle b = read_bundle(o.dir);
  const CheckReport r = verify_certificate(b);
  out << b.generator.str() << ": " << b.cls.str() << '\n' << r.str() << '\n';
  return r.ok ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checker, builder and classifier for the joint provability/proof logic GLA", "gla"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;

  auto* check_cmd = app.add_subcommand("check", "Check a derivation file");
  check_cmd->add_option("file", o.file, "Derivation file")->required();
  check_cmd->add_option("--mode", o.mode, "strict or extended")->check(CLI::IsMember({"strict", "extended"}));

  auto* lift_cmd = app.add_subcommand("lift", "Internalize a hypothesis-free derivation");
  lift_cmd->add_option("file", o.file, "Derivation file")->required();
  lift_cmd->add_option("-o,--output", o.out_path, "Output derivation file");

  auto* taut_cmd = app.add_subcommand("taut-compile", "Compile a propositional tautology into a derivation");
  taut_cmd->add_option("formula", o.formula)->required();
  taut_cmd->add_option("-o,--output", o.out_path, "Output derivation file");

  auto* derive_cmd = app.add_subcommand("derive", "Run a derivation builder");
  derive_cmd->add_option("builder", o.builder, "theorem1 | theorem2 | theorem6 | lemma2a | lemma2b | boxmono")
      ->required();
  // Two scalar slots: a vector option would treat "[...]" as container syntax.
  derive_cmd->add_option("param1", o.param1, "First builder parameter");
  derive_cmd->add_option("param2", o.param2, "Second builder parameter");
  derive_cmd->add_option("-o,--output", o.out_path, "Output derivation file");
  derive_cmd->add_option("--var", o.var, "Outer proof variable for theorem2");

  auto* classify_cmd = app.add_subcommand("classify", "Print the canonical class of a generator");
  classify_cmd->add_option("generator", o.formula)->required();
  classify_cmd->add_option("-o,--output", o.dir, "Write a certificate bundle to this directory");

  auto* compare_cmd = app.add_subcommand("compare", "Order two generators");
  compare_cmd->add_option("g1", o.g1)->required();
  compare_cmd->add_option("g2", o.g2)->required();

  auto* cm_cmd = app.add_subcommand("countermodel", "Search for a finite GL countermodel");
  cm_cmd->add_option("formula", o.formula)->required();
  cm_cmd->add_option("--max-worlds", o.max_worlds, "World bound")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify-bundle", "Re-verify a certificate bundle directory");
  verify_cmd->add_option("dir", o.dir)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (lift_cmd->parsed()) return cmd_lift(o, out, err);
    if (taut_cmd->parsed()) return cmd_taut(o, out, err);
    if (derive_cmd->parsed()) return cmd_derive(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (compare_cmd->parsed()) return cmd_compare(o, out);
    if (cm_cmd->parsed()) return cmd_countermodel(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
  } catch (const GeneratorError& e) {
    err << "not a generator: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace gla::cli
