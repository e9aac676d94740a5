#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gla/kernel.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = gla::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "gla_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string file(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("classify, compare and countermodel examples") {
  auto c = run({"classify", "[] [] u : P -> P"});
  CHECK(c.status == 0);
  CHECK(c.out == "ExplicitK 2\n");

  auto b = run({"classify", "[]^4 P -> P"});
  CHECK(b.out == "BoxReflection\n");

  auto cmp = run({"compare", "u : P -> P", "[] P -> P"});
  CHECK(cmp.status == 0);
  CHECK(cmp.out == "<\n");
  CHECK(run({"compare", "[]^2 P -> P", "[] P -> P"}).out == "=\n");
  CHECK(run({"compare", "[] u : P -> P", "u : P -> P"}).out == ">\n");

  auto cm = run({"countermodel", "[]^2 false -> []false"});
  CHECK(cm.status == 1);
  CHECK(cm.out.starts_with("MODEL countermodel\nWORLDS 2\nREL 0 1\n"));

  auto none = run({"countermodel", "[](P -> P)"});
  CHECK(none.status == 0);
  CHECK(none.out == "NONE (bound 4)\n");
  CHECK(run({"countermodel", "[]P -> P", "--max-worlds", "1"}).status == 1);
}

TEST_CASE("usage errors exit with status 2") {
  auto unknown = run({"frobnicate"});
  CHECK(unknown.status == 2);
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({}).status == 2);
  CHECK(run({"check"}).status == 2);
  CHECK(run({"check", "x.der", "--mode", "loose"}).status == 2);
  CHECK(run({"classify", "P -> Q"}).status == 2);
  CHECK(run({"classify", "[] ->"}).status == 2);
  CHECK(run({"derive", "theorem9", "1"}).status == 2);
  CHECK(run({"derive", "theorem1", "zero"}).status == 2);
  CHECK(run({"derive", "theorem1", "0"}).status == 2);
  CHECK(run({"countermodel", "u : P -> P"}).status == 2);
  CHECK(run({"check", file("missing.der")}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("derive then check, for every builder") {
  const std::vector<std::vector<std::string>> cases = {
      {"theorem1", "3"},  {"theorem2", "[] v: [] []^2"}, {"theorem2", ""}, {"theorem6", "2"},
      {"lemma2a", "2"},   {"lemma2b", "3"},              {"boxmono", "[]Q", "3"}};
  int i = 0;
  for (const auto& c : cases) {
    const std::string out = file("d" + std::to_string(i++) + ".der");
    std::vector<std::string> args = {"derive"};
    args.insert(args.end(), c.begin(), c.end());
    args.insert(args.end(), {"-o", out});
    CAPTURE(c[0]);
    auto r = run(args);
    REQUIRE(r.status == 0);
    auto chk = run({"check", out, "--mode", "strict"});
    CHECK(chk.status == 0);
    CHECK(chk.out.find("OK (strict") != std::string::npos);
  }
  CHECK(run({"check", file("d0_backward.der")}).status == 0);
  CHECK(run({"derive", "theorem2", "v w:", "--var", "x", "-o", file("x.der")}).out ==
        "theorem2: x : v : w : P -> P\n");
}

TEST_CASE("lift then check") {
  const std::string in = file("lift_in.der"), out = file("lift_out.der");
  REQUIRE(run({"derive", "lemma2a", "3", "-o", in}).status == 0);
  auto l = run({"lift", in, "-o", out});
  CHECK(l.status == 0);
  CHECK(l.out == "c1000\n");
  CHECK(run({"check", out}).status == 0);

  REQUIRE(run({"derive", "lemma2b", "1", "-o", in}).status == 0);
  CHECK(run({"lift", in, "-o", out}).status == 2);
}

TEST_CASE("check reports failures with status 1") {
  const std::string path = file("bad.der");
  std::ofstream(path) << "DERIVATION bad\nHYP P\nSTEP 1 P BY HYP 1\nSTEP 2 []P BY NEC 1\n";
  auto r = run({"check", path});
  CHECK(r.status == 1);
  CHECK(r.out.find("step 2: necessitation over hypothesis-tainted step") != std::string::npos);

  const std::string taut = file("taut.der");
  std::ofstream(taut) << "DERIVATION t\nSTEP 1 P | ~P BY TAUT\n";
  CHECK(run({"check", taut}).status == 1);
  CHECK(run({"check", taut, "--mode", "extended"}).status == 0);

  const std::string garbled = file("garbled.der");
  std::ofstream(garbled) << "DERIVATION g\nSTEP 1 P BY\n";
  CHECK(run({"check", garbled}).status == 2);
}

TEST_CASE("taut-compile") {
  const std::string out = file("taut_out.der");
  CHECK(run({"taut-compile", "P -> P", "-o", out}).status == 0);
  CHECK(gla::check(gla::load_derivation(out)).ok);
  auto bad = run({"taut-compile", "P -> Q"});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("not a tautology") != std::string::npos);
}

TEST_CASE("classify bundle then verify-bundle") {
  for (const char* g : {"u:P->P", "[]^2 u:P->P", "[]^3 P->P"}) {
    CAPTURE(g);
    const std::string dir = file(std::string("bundle_") + std::to_string(std::hash<std::string>{}(g)));
    REQUIRE(run({"classify", g, "-o", dir}).status == 0);
    auto v = run({"verify-bundle", dir});
    CHECK(v.status == 0);
    CHECK(v.out.find("OK (strict") != std::string::npos);
  }
  // Tampering with a derivation file.
  const std::string dir = file("bundle_tamper");
  REQUIRE(run({"classify", "[] u : P -> P", "-o", dir}).status == 0);
  std::ofstream(dir + "/lemma2a.der") << "DERIVATION lemma2a\nSTEP 1 []false -> false BY AXIOM KF\n";
  auto v = run({"verify-bundle", dir});
  CHECK(v.status == 1);
  CHECK(v.out.find("derivation lemma2a") != std::string::npos);
  CHECK(run({"verify-bundle", file("no_such_bundle")}).status == 2);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"derive", "theorem6", "2"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> cm = {"countermodel", "[](P | Q) -> []P | []Q"};
  CHECK(run(cm).out == run(cm).out);
}
