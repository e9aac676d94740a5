#include "gla/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <utility>

namespace gla {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> kids;
  std::size_t hash;
};

namespace {

std::size_t term_hash(Term::Kind kind, const std::string& name, const std::vector<Term>& kids) {
  std::size_t h = mix(0x51ed270b27f6a7c3ULL, static_cast<std::size_t>(kind));
  h = mix(h, std::hash<std::string>{}(name));
  for (const auto& k : kids) h = mix(h, k.hash());
  return h;
}

}  // namespace

Term Term::var(std::string name) {
  auto h = term_hash(Kind::Var, name, {});
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, h}));
}

Term Term::constant(std::string name) {
  auto h = term_hash(Kind::Const, name, {});
  return Term(std::make_shared<const Node>(Node{Kind::Const, std::move(name), {}, h}));
}

Term Term::app(Term fn, Term arg) {
  std::vector<Term> kids{std::move(fn), std::move(arg)};
  auto h = term_hash(Kind::App, {}, kids);
  return Term(std::make_shared<const Node>(Node{Kind::App, {}, std::move(kids), h}));
}

Term Term::sum(Term lhs, Term rhs) {
  std::vector<Term> kids{std::move(lhs), std::move(rhs)};
  auto h = term_hash(Kind::Sum, {}, kids);
  return Term(std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(kids), h}));
}

Term Term::check(Term inner) {
  std::vector<Term> kids{std::move(inner)};
  auto h = term_hash(Kind::Check, {}, kids);
  return Term(std::make_shared<const Node>(Node{Kind::Check, {}, std::move(kids), h}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const {
  if (kind() != Kind::Var && kind() != Kind::Const) throw std::logic_error("Term::name on compound term");
  return node_->name;
}

const Term& Term::left() const {
  if (node_->kids.size() != 2) throw std::logic_error("Term::left on non-binary term");
  return node_->kids[0];
}

const Term& Term::right() const {
  if (node_->kids.size() != 2) throw std::logic_error("Term::right on non-binary term");
  return node_->kids[1];
}

const Term& Term::inner() const {
  if (kind() != Kind::Check) throw std::logic_error("Term::inner on non-check term");
  return node_->kids[0];
}

std::size_t Term::hash() const noexcept { return node_->hash; }

std::string Term::str() const { return print_term(*this); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  if (a.node_->name != b.node_->name) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!(ka[i] == kb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
  std::optional<Term> term;
  std::size_t hash;
};

namespace {

std::size_t formula_hash(Formula::Kind kind, const std::string& name,
                         const std::vector<Formula>& kids, const std::optional<Term>& term) {
  std::size_t h = mix(0x2545f4914f6cdd1dULL, static_cast<std::size_t>(kind));
  if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
  if (term) h = mix(h, term->hash());
  for (const auto& k : kids) h = mix(h, k.hash());
  return h;
}

}  // namespace

Formula Formula::atom(std::string name) {
  auto h = formula_hash(Kind::Atom, name, {}, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, std::nullopt, h}));
}

Formula Formula::falsum() {
  static const Formula f = [] {
    auto h = formula_hash(Kind::Falsum, {}, {}, std::nullopt);
    return Formula(std::make_shared<const Node>(Node{Kind::Falsum, {}, {}, std::nullopt, h}));
  }();
  return f;
}

Formula Formula::neg(Formula f) {
  std::vector<Formula> kids{std::move(f)};
  auto h = formula_hash(Kind::Neg, {}, kids, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::Neg, {}, std::move(kids), std::nullopt, h}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  std::vector<Formula> kids{std::move(lhs), std::move(rhs)};
  auto h = formula_hash(Kind::And, {}, kids, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(kids), std::nullopt, h}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  std::vector<Formula> kids{std::move(lhs), std::move(rhs)};
  auto h = formula_hash(Kind::Or, {}, kids, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(kids), std::nullopt, h}));
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  std::vector<Formula> kids{std::move(lhs), std::move(rhs)};
  auto h = formula_hash(Kind::Impl, {}, kids, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::Impl, {}, std::move(kids), std::nullopt, h}));
}

Formula Formula::box(Formula f) {
  std::vector<Formula> kids{std::move(f)};
  auto h = formula_hash(Kind::Box, {}, kids, std::nullopt);
  return Formula(std::make_shared<const Node>(Node{Kind::Box, {}, std::move(kids), std::nullopt, h}));
}

Formula Formula::proves(Term t, Formula body) {
  std::vector<Formula> kids{std::move(body)};
  std::optional<Term> term{std::move(t)};
  auto h = formula_hash(Kind::Proves, {}, kids, term);
  return Formula(std::make_shared<const Node>(Node{Kind::Proves, {}, std::move(kids), std::move(term), h}));
}

Formula Formula::boxes(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = box(std::move(f));
  return f;
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::name() const {
  if (kind() != Kind::Atom) throw std::logic_error("Formula::name on non-atom");
  return node_->name;
}

const Formula& Formula::lhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("Formula::lhs on non-binary formula");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("Formula::rhs on non-binary formula");
  return node_->kids[1];
}

const Formula& Formula::body() const {
  if (node_->kids.size() != 1) throw std::logic_error("Formula::body on non-unary formula");
  return node_->kids[0];
}

const Term& Formula::term() const {
  if (!node_->term) throw std::logic_error("Formula::term on non-proves formula");
  return *node_->term;
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

std::string Formula::str() const { return print_formula(*this); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  if (a.node_->name != b.node_->name) return false;
  if (a.node_->term && !(*a.node_->term == *b.node_->term)) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!(ka[i] == kb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Traversals

std::size_t box_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Falsum:
      return 0;
    case Formula::Kind::Neg:
    case Formula::Kind::Proves:
      return box_depth(f.body());
    case Formula::Kind::Box:
      return 1 + box_depth(f.body());
    default:
      return std::max(box_depth(f.lhs()), box_depth(f.rhs()));
  }
}

bool is_box_only(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Falsum:
      return true;
    case Formula::Kind::Proves:
      return false;
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
      return is_box_only(f.body());
    default:
      return is_box_only(f.lhs()) && is_box_only(f.rhs());
  }
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.name());
      return;
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
    case Formula::Kind::Proves:
      collect_atoms(f.body(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

template <Term::Kind Leaf>
void collect_leaves(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      if (t.kind() == Leaf) out.insert(t.name());
      return;
    case Term::Kind::Check:
      collect_leaves<Leaf>(t.inner(), out);
      return;
    default:
      collect_leaves<Leaf>(t.left(), out);
      collect_leaves<Leaf>(t.right(), out);
  }
}

}  // namespace

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  collect_leaves<Term::Kind::Const>(t, out);
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  collect_leaves<Term::Kind::Var>(t, out);
}

void collect_constants(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Proves:
      collect_constants(f.term(), out);
      collect_constants(f.body(), out);
      return;
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
      collect_constants(f.body(), out);
      return;
    default:
      collect_constants(f.lhs(), out);
      collect_constants(f.rhs(), out);
  }
}

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

bool is_var_name(std::string_view s) {
  return !s.empty() && s[0] >= 'u' && s[0] <= 'z' && all_digits(s.substr(1));
}

bool is_const_name(std::string_view s) {
  return !s.empty() && s[0] >= 'a' && s[0] <= 'e' && all_digits(s.substr(1));
}

bool is_atom_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexer and parser

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

namespace {

enum class Tok {
  End, Arrow, Bar, Amp, Tilde, Box, Caret, Nat, Colon, LParen, RParen,
  Bang, Star, Plus, Atom, Var, Const, False
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Arrow: return "'->'";
    case Tok::Bar: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Tilde: return "'~'";
    case Tok::Box: return "'[]'";
    case Tok::Caret: return "'^'";
    case Tok::Nat: return "number";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bang: return "'!'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Atom: return "atom";
    case Tok::Var: return "proof variable";
    case Tok::Const: return "proof constant";
    case Tok::False: return "'false'";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok k) {
      out.push_back({k, s.substr(start, 1), start});
      ++i;
    };
    switch (c) {
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, s.substr(start, 2), start});
          i += 2;
          continue;
        }
        throw SyntaxError(start, "expected '->'");
      case '[':
        if (i + 1 < s.size() && s[i + 1] == ']') {
          out.push_back({Tok::Box, s.substr(start, 2), start});
          i += 2;
          continue;
        }
        throw SyntaxError(start, "expected '[]'");
      case '|': single(Tok::Bar); continue;
      case '&': single(Tok::Amp); continue;
      case '~': single(Tok::Tilde); continue;
      case '^': single(Tok::Caret); continue;
      case ':': single(Tok::Colon); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '!': single(Tok::Bang); continue;
      case '*': single(Tok::Star); continue;
      case '+': single(Tok::Plus); continue;
      default:
        break;
    }
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Nat, s.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(c)) {
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      auto word = s.substr(start, i - start);
      if (word == "false") out.push_back({Tok::False, word, start});
      else if (is_atom_name(word)) out.push_back({Tok::Atom, word, start});
      else if (is_var_name(word)) out.push_back({Tok::Var, word, start});
      else if (is_const_name(word)) out.push_back({Tok::Const, word, start});
      else throw SyntaxError(start, "invalid identifier '" + std::string(word) + "'");
      continue;
    }
    throw SyntaxError(start, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }
  out.push_back({Tok::End, {}, s.size()});
  return out;
}

constexpr std::size_t kMaxBoxPower = 100000;

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula formula_eof() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

  Term term_eof() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().offset, "expected " + expected + ", found " + describe(peek().kind));
  }

  const Token& expect(Tok k) {
    if (!at(k)) fail(describe(k));
    return next();
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (at(Tok::Arrow)) {
      next();
      return Formula::impl(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Bar)) {
      next();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::Amp)) {
      next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        next();
        return Formula::neg(unary());
      case Tok::Box: {
        next();
        if (!at(Tok::Caret)) return Formula::box(unary());
        next();
        const Token& n = expect(Tok::Nat);
        std::size_t power = 0;
        auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), power);
        if (ec != std::errc() || power > kMaxBoxPower)
          throw SyntaxError(n.offset, "box exponent out of range");
        return Formula::boxes(power, unary());
      }
      case Tok::Var:
      case Tok::Const:
      case Tok::Bang: {
        Term t = term();
        expect(Tok::Colon);
        return Formula::proves(std::move(t), unary());
      }
      case Tok::LParen: {
        // Either '(' term ')' ... ':' or a parenthesized formula.
        const std::size_t saved = pos_;
        std::optional<Term> t;
        try {
          t = term();
        } catch (const SyntaxError&) {
          t.reset();
        }
        if (t && at(Tok::Colon)) {
          next();
          return Formula::proves(std::move(*t), unary());
        }
        pos_ = saved;
        return primary();
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::Atom:
        return Formula::atom(std::string(next().text));
      case Tok::False:
        next();
        return Formula::falsum();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      default:
        fail("formula");
    }
  }

  Term term() {
    Term t = term_app();
    while (at(Tok::Plus)) {
      next();
      t = Term::sum(std::move(t), term_app());
    }
    return t;
  }

  Term term_app() {
    Term t = term_unary();
    while (at(Tok::Star)) {
      next();
      t = Term::app(std::move(t), term_unary());
    }
    return t;
  }

  Term term_unary() {
    switch (peek().kind) {
      case Tok::Bang:
        next();
        return Term::check(term_unary());
      case Tok::Var:
        return Term::var(std::string(next().text));
      case Tok::Const:
        return Term::constant(std::string(next().text));
      case Tok::LParen: {
        next();
        Term t = term();
        expect(Tok::RParen);
        return t;
      }
      default:
        fail("proof term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Printing. Formula levels: 1 implication, 2 disjunction, 3 conjunction,
// 4 prefix operators and primaries. Term levels: 1 sum, 2 application, 3 unary.

void print_term_at(const Term& t, int level, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += t.name();
      return;
    case Term::Kind::Check:
      out += '!';
      print_term_at(t.inner(), 3, out);
      return;
    case Term::Kind::App:
    case Term::Kind::Sum: {
      const bool is_sum = t.kind() == Term::Kind::Sum;
      const int own = is_sum ? 1 : 2;
      if (level > own) out += '(';
      print_term_at(t.left(), own, out);
      out += is_sum ? " + " : " * ";
      print_term_at(t.right(), own + 1, out);
      if (level > own) out += ')';
      return;
    }
  }
}

void print_at(const Formula& f, int level, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Falsum:
      out += "false";
      return;
    case Formula::Kind::Neg:
      out += '~';
      print_at(f.body(), 4, out);
      return;
    case Formula::Kind::Box:
      out += "[]";
      print_at(f.body(), 4, out);
      return;
    case Formula::Kind::Proves:
      print_term_at(f.term(), 1, out);
      out += " : ";
      print_at(f.body(), 4, out);
      return;
    case Formula::Kind::Impl:
      if (level > 1) out += '(';
      print_at(f.lhs(), 2, out);
      out += " -> ";
      print_at(f.rhs(), 1, out);
      if (level > 1) out += ')';
      return;
    case Formula::Kind::Or:
    case Formula::Kind::And: {
      const bool is_or = f.kind() == Formula::Kind::Or;
      const int own = is_or ? 2 : 3;
      if (level > own) out += '(';
      print_at(f.lhs(), own, out);
      out += is_or ? " | " : " & ";
      print_at(f.rhs(), own + 1, out);
      if (level > own) out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_eof(); }

Term parse_term(std::string_view text) { return Parser(text).term_eof(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_at(f, 1, out);
  return out;
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_at(t, 1, out);
  return out;
}

// ---------------------------------------------------------------------------
// Generators

Formula fold_prefix(std::span<const PrefixOp> prefix, Formula body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    if (it->is_box()) body = Formula::box(std::move(body));
    else body = Formula::proves(Term::var(it->var), std::move(body));
  }
  return body;
}

Formula Generator::antecedent() const { return fold_prefix(prefix, Formula::atom(target)); }

Formula Generator::formula() const { return Formula::impl(antecedent(), Formula::atom(target)); }

Generator as_generator(const Formula& f) {
  using K = Formula::Kind;
  if (!f.is(K::Impl)) throw GeneratorError(GeneratorError::Reason::Shape, "not a generator: expected an implication");
  if (!f.rhs().is(K::Atom))
    throw GeneratorError(GeneratorError::Reason::Shape, "not a generator: conclusion must be an atom");
  Generator g;
  g.target = f.rhs().name();
  std::set<std::string> seen;
  const Formula* cur = &f.lhs();
  while (true) {
    const std::size_t position = g.prefix.size() + 1;
    if (cur->is(K::Box)) {
      g.prefix.push_back(PrefixOp::box());
    } else if (cur->is(K::Proves)) {
      if (!cur->term().is(Term::Kind::Var))
        throw GeneratorError(GeneratorError::Reason::Shape,
                             "not a generator: prefix position " + std::to_string(position) +
                                 " uses proof term '" + print_term(cur->term()) + "', expected a variable");
      const auto& v = cur->term().name();
      if (!seen.insert(v).second)
        throw GeneratorError(GeneratorError::Reason::DuplicateVariable,
                             "duplicate variable '" + v + "' at prefix position " + std::to_string(position));
      g.prefix.push_back(PrefixOp::variable(v));
    } else if (cur->is(K::Atom) && cur->name() == g.target) {
      break;
    } else {
      throw GeneratorError(GeneratorError::Reason::Shape,
                           "not a generator: prefix position " + std::to_string(position) + " is '" +
                               print_formula(*cur) + "', expected [], a variable prefix, or " + g.target);
    }
    cur = &cur->body();
  }
  if (g.prefix.empty())
    throw GeneratorError(GeneratorError::Reason::Shape, "not a generator: empty prefix");
  return g;
}

Generator parse_generator(std::string_view text) { return as_generator(parse_formula(text)); }

}  // namespace gla
