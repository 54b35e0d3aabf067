#include "satwork/parser.hpp"

#include <cctype>
#include <map>

#include "satwork/families.hpp"

namespace satwork {

namespace {

struct Fail {};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  template <class T>
  T whole(std::pair<T, std::size_t> (Parser::*rule)(std::size_t)) {
    try {
      auto [value, end] = (this->*rule)(0);
      end = skip(end);
      if (end != s_.size()) fail(end, "unexpected trailing input");
      return value;
    } catch (const Fail&) {
      throw SyntaxError(msg_, furthest_ + 1);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.what(), furthest_ + 1);
    }
  }

  std::pair<Variable, std::size_t> variable(std::size_t p) {
    p = skip(p);
    if (p < s_.size() && s_[p] == 'v' && p + 1 < s_.size() && std::isdigit(uc(p + 1))) {
      std::size_t q = p + 1;
      while (q < s_.size() && std::isdigit(uc(q))) ++q;
      BigNat idx = parse_bignat(s_.substr(p + 1, q - p - 1));
      if (idx >= Variable::kNamedBase) fail(p, "variable index too large");
      return {Variable(static_cast<std::uint64_t>(idx)), q};
    }
    std::size_t q = p;
    while (q < s_.size() && std::islower(uc(q))) ++q;
    if (q == p) fail(p, "expected a variable");
    if (q - p > 10) fail(p, "variable identifier too long");
    return {Variable::named(s_.substr(p, q - p)), q};
  }

  std::pair<Term, std::size_t> term(std::size_t p) {
    p = skip(p);
    if (p >= s_.size()) fail(p, "expected a term");
    char c = s_[p];
    if (c == '0') return {Term::zero(), p + 1};
    if (c == 'S') {
      // Iterative for long numerals.
      std::size_t q = p;
      BigNat n = 0;
      while (true) {
        q = skip(q);
        if (q < s_.size() && s_[q] == 'S') {
          ++n;
          ++q;
        } else {
          break;
        }
      }
      auto [t, end] = term(q);
      if (t.kind() == TermKind::Numeral) return {Term::numeral(t.count() + n), end};
      for (BigNat i = 0; i < n; ++i) t = Term::succ(t);
      return {t, end};
    }
    if (c == '(') {
      auto [l, q] = term(p + 1);
      q = skip(q);
      if (q >= s_.size() || (s_[q] != '+' && s_[q] != '*')) fail(q, "expected '+' or '*'");
      char op = s_[q];
      auto [r, q2] = term(q + 1);
      q2 = expect(q2, ')');
      return {op == '+' ? Term::add(l, r) : Term::mul(l, r), q2};
    }
    if (std::islower(uc(p))) {
      auto [name, q] = identifier(p);
      if (name == "num" && peek(q, '(')) {
        auto [n, q2] = number(skip(q) + 1);
        return {Term::numeral(n), expect(q2, ')')};
      }
      auto [v, q3] = variable(p);
      return {Term::var(v), q3};
    }
    fail(p, "expected a term");
  }

  std::pair<Formula, std::size_t> formula(std::size_t p) {
    p = skip(p);
    auto it = memo_.find(p);
    if (it != memo_.end()) {
      if (!it->second) throw Fail{};
      return *it->second;
    }
    try {
      auto r = formula_uncached(p);
      memo_.emplace(p, r);
      return r;
    } catch (const Fail&) {
      memo_.emplace(p, std::nullopt);
      throw;
    }
  }

 private:
  unsigned char uc(std::size_t p) const { return static_cast<unsigned char>(s_[p]); }

  [[noreturn]] void fail(std::size_t pos, const std::string& msg) {
    if (pos >= furthest_ || msg_.empty()) {
      furthest_ = pos;
      msg_ = msg;
    }
    throw Fail{};
  }

  std::size_t skip(std::size_t p) const {
    while (p < s_.size() && std::isspace(uc(p))) ++p;
    return p;
  }

  bool peek(std::size_t p, char c) const {
    p = skip(p);
    return p < s_.size() && s_[p] == c;
  }

  bool peek(std::size_t p, std::string_view tok) const {
    p = skip(p);
    return s_.substr(p, tok.size()) == tok;
  }

  std::size_t expect(std::size_t p, char c) {
    p = skip(p);
    if (p >= s_.size() || s_[p] != c) fail(p, std::string("expected '") + c + "'");
    return p + 1;
  }

  std::pair<std::string_view, std::size_t> identifier(std::size_t p) {
    p = skip(p);
    std::size_t q = p;
    while (q < s_.size() && std::islower(uc(q))) ++q;
    return {s_.substr(p, q - p), q};
  }

  std::pair<BigNat, std::size_t> number(std::size_t p) {
    p = skip(p);
    std::size_t q = p;
    while (q < s_.size() && std::isdigit(uc(q))) ++q;
    if (q == p) fail(p, "expected a decimal number");
    return {parse_bignat(s_.substr(p, q - p)), q};
  }

  // Comma separated variables, each optionally followed by "^count".
  std::pair<VarSeq, std::size_t> var_list(std::size_t p) {
    VarSeq vs;
    while (true) {
      auto [v, q] = variable(p);
      std::uint64_t count = 1;
      if (peek(q, '^')) {
        auto [n, q2] = number(skip(q) + 1);
        if (n < 1 || n > BigNat(std::numeric_limits<std::uint64_t>::max())) fail(q, "invalid run length");
        count = static_cast<std::uint64_t>(n);
        q = q2;
      }
      vs.push_back(v, count);
      if (!peek(q, ',')) return {vs, q};
      p = skip(q) + 1;
    }
  }

  std::pair<Formula, std::size_t> literal(std::string_view name, std::size_t p) {
    // p is just after '('
    if (name == "eta") {
      auto [a, q] = number(p);
      if (a < 1) fail(p, "eta requires a >= 1");
      if (peek(q, ';')) {
        auto [vs, q2] = var_list(skip(q) + 1);
        return {eta(a, vs), expect(q2, ')')};
      }
      return {eta(a), expect(q, ')')};
    }
    if (name == "xi") {
      auto [a, q] = number(p);
      if (a < 1) fail(p, "xi requires a >= 1");
      q = expect(q, ',');
      auto [b, q2] = number(q);
      return {xi(a, b), expect(q2, ')')};
    }
    if (name == "anchor" || name == "conj") {
      auto [a, q] = number(p);
      q = expect(q, ';');
      auto [f, q2] = formula(q);
      q2 = expect(q2, ')');
      if (name == "anchor") return {phi_anchor(a, f), q2};
      if (a < 1) fail(p, "conj requires a count >= 1");
      return {Formula::rep_conj(f, a), q2};
    }
    // block
    std::size_t q = skip(p);
    if (q >= s_.size() || (s_[q] != 'E' && s_[q] != 'A')) fail(q, "expected 'E' or 'A'");
    Quantifier quant = s_[q] == 'E' ? Quantifier::Exists : Quantifier::Forall;
    q = expect(q + 1, ';');
    auto [vs, q2] = var_list(q);
    q2 = expect(q2, ';');
    auto [f, q3] = formula(q2);
    return {Formula::quant(quant, vs, f), expect(q3, ')')};
  }

  std::pair<Formula, std::size_t> formula_uncached(std::size_t p) {
    if (p >= s_.size()) fail(p, "expected a formula");
    char c = s_[p];
    if (c == '~') {
      auto [f, q] = formula(p + 1);
      return {Formula::neg(f), q};
    }
    if (c == 'E' || c == 'A') {
      auto [v, q] = variable(p + 1);
      auto [f, q2] = formula(q);
      return {c == 'E' ? Formula::exists(v, f) : Formula::forall(v, f), q2};
    }
    if (std::islower(uc(p))) {
      auto [name, q] = identifier(p);
      if ((name == "eta" || name == "xi" || name == "anchor" || name == "conj" || name == "block") && peek(q, '(')) {
        return literal(name, skip(q) + 1);
      }
    }
    if (c == '(') {
      try {
        auto [l, q] = formula(p + 1);
        if (peek(q, "\\/") || peek(q, "/\\")) {
          bool is_or = peek(q, "\\/");
          auto [r, q2] = formula(skip(q) + 2);
          q2 = expect(q2, ')');
          return {is_or ? Formula::disj(l, r) : Formula::conj(l, r), q2};
        }
        if (peek(q, ')')) return {l, skip(q) + 1};
        fail(skip(q), "expected '\\/', '/\\' or ')'");
      } catch (const Fail&) {
        // Fall back to an atom whose left term is parenthesized.
      }
    }
    auto [l, q] = term(p);
    q = expect(q, '=');
    auto [r, q2] = term(q);
    return {Formula::eq(l, r), q2};
  }

  std::string_view s_;
  std::size_t furthest_ = 0;
  std::string msg_;
  std::map<std::size_t, std::optional<std::pair<Formula, std::size_t>>> memo_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  return p.whole<Formula>(&Parser::formula);
}

Term parse_term(std::string_view text) {
  Parser p(text);
  return p.whole<Term>(&Parser::term);
}

Variable parse_variable(std::string_view text) {
  Parser p(text);
  return p.whole<Variable>(&Parser::variable);
}

}  // namespace satwork
