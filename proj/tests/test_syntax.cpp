#include "doctest.h"
#include "plain_oracle.hpp"
#include "satwork/families.hpp"
#include "satwork/hfcode.hpp"
#include "satwork/parser.hpp"

#include <unordered_set>

using namespace satwork;

TEST_CASE("parse redundant parentheses") {
  Formula f = parse_formula("A x ((x=x /\\ x=x))");
  Term x = Term::var(Variable::named("x"));
  Formula e = Formula::eq(x, x);
  CHECK(f == Formula::forall(Variable::named("x"), Formula::conj(e, e)));
  CHECK(f.depth() == 2);
  CHECK(f.is_sentence());
  CHECK(print(f) == "A x (x=x /\\ x=x)");
}

TEST_CASE("syntax error columns") {
  try {
    parse_formula("(0=");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(parse_formula("0=0 junk"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("E 0 0=0"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(0=0 \\/ 0=0"), SyntaxError);
}

TEST_CASE("terms and variables") {
  CHECK(parse_term("SSS0") == Term::numeral(Value{3}));
  CHECK(parse_term("num(1000000000000000000000)").count() == BigNat("1000000000000000000000"));
  CHECK(parse_variable("v12").index() == 12);
  CHECK(parse_variable("abc") == Variable::named("abc"));
  CHECK(Variable::named("zz").name() == "zz");
  CHECK(print(parse_term("(S(x+0)*v3)")) == "(S(x+0)*v3)");
  Formula f = parse_formula("E x ~x=S0");
  CHECK(f.free_vars().empty());
  CHECK(parse_formula("x=y").free_vars().size() == 2);
}

TEST_CASE("round trip on random formulas") {
  std::mt19937_64 rng(7);
  std::vector<Variable> vars = {Variable(0), Variable(1), Variable::named("x"), Variable::named("y")};
  for (int i = 0; i < 1000; ++i) {
    Formula f = oracle::random_formula(rng, 1 + i % 7, vars);
    std::string s = print(f);
    Formula g = parse_formula(s);
    REQUIRE(g == f);
    CHECK(print(g) == s);
    CHECK(oracle::print(oracle::unroll(f)) == s);
    CHECK(parse_formula(print_compact(f)) == f);
  }
}

TEST_CASE("compressed nodes agree with their expansion") {
  std::mt19937_64 rng(11);
  std::vector<Variable> vars = {Variable(0), Variable(1), Variable::named("x")};
  for (int i = 0; i < 300; ++i) {
    Formula f = oracle::random_formula(rng, 1 + i % 6, vars);
    if (i % 3 == 0) f = Formula::rep_conj(f, 2 + i % 4);
    if (i % 5 == 0) f = Formula::quant(Quantifier::Exists, VarSeq{Variable(0), Variable(0), Variable(1)}, f);
    auto p = oracle::unroll(f);
    CHECK(f.depth() == oracle::depth(p));
    CHECK(f.node_count() == oracle::nodes(p));
    auto fv = oracle::free_vars(p);
    CHECK(VariableSet(fv.begin(), fv.end()) == f.free_vars());
    CHECK(oracle::rebuild(p) == f);
    auto subs = f.direct_subformulas();
    auto psubs = oracle::direct_subs(p);
    REQUIRE(subs.size() == psubs.size());
    for (std::size_t k = 0; k < subs.size(); ++k) CHECK(oracle::rebuild(psubs[k]) == subs[k]);
  }
}

TEST_CASE("substitution keeps depth and respects binding") {
  Formula f = parse_formula("(E v0 v0=v1 /\\ v0=S0)");
  Formula g = substitute(f, Assignment{{Variable(0), 2}, {Variable(1), 3}});
  CHECK(print(g) == "(E v0 v0=SSS0 /\\ SS0=S0)");
  CHECK(g.depth() == f.depth());
  CHECK_THROWS_AS(substitute(f, Assignment{{Variable(0), 2}}), EvalError);
}

TEST_CASE("block strips") {
  Formula f = parse_formula("E x E y A z x=y");
  auto strips = block_strips(f);
  REQUIRE(strips.size() == 2);
  CHECK(print(strips[0].remainder) == "E y A z x=y");
  CHECK(print(strips[1].remainder) == "A z x=y");
}

TEST_CASE("structural order is a strict total order on distinct formulas") {
  std::mt19937_64 rng(3);
  std::vector<Variable> vars = {Variable(0), Variable(1)};
  std::vector<Formula> fs;
  for (int i = 0; i < 60; ++i) fs.push_back(oracle::random_formula(rng, i % 4, vars));
  for (const auto& a : fs) {
    for (const auto& b : fs) {
      CHECK((a == b) == (!(a < b) && !(b < a)));
      if (a < b) CHECK_FALSE(b < a);
    }
  }
}

TEST_CASE("Ackermann membership") {
  auto n = [](int x) { return HFCode::number(x); };
  CHECK(ack_member(n(0), n(1)));
  CHECK_FALSE(ack_member(n(1), n(5)));
  CHECK(ack_member(n(2), n(5)));
  HFCode s = HFCode::set({n(0), n(2)});
  CHECK(s.value() == BigNat(5));
  CHECK(ack_member(n(2), s));
  CHECK_FALSE(ack_member(n(1), s));
}

TEST_CASE("modular membership on huge codes agrees with exact bits") {
  // A pair tower whose value exceeds a small budget but stays exact at a large one.
  HFCode c = HFCode::number(3);
  for (int i = 0; i < 9; ++i) c = HFCode::pair(c, HFCode::number(i));
  auto exact = c.value(1 << 16);
  REQUIRE(exact.has_value());
  std::uint64_t small = 64;
  REQUIRE_FALSE(c.value(small).has_value());
  for (int bit = 0; bit < 40; ++bit) {
    CHECK(ack_member(HFCode::number(bit), c, small + 32) == bit_test(*exact, bit));
  }
}

TEST_CASE("codes are injective on small formulas and monotone in variable index") {
  std::mt19937_64 rng(5);
  std::vector<Variable> vars = {Variable(0), Variable(1)};
  std::unordered_map<std::string, std::string> seen;
  for (int i = 0; i < 2000; ++i) {
    Formula f = oracle::random_formula(rng, i % 3, vars);
    auto code = godel_code(f).value();
    REQUIRE(code.has_value());
    auto [it, fresh] = seen.emplace(code->str(), print(f));
    if (!fresh) CHECK(it->second == print(f));
  }
  for (std::uint64_t i = 0; i < 50; ++i) {
    CHECK(*godel_code(Variable(i)).value() < *godel_code(Variable(i + 1)).value());
  }
  CHECK_THROWS_AS(godel_code(eta(BigNat("1000000000000000000"))), BudgetExceeded);
}
