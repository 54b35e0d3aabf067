#include "doctest.h"
#include "plain_oracle.hpp"
#include "satwork/equivalence.hpp"
#include "satwork/families.hpp"
#include "satwork/parser.hpp"

using namespace satwork;

TEST_CASE("eta expansions") {
  CHECK(print(eta(2)) == "A x (x=x /\\ x=x)");
  CHECK(print(eta(1)) == "A x x=x");
  CHECK(print(expand(eta(3), 100)) == "A x ((x=x /\\ x=x) /\\ x=x)");
  CHECK_THROWS_AS(eta(0), Error);
  CHECK(eta(4, VarSeq{}) == eta(4));
  CHECK(print(eta(2, VarSeq{Variable(1), Variable(2)})) == "E v1 E v2 A x (x=x /\\ x=x)");
}

TEST_CASE("eta metrics match the expansion for small parameters") {
  for (int a = 1; a <= 12; ++a) {
    Formula f = eta(a);
    auto p = oracle::unroll(f);
    CHECK(f.depth() == oracle::depth(p));
    CHECK(f.depth() == a);
    CHECK(f.node_count() == oracle::nodes(p));
    CHECK(f.node_count() == 2 * a);
    CHECK(parse_formula(print_compact(f)) == f);
    CHECK(parse_formula(print(f)) == f);
    auto m = match_eta(f);
    REQUIRE(m);
    CHECK(m->a == a);
  }
}

TEST_CASE("huge eta stays compressed") {
  BigNat a("1000000000000000000");
  Formula f = eta(a);
  CHECK(f.depth() == a);
  try {
    expand(f, 1000000);
    FAIL("expected a budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == 2 * a);
  }
  CHECK(print_compact(f) == "eta(1000000000000000000)");
  CHECK(parse_formula("eta(1000000000000000000)") == f);
  auto subs = f.quantified_body().direct_subformulas();
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].rep_count() == a - 1);
  CHECK(template_of(f).skeleton == f);
}

TEST_CASE("anchor") {
  Formula f = phi_anchor(2, parse_formula("0=0"));
  CHECK(print(f) == "(SS0=SS0 /\\ 0=0)");
  Formula g = parse_formula("x=y");
  CHECK(phi_anchor(BigNat("123456789012345678901234567890"), g).free_vars() == g.free_vars());
  CHECK(parse_formula("anchor(2; 0=0)") == f);
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      CHECK(similar(phi_anchor(a, g), phi_anchor(b, g)));
      CHECK_FALSE(similar(phi_anchor(a, g), phi_anchor(b, parse_formula("E x x=y"))));
    }
  }
}

TEST_CASE("xi") {
  CHECK(print(xi(1, 0)) == "(v=v /\\ A x x=x)");
  for (int a = 1; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      Formula f = xi(a, b);
      auto p = oracle::unroll(f);
      auto fv = oracle::free_vars(p);
      CHECK(fv == std::set<Variable>{xi_free_variable()});
      CHECK(f.depth() == oracle::depth(p));
      if (b > 0) CHECK(f.depth() == xi(a, b - 1).depth() + 4);
      CHECK(parse_formula("xi(" + std::to_string(a) + "," + std::to_string(b) + ")") == f);
    }
  }
}
