#include "doctest.h"
#include "equiv_oracle.hpp"
#include "plain_oracle.hpp"
#include "satwork/equivalence.hpp"
#include "satwork/families.hpp"
#include "satwork/parser.hpp"

using namespace satwork;

namespace {

const char* kExample = "E x A y (x+(x*0))=((y*v)+(v*(w+0)))";

}  // namespace

TEST_CASE("template of the worked example") {
  Template t = template_of(parse_formula(kExample));
  CHECK(print(t.skeleton) == "E x A y (x+(x*v0))=((y*v1)+v2)");
  REQUIRE(t.holes.size() == 3);
  CHECK(print(t.holes[0]) == "0");
  CHECK(print(t.holes[1]) == "v");
  CHECK(print(t.holes[2]) == "(v*(w+0))");
  CHECK(template_of(t.skeleton).skeleton == t.skeleton);
}

TEST_CASE("similarity") {
  CHECK(similar(parse_formula("v=0"), parse_formula("w=S0")));
  CHECK(print(template_of(parse_formula("v=0")).skeleton) == "v0=v1");
  CHECK_FALSE(similar(eta(3), eta(4)));
  CHECK(similar(eta(3), eta(3)));
}

TEST_CASE("value normal form and the worked example pair") {
  Backend nat = Backend::bounded_nat(100);
  Formula f = parse_formula(kExample);
  Assignment a{{Variable::named("v"), 17}, {Variable::named("w"), 2}};
  Formula vnf = value_normal_form(f, a, nat);
  Formula expected = parse_formula("E x A y (x+(x*0))=((y*num(17))+num(34))");
  CHECK(vnf == expected);
  CHECK(value_normal_form(vnf, {}, nat) == vnf);
  Formula hat = template_of(f).skeleton;
  Assignment b{{Variable(0), 0}, {Variable(1), 17}, {Variable(2), 34}};
  CHECK(ext_equiv(f, a, hat, b, nat));
  CHECK(ext_equiv(f, a, f, a, nat));
}

TEST_CASE("brute-force equivalence examples") {
  Backend nat = Backend::bounded_nat(10);
  Variable v = Variable::named("v"), w = Variable::named("w");
  CHECK_FALSE(oracle::ext_equiv_bruteforce(parse_formula("v=0"), {{v, 1}}, parse_formula("w=S0"), {{w, 1}}, nat));
  CHECK(oracle::ext_equiv_bruteforce(parse_formula("v=S0"), {{v, 1}}, parse_formula("v=(0+S0)"), {{v, 1}}, nat));
  CHECK(ext_equiv(parse_formula("v=S0"), {{v, 1}}, parse_formula("v=(0+S0)"), {{v, 1}}, nat));
  Formula s = parse_formula("(0+0)=S0");
  CHECK(oracle::ext_equiv_bruteforce(s, {}, s, {}, nat));
}

TEST_CASE("template is token-minimal among valid abstractions") {
  std::vector<std::string> corpus = {
      "v=0",         "0=v",           "(v+w)=0",     "E x x=v",      "E x (x+v)=0",   "A x Sx=v",
      "E x x=S0",    "A x (x*0)=x",   "E x x=(x+v)", "(x=0 /\\ y=x)", "~S0=v",         "A x E y (x+y)=0",
      "E x (v=x \\/ x=x)", "(E x x=v /\\ E x x=w)", "A x (v+x)=v"};
  for (const auto& s : corpus) {
    Formula f = parse_formula(s);
    auto brute = oracle::template_bruteforce(f, 3);
    REQUIRE(brute);
    CHECK_MESSAGE(template_of(f).skeleton == *brute, s);
  }
}

TEST_CASE("normal form is idempotent and implies similarity") {
  std::mt19937_64 rng(21);
  Backend z3 = Backend::cyclic(3);
  std::vector<Variable> vars = {Variable(0), Variable(1), Variable::named("x")};
  for (int i = 0; i < 1000; ++i) {
    Formula f = oracle::random_formula(rng, i % 4, vars);
    Assignment a;
    for (Variable v : f.free_vars()) a.set(v, rng() % 3);
    Formula n = value_normal_form(f, a, z3);
    CHECK(value_normal_form(n, {}, z3) == n);
    CHECK(ext_equiv(f, a, substitute(f, a), {}, z3));
    CHECK(similar(substitute(f, a), n));
  }
}
