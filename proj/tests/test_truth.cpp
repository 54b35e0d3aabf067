#include "corpus.hpp"
#include "doctest.h"
#include "satwork/parser.hpp"
#include "satwork/truth.hpp"

using namespace satwork;

namespace {

std::vector<Formula> closed_universe(const Backend& b) {
  std::vector<Formula> seeds;
  for (const char* s : {"E v v=S0", "A v (v=0 \\/ ~v=0)", "(v=(v+v) /\\ ~0=S0)", "E v E w (v+w)=S0", "A v E w w=Sv",
                        "~E v (v*v)=SS0"}) {
    seeds.push_back(parse_formula(s));
  }
  return oracle::substitution_closure(seeds, b);
}

}  // namespace

TEST_CASE("check_ct examples") {
  Backend z2 = Backend::cyclic(2);
  Formula t0 = parse_formula("0=0");
  TruthClass t(z2, {t0, Formula::neg(t0)});
  t.add(Formula::neg(t0));
  auto r = check_ct(t);
  CHECK_FALSE(r.ok());
  CHECK((r.axioms[1].status == "fail" || r.axioms[2].status == "fail"));
  TruthClass e(z2, {t0});
  auto r2 = check_ct(e);
  CHECK(r2.axioms[1].status == "fail");
}

TEST_CASE("round trips on substitution-closed universes") {
  for (Value m = 1; m <= 5; ++m) {
    Backend b = Backend::cyclic(m);
    auto universe = closed_universe(b);
    SatClass s = tarski_satclass(universe, b);
    REQUIRE(verify_satclass(s, VerifyMode::Strict).ok());
    REQUIRE(check_regular(s).ok());
    auto conv = s_to_t(s);
    CHECK(conv.certified);
    auto rep = check_ct(conv.truth);
    CHECK(rep.ok());
    CHECK(check_qc_axioms(conv.truth).ok());
    SatClass back = t_to_s(conv.truth, universe);
    CHECK(back.same_members(s));
    SatClass from_t = t_to_s(conv.truth);
    CHECK(s_to_t(from_t).truth.same_members(conv.truth));
  }
}

TEST_CASE("check_ct tracks regularity and verification under mutation") {
  Backend b = Backend::cyclic(3);
  auto universe = closed_universe(b);
  SatClass s = tarski_satclass(universe, b);
  std::vector<Formula> sentences;
  for (const auto& f : universe) {
    if (f.is_sentence()) sentences.push_back(f);
  }
  for (const auto& f : sentences) {
    SatClass m = s;
    m.toggle(f, {});
    bool sat_ok = verify_satclass(m, VerifyMode::Strict).ok() && check_regular(m).ok();
    bool comp_ok = true;
    for (const auto& g : universe) comp_ok = comp_ok && check_comp(m, g).ok;
    CHECK_FALSE(check_ct(s_to_t(m).truth).ok());
    CHECK_FALSE((sat_ok && comp_ok));
  }
}

TEST_CASE("t_to_s reports missing instances") {
  Backend b = Backend::cyclic(2);
  Formula f = parse_formula("v=0");
  TruthClass t(b, {parse_formula("0=0")});
  try {
    t_to_s(t, std::vector<Formula>{f});
    FAIL("expected a closure error");
  } catch (const ClosureError& e) {
    REQUIRE(e.missing().size() == 1);
    CHECK(print(e.missing()[0]) == "S0=0");
  }
  TruthClass empty(b, {});
  CHECK(t_to_s(empty).size() == 0);
}

TEST_CASE("non-coherent backends are rejected for the quantifier axioms") {
  Tabular tab;
  tab.carrier = {0, 1};
  tab.zero = 1;
  tab.succ = {1, 0};
  tab.plus = {{0, 1}, {1, 0}};
  tab.times = {{0, 0}, {0, 1}};
  Backend b = Backend::tabular(tab);
  CHECK_FALSE(b.numeral_coherent());
  TruthClass t(b, {parse_formula("E v v=v"), parse_formula("0=0"), parse_formula("S0=S0")});
  auto r = check_ct(t);
  CHECK(r.axioms[5].status == "rejected");
  CHECK(r.axioms[7].status == "rejected");
}
