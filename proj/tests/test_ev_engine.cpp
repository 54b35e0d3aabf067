#include <doctest.h>

#include "corpus.hpp"
#include "satwork/ev_engine.hpp"
#include "satwork/families.hpp"
#include "satwork/parser.hpp"
#include "satwork/tarski.hpp"

using namespace satwork;

namespace {

Formula P(const char* s) { return parse_formula(s); }

SatClass empty_class(const Backend& b) { return SatClass(b, {}, true); }

bool matches_tarski(const SatClass& s, const std::vector<Formula>& u) {
  for (const auto& f : u)
    for (const auto& a : canonical_assignments(f, s.backend()))
      if (s.contains(f, a) != (tarski_sat(f, a, s.backend()) == Verdict::True)) return false;
  return true;
}

StepConfig seeded(const Backend& b, BigNat a, std::uint64_t bound) {
  StepConfig cfg{empty_class(b), bound, a, {}, {}, true, 1, 1};
  cfg.w.push_back(Variable(100), bound + 1);
  cfg.w_prime = cfg.w;
  cfg.w_prime.push_back(Variable(101), 1);
  return cfg;
}

}  // namespace

TEST_CASE("roots") {
  CHECK(root(P("E v1 E v2 (0=0)"), 0) == P("0=0"));
  CHECK(root(P("A x (x=x)"), 5) == P("x=x"));
  CHECK(root(P("E v1 E v2 (0=0)"), 1) == P("E v2 (0=0)"));
  CHECK(root(P("E v1 A v2 (0=0)"), 0) == P("A v2 (0=0)"));
  CHECK_THROWS_AS(root(P("0=0"), 0), Error);
}

TEST_CASE("classification") {
  CHECK(classify(eta(4), 1, BigNat(4)) == Classification::Problematic);
  CHECK(classify(eta(4, VarSeq{Variable(1), Variable(2)}), 1, BigNat(4)) == Classification::Problematic);
  CHECK(classify(eta(4), 1, BigNat(5)) == Classification::Unproblematic);
  CHECK(classify(P("~~~(0=0)"), 3, BigNat(1)) == Classification::Problematic);
  CHECK(classify(P("0=0"), 0, std::nullopt) == Classification::Problematic);
  CHECK(classify(P("~~~(0=0)"), 2, std::nullopt) == Classification::Unproblematic);
}

TEST_CASE("order on small fragments") {
  Backend z2 = Backend::cyclic(2);
  StepConfig cfg{empty_class(z2), 0, std::nullopt, {}, {}, false, 1, 1};
  FragmentUniverse u = build_universe({P("0=0"), P("E v1 E v2 (0=0)")}, cfg);
  CHECK(u.formulas.size() == 2);
  Order o = build_order(u, 0, std::nullopt);
  CHECK(o.rank[u.class_of.at(P("0=0"))] == 0);
  CHECK(o.rank[u.class_of.at(P("E v1 E v2 (0=0)"))] == 1);
  CHECK(o.jump.at(P("E v1 E v2 (0=0)")) == 2);

  FragmentUniverse n = build_universe({P("0=0"), P("~(0=0)")}, cfg);
  Order on = build_order(n, 0, std::nullopt);
  CHECK(on.preds[n.class_of.at(P("~(0=0)"))].count(n.class_of.at(P("0=0"))) == 1);

  // Similar formulas share a class, and the closure pulls in the matching
  // subformula of the second member.
  FragmentUniverse s = build_universe({P("~(0=0)"), P("~(S0=0)"), P("S0=0")}, cfg);
  CHECK(s.class_of.at(P("~(0=0)")) == s.class_of.at(P("~(S0=0)")));
  CHECK(s.class_of.count(P("0=0")) == 1);
}

TEST_CASE("no-pathology steps reproduce Tarskian truth") {
  for (Value m : {2, 3}) {
    Backend b = Backend::cyclic(m);
    auto u = oracle::formulas_up_to(4, {Variable(0), Variable(1)});
    u.push_back(P("A x E y ((x+y)=0 /\\ ~(y=x))"));
    u.push_back(eta(3, VarSeq{Variable(0), Variable(1)}));
    u = subformula_closure(u);
    StepConfig cfg{empty_class(b), 0, std::nullopt, {}, {}, false, 1, 1};
    StepResult r = ev_step(cfg, u);
    CHECK(matches_tarski(r.s, u));
    CHECK(verify_theta(r, cfg).ok());
    CHECK(r.chain.stages.size() <= r.universe.classes.size() + 1);
    for (std::size_t j = 1; j < r.chain.stages.size(); ++j)
      CHECK(r.chain.stages[j].size() >= r.chain.stages[j - 1].size());
  }
}

TEST_CASE("seeded step plants a failure") {
  Backend z3 = Backend::cyclic(3);
  for (BigNat a : {BigNat(1), BigNat(2), BigNat(6)}) {
    StepConfig cfg = seeded(z3, a, 2);
    std::vector<Formula> gamma{P("0=0"), P("E v1 (v1=0)"), eta(2, VarSeq{Variable(7)})};
    StepResult r = ev_step(cfg, gamma);
    CHECK(r.s.contains(eta(a, cfg.w), {}));
    CHECK_FALSE(r.s.contains(eta(a, cfg.w_prime), {}));
    Report rep = verify_theta(r, cfg);
    CHECK(rep.ok());
    for (const auto& v : rep.violations) MESSAGE(v.clause << " " << print_compact(v.formula) << " " << v.detail);

    SatClass flipped = r.s;
    flipped.toggle(eta(a, cfg.w), {});
    StepResult rf = r;
    rf.s = flipped;
    Report bad = verify_theta(rf, cfg);
    CHECK(std::any_of(bad.violations.begin(), bad.violations.end(), [](const Violation& v) { return v.clause == "seed"; }));
  }
}

TEST_CASE("step configuration checks") {
  Backend z3 = Backend::cyclic(3);
  StepConfig cfg = seeded(z3, 2, 2);
  cfg.w = VarSeq{Variable(100)};
  CHECK_THROWS_AS(ev_step(cfg, {}), ConstructionError);

  StepConfig same = seeded(z3, 2, 2);
  same.w_prime = VarSeq();
  same.w_prime.push_back(Variable(100), 5);  // w is a suffix of w'
  CHECK_THROWS_AS(ev_step(same, {}), ConstructionError);

  StepConfig nogap = seeded(z3, 2, 2);
  std::vector<Formula> gamma{eta(2, nogap.w_prime.drop_front(1))};
  // The chain below eta(a; w') reaches a formula decided by the base.
  gamma.push_back(eta(2, nogap.w_prime.drop_front(BigNat(4))));
  CHECK_NOTHROW(ev_step(nogap, gamma));
  gamma.push_back(eta(2, nogap.w_prime.drop_front(BigNat(2))));
  gamma.push_back(eta(2, nogap.w_prime.drop_front(BigNat(3))));
  CHECK_THROWS_AS(ev_step(nogap, gamma), ConstructionError);

  StepConfig deep{SatClass(z3, {P("~(0=0)")}, true), 0, std::nullopt, {}, {}, false, 1, 1};
  CHECK_THROWS_AS(ev_step(deep, {}), ConstructionError);
}

TEST_CASE("chains over a depth filtration") {
  Backend z2 = Backend::cyclic(2);
  auto u = subformula_closure(oracle::formulas_up_to(4, {Variable(0)}));
  SatClass c = ev_chain(no_pathology_step(), empty_class(z2), u);
  CHECK(matches_tarski(c, u));

  std::vector<Formula> one{P("0=0")};
  SatClass single = ev_chain(no_pathology_step(), empty_class(z2), one);
  CHECK(single.same_members(no_pathology_step()(empty_class(z2), one)));

  StepFn dropping = [](const SatClass& prev, const std::vector<Formula>& slice) {
    SatClass next = no_pathology_step()(prev, slice);
    if (prev.size() > 0) next.remove(prev.sorted_members().front().formula, prev.sorted_members().front().asn);
    return next;
  };
  CHECK_THROWS_AS(ev_chain(dropping, empty_class(z2), u), ChainError);
}

TEST_CASE("definability runs") {
  DefinabilityParams params;
  params.scan_max = 8;
  auto r = definability_run({2, 5}, params);
  CHECK(r.recovered == std::set<BigNat>{2, 5});
  for (const auto& rep : r.step_reports) {
    CHECK(rep.ok());
    for (const auto& v : rep.violations) MESSAGE(v.clause << " " << print_compact(v.formula) << " " << v.detail);
  }

  auto none = definability_run({}, params);
  CHECK(none.recovered.empty());

  DefinabilityParams tight = params;
  tight.schedule = {BigNat(3)};
  CHECK_THROWS_AS(definability_run({2}, tight), SchedulingError);

  BigNat huge = BigNat(1000000000000ull);
  auto h = definability_run({3, huge}, params);
  CHECK(h.recovered == std::set<BigNat>{3, huge});
}
