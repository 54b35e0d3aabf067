#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "plain_oracle.hpp"
#include "satwork/parser.hpp"
#include "satwork/relational.hpp"
#include "satwork/tarski.hpp"

using namespace satwork;

namespace {

bool same_truth(const Formula& f, const Backend& b) {
  RelFormula r = relational_translate(f);
  for (const Assignment& a : all_assignments(f.free_vars(), b)) {
    Verdict v = tarski_sat(f, a, b);
    if ((v == Verdict::True) != rel_sat(r, a, b)) return false;
  }
  return true;
}

// Carrier permutations preserving zero and all three tables.
std::vector<std::vector<std::size_t>> automorphisms(const Backend& b) {
  const auto& c = b.carrier();
  std::vector<std::size_t> pi(c.size());
  std::iota(pi.begin(), pi.end(), 0);
  auto pos = [&](Value x) { return std::find(c.begin(), c.end(), x) - c.begin(); };
  std::vector<std::vector<std::size_t>> out;
  do {
    auto img = [&](Value x) { return c[pi[pos(x)]]; };
    bool ok = img(b.zero()) == b.zero();
    for (Value x : c) {
      ok = ok && img(b.succ(x)) == b.succ(img(x));
      for (Value y : c) {
        ok = ok && img(b.plus(x, y)) == b.plus(img(x), img(y));
        ok = ok && img(b.times(x, y)) == b.times(img(x), img(y));
      }
    }
    if (ok) out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

Backend star() {
  Tabular t;
  t.carrier = {0, 1, 2, 3};
  t.zero = 0;
  t.succ = {0, 1, 2, 3};
  t.plus.assign(4, std::vector<Value>(4));
  t.times.assign(4, std::vector<Value>(4, 0));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) t.plus[x][y] = x;
  return Backend::tabular(t);
}

}  // namespace

TEST_CASE("relational translation of atoms") {
  Formula f = parse_formula("S0=v");
  CHECK(print(relational_translate(f)) == "E v17592186044416 E v17592186044417 ((Z(v17592186044416) /\\ "
                                          "Succ(v17592186044416,v17592186044417)) /\\ v17592186044417=v)");
  CHECK(print(relational_translate(parse_formula("v=w"))) == "v=w");
  for (Value m = 1; m <= 5; ++m) {
    CHECK(same_truth(f, Backend::cyclic(m)));
    CHECK(same_truth(parse_formula("E x ((x+x)=(S0*v))"), Backend::cyclic(m)));
  }
}

TEST_CASE("relational translation preserves truth on random formulas") {
  std::mt19937_64 rng(7);
  std::vector<Variable> vars{Variable(0), Variable(1)};
  Backend z3 = Backend::cyclic(3);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 4), vars);
    REQUIRE(same_truth(f, z3));
    ++checked;
  }
  CHECK(checked == 500);
  CHECK(same_truth(parse_formula("A x E y ((x*y)=S0 \\/ x=0)"), star()));
}

TEST_CASE("back-and-forth equivalence") {
  Backend z4 = Backend::cyclic(4);
  for (Value a = 0; a < 4; ++a)
    for (int n = 0; n <= 4; ++n) CHECK(ef_equiv(a, a, n, z4));
  for (const Backend& b : {z4, Backend::cyclic(3), star()}) {
    const auto& c = b.carrier();
    for (int n = 0; n <= 3; ++n) {
      for (Value x : c)
        for (Value y : c) {
          bool xy = ef_equiv(x, y, n, b);
          CHECK(xy == ef_equiv(y, x, n, b));
          if (ef_equiv(x, y, n + 1, b)) CHECK(xy);
          for (Value z : c)
            if (xy && ef_equiv(y, z, n, b)) CHECK(ef_equiv(x, z, n, b));
        }
    }
  }
}

TEST_CASE("back-and-forth classes against automorphism orbits") {
  for (const Backend& b : {Backend::cyclic(4), star()}) {
    const auto& c = b.carrier();
    auto autos = automorphisms(b);
    auto same_orbit = [&](std::size_t i, std::size_t j) {
      return std::any_of(autos.begin(), autos.end(), [&](const auto& pi) { return pi[i] == j; });
    };
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(ef_equiv(c[i], c[j], 4, b) == same_orbit(i, j));
  }
  CHECK(automorphisms(star()).size() == 6);
}

TEST_CASE("enumerated types agree for equivalent elements") {
  Backend z4 = Backend::cyclic(4);
  for (int n = 0; n <= 2; ++n) {
    std::vector<std::vector<TypeFormula>> tps;
    for (Value a = 0; a < 4; ++a) tps.push_back(tp_exhaustive(a, n, z4));
    for (Value a = 0; a < 4; ++a) {
      for (const TypeFormula& t : tps[a]) CHECK(t.holds == rel_sat(t.formula, {{Variable(0), a}}, z4));
      for (Value b = 0; b < 4; ++b) {
        if (!ef_equiv(a, b, n, z4)) continue;
        for (const TypeFormula& t : tps[a])
          CHECK(rel_sat(t.formula, {{Variable(0), a}}, z4) == rel_sat(t.formula, {{Variable(0), b}}, z4));
      }
    }
  }
  CHECK_THROWS_AS(tp_exhaustive(0, 3, z4), Error);
  CHECK_THROWS_AS(tp_exhaustive(0, 1, Backend::cyclic(5)), Error);
}
