#include "satwork/relational.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

namespace satwork {

RelFormula RelFormula::atom(RelKind kind, std::vector<Variable> args) {
  return RelFormula(std::make_shared<Node>(Node{kind, std::move(args), {}}));
}

RelFormula RelFormula::neg(RelFormula f) {
  return RelFormula(std::make_shared<Node>(Node{RelKind::Not, {}, {std::move(f)}}));
}

RelFormula RelFormula::binary(RelKind kind, RelFormula l, RelFormula r) {
  return RelFormula(std::make_shared<Node>(Node{kind, {}, {std::move(l), std::move(r)}}));
}

RelFormula RelFormula::quant(RelKind kind, Variable v, RelFormula body) {
  return RelFormula(std::make_shared<Node>(Node{kind, {v}, {std::move(body)}}));
}

namespace {

struct Flattener {
  std::uint64_t budget;
  std::uint64_t used = 0;
  std::uint64_t next = 0;
  std::vector<Variable> fresh;
  std::vector<RelFormula> atoms;

  void charge(std::uint64_t k) {
    used += k;
    if (used > budget) throw BudgetExceeded("relational translation exceeds node budget", BigNat(used));
  }

  Variable new_var() {
    Variable v(kRelBase + next++);
    fresh.push_back(v);
    return v;
  }

  Variable term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        return t.variable();
      case TermKind::Numeral: {
        if (t.count() >= BigNat(budget)) throw BudgetExceeded("numeral too large to unfold", t.count());
        auto n = static_cast<std::uint64_t>(t.count());
        charge(n + 1);
        Variable x = new_var();
        atoms.push_back(RelFormula::atom(RelKind::Z, {x}));
        for (std::uint64_t i = 0; i < n; ++i) {
          Variable y = new_var();
          atoms.push_back(RelFormula::atom(RelKind::Succ, {x, y}));
          x = y;
        }
        return x;
      }
      case TermKind::Succ: {
        Variable x = term(t.lhs());
        charge(1);
        Variable y = new_var();
        atoms.push_back(RelFormula::atom(RelKind::Succ, {x, y}));
        return y;
      }
      case TermKind::Add:
      case TermKind::Mul: {
        Variable x = term(t.lhs());
        Variable y = term(t.rhs());
        charge(1);
        Variable z = new_var();
        atoms.push_back(RelFormula::atom(t.kind() == TermKind::Add ? RelKind::Plus : RelKind::Times, {x, y, z}));
        return z;
      }
    }
    throw Error("unknown term kind");
  }
};

struct Translator {
  std::uint64_t budget;
  std::uint64_t used = 0;

  void charge(std::uint64_t k) {
    used += k;
    if (used > budget) throw BudgetExceeded("relational translation exceeds node budget", BigNat(used));
  }

  // Fresh names restart at every atom: they are bound locally.
  RelFormula atom(const Formula& f) {
    Flattener fl{budget - used, 0, 0, {}, {}};
    Variable l = fl.term(f.lhs_term());
    Variable r = fl.term(f.rhs_term());
    charge(fl.used + 1);
    RelFormula body = RelFormula::atom(RelKind::Eq, {l, r});
    if (!fl.atoms.empty()) {
      RelFormula c = fl.atoms.front();
      for (std::size_t i = 1; i < fl.atoms.size(); ++i) c = RelFormula::binary(RelKind::And, c, fl.atoms[i]);
      body = RelFormula::binary(RelKind::And, c, body);
    }
    for (auto it = fl.fresh.rbegin(); it != fl.fresh.rend(); ++it) body = RelFormula::quant(RelKind::Exists, *it, body);
    return body;
  }

  RelFormula run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Eq:
        return atom(f);
      case FormulaKind::Not:
        charge(1);
        return RelFormula::neg(run(f.child()));
      case FormulaKind::Or:
      case FormulaKind::And: {
        charge(1);
        RelFormula l = run(f.child(0));
        RelFormula r = run(f.child(1));
        return RelFormula::binary(f.kind() == FormulaKind::Or ? RelKind::Or : RelKind::And, l, r);
      }
      case FormulaKind::RepConj: {
        if (f.rep_count() > BigNat(budget)) throw BudgetExceeded("relational translation exceeds node budget", f.rep_count());
        auto k = static_cast<std::uint64_t>(f.rep_count());
        RelFormula body = run(f.child());
        charge(k - 1);
        RelFormula c = body;
        for (std::uint64_t i = 1; i < k; ++i) c = RelFormula::binary(RelKind::And, c, body);
        return c;
      }
      case FormulaKind::Block: {
        if (f.block_length() > BigNat(budget)) throw BudgetExceeded("relational translation exceeds node budget", f.block_length());
        std::vector<Variable> vars = f.block_vars().expand(budget);
        charge(vars.size());
        RelFormula body = run(f.child());
        RelKind q = f.quantifier() == Quantifier::Exists ? RelKind::Exists : RelKind::Forall;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = RelFormula::quant(q, *it, body);
        return body;
      }
    }
    throw Error("unknown formula kind");
  }
};

}  // namespace

RelFormula relational_translate(const Formula& f, std::uint64_t node_budget) {
  if (f.node_count() > BigNat(node_budget)) throw BudgetExceeded("relational translation exceeds node budget", f.node_count());
  return Translator{node_budget}.run(f);
}

std::string print(const RelFormula& f) {
  auto args = [&](const char* name) {
    std::string s = name;
    s += "(";
    for (std::size_t i = 0; i < f.args().size(); ++i) {
      if (i) s += ",";
      s += f.args()[i].name();
    }
    return s + ")";
  };
  switch (f.kind()) {
    case RelKind::Eq:
      return f.args()[0].name() + "=" + f.args()[1].name();
    case RelKind::Z:
      return args("Z");
    case RelKind::Succ:
      return args("Succ");
    case RelKind::Plus:
      return args("Plus");
    case RelKind::Times:
      return args("Times");
    case RelKind::Not:
      return "~" + print(f.child());
    case RelKind::Or:
      return "(" + print(f.child(0)) + " \\/ " + print(f.child(1)) + ")";
    case RelKind::And:
      return "(" + print(f.child(0)) + " /\\ " + print(f.child(1)) + ")";
    case RelKind::Exists:
      return "E " + f.args()[0].name() + " " + print(f.child());
    case RelKind::Forall:
      return "A " + f.args()[0].name() + " " + print(f.child());
  }
  return "?";
}

bool rel_sat(const RelFormula& f, const Assignment& a, const Backend& b) {
  auto val = [&](Variable v) {
    auto x = a.get(v);
    if (!x) throw EvalError("unassigned variable " + v.name());
    return *x;
  };
  const auto& as = f.args();
  switch (f.kind()) {
    case RelKind::Eq:
      return val(as[0]) == val(as[1]);
    case RelKind::Z:
      return val(as[0]) == b.zero();
    case RelKind::Succ:
      return b.succ(val(as[0])) == val(as[1]);
    case RelKind::Plus:
      return b.plus(val(as[0]), val(as[1])) == val(as[2]);
    case RelKind::Times:
      return b.times(val(as[0]), val(as[1])) == val(as[2]);
    case RelKind::Not:
      return !rel_sat(f.child(), a, b);
    case RelKind::Or:
      return rel_sat(f.child(0), a, b) || rel_sat(f.child(1), a, b);
    case RelKind::And:
      return rel_sat(f.child(0), a, b) && rel_sat(f.child(1), a, b);
    case RelKind::Exists:
    case RelKind::Forall: {
      bool want = f.kind() == RelKind::Exists;
      for (Value x : b.carrier()) {
        Assignment c = a;
        c.set(as[0], x);
        if (rel_sat(f.child(), c, b) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

namespace {

class EfGame {
 public:
  explicit EfGame(const Backend& b) : b_(b), carrier_(b.carrier()) {}

  bool play(std::vector<Value>& xs, std::vector<Value>& ys, int rounds) {
    if (!partial_iso(xs, ys)) return false;
    if (rounds == 0) return true;
    std::vector<Value> key = xs;
    key.insert(key.end(), ys.begin(), ys.end());
    key.push_back(static_cast<Value>(rounds));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = answers(xs, ys, rounds) && answers(ys, xs, rounds);
    memo_.emplace(std::move(key), ok);
    return ok;
  }

 private:
  // Every move of the spoiler on the `from` side has a reply on the other.
  bool answers(std::vector<Value>& from, std::vector<Value>& to, int rounds) {
    for (Value x : carrier_) {
      bool found = false;
      for (Value y : carrier_) {
        from.push_back(x);
        to.push_back(y);
        found = play(from, to, rounds - 1);
        from.pop_back();
        to.pop_back();
        if (found) break;
      }
      if (!found) return false;
    }
    return true;
  }

  // The atomic diagram depends only on the pairing, so direction is irrelevant.
  bool partial_iso(const std::vector<Value>& xs, const std::vector<Value>& ys) const {
    std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
      if ((xs[i] == b_.zero()) != (ys[i] == b_.zero())) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if ((xs[i] == xs[j]) != (ys[i] == ys[j])) return false;
        if ((b_.succ(xs[i]) == xs[j]) != (b_.succ(ys[i]) == ys[j])) return false;
        Value px = b_.plus(xs[i], xs[j]), py = b_.plus(ys[i], ys[j]);
        Value tx = b_.times(xs[i], xs[j]), ty = b_.times(ys[i], ys[j]);
        for (std::size_t k = 0; k < n; ++k) {
          if ((px == xs[k]) != (py == ys[k])) return false;
          if ((tx == xs[k]) != (ty == ys[k])) return false;
        }
      }
    }
    return true;
  }

  const Backend& b_;
  const std::vector<Value>& carrier_;
  std::map<std::vector<Value>, bool> memo_;
};

}  // namespace

bool ef_equiv(Value a, Value c, int n, const Backend& b) {
  if (n < 0) throw Error("negative round count");
  if (!b.contains(a) || !b.contains(c)) throw EvalError("value outside the carrier");
  EfGame game(b);
  std::vector<Value> xs{a}, ys{c};
  return game.play(xs, ys, n);
}

namespace {

// Semantic enumeration: a formula over the variable pool v0..v_{P-1} is kept
// as the set of pool assignments satisfying it (a bitmask over c^P points)
// together with its syntactic free-variable set.
struct TypeEnumerator {
  const Backend& b;
  std::vector<Value> carrier;
  int pool = 0;
  std::size_t points = 0;
  std::uint64_t full = 0;
  std::vector<std::vector<std::size_t>> coord;  // coord[p][i]: carrier position of v_i at point p
  std::vector<std::size_t> stride;

  using Key = std::pair<unsigned, std::uint64_t>;  // (free-variable bits, mask)
  std::map<Key, RelFormula> items;

  TypeEnumerator(const Backend& backend, int n) : b(backend), carrier(backend.carrier()), pool(n + 1) {
    std::size_t c = carrier.size();
    points = 1;
    for (int i = 0; i < pool; ++i) {
      stride.push_back(points);
      points *= c;
    }
    full = points == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points) - 1;
    coord.assign(points, std::vector<std::size_t>(pool));
    for (std::size_t p = 0; p < points; ++p)
      for (int i = 0; i < pool; ++i) coord[p][i] = (p / stride[i]) % c;
  }

  Value at(std::size_t p, int i) const { return carrier[coord[p][i]]; }

  template <class Pred>
  std::uint64_t mask_of(Pred pred) const {
    std::uint64_t m = 0;
    for (std::size_t p = 0; p < points; ++p)
      if (pred(p)) m |= std::uint64_t{1} << p;
    return m;
  }

  std::uint64_t project(std::uint64_t m, int i, bool exists) const {
    std::uint64_t out = 0;
    std::size_t c = carrier.size();
    for (std::size_t p = 0; p < points; ++p) {
      std::size_t base = p - coord[p][i] * stride[i];
      bool acc = !exists;
      for (std::size_t v = 0; v < c; ++v) {
        bool bit = (m >> (base + v * stride[i])) & 1;
        acc = exists ? (acc || bit) : (acc && bit);
      }
      if (acc) out |= std::uint64_t{1} << p;
    }
    return out;
  }

  static Variable var(int i) { return Variable(static_cast<std::uint64_t>(i)); }

  void add(std::map<Key, RelFormula>& into, unsigned fv, std::uint64_t m, const RelFormula& f) {
    into.emplace(Key{fv, m}, f);
  }

  void atoms() {
    for (int i = 0; i < pool; ++i) {
      add(items, 1u << i, mask_of([&](std::size_t p) { return at(p, i) == b.zero(); }),
          RelFormula::atom(RelKind::Z, {var(i)}));
      for (int j = 0; j < pool; ++j) {
        unsigned fv = (1u << i) | (1u << j);
        add(items, fv, mask_of([&](std::size_t p) { return at(p, i) == at(p, j); }),
            RelFormula::atom(RelKind::Eq, {var(i), var(j)}));
        add(items, fv, mask_of([&](std::size_t p) { return b.succ(at(p, i)) == at(p, j); }),
            RelFormula::atom(RelKind::Succ, {var(i), var(j)}));
        for (int k = 0; k < pool; ++k) {
          unsigned fv3 = fv | (1u << k);
          add(items, fv3, mask_of([&](std::size_t p) { return b.plus(at(p, i), at(p, j)) == at(p, k); }),
              RelFormula::atom(RelKind::Plus, {var(i), var(j), var(k)}));
          add(items, fv3, mask_of([&](std::size_t p) { return b.times(at(p, i), at(p, j)) == at(p, k); }),
              RelFormula::atom(RelKind::Times, {var(i), var(j), var(k)}));
        }
      }
    }
  }

  // One more level of connectives, keeping only formulas with at most
  // `max_fv` free variables (the rest can no longer become one-variable).
  void step(int max_fv) {
    std::vector<std::pair<Key, RelFormula>> cur;
    for (auto& [k, f] : items)
      if (std::popcount(k.first) <= max_fv + 1) cur.emplace_back(k, f);
    std::map<Key, RelFormula> next;
    for (auto& [k, f] : cur)
      if (std::popcount(k.first) <= max_fv) next.emplace(k, f);
    for (auto& [k, f] : cur)
      if (std::popcount(k.first) <= max_fv) add(next, k.first, ~k.second & full, RelFormula::neg(f));
    for (auto& [k, f] : cur) {
      for (int i = 0; i < pool; ++i) {
        unsigned fv = k.first & ~(1u << i);
        if (std::popcount(fv) > max_fv) continue;
        add(next, fv, project(k.second, i, true), RelFormula::quant(RelKind::Exists, var(i), f));
        add(next, fv, project(k.second, i, false), RelFormula::quant(RelKind::Forall, var(i), f));
      }
    }
    std::map<unsigned, std::vector<std::pair<Key, RelFormula>>> by_fv;
    for (auto& kf : cur) by_fv[kf.first.first].push_back(kf);
    for (auto& [fv1, group1] : by_fv) {
      for (auto& [fv2, group2] : by_fv) {
        unsigned fv = fv1 | fv2;
        if (std::popcount(fv) > max_fv) continue;
        for (auto& [k1, f1] : group1) {
          for (auto& [k2, f2] : group2) {
            add(next, fv, k1.second & k2.second, RelFormula::binary(RelKind::And, f1, f2));
            add(next, fv, k1.second | k2.second, RelFormula::binary(RelKind::Or, f1, f2));
          }
        }
      }
    }
    items = std::move(next);
  }
};

}  // namespace

std::vector<TypeFormula> tp_exhaustive(Value a, int n, const Backend& b) {
  if (n < 0 || n > 2) throw Error("tp_exhaustive supports depth at most 2");
  if (!b.is_finite() || b.carrier().size() > 4) throw Error("tp_exhaustive supports at most 4 carrier elements");
  if (!b.contains(a)) throw EvalError("value outside the carrier");
  TypeEnumerator e(b, n);
  e.atoms();
  for (int d = 1; d <= n; ++d) e.step(1 + n - d);
  std::size_t pos = std::find(e.carrier.begin(), e.carrier.end(), a) - e.carrier.begin();
  std::vector<TypeFormula> out;
  for (auto& [k, f] : e.items) {
    if (k.first & ~1u) continue;
    out.push_back({f, ((k.second >> pos) & 1) != 0});
  }
  return out;
}

}  // namespace satwork
