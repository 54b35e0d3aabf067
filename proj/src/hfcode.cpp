#include "satwork/hfcode.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

namespace satwork {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t bit_length(const BigNat& n) {
  return n == 0 ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(n)) + 1;
}

BigNat pow2(std::uint64_t k) {
  BigNat p = 1;
  p <<= k;
  return p;
}

}  // namespace

BigNat cantor_pair(const BigNat& x, const BigNat& y) {
  BigNat s = x + y;
  return s * (s + 1) / 2 + y;
}

struct HFCode::Node {
  Kind kind;
  BigNat n;
  std::vector<HFCode> kids;
  std::uint64_t bits = 0;
};

HFCode HFCode::number(const BigNat& n) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Number;
  node->n = n;
  node->bits = bit_length(n);
  return HFCode(std::move(node));
}

HFCode HFCode::pair(const HFCode& x, const HFCode& y) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Pair;
  node->kids = {x, y};
  std::uint64_t m = std::max(x.bit_bound(), y.bit_bound());
  node->bits = sat_add(sat_add(m, m), 2);
  return HFCode(std::move(node));
}

HFCode HFCode::succ(const HFCode& x) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Succ;
  node->kids = {x};
  node->bits = sat_add(x.bit_bound(), 1);
  return HFCode(std::move(node));
}

HFCode HFCode::set(std::vector<HFCode> elements) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Set;
  std::uint64_t bits = 0;
  for (const auto& e : elements) {
    auto v = e.value(64);
    std::uint64_t b = v && *v < kSaturated ? static_cast<std::uint64_t>(*v) + 1 : kSaturated;
    bits = std::max(bits, b);
  }
  node->kids = std::move(elements);
  node->bits = bits;
  return HFCode(std::move(node));
}

HFCode::Kind HFCode::kind() const { return node_->kind; }
const std::vector<HFCode>& HFCode::children() const { return node_->kids; }
std::uint64_t HFCode::bit_bound() const { return node_->bits; }

namespace {

using ValueMemo = std::unordered_map<const HFCode::Node*, std::optional<BigNat>>;

}  // namespace

std::optional<BigNat> HFCode::value(std::uint64_t bit_budget) const {
  ValueMemo memo;
  std::function<std::optional<BigNat>(const HFCode&)> go = [&](const HFCode& c) -> std::optional<BigNat> {
    auto it = memo.find(c.node_.get());
    if (it != memo.end()) return it->second;
    std::optional<BigNat> out;
    switch (c.kind()) {
      case Kind::Number: out = c.node_->n; break;
      case Kind::Succ: {
        auto x = go(c.children()[0]);
        if (x) out = *x + 1;
        break;
      }
      case Kind::Pair: {
        auto x = go(c.children()[0]);
        if (!x) break;
        auto y = go(c.children()[1]);
        if (!y) break;
        if (std::max(bit_length(*x), bit_length(*y)) * 2 + 2 > bit_budget + 64) break;
        out = cantor_pair(*x, *y);
        break;
      }
      case Kind::Set: {
        BigNat sum = 0;
        bool ok = true;
        for (const auto& e : c.children()) {
          auto x = go(e);
          if (!x || *x >= bit_budget) {
            ok = false;
            break;
          }
          bit_set(sum, static_cast<unsigned>(*x));
        }
        if (ok) out = sum;
        break;
      }
    }
    if (out && bit_length(*out) > bit_budget) out.reset();
    memo.emplace(c.node_.get(), out);
    return out;
  };
  return go(*this);
}

BigNat HFCode::value_mod_pow2(std::uint64_t k, std::uint64_t bit_budget) const {
  std::map<std::pair<const Node*, std::uint64_t>, BigNat> memo;
  std::function<BigNat(const HFCode&, std::uint64_t)> go = [&](const HFCode& c, std::uint64_t bits) -> BigNat {
    if (bits > bit_budget) throw BudgetExceeded("modular code evaluation exceeds the bit budget", BigNat(bits));
    auto key = std::make_pair(c.node_.get(), bits);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigNat m = pow2(bits);
    BigNat out;
    switch (c.kind()) {
      case Kind::Number: out = c.node_->n % m; break;
      case Kind::Succ: out = (go(c.children()[0], bits) + 1) % m; break;
      case Kind::Pair: {
        BigNat m2 = m * 2;
        BigNat a = go(c.children()[0], bits + 1);
        BigNat b = go(c.children()[1], bits + 1);
        BigNat s = (a + b) % m2;
        out = ((s * (s + 1)) % m2 / 2 + b) % m;
        break;
      }
      case Kind::Set: {
        out = 0;
        for (const auto& e : c.children()) {
          auto x = e.value(64);
          if (x && *x < bits) bit_set(out, static_cast<unsigned>(*x));
        }
        break;
      }
    }
    memo.emplace(key, out);
    return out;
  };
  return go(*this, k);
}

bool hf_equal(const HFCode& x, const HFCode& y, std::uint64_t bit_budget) {
  auto xv = x.value(bit_budget);
  auto yv = y.value(bit_budget);
  if (xv && yv) return *xv == *yv;
  if (xv.has_value() != yv.has_value()) return false;  // one is below 2^budget, the other is not
  if (x.kind() == y.kind() && x.kind() != HFCode::Kind::Number && x.kind() != HFCode::Kind::Set) {
    for (std::size_t i = 0; i < x.children().size(); ++i) {
      if (!hf_equal(x.children()[i], y.children()[i], bit_budget)) return false;
    }
    return true;
  }
  if (x.kind() == HFCode::Kind::Set && y.kind() == HFCode::Kind::Set) {
    auto sub = [&](const HFCode& a, const HFCode& b) {
      return std::all_of(a.children().begin(), a.children().end(),
                         [&](const HFCode& e) { return ack_member(e, b, bit_budget); });
    };
    return sub(x, y) && sub(y, x);
  }
  if (x.value_mod_pow2(64, bit_budget) != y.value_mod_pow2(64, bit_budget)) return false;
  throw BudgetExceeded("code comparison exceeds the bit budget", BigNat(bit_budget));
}

bool ack_member(const HFCode& x, const HFCode& y, std::uint64_t bit_budget) {
  if (y.kind() == HFCode::Kind::Set) {
    return std::any_of(y.children().begin(), y.children().end(),
                       [&](const HFCode& e) { return hf_equal(x, e, bit_budget); });
  }
  auto xv = x.value(64);
  if (!xv) {
    // x >= 2^64 while a non-saturated bound says y has fewer bits.
    if (y.bit_bound() < kSaturated) return false;
    throw BudgetExceeded("membership test exceeds the bit budget", BigNat(kSaturated));
  }
  if (*xv >= y.bit_bound()) return false;
  auto bit = static_cast<std::uint64_t>(*xv);
  if (auto yv = y.value(bit_budget)) return bit_test(*yv, static_cast<unsigned>(bit));
  BigNat low = y.value_mod_pow2(bit + 1, bit_budget);
  return bit_test(low, static_cast<unsigned>(bit));
}

HFCode godel_code(Variable v) { return HFCode::pair(HFCode::number(0), HFCode::number(v.index())); }

HFCode godel_code(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return godel_code(t.variable());
    case TermKind::Numeral: {
      if (t.count() > (std::uint64_t{1} << 20)) throw BudgetExceeded("numeral too long to code", t.count());
      HFCode c = HFCode::pair(HFCode::number(1), HFCode::number(0));
      auto n = static_cast<std::uint64_t>(t.count());
      for (std::uint64_t i = 0; i < n; ++i) c = HFCode::pair(HFCode::number(2), c);
      return c;
    }
    case TermKind::Succ: return HFCode::pair(HFCode::number(2), godel_code(t.lhs()));
    case TermKind::Add:
    case TermKind::Mul:
      return HFCode::pair(HFCode::number(t.kind() == TermKind::Add ? 3 : 4),
                          HFCode::pair(godel_code(t.lhs()), godel_code(t.rhs())));
  }
  return HFCode::number(0);
}

HFCode godel_code(const Formula& f, std::uint64_t node_budget) {
  if (f.ast_size() > node_budget) throw BudgetExceeded("formula too large to code", f.ast_size());
  std::unordered_map<const Formula::Node*, HFCode> memo;
  std::function<HFCode(const Formula&)> go = [&](const Formula& g) -> HFCode {
    auto it = memo.find(g.node_ptr());
    if (it != memo.end()) return it->second;
    auto tagged = [](std::uint64_t tag, const HFCode& a, const HFCode& b) {
      return HFCode::pair(HFCode::number(tag), HFCode::pair(a, b));
    };
    HFCode out = HFCode::number(0);
    switch (g.kind()) {
      case FormulaKind::Eq: out = tagged(5, godel_code(g.lhs_term()), godel_code(g.rhs_term())); break;
      case FormulaKind::Not: out = HFCode::pair(HFCode::number(6), go(g.child())); break;
      case FormulaKind::Or:
      case FormulaKind::And:
        out = tagged(g.kind() == FormulaKind::Or ? 7 : 8, go(g.child(0)), go(g.child(1)));
        break;
      case FormulaKind::RepConj: {
        HFCode body = go(g.child());
        out = body;
        auto k = static_cast<std::uint64_t>(g.rep_count());
        for (std::uint64_t i = 1; i < k; ++i) out = tagged(8, out, body);
        break;
      }
      case FormulaKind::Block: {
        out = go(g.child());
        auto vars = g.block_vars().expand(node_budget);
        std::uint64_t tag = g.quantifier() == Quantifier::Exists ? 9 : 10;
        for (auto v = vars.rbegin(); v != vars.rend(); ++v) out = tagged(tag, godel_code(*v), out);
        break;
      }
    }
    memo.emplace(g.node_ptr(), out);
    return out;
  };
  return go(f);
}

HFCode sequence_code(const std::vector<HFCode>& items) {
  HFCode c = HFCode::number(0);
  for (auto it = items.rbegin(); it != items.rend(); ++it) c = HFCode::succ(HFCode::pair(*it, c));
  return c;
}

}  // namespace satwork
