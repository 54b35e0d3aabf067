#include "satwork/backend.hpp"

#include <algorithm>
#include <sstream>

namespace satwork {

Backend Backend::cyclic(Value m) {
  if (m < 1) throw Error("cyclic structure needs m >= 1");
  if (m > (Value{1} << 32)) throw Error("cyclic modulus too large");
  Backend b;
  b.spec_ = Cyclic{m};
  for (Value x = 0; x < m; ++x) b.carrier_.push_back(x);
  return b;
}

Backend Backend::bounded_nat(Value bound) {
  Backend b;
  b.spec_ = BoundedNat{bound};
  return b;
}

Backend Backend::tabular(Tabular t) {
  std::size_t n = t.carrier.size();
  if (n == 0) throw Error("tabular structure needs a non-empty carrier");
  Backend b;
  for (std::size_t i = 0; i < n; ++i) {
    if (!b.index_.emplace(t.carrier[i], i).second) throw Error("tabular carrier has duplicate values");
  }
  auto check = [&](Value x, const char* what) {
    if (!b.index_.count(x)) throw Error(std::string("tabular ") + what + " table leaves the carrier");
  };
  check(t.zero, "zero");
  if (t.succ.size() != n) throw Error("tabular succ table has the wrong size");
  for (Value x : t.succ) check(x, "succ");
  for (const auto* table : {&t.plus, &t.times}) {
    if (table->size() != n) throw Error("tabular operation table has the wrong size");
    for (const auto& row : *table) {
      if (row.size() != n) throw Error("tabular operation table has the wrong size");
      for (Value x : row) check(x, "operation");
    }
  }
  b.carrier_ = t.carrier;
  std::unordered_map<Value, std::size_t> seen;
  Value x = t.zero;
  while (!seen.count(x)) {
    seen.emplace(x, b.zero_orbit_.size());
    b.zero_orbit_.push_back(x);
    x = t.succ[b.index_.at(x)];
  }
  b.orbit_cycle_start_ = seen.at(x);
  b.spec_ = std::move(t);
  return b;
}

bool Backend::is_finite() const { return !std::holds_alternative<BoundedNat>(spec_); }

const std::vector<Value>& Backend::carrier() const {
  if (!is_finite()) throw UnsupportedEnumeration("the bounded naturals have no finite carrier to enumerate");
  return carrier_;
}

std::vector<Value> Backend::search_range() const {
  if (const auto* n = std::get_if<BoundedNat>(&spec_)) {
    std::vector<Value> r;
    for (Value x = 0; x <= n->bound; ++x) r.push_back(x);
    return r;
  }
  return carrier_;
}

bool Backend::contains(Value x) const {
  if (const auto* c = std::get_if<Cyclic>(&spec_)) return x < c->m;
  if (std::holds_alternative<BoundedNat>(spec_)) return true;
  return index_.count(x) > 0;
}

std::size_t Backend::index_of(Value x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw EvalError("value " + std::to_string(x) + " is not in the carrier");
  return it->second;
}

Value Backend::zero() const {
  if (const auto* t = std::get_if<Tabular>(&spec_)) return t->zero;
  return 0;
}

Value Backend::succ(Value x) const {
  if (const auto* c = std::get_if<Cyclic>(&spec_)) return (x + 1) % c->m;
  if (const auto* t = std::get_if<Tabular>(&spec_)) return t->succ[index_of(x)];
  if (x == ~Value{0}) throw EvalError("successor overflow");
  return x + 1;
}

Value Backend::plus(Value x, Value y) const {
  if (const auto* c = std::get_if<Cyclic>(&spec_)) return (x + y) % c->m;
  if (const auto* t = std::get_if<Tabular>(&spec_)) return t->plus[index_of(x)][index_of(y)];
  Value r;
  if (__builtin_add_overflow(x, y, &r)) throw EvalError("addition overflow");
  return r;
}

Value Backend::times(Value x, Value y) const {
  if (const auto* c = std::get_if<Cyclic>(&spec_)) {
    return static_cast<Value>(static_cast<unsigned __int128>(x) * y % c->m);
  }
  if (const auto* t = std::get_if<Tabular>(&spec_)) return t->times[index_of(x)][index_of(y)];
  Value r;
  if (__builtin_mul_overflow(x, y, &r)) throw EvalError("multiplication overflow");
  return r;
}

Value Backend::numeral(const BigNat& n) const {
  if (const auto* c = std::get_if<Cyclic>(&spec_)) return static_cast<Value>(n % c->m);
  if (std::holds_alternative<Tabular>(spec_)) {
    if (n < zero_orbit_.size()) return zero_orbit_[static_cast<std::size_t>(n)];
    std::size_t mu = orbit_cycle_start_;
    std::size_t lambda = zero_orbit_.size() - mu;
    return zero_orbit_[mu + static_cast<std::size_t>((n - mu) % lambda)];
  }
  if (n > BigNat(~Value{0})) throw EvalError("numeral exceeds the machine range");
  return static_cast<Value>(n);
}

bool Backend::numeral_coherent() const {
  if (!std::holds_alternative<Tabular>(spec_)) return true;
  return std::all_of(carrier_.begin(), carrier_.end(), [&](Value x) { return numeral(x) == x; });
}

std::string Backend::describe() const {
  std::ostringstream os;
  if (const auto* c = std::get_if<Cyclic>(&spec_)) {
    os << "Z/" << c->m;
  } else if (const auto* n = std::get_if<BoundedNat>(&spec_)) {
    os << "N (quantifiers bounded by " << n->bound << ")";
  } else {
    os << "tabular structure with " << carrier_.size() << " elements";
  }
  return os.str();
}

Value eval_term(const Term& t, const Assignment& a, const Backend& b) {
  switch (t.kind()) {
    case TermKind::Numeral: return b.numeral(t.count());
    case TermKind::Var: {
      auto x = a.get(t.variable());
      if (!x) throw EvalError("unbound variable " + t.variable().name());
      return *x;
    }
    case TermKind::Succ: return b.succ(eval_term(t.lhs(), a, b));
    case TermKind::Add: return b.plus(eval_term(t.lhs(), a, b), eval_term(t.rhs(), a, b));
    case TermKind::Mul: return b.times(eval_term(t.lhs(), a, b), eval_term(t.rhs(), a, b));
  }
  return 0;
}

std::vector<Assignment> asn_variants(const Assignment& a, const VariableSet& vars, const Backend& b) {
  if (vars.empty()) return {a};
  const auto& carrier = b.carrier();
  std::vector<Assignment> out{a};
  for (Variable v : vars) {
    std::vector<Assignment> next;
    next.reserve(out.size() * carrier.size());
    for (const auto& partial : out) {
      for (Value x : carrier) {
        Assignment c = partial;
        c.set(v, x);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Assignment> asn_variants(const Assignment& a, const VarSeq& vars, const Backend& b) {
  return asn_variants(a, vars.distinct(), b);
}

std::vector<Assignment> all_assignments(const VariableSet& vars, const Backend& b) {
  return asn_variants(Assignment{}, vars, b);
}

}  // namespace satwork
