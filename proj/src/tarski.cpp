#include "satwork/tarski.hpp"

#include <unordered_map>

namespace satwork {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

Verdict kleene_not(Verdict v) {
  if (v == Verdict::Unknown) return v;
  return v == Verdict::True ? Verdict::False : Verdict::True;
}

struct Key {
  const Formula::Node* node;
  Assignment asn;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return std::hash<const void*>{}(k.node) * 31 + k.asn.hash();
  }
};

class Evaluator {
 public:
  explicit Evaluator(const Backend& b) : b_(b), range_(b.search_range()) {}

  Verdict eval(const Formula& f, const Assignment& a) {
    Key key{f.node_ptr(), a.restrict_to(f.free_vars())};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Verdict v = eval_uncached(f, key.asn);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  Verdict eval_uncached(const Formula& f, const Assignment& a) {
    switch (f.kind()) {
      case FormulaKind::Eq:
        return eval_term(f.lhs_term(), a, b_) == eval_term(f.rhs_term(), a, b_) ? Verdict::True : Verdict::False;
      case FormulaKind::Not: return kleene_not(eval(f.child(), a));
      case FormulaKind::Or: {
        Verdict l = eval(f.child(0), a);
        if (l == Verdict::True) return l;
        Verdict r = eval(f.child(1), a);
        if (r == Verdict::True) return r;
        return l == Verdict::Unknown || r == Verdict::Unknown ? Verdict::Unknown : Verdict::False;
      }
      case FormulaKind::And: {
        Verdict l = eval(f.child(0), a);
        if (l == Verdict::False) return l;
        Verdict r = eval(f.child(1), a);
        if (r == Verdict::False) return r;
        return l == Verdict::Unknown || r == Verdict::Unknown ? Verdict::Unknown : Verdict::True;
      }
      case FormulaKind::RepConj: return eval(f.child(), a);
      case FormulaKind::Block: return eval_block(f, a);
    }
    return Verdict::Unknown;
  }

  Verdict eval_block(const Formula& f, const Assignment& a) {
    const Formula& body = f.child();
    VariableSet vars;
    for (Variable v : f.block_vars().distinct()) {
      if (set_contains(body.free_vars(), v)) vars.push_back(v);
    }
    if (vars.empty()) return eval(body, a);
    bool exists = f.quantifier() == Quantifier::Exists;
    Verdict goal = exists ? Verdict::True : Verdict::False;
    bool unknown = false;
    Assignment c = a;
    // Odometer over range^vars.
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < vars.size(); ++i) c.set(vars[i], range_[idx[i]]);
      Verdict v = eval(body, c);
      if (v == goal) return goal;
      if (v == Verdict::Unknown) unknown = true;
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == range_.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    if (unknown || !b_.is_finite()) return Verdict::Unknown;
    return exists ? Verdict::False : Verdict::True;
  }

  const Backend& b_;
  std::vector<Value> range_;
  std::unordered_map<Key, Verdict, KeyHash> memo_;
};

}  // namespace

Verdict tarski_sat(const Formula& f, const Assignment& a, const Backend& b) {
  if (!a.covers(f.free_vars())) throw EvalError("assignment does not cover the free variables of the formula");
  Evaluator e(b);
  return e.eval(f, a);
}

}  // namespace satwork
