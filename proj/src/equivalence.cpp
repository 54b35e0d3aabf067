#include "satwork/equivalence.hpp"

#include <functional>

namespace satwork {

namespace {

bool has_bound(const Term& t, const VariableSet& bound) {
  for (Variable v : t.free_vars()) {
    if (set_contains(bound, v)) return true;
  }
  return false;
}

bool term_has_hole(const Term& t, const VariableSet& bound) {
  if (!has_bound(t, bound)) return true;
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Numeral: return false;
    case TermKind::Succ: return term_has_hole(t.lhs(), bound);
    case TermKind::Add:
    case TermKind::Mul: return term_has_hole(t.lhs(), bound) || term_has_hole(t.rhs(), bound);
  }
  return false;
}

bool formula_has_hole(const Formula& f, const VariableSet& bound) {
  switch (f.kind()) {
    case FormulaKind::Eq: return term_has_hole(f.lhs_term(), bound) || term_has_hole(f.rhs_term(), bound);
    case FormulaKind::Not:
    case FormulaKind::RepConj: return formula_has_hole(f.child(), bound);
    case FormulaKind::Or:
    case FormulaKind::And: return formula_has_hole(f.child(0), bound) || formula_has_hole(f.child(1), bound);
    case FormulaKind::Block: return formula_has_hole(f.child(), set_union(bound, f.block_vars().distinct()));
  }
  return false;
}

class Abstractor {
 public:
  Abstractor(const Formula& f, std::uint64_t budget) : excluded_(bound_variables(f)), budget_(budget) {}

  Formula formula(const Formula& f, const VariableSet& bound) {
    switch (f.kind()) {
      case FormulaKind::Eq: {
        Term l = term(f.lhs_term(), bound);
        return Formula::eq(l, term(f.rhs_term(), bound));
      }
      case FormulaKind::Not: return Formula::neg(formula(f.child(), bound));
      case FormulaKind::Or: {
        Formula l = formula(f.child(0), bound);
        return Formula::disj(l, formula(f.child(1), bound));
      }
      case FormulaKind::And: {
        Formula l = formula(f.child(0), bound);
        return Formula::conj(l, formula(f.child(1), bound));
      }
      case FormulaKind::RepConj: {
        if (!formula_has_hole(f.child(), bound)) return f;
        if (f.node_count() > budget_) {
          throw BudgetExceeded("template needs to unroll a repeated conjunction", f.node_count());
        }
        auto k = static_cast<std::uint64_t>(f.rep_count());
        Formula acc = formula(f.child(), bound);
        for (std::uint64_t i = 1; i < k; ++i) acc = Formula::conj(acc, formula(f.child(), bound));
        return acc;
      }
      case FormulaKind::Block:
        return Formula::quant(f.quantifier(), f.block_vars(),
                              formula(f.child(), set_union(bound, f.block_vars().distinct())));
    }
    return f;
  }

  Term term(const Term& t, const VariableSet& bound) {
    if (!has_bound(t, bound)) return hole(t);
    switch (t.kind()) {
      case TermKind::Var:
      case TermKind::Numeral: return t;
      case TermKind::Succ: return Term::succ(term(t.lhs(), bound));
      case TermKind::Add:
      case TermKind::Mul: {
        Term l = term(t.lhs(), bound);
        Term r = term(t.rhs(), bound);
        return t.kind() == TermKind::Add ? Term::add(l, r) : Term::mul(l, r);
      }
    }
    return t;
  }

  std::vector<Variable> fresh;
  std::vector<Term> holes;

 private:
  Term hole(const Term& t) {
    while (set_contains(excluded_, Variable(next_))) ++next_;
    Variable v(next_++);
    fresh.push_back(v);
    holes.push_back(t);
    return Term::var(v);
  }

  VariableSet excluded_;
  std::uint64_t budget_;
  std::uint64_t next_ = 0;
};

}  // namespace

Template template_of(const Formula& f, std::uint64_t node_budget) {
  Abstractor a(f, node_budget);
  Formula skeleton = a.formula(f, {});
  return {skeleton, std::move(a.fresh), std::move(a.holes)};
}

bool similar(const Formula& f, const Formula& g) {
  if (f == g) return true;
  return template_of(f).skeleton == template_of(g).skeleton;
}

Formula value_normal_form(const Formula& f, const Assignment& a, const Backend& b) {
  Formula s = substitute(f, a);
  std::function<Term(const Term&)> norm = [&](const Term& t) -> Term {
    if (t.is_closed()) return Term::numeral(eval_term(t, {}, b));
    switch (t.kind()) {
      case TermKind::Var:
      case TermKind::Numeral: return t;
      case TermKind::Succ: return Term::succ(norm(t.lhs()));
      case TermKind::Add:
      case TermKind::Mul: {
        Term l = norm(t.lhs());
        Term r = norm(t.rhs());
        return t.kind() == TermKind::Add ? Term::add(l, r) : Term::mul(l, r);
      }
    }
    return t;
  };
  return map_terms(s, [&](const Term& t, const VariableSet&) { return norm(t); });
}

bool ext_equiv(const Formula& f, const Assignment& a, const Formula& g, const Assignment& c, const Backend& b) {
  return value_normal_form(f, a, b) == value_normal_form(g, c, b);
}

}  // namespace satwork
