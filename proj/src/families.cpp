#include "satwork/families.hpp"

#include <sstream>

namespace satwork {

namespace {

constexpr std::uint64_t kNumeralLiteralThreshold = 64;

}  // namespace

Variable eta_variable() { return Variable::named("x"); }
Variable xi_free_variable() { return Variable::named("v"); }
Variable xi_x(std::uint64_t level) { return Variable(Variable::kXiBase + 2 * level); }
Variable xi_y(std::uint64_t level) { return Variable(Variable::kXiBase + 2 * level + 1); }

Formula eta(const BigNat& a) {
  if (a < 1) throw Error("eta(a) requires a >= 1");
  Term x = Term::var(eta_variable());
  return Formula::forall(eta_variable(), Formula::rep_conj(Formula::eq(x, x), a));
}

Formula eta(const BigNat& a, const VarSeq& prefix) {
  return Formula::quant(Quantifier::Exists, prefix, eta(a));
}

Formula phi_anchor(const BigNat& a, const Formula& f) {
  Term n = Term::numeral(a);
  return Formula::conj(Formula::eq(n, n), f);
}

Formula xi(const BigNat& a, const BigNat& b) {
  if (b > kXiLevelLimit) throw BudgetExceeded("xi tower height exceeds the level limit", b);
  Term v = Term::var(xi_free_variable());
  Formula f = Formula::conj(Formula::eq(v, v), eta(a));
  auto levels = static_cast<std::uint64_t>(b);
  for (std::uint64_t i = 0; i < levels; ++i) {
    Formula inner = Formula::conj(Formula::eq(Term::var(xi_y(i)), v), f);
    inner = Formula::conj(Formula::eq(Term::var(xi_x(i)), v), inner);
    f = Formula::forall(xi_x(i), Formula::exists(xi_y(i), inner));
  }
  return f;
}

Formula expand(const Formula& f, const BigNat& node_budget) {
  if (f.node_count() > node_budget) {
    throw BudgetExceeded("expansion needs " + f.node_count().str() + " nodes", f.node_count());
  }
  return f;
}

std::optional<EtaMatch> match_eta(const Formula& f) {
  EtaMatch m;
  const Formula* g = &f;
  if (g->kind() == FormulaKind::Block && g->quantifier() == Quantifier::Exists) {
    m.prefix = g->block_vars();
    g = &g->child();
  }
  if (g->kind() != FormulaKind::Block || g->quantifier() != Quantifier::Forall) return std::nullopt;
  if (g->block_vars() != VarSeq{eta_variable()}) return std::nullopt;
  const Formula& body = g->child();
  const Formula* atom = &body;
  m.a = 1;
  if (body.kind() == FormulaKind::RepConj) {
    atom = &body.child();
    m.a = body.rep_count();
  }
  Term x = Term::var(eta_variable());
  if (*atom != Formula::eq(x, x)) return std::nullopt;
  return m;
}

bool is_eta_form(const Formula& f) { return match_eta(f).has_value(); }

namespace {

void compact_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::Numeral:
      if (t.count() > kNumeralLiteralThreshold) {
        os << "num(" << t.count() << ')';
      } else {
        os << print(t);
      }
      return;
    case TermKind::Var: os << t.variable().name(); return;
    case TermKind::Succ: os << 'S'; compact_term(os, t.lhs()); return;
    case TermKind::Add:
    case TermKind::Mul:
      os << '(';
      compact_term(os, t.lhs());
      os << (t.kind() == TermKind::Add ? '+' : '*');
      compact_term(os, t.rhs());
      os << ')';
      return;
  }
}

void compact_vars(std::ostream& os, const VarSeq& vs) {
  bool first = true;
  for (const auto& r : vs.runs()) {
    if (!first) os << ',';
    first = false;
    os << r.var.name();
    if (r.count > 1) os << '^' << r.count;
  }
}

void compact_formula(std::ostream& os, const Formula& f) {
  if (auto m = match_eta(f)) {
    os << "eta(" << m->a;
    if (!m->prefix.empty()) {
      os << "; ";
      compact_vars(os, m->prefix);
    }
    os << ')';
    return;
  }
  switch (f.kind()) {
    case FormulaKind::Eq:
      compact_term(os, f.lhs_term());
      os << '=';
      compact_term(os, f.rhs_term());
      return;
    case FormulaKind::Not: os << '~'; compact_formula(os, f.child()); return;
    case FormulaKind::Or:
    case FormulaKind::And:
      os << '(';
      compact_formula(os, f.child(0));
      os << (f.kind() == FormulaKind::Or ? " \\/ " : " /\\ ");
      compact_formula(os, f.child(1));
      os << ')';
      return;
    case FormulaKind::RepConj:
      os << "conj(" << f.rep_count() << "; ";
      compact_formula(os, f.child());
      os << ')';
      return;
    case FormulaKind::Block: {
      const char* q = f.quantifier() == Quantifier::Exists ? "E" : "A";
      if (f.block_length() <= 8) {
        for (const auto& r : f.block_vars().runs()) {
          for (std::uint64_t i = 0; i < r.count; ++i) os << q << ' ' << r.var.name() << ' ';
        }
      } else {
        os << "block(" << q << "; ";
        compact_vars(os, f.block_vars());
        os << "; ";
        compact_formula(os, f.child());
        os << ')';
        return;
      }
      compact_formula(os, f.child());
      return;
    }
  }
}

}  // namespace

std::string print_compact(const Formula& f) {
  std::ostringstream os;
  compact_formula(os, f);
  return os.str();
}

std::string print_compact(const Term& t) {
  std::ostringstream os;
  compact_term(os, t);
  return os.str();
}

}  // namespace satwork
