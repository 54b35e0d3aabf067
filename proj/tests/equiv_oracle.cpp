#include "equiv_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "plain_oracle.hpp"

namespace oracle {

using namespace satwork;

namespace {

struct PT {
  char op;  // '0', 'S', '+', '*', 'v'
  Variable v;
  std::vector<PT> kids;
  bool closed = true;
};

PT to_pt(const Term& t) {
  PT p;
  switch (t.kind()) {
    case TermKind::Numeral: {
      p.op = '0';
      for (int i = 0; i < static_cast<int>(t.count()); ++i) {
        PT s;
        s.op = 'S';
        s.kids = {p};
        p = s;
      }
      return p;
    }
    case TermKind::Var:
      p.op = 'v';
      p.v = t.variable();
      p.closed = false;
      return p;
    case TermKind::Succ: p.op = 'S'; p.kids = {to_pt(t.lhs())}; break;
    case TermKind::Add: p.op = '+'; p.kids = {to_pt(t.lhs()), to_pt(t.rhs())}; break;
    case TermKind::Mul: p.op = '*'; p.kids = {to_pt(t.lhs()), to_pt(t.rhs())}; break;
  }
  for (const auto& k : p.kids) p.closed = p.closed && k.closed;
  return p;
}

Value eval_pt(const PT& p, const Backend& b) {
  switch (p.op) {
    case '0': return b.zero();
    case 'S': return b.succ(eval_pt(p.kids[0], b));
    case '+': return b.plus(eval_pt(p.kids[0], b), eval_pt(p.kids[1], b));
    case '*': return b.times(eval_pt(p.kids[0], b), eval_pt(p.kids[1], b));
  }
  throw Error("open term in oracle evaluation");
}

using Path = std::vector<int>;
using Cut = std::set<Path>;

// All antichains of closed positions below `path`.
std::vector<Cut> antichains(const PT& p, const Path& path) {
  std::vector<Cut> out{Cut{}};
  for (std::size_t i = 0; i < p.kids.size(); ++i) {
    Path child = path;
    child.push_back(static_cast<int>(i));
    std::vector<Cut> next;
    for (const auto& mine : out) {
      for (const auto& theirs : antichains(p.kids[i], child)) {
        Cut c = mine;
        c.insert(theirs.begin(), theirs.end());
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  if (p.closed) out.push_back(Cut{path});
  return out;
}

bool fits(const PT& s, const PT& t, const Cut& cut, Path& path, const Backend& b) {
  if (cut.count(path)) return t.closed && eval_pt(s, b) == eval_pt(t, b);
  if (s.op != t.op || s.kids.size() != t.kids.size()) return false;
  if (s.op == 'v' && s.v != t.v) return false;
  for (std::size_t i = 0; i < s.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    bool ok = fits(s.kids[i], t.kids[i], cut, path, b);
    path.pop_back();
    if (!ok) return false;
  }
  return true;
}

bool side_match(const Term& s, const Term& t, const Backend& b) {
  PT ps = to_pt(s);
  PT pt = to_pt(t);
  for (const auto& cut : antichains(ps, {})) {
    Path path;
    if (fits(ps, pt, cut, path, b)) return true;
  }
  return false;
}

bool align(const PlainPtr& f, const PlainPtr& g, const Backend& b) {
  if (f->kind != g->kind || f->kids.size() != g->kids.size()) return false;
  if (f->kind == Plain::Eq) return side_match(f->lhs, g->lhs, b) && side_match(f->rhs, g->rhs, b);
  if ((f->kind == Plain::Exists || f->kind == Plain::Forall) && f->var != g->var) return false;
  for (std::size_t i = 0; i < f->kids.size(); ++i) {
    if (!align(f->kids[i], g->kids[i], b)) return false;
  }
  return true;
}

}  // namespace

bool ext_equiv_bruteforce(const Formula& f, const Assignment& a, const Formula& g, const Assignment& c,
                          const Backend& b) {
  Formula fs = substitute(f, a);
  Formula gs = substitute(g, c);
  if (fs.ast_size() > 40 || gs.ast_size() > 40) throw Error("oracle size limit exceeded");
  return align(unroll(fs), unroll(gs), b);
}

namespace {

void term_tokens(const Term& t, std::vector<std::uint64_t>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out.push_back(0);
      out.push_back(t.variable().index());
      return;
    case TermKind::Numeral:
      for (int i = 0; i < static_cast<int>(t.count()); ++i) out.push_back(2);
      out.push_back(1);
      return;
    case TermKind::Succ:
      out.push_back(2);
      term_tokens(t.lhs(), out);
      return;
    case TermKind::Add:
    case TermKind::Mul:
      out.push_back(t.kind() == TermKind::Add ? 3 : 4);
      term_tokens(t.lhs(), out);
      term_tokens(t.rhs(), out);
      return;
  }
}

void formula_tokens(const PlainPtr& p, std::vector<std::uint64_t>& out) {
  switch (p->kind) {
    case Plain::Eq:
      out.push_back(5);
      term_tokens(p->lhs, out);
      term_tokens(p->rhs, out);
      return;
    case Plain::Not: out.push_back(6); break;
    case Plain::Or: out.push_back(7); break;
    case Plain::And: out.push_back(8); break;
    case Plain::Exists:
    case Plain::Forall:
      out.push_back(p->kind == Plain::Exists ? 9 : 10);
      out.push_back(0);
      out.push_back(p->var.index());
      break;
  }
  for (const auto& k : p->kids) formula_tokens(k, out);
}

std::vector<Term> terms_upto(int size, const std::vector<Term>& atoms) {
  std::vector<std::vector<Term>> by(size + 1);
  by[1] = atoms;
  for (int n = 2; n <= size; ++n) {
    for (const auto& t : by[n - 1]) by[n].push_back(Term::succ(t));
    for (int l = 1; l + 1 < n; ++l) {
      for (const auto& x : by[l]) {
        for (const auto& y : by[n - 1 - l]) {
          by[n].push_back(Term::add(x, y));
          by[n].push_back(Term::mul(x, y));
        }
      }
    }
  }
  std::vector<Term> all;
  for (const auto& level : by) all.insert(all.end(), level.begin(), level.end());
  return all;
}

struct Position {
  PlainPtr node;
  bool left;
  VariableSet bound;
};

void positions(const PlainPtr& p, const VariableSet& bound, std::vector<Position>& out) {
  if (p->kind == Plain::Eq) {
    out.push_back({p, true, bound});
    out.push_back({p, false, bound});
    return;
  }
  VariableSet inner = bound;
  if (p->kind == Plain::Exists || p->kind == Plain::Forall) inner = set_union(bound, {p->var});
  for (const auto& k : p->kids) positions(k, inner, out);
}

PlainPtr clone(const PlainPtr& p) {
  auto c = std::make_shared<Plain>(*p);
  for (auto& k : c->kids) k = clone(k);
  return c;
}

bool all_free(const Term& t, const VariableSet& bound) {
  return std::none_of(t.free_vars().begin(), t.free_vars().end(), [&](Variable v) { return set_contains(bound, v); });
}

// No closed subterm and no complex subterm made only of free variables.
bool term_ok(const Term& t, const VariableSet& bound) {
  if (t.kind() == TermKind::Var) return true;
  if (all_free(t, bound)) return false;
  if (t.kind() == TermKind::Succ) return term_ok(t.lhs(), bound);
  return term_ok(t.lhs(), bound) && term_ok(t.rhs(), bound);
}

bool matches(const Term& pattern, const Term& t, const VariableSet& bound) {
  if (pattern.kind() == TermKind::Var) {
    if (set_contains(bound, pattern.variable())) return t.kind() == TermKind::Var && t.variable() == pattern.variable();
    return all_free(t, bound);
  }
  if (pattern.kind() == TermKind::Numeral) return t == pattern;
  if (t.kind() == TermKind::Numeral && pattern.kind() == TermKind::Succ && t.count() > 0) {
    return matches(pattern.lhs(), Term::numeral(t.count() - 1), bound);
  }
  if (pattern.kind() != t.kind()) return false;
  if (pattern.kind() == TermKind::Succ) return matches(pattern.lhs(), t.lhs(), bound);
  return matches(pattern.lhs(), t.lhs(), bound) && matches(pattern.rhs(), t.rhs(), bound);
}

}  // namespace

std::vector<std::uint64_t> tokens(const Formula& f) {
  std::vector<std::uint64_t> out;
  formula_tokens(unroll(f), out);
  return out;
}

std::optional<Formula> template_bruteforce(const Formula& f, int term_size) {
  PlainPtr original = unroll(f);
  PlainPtr work = clone(original);
  std::vector<Position> orig_pos, pos;
  positions(original, {}, orig_pos);
  positions(work, {}, pos);
  VariableSet bv = bound_variables(f);
  std::vector<Term> atoms{Term::zero()};
  for (std::uint64_t i = 0; i < 4; ++i) atoms.push_back(Term::var(Variable(i)));
  for (Variable v : bv) atoms.push_back(Term::var(v));
  std::vector<Term> pool = terms_upto(term_size, atoms);

  std::optional<Formula> best;
  std::vector<std::uint64_t> best_tokens;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == pos.size()) {
      Formula cand = rebuild(work);
      // Free variables occur once and are never bound anywhere.
      std::map<Variable, int> occurrences;
      for (const auto& p : pos) {
        const Term& t = p.left ? p.node->lhs : p.node->rhs;
        for (Variable v : t.free_vars()) {
          if (!set_contains(p.bound, v)) {
            std::function<int(const Term&)> count = [&](const Term& s) -> int {
              if (s.kind() == TermKind::Var) return s.variable() == v;
              if (s.kind() == TermKind::Numeral) return 0;
              if (s.kind() == TermKind::Succ) return count(s.lhs());
              return count(s.lhs()) + count(s.rhs());
            };
            occurrences[v] += count(t);
          }
        }
      }
      for (const auto& [v, n] : occurrences) {
        if (n != 1 || set_contains(bv, v)) return;
      }
      auto tok = tokens(cand);
      if (!best || tok < best_tokens) {
        best = cand;
        best_tokens = tok;
      }
      return;
    }
    const Term& target = orig_pos[i].left ? orig_pos[i].node->lhs : orig_pos[i].node->rhs;
    for (const auto& t : pool) {
      if (!term_ok(t, pos[i].bound) || !matches(t, target, pos[i].bound)) continue;
      // Pool terms may only use bound variables in scope.
      bool scoped = std::all_of(t.free_vars().begin(), t.free_vars().end(), [&](Variable v) {
        return v.index() < 4 || set_contains(pos[i].bound, v);
      });
      if (!scoped) continue;
      (pos[i].left ? pos[i].node->lhs : pos[i].node->rhs) = t;
      go(i + 1);
    }
  };
  go(0);
  return best;
}

}  // namespace oracle
