#include "satwork/syntax.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace satwork {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

std::size_t hash_bignat(const BigNat& n) {
  auto low = static_cast<std::uint64_t>(n & BigNat(0xffffffffffffffffULL));
  auto bits = n == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(n));
  return mix(std::hash<std::uint64_t>{}(low), bits);
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

BigNat parse_bignat(std::string_view digits) {
  if (digits.empty()) throw Error("expected a decimal number");
  BigNat n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error("invalid decimal number '" + std::string(digits) + "'");
    n = n * 10 + (c - '0');
  }
  return n;
}

std::string to_string(const BigNat& n) { return n.str(); }

// ---------------------------------------------------------------------------
// Variable

Variable Variable::named(std::string_view identifier) {
  if (identifier.empty() || identifier.size() > 10) {
    throw Error("variable identifier must have 1 to 10 letters: '" + std::string(identifier) + "'");
  }
  std::uint64_t code = 0;
  for (char c : identifier) {
    if (c < 'a' || c > 'z') throw Error("invalid variable identifier '" + std::string(identifier) + "'");
    code = code * 26 + static_cast<std::uint64_t>(c - 'a' + 1);
  }
  return Variable(kNamedBase + code);
}

std::string Variable::name() const {
  if (index_ >= kNamedBase) {
    std::uint64_t code = index_ - kNamedBase;
    std::string s;
    while (code > 0) {
      std::uint64_t d = (code - 1) % 26;
      s.push_back(static_cast<char>('a' + d));
      code = (code - 1) / 26;
    }
    std::reverse(s.begin(), s.end());
    return s;
  }
  return "v" + std::to_string(index_);
}

// ---------------------------------------------------------------------------
// VarSeq

VarSeq::VarSeq(std::initializer_list<Variable> vars) {
  for (auto v : vars) push_back(v);
}

VarSeq::VarSeq(const std::vector<Variable>& vars) {
  for (auto v : vars) push_back(v);
}

void VarSeq::push_back(Variable v, std::uint64_t count) {
  if (count == 0) return;
  if (!runs_.empty() && runs_.back().var == v) {
    runs_.back().count += count;
  } else {
    runs_.push_back({v, count});
  }
}

void VarSeq::append(const VarSeq& other) {
  for (const auto& r : other.runs_) push_back(r.var, r.count);
}

BigNat VarSeq::length() const {
  BigNat n = 0;
  for (const auto& r : runs_) n += r.count;
  return n;
}

VarSeq VarSeq::drop_front(const BigNat& k) const {
  BigNat left = k;
  VarSeq out;
  for (const auto& r : runs_) {
    if (left >= r.count) {
      left -= r.count;
      continue;
    }
    out.push_back(r.var, r.count - static_cast<std::uint64_t>(left));
    left = 0;
  }
  if (left > 0) throw Error("drop_front beyond sequence length");
  return out;
}

VarSeq VarSeq::take_front(const BigNat& k) const {
  BigNat left = k;
  VarSeq out;
  for (const auto& r : runs_) {
    if (left == 0) break;
    if (left >= r.count) {
      out.push_back(r.var, r.count);
      left -= r.count;
    } else {
      out.push_back(r.var, static_cast<std::uint64_t>(left));
      left = 0;
    }
  }
  if (left > 0) throw Error("take_front beyond sequence length");
  return out;
}

VariableSet VarSeq::distinct() const {
  VariableSet s;
  for (const auto& r : runs_) s.push_back(r.var);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool VarSeq::is_prefix_of(const VarSeq& other) const {
  if (runs_.size() > other.runs_.size()) return false;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    const auto& a = runs_[i];
    const auto& b = other.runs_[i];
    if (a.var != b.var) return false;
    if (i + 1 < runs_.size() ? a.count != b.count : a.count > b.count) return false;
  }
  return true;
}

std::vector<Variable> VarSeq::expand(std::size_t limit) const {
  if (length() > limit) throw BudgetExceeded("variable sequence too long to expand", length());
  std::vector<Variable> out;
  for (const auto& r : runs_) out.insert(out.end(), r.count, r.var);
  return out;
}

// ---------------------------------------------------------------------------
// Variable sets

VariableSet set_union(const VariableSet& a, const VariableSet& b) {
  VariableSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VariableSet set_minus(const VariableSet& a, const VariableSet& b) {
  VariableSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VariableSet& s, Variable v) { return std::binary_search(s.begin(), s.end(), v); }

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind;
  BigNat n;
  Variable var;
  std::optional<Term> l, r;
  std::size_t hash = 0;
  VariableSet fv;
  BigNat nodes;
};

namespace {

bool term_equal(const Term::Node* a, const Term::Node* b);

}  // namespace

Term Term::numeral(const BigNat& n) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Numeral;
  node->n = n;
  node->hash = mix(1, hash_bignat(n));
  node->nodes = n + 1;
  return Term(std::move(node));
}

Term Term::zero() { return numeral(BigNat(0)); }

Term Term::var(Variable v) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Var;
  node->var = v;
  node->hash = mix(2, std::hash<std::uint64_t>{}(v.index()));
  node->fv = {v};
  node->nodes = 1;
  return Term(std::move(node));
}

Term Term::succ(const Term& t) {
  if (t.kind() == TermKind::Numeral) return numeral(t.count() + 1);
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Succ;
  node->l = t;
  node->hash = mix(3, t.hash());
  node->fv = t.free_vars();
  node->nodes = t.node_count() + 1;
  return Term(std::move(node));
}

Term Term::add(const Term& l, const Term& r) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Add;
  node->l = l;
  node->r = r;
  node->hash = mix(mix(4, l.hash()), r.hash());
  node->fv = set_union(l.free_vars(), r.free_vars());
  node->nodes = l.node_count() + r.node_count() + 1;
  return Term(std::move(node));
}

Term Term::mul(const Term& l, const Term& r) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Mul;
  node->l = l;
  node->r = r;
  node->hash = mix(mix(5, l.hash()), r.hash());
  node->fv = set_union(l.free_vars(), r.free_vars());
  node->nodes = l.node_count() + r.node_count() + 1;
  return Term(std::move(node));
}

TermKind Term::kind() const { return node_->kind; }
const BigNat& Term::count() const { return node_->n; }
Variable Term::variable() const { return node_->var; }
const Term& Term::lhs() const { return *node_->l; }
const Term& Term::rhs() const { return *node_->r; }
bool Term::is_closed() const { return node_->fv.empty(); }
const VariableSet& Term::free_vars() const { return node_->fv; }
const BigNat& Term::node_count() const { return node_->nodes; }
std::size_t Term::hash() const { return node_->hash; }

namespace {

bool term_equal(const Term::Node* a, const Term::Node* b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Numeral: return a->n == b->n;
    case TermKind::Var: return a->var == b->var;
    case TermKind::Succ: return *a->l == *b->l;
    case TermKind::Add:
    case TermKind::Mul: return *a->l == *b->l && *a->r == *b->r;
  }
  return false;
}

int term_compare(const Term& a, const Term& b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return cmp3(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
  switch (a.kind()) {
    case TermKind::Numeral: return cmp3(a.count(), b.count());
    case TermKind::Var: return cmp3(a.variable(), b.variable());
    case TermKind::Succ: return term_compare(a.lhs(), b.lhs());
    case TermKind::Add:
    case TermKind::Mul: {
      int c = term_compare(a.lhs(), b.lhs());
      return c != 0 ? c : term_compare(a.rhs(), b.rhs());
    }
  }
  return 0;
}

}  // namespace

bool operator==(const Term& a, const Term& b) { return term_equal(a.node_.get(), b.node_.get()); }

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind;
  std::optional<Term> lt, rt;
  std::optional<Formula> a, b;
  BigNat count;
  Quantifier q = Quantifier::Exists;
  VarSeq vars;
  BigNat blen;
  std::size_t hash = 0;
  VariableSet fv;
  BigNat depth, nodes, ast;
  bool compressed = false;
};

Formula Formula::make(Node&& n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::eq(const Term& l, const Term& r) {
  Node n;
  n.kind = FormulaKind::Eq;
  n.lt = l;
  n.rt = r;
  n.hash = mix(mix(11, l.hash()), r.hash());
  n.fv = set_union(l.free_vars(), r.free_vars());
  n.depth = 0;
  n.nodes = 1;
  n.ast = l.node_count() + r.node_count() + 1;
  return make(std::move(n));
}

Formula Formula::neg(const Formula& f) {
  Node n;
  n.kind = FormulaKind::Not;
  n.a = f;
  n.hash = mix(12, f.hash());
  n.fv = f.free_vars();
  n.depth = f.depth() + 1;
  n.nodes = f.node_count() + 1;
  n.ast = f.ast_size() + 1;
  n.compressed = f.has_compressed_nodes();
  return make(std::move(n));
}

namespace {

Formula::Node binary_node(FormulaKind kind, const Formula& l, const Formula& r) {
  Formula::Node n;
  n.kind = kind;
  n.a = l;
  n.b = r;
  n.hash = mix(mix(kind == FormulaKind::Or ? 13 : 14, l.hash()), r.hash());
  n.fv = set_union(l.free_vars(), r.free_vars());
  n.depth = std::max(l.depth(), r.depth()) + 1;
  n.nodes = l.node_count() + r.node_count() + 1;
  n.ast = l.ast_size() + r.ast_size() + 1;
  n.compressed = l.has_compressed_nodes() || r.has_compressed_nodes();
  return n;
}

}  // namespace

Formula Formula::disj(const Formula& l, const Formula& r) { return make(binary_node(FormulaKind::Or, l, r)); }

Formula Formula::conj(const Formula& l, const Formula& r) {
  if (l == r) return rep_conj(r, 2);
  if (l.kind() == FormulaKind::RepConj && l.child() == r) return rep_conj(r, l.rep_count() + 1);
  return make(binary_node(FormulaKind::And, l, r));
}

Formula Formula::rep_conj(const Formula& body, const BigNat& k) {
  if (k < 1) throw Error("repeated conjunction needs a count >= 1");
  if (k == 1) return body;
  Node n;
  n.kind = FormulaKind::RepConj;
  n.a = body;
  n.count = k;
  n.hash = mix(mix(15, body.hash()), hash_bignat(k));
  n.fv = body.free_vars();
  n.depth = body.depth() + (k - 1);
  n.nodes = (k - 1) + k * body.node_count();
  n.ast = (k - 1) + k * body.ast_size();
  n.compressed = true;
  return make(std::move(n));
}

Formula Formula::quant(Quantifier q, const VarSeq& vars, const Formula& body) {
  if (vars.empty()) return body;
  VarSeq merged = vars;
  const Formula* inner = &body;
  if (body.kind() == FormulaKind::Block && body.quantifier() == q) {
    merged.append(body.block_vars());
    inner = &body.child();
  }
  Node n;
  n.kind = FormulaKind::Block;
  n.q = q;
  n.vars = merged;
  n.blen = merged.length();
  n.a = *inner;
  std::size_t h = mix(q == Quantifier::Exists ? 16 : 17, inner->hash());
  for (const auto& r : merged.runs()) h = mix(mix(h, r.var.index()), r.count);
  n.hash = h;
  n.fv = set_minus(inner->free_vars(), merged.distinct());
  n.depth = inner->depth() + n.blen;
  n.nodes = inner->node_count() + n.blen;
  n.ast = inner->ast_size() + n.blen;
  n.compressed = inner->has_compressed_nodes() || n.blen > 1;
  return make(std::move(n));
}

Formula Formula::exists(Variable v, const Formula& body) { return quant(Quantifier::Exists, VarSeq{v}, body); }
Formula Formula::forall(Variable v, const Formula& body) { return quant(Quantifier::Forall, VarSeq{v}, body); }

FormulaKind Formula::kind() const { return node_->kind; }

Connective Formula::head() const {
  switch (node_->kind) {
    case FormulaKind::Eq: return Connective::Eq;
    case FormulaKind::Not: return Connective::Not;
    case FormulaKind::Or: return Connective::Or;
    case FormulaKind::And:
    case FormulaKind::RepConj: return Connective::And;
    case FormulaKind::Block: return node_->q == Quantifier::Exists ? Connective::Exists : Connective::Forall;
  }
  return Connective::Eq;
}

const Term& Formula::lhs_term() const { return *node_->lt; }
const Term& Formula::rhs_term() const { return *node_->rt; }
const Formula& Formula::child(int i) const { return i == 0 ? *node_->a : *node_->b; }
const BigNat& Formula::rep_count() const { return node_->count; }
Quantifier Formula::quantifier() const { return node_->q; }
const VarSeq& Formula::block_vars() const { return node_->vars; }
const BigNat& Formula::block_length() const { return node_->blen; }

Variable Formula::bound_variable() const {
  if (kind() != FormulaKind::Block) throw Error("formula is not quantified");
  return node_->vars.front();
}

Formula Formula::quantified_body() const {
  if (kind() != FormulaKind::Block) throw Error("formula is not quantified");
  return quant(node_->q, node_->vars.drop_front(1), *node_->a);
}

std::vector<Formula> Formula::direct_subformulas() const {
  switch (node_->kind) {
    case FormulaKind::Eq: return {};
    case FormulaKind::Not: return {*node_->a};
    case FormulaKind::Or:
    case FormulaKind::And: return {*node_->a, *node_->b};
    case FormulaKind::RepConj: return {rep_conj(*node_->a, node_->count - 1), *node_->a};
    case FormulaKind::Block: return {quantified_body()};
  }
  return {};
}

const VariableSet& Formula::free_vars() const { return node_->fv; }
const BigNat& Formula::depth() const { return node_->depth; }
const BigNat& Formula::node_count() const { return node_->nodes; }
const BigNat& Formula::ast_size() const { return node_->ast; }
bool Formula::has_compressed_nodes() const { return node_->compressed; }
std::size_t Formula::hash() const { return node_->hash; }

namespace {

bool formula_equal(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Eq: return *a->lt == *b->lt && *a->rt == *b->rt;
    case FormulaKind::Not: return *a->a == *b->a;
    case FormulaKind::Or:
    case FormulaKind::And: return *a->a == *b->a && *a->b == *b->b;
    case FormulaKind::RepConj: return a->count == b->count && *a->a == *b->a;
    case FormulaKind::Block: return a->q == b->q && a->vars == b->vars && *a->a == *b->a;
  }
  return false;
}

int formula_compare(const Formula& x, const Formula& y) {
  if (x == y) return 0;
  if (x.kind() != y.kind()) return cmp3(static_cast<int>(x.kind()), static_cast<int>(y.kind()));
  switch (x.kind()) {
    case FormulaKind::Eq: {
      int c = term_compare(x.lhs_term(), y.lhs_term());
      return c != 0 ? c : term_compare(x.rhs_term(), y.rhs_term());
    }
    case FormulaKind::Not: return formula_compare(x.child(), y.child());
    case FormulaKind::Or:
    case FormulaKind::And: {
      int c = formula_compare(x.child(0), y.child(0));
      return c != 0 ? c : formula_compare(x.child(1), y.child(1));
    }
    case FormulaKind::RepConj: {
      int c = cmp3(x.rep_count(), y.rep_count());
      return c != 0 ? c : formula_compare(x.child(), y.child());
    }
    case FormulaKind::Block: {
      if (x.quantifier() != y.quantifier()) {
        return cmp3(static_cast<int>(x.quantifier()), static_cast<int>(y.quantifier()));
      }
      const auto& rx = x.block_vars().runs();
      const auto& ry = y.block_vars().runs();
      for (std::size_t i = 0; i < std::min(rx.size(), ry.size()); ++i) {
        if (rx[i].var != ry[i].var) return cmp3(rx[i].var, ry[i].var);
        if (rx[i].count != ry[i].count) return cmp3(rx[i].count, ry[i].count);
      }
      if (rx.size() != ry.size()) return cmp3(rx.size(), ry.size());
      return formula_compare(x.child(), y.child());
    }
  }
  return 0;
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) { return formula_equal(a.node_.get(), b.node_.get()); }
bool operator<(const Formula& a, const Formula& b) { return formula_compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::initializer_list<std::pair<Variable, Value>> init) {
  for (const auto& [v, x] : init) set(v, x);
}

std::optional<Value> Assignment::get(Variable v) const {
  auto it = std::lower_bound(b_.begin(), b_.end(), v, [](const auto& p, Variable w) { return p.first < w; });
  if (it != b_.end() && it->first == v) return it->second;
  return std::nullopt;
}

void Assignment::set(Variable v, Value x) {
  auto it = std::lower_bound(b_.begin(), b_.end(), v, [](const auto& p, Variable w) { return p.first < w; });
  if (it != b_.end() && it->first == v) {
    it->second = x;
  } else {
    b_.insert(it, {v, x});
  }
}

bool Assignment::covers(const VariableSet& vars) const {
  return std::all_of(vars.begin(), vars.end(), [&](Variable v) { return get(v).has_value(); });
}

Assignment Assignment::restrict_to(const VariableSet& vars) const {
  Assignment out;
  for (const auto& p : b_) {
    if (set_contains(vars, p.first)) out.b_.push_back(p);
  }
  return out;
}

VariableSet Assignment::domain() const {
  VariableSet s;
  for (const auto& p : b_) s.push_back(p.first);
  return s;
}

std::size_t Assignment::hash() const {
  std::size_t h = 0x51ed;
  for (const auto& [v, x] : b_) h = mix(mix(h, v.index()), x);
  return h;
}

// ---------------------------------------------------------------------------
// Operations

Term numeral(Value x) { return Term::numeral(x); }

Formula map_terms(const Formula& f, const std::function<Term(const Term&, const VariableSet&)>& fn) {
  std::function<Formula(const Formula&, const VariableSet&)> go = [&](const Formula& g, const VariableSet& bound) {
    switch (g.kind()) {
      case FormulaKind::Eq: {
        Term l = fn(g.lhs_term(), bound);
        return Formula::eq(l, fn(g.rhs_term(), bound));
      }
      case FormulaKind::Not: return Formula::neg(go(g.child(), bound));
      case FormulaKind::Or: {
        Formula l = go(g.child(0), bound);
        return Formula::disj(l, go(g.child(1), bound));
      }
      case FormulaKind::And: {
        Formula l = go(g.child(0), bound);
        return Formula::conj(l, go(g.child(1), bound));
      }
      case FormulaKind::RepConj: return Formula::rep_conj(go(g.child(), bound), g.rep_count());
      case FormulaKind::Block:
        return Formula::quant(g.quantifier(), g.block_vars(),
                              go(g.child(), set_union(bound, g.block_vars().distinct())));
    }
    return g;
  };
  return go(f, {});
}

namespace {

Term substitute_term(const Term& t, const Assignment& a, const VariableSet& bound) {
  if (t.is_closed()) return t;
  switch (t.kind()) {
    case TermKind::Numeral: return t;
    case TermKind::Var: {
      if (set_contains(bound, t.variable())) return t;
      auto x = a.get(t.variable());
      if (!x) throw EvalError("assignment does not cover variable " + t.variable().name());
      return Term::numeral(*x);
    }
    case TermKind::Succ: return Term::succ(substitute_term(t.lhs(), a, bound));
    case TermKind::Add:
    case TermKind::Mul: {
      Term l = substitute_term(t.lhs(), a, bound);
      Term r = substitute_term(t.rhs(), a, bound);
      return t.kind() == TermKind::Add ? Term::add(l, r) : Term::mul(l, r);
    }
  }
  return t;
}

}  // namespace

Term substitute(const Term& t, const Assignment& a) { return substitute_term(t, a, {}); }

Formula substitute(const Formula& f, const Assignment& a) {
  if (!a.covers(f.free_vars())) throw EvalError("assignment does not cover the free variables of the formula");
  if (f.is_sentence()) return f;
  return map_terms(f, [&](const Term& t, const VariableSet& bound) { return substitute_term(t, a, bound); });
}

VariableSet bound_variables(const Formula& f) {
  std::unordered_set<const Formula::Node*> seen;
  VariableSet out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!seen.insert(g.node_ptr()).second) return;
    switch (g.kind()) {
      case FormulaKind::Eq: return;
      case FormulaKind::Not:
      case FormulaKind::RepConj: go(g.child()); return;
      case FormulaKind::Or:
      case FormulaKind::And:
        go(g.child(0));
        go(g.child(1));
        return;
      case FormulaKind::Block:
        out = set_union(out, g.block_vars().distinct());
        go(g.child());
        return;
    }
  };
  go(f);
  return out;
}

std::vector<BlockStrip> block_strips(const Formula& f, std::uint64_t limit) {
  std::vector<BlockStrip> out;
  if (f.kind() != FormulaKind::Block) return out;
  if (f.block_length() > limit) throw BudgetExceeded("quantifier block too long to enumerate strips", f.block_length());
  auto n = static_cast<std::uint64_t>(f.block_length());
  const VarSeq& vars = f.block_vars();
  for (std::uint64_t k = 1; k <= n; ++k) {
    out.push_back({f.quantifier(), vars.take_front(k), Formula::quant(f.quantifier(), vars.drop_front(k), f.child())});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::Numeral: {
      auto n = static_cast<std::uint64_t>(t.count());
      for (std::uint64_t i = 0; i < n; ++i) os << 'S';
      os << '0';
      return;
    }
    case TermKind::Var: os << t.variable().name(); return;
    case TermKind::Succ: os << 'S'; print_term(os, t.lhs()); return;
    case TermKind::Add:
    case TermKind::Mul:
      os << '(';
      print_term(os, t.lhs());
      os << (t.kind() == TermKind::Add ? '+' : '*');
      print_term(os, t.rhs());
      os << ')';
      return;
  }
}

void print_formula(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      print_term(os, f.lhs_term());
      os << '=';
      print_term(os, f.rhs_term());
      return;
    case FormulaKind::Not: os << '~'; print_formula(os, f.child()); return;
    case FormulaKind::Or:
    case FormulaKind::And:
      os << '(';
      print_formula(os, f.child(0));
      os << (f.kind() == FormulaKind::Or ? " \\/ " : " /\\ ");
      print_formula(os, f.child(1));
      os << ')';
      return;
    case FormulaKind::RepConj: {
      std::ostringstream body;
      print_formula(body, f.child());
      auto k = static_cast<std::uint64_t>(f.rep_count());
      for (std::uint64_t i = 1; i < k; ++i) os << '(';
      os << body.str();
      for (std::uint64_t i = 1; i < k; ++i) os << " /\\ " << body.str() << ')';
      return;
    }
    case FormulaKind::Block: {
      const char* q = f.quantifier() == Quantifier::Exists ? "E " : "A ";
      for (const auto& r : f.block_vars().runs()) {
        for (std::uint64_t i = 0; i < r.count; ++i) os << q << r.var.name() << ' ';
      }
      print_formula(os, f.child());
      return;
    }
  }
}

}  // namespace

std::string print(const Term& t, std::uint64_t node_budget) {
  if (t.node_count() > node_budget) throw BudgetExceeded("term too large to print", t.node_count());
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::string print(const Formula& f, std::uint64_t node_budget) {
  if (f.ast_size() > node_budget) throw BudgetExceeded("formula too large to print", f.ast_size());
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}

}  // namespace satwork
