#include "satwork/satclass.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "satwork/equivalence.hpp"
#include "satwork/tarski.hpp"

namespace satwork {

namespace {

constexpr std::size_t kClosureLimit = std::size_t{1} << 20;
constexpr std::size_t kViolationCap = 200;

bool universe_closed(const std::vector<Formula>& universe, const FormulaSet& index) {
  for (const auto& f : universe) {
    for (const auto& g : f.direct_subformulas()) {
      if (!index.count(g)) return false;
    }
  }
  return true;
}

}  // namespace

bool operator<(const Member& a, const Member& b) {
  if (a.formula == b.formula) return a.asn < b.asn;
  return a.formula < b.formula;
}

SatClass::SatClass(Backend backend, std::vector<Formula> universe, bool fragment)
    : backend_(std::move(backend)), fragment_(fragment) {
  for (auto& f : universe) add_to_universe(f);
  if (!fragment_ && !universe_closed(universe_, index_)) {
    throw Error("universe is not closed under direct subformulas");
  }
}

void SatClass::add_to_universe(const Formula& f) {
  if (index_.insert(f).second) universe_.push_back(f);
}

void SatClass::add(const Formula& f, const Assignment& a) {
  if (!a.covers(f.free_vars())) throw Error("member assignment does not cover the free variables");
  members_.insert({f, a.restrict_to(f.free_vars())});
}

void SatClass::remove(const Formula& f, const Assignment& a) { members_.erase({f, a.restrict_to(f.free_vars())}); }

void SatClass::toggle(const Formula& f, const Assignment& a) {
  Member m{f, a.restrict_to(f.free_vars())};
  if (!members_.erase(m)) members_.insert(std::move(m));
}

bool SatClass::contains(const Formula& f, const Assignment& a) const {
  return members_.count({f, a.restrict_to(f.free_vars())}) > 0;
}

std::vector<Member> SatClass::sorted_members() const {
  std::vector<Member> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end());
  return out;
}

FormulaSet SatClass::mentioned() const {
  FormulaSet out;
  for (const auto& m : members_) out.insert(m.formula);
  return out;
}

std::vector<Assignment> canonical_assignments(const Formula& f, const Backend& b) {
  return all_assignments(f.free_vars(), b);
}

void Report::sort() {
  std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    if (a.formula == b.formula) return a.clause < b.clause;
    return a.formula < b.formula;
  });
}

std::vector<Formula> subformula_closure(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  FormulaSet seen;
  std::deque<Formula> work(fs.begin(), fs.end());
  while (!work.empty()) {
    Formula f = work.front();
    work.pop_front();
    if (!seen.insert(f).second) continue;
    if (seen.size() > kClosureLimit) throw BudgetExceeded("subformula closure too large", BigNat(seen.size()));
    out.push_back(f);
    for (auto& g : f.direct_subformulas()) work.push_back(std::move(g));
  }
  return out;
}

namespace {

// Exists/forall over the variables of `vars` that are free in `body`.
bool quantify(const SatClass& s, const Formula& body, const VariableSet& vars, const Assignment& a, Quantifier q) {
  VariableSet live;
  for (Variable v : vars) {
    if (set_contains(body.free_vars(), v)) live.push_back(v);
  }
  Assignment base = a.restrict_to(set_minus(body.free_vars(), live));
  for (const auto& b : asn_variants(base, live, s.backend())) {
    bool in = s.contains(body, b);
    if (q == Quantifier::Exists && in) return true;
    if (q == Quantifier::Forall && !in) return false;
  }
  return q == Quantifier::Forall;
}

}  // namespace

CompResult check_comp(const SatClass& s, const Formula& f) {
  const Backend& b = s.backend();
  std::vector<Formula> subs = f.direct_subformulas();
  std::string clause;
  switch (f.head()) {
    case Connective::Eq: clause = "comp-atomic"; break;
    case Connective::Not: clause = "comp-negation"; break;
    case Connective::Or: clause = "comp-disjunction"; break;
    case Connective::And: clause = "comp-conjunction"; break;
    case Connective::Exists: clause = "comp-exists"; break;
    case Connective::Forall: clause = "comp-forall"; break;
  }
  for (const auto& a : canonical_assignments(f, b)) {
    bool lhs = s.contains(f, a);
    bool rhs = false;
    switch (f.head()) {
      case Connective::Eq: rhs = eval_term(f.lhs_term(), a, b) == eval_term(f.rhs_term(), a, b); break;
      case Connective::Not: rhs = !s.contains(subs[0], a); break;
      case Connective::Or: rhs = s.contains(subs[0], a) || s.contains(subs[1], a); break;
      case Connective::And: rhs = s.contains(subs[0], a) && s.contains(subs[1], a); break;
      case Connective::Exists:
      case Connective::Forall:
        rhs = quantify(s, subs[0], {f.bound_variable()}, a, f.quantifier());
        break;
    }
    if (lhs != rhs) return {false, clause, a};
  }
  return {true, clause, std::nullopt};
}

namespace {

FormulaSet least_domain(const FormulaSet& mentioned) {
  std::vector<Formula> seeds;
  for (const auto& f : mentioned) seeds.push_back(f.kind() == FormulaKind::Not ? f.child() : f);
  std::sort(seeds.begin(), seeds.end());
  FormulaSet out;
  for (const auto& f : subformula_closure(seeds)) out.insert(f);
  return out;
}

}  // namespace

DomainReport minimal_domain(const SatClass& s) {
  DomainReport r;
  FormulaSet mentioned = s.mentioned();
  r.domain = least_domain(mentioned);

  auto add = [&](std::string clause, const Formula& f, std::optional<Assignment> w, std::string detail) {
    if (r.violations.size() < kViolationCap) r.violations.push_back({std::move(clause), f, std::move(w), std::move(detail)});
  };
  for (const auto& m : s.members()) {
    for (const auto& [v, x] : m.asn.bindings()) {
      if (!s.backend().contains(x)) add("typing", m.formula, m.asn, "value " + std::to_string(x) + " outside the carrier");
    }
  }
  for (const auto& f : mentioned) {
    auto c = check_comp(s, f);
    if (!c.ok) add("comp-on-mentioned/" + c.clause, f, c.witness, "");
    bool placed = r.domain.count(f) || (f.kind() == FormulaKind::Not && r.domain.count(f.child()));
    if (!placed) add("domain-membership", f, std::nullopt, "");
  }
  for (const auto& f : r.domain) {
    auto c = check_comp(s, f);
    if (!c.ok) add("comp-on-domain/" + c.clause, f, c.witness, "");
    for (const auto& g : f.direct_subformulas()) {
      if (!r.domain.count(g)) add("subformula-closure", f, std::nullopt, "");
    }
    bool all = true;
    for (const auto& a : canonical_assignments(f, s.backend())) {
      if (!s.contains(f, a) && !s.contains(Formula::neg(f), a)) {
        add("decidedness", f, a, "neither the formula nor its negation holds");
        all = false;
        break;
      }
    }
    if (all) r.decided.insert(f);
  }
  return r;
}

FormulaSet class_domain(const SatClass& s) {
  if (s.fragment()) return FormulaSet(s.universe().begin(), s.universe().end());
  return least_domain(s.mentioned());
}

Report verify_satclass(const SatClass& s, VerifyMode mode) {
  Report r;
  if (mode == VerifyMode::Strict) {
    r.violations = minimal_domain(s).violations;
    r.sort();
    return r;
  }
  for (const auto& m : s.members()) {
    for (const auto& [v, x] : m.asn.bindings()) {
      if (!s.backend().contains(x)) r.violations.push_back({"typing", m.formula, m.asn, "value outside the carrier"});
    }
  }
  for (const auto& f : s.universe()) {
    auto subs = f.direct_subformulas();
    if (!std::all_of(subs.begin(), subs.end(), [&](const Formula& g) { return s.in_universe(g); })) continue;
    auto c = check_comp(s, f);
    if (!c.ok && r.violations.size() < kViolationCap) r.violations.push_back({c.clause, f, c.witness, ""});
  }
  r.sort();
  return r;
}

SatClass complete_presat(const SatClass& s, const FormulaSet& d) {
  for (const auto& f : d) {
    for (const auto& g : f.direct_subformulas()) {
      if (!d.count(g)) throw Error("completion domain is not closed under direct subformulas");
    }
    if (!check_comp(s, f).ok) throw Error("class is not compositional on the completion domain: " + print(f, 4096));
  }
  std::vector<Formula> universe(d.begin(), d.end());
  std::sort(universe.begin(), universe.end());
  SatClass out(s.backend(), universe, false);
  for (const auto& m : s.members()) {
    if (d.count(m.formula)) out.add(m.formula, m.asn);
  }
  for (const auto& f : universe) {
    for (const auto& a : canonical_assignments(f, s.backend())) {
      if (!s.contains(f, a)) out.add(Formula::neg(f), a);
    }
  }
  return out;
}

Report check_regular(const SatClass& s) {
  Report r;
  FormulaSet fs = class_domain(s);
  for (const auto& f : s.mentioned()) fs.insert(f);
  std::vector<Formula> ordered(fs.begin(), fs.end());
  std::sort(ordered.begin(), ordered.end());
  std::unordered_map<Formula, Member, FormulaHash> seen;
  for (const auto& f : ordered) {
    for (const auto& a : canonical_assignments(f, s.backend())) {
      Formula key = value_normal_form(f, a, s.backend());
      auto [it, fresh] = seen.emplace(key, Member{f, a});
      if (fresh) continue;
      const Member& other = it->second;
      if (s.contains(f, a) != s.contains(other.formula, other.asn) && r.violations.size() < kViolationCap) {
        r.violations.push_back({"regularity", f, a, "differs from an equivalent pair on " + print(other.formula, 4096)});
      }
    }
  }
  r.sort();
  return r;
}

std::string to_string(QcKind k) {
  switch (k) {
    case QcKind::Holds: return "holds";
    case QcKind::Fails: return "fails";
    case QcKind::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

QcStatus qc_in(const SatClass& s, const FormulaSet& d, const Formula& f, Quantifier q, const VarSeq& vars) {
  if (vars.empty()) throw Error("quantifier block must be non-empty");
  Formula block = Formula::quant(q, vars, f);
  if (!d.count(block)) return {QcKind::Undetermined, block, std::nullopt};
  VariableSet vs = vars.distinct();
  for (const auto& a : canonical_assignments(block, s.backend())) {
    if (s.contains(block, a) != quantify(s, f, vs, a, q)) {
      return {d.count(f) ? QcKind::Fails : QcKind::Undetermined, block, a};
    }
  }
  return {QcKind::Holds, block, std::nullopt};
}

}  // namespace

QcStatus qc_status(const SatClass& s, const Formula& f, Quantifier q, const VarSeq& vars) {
  return qc_in(s, class_domain(s), f, q, vars);
}

QcStatus qc_formula(const SatClass& s, const Formula& f) { return qc_formula(s, f, class_domain(s)); }

QcStatus qc_formula(const SatClass& s, const Formula& f, const FormulaSet& domain) {
  std::vector<Formula> blocks;
  for (const auto& g : domain) {
    if (g.kind() == FormulaKind::Block) blocks.push_back(g);
  }
  std::sort(blocks.begin(), blocks.end());
  QcStatus result;
  for (const auto& g : blocks) {
    if (g.block_length() > (std::uint64_t{1} << 16)) continue;
    for (const auto& strip : block_strips(g)) {
      if (strip.remainder != f) continue;
      QcStatus st = qc_in(s, domain, f, strip.quantifier, strip.prefix);
      if (st.kind == QcKind::Fails) return st;
      if (st.kind == QcKind::Undetermined && result.kind == QcKind::Holds) result = st;
    }
  }
  return result;
}

SatClass restrict_depth(const SatClass& s, const BigNat& b) {
  std::vector<Formula> universe;
  for (const auto& f : s.universe()) {
    if (f.depth() <= b) universe.push_back(f);
  }
  SatClass out(s.backend(), universe, true);
  out.set_fragment(s.fragment());
  for (const auto& m : s.members()) {
    if (m.formula.depth() <= b) out.add(m.formula, m.asn);
  }
  return out;
}

bool decides(const SatClass& s, const Formula& f) {
  Formula nf = Formula::neg(f);
  for (const auto& a : canonical_assignments(f, s.backend())) {
    if (!s.contains(f, a) && !s.contains(nf, a)) return false;
  }
  return true;
}

void decide_by_negation(SatClass& s) {
  for (const auto& f : least_domain(s.mentioned())) {
    Formula nf = Formula::neg(f);
    for (const auto& a : canonical_assignments(f, s.backend())) {
      if (!s.contains(f, a)) s.add(nf, a);
    }
  }
}

SatClass tarski_satclass(const std::vector<Formula>& universe, const Backend& b) {
  SatClass out(b, universe, false);
  for (const auto& f : universe) {
    for (const auto& a : canonical_assignments(f, b)) {
      Verdict v = tarski_sat(f, a, b);
      if (v == Verdict::Unknown) throw EvalError("bounded search is inconclusive for " + print(f, 4096));
      if (v == Verdict::True) out.add(f, a);
    }
  }
  decide_by_negation(out);
  return out;
}

}  // namespace satwork
