#include "satwork/truth.hpp"

#include <algorithm>
#include <unordered_map>

#include "satwork/equivalence.hpp"

namespace satwork {

namespace {

constexpr std::size_t kViolationCap = 200;

const char* kAxiomNames[] = {"typing",      "atomic", "negation",    "disjunction",
                             "conjunction", "exists", "forall",      "regularity"};

void note(AxiomResult& r, const Formula& f, std::string detail) {
  r.status = "fail";
  if (r.violations.size() < kViolationCap) r.violations.push_back({r.name, f, std::nullopt, std::move(detail)});
}

}  // namespace

TruthClass::TruthClass(Backend backend, std::vector<Formula> universe) : backend_(std::move(backend)) {
  for (const auto& f : universe) add_to_universe(f);
}

void TruthClass::add_to_universe(const Formula& f) {
  if (index_.insert(f).second) universe_.push_back(f);
}

std::vector<Formula> TruthClass::sorted_members() const {
  std::vector<Formula> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool CtReport::ok() const {
  if (!missing.empty()) return false;
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.status == "pass"; });
}

CtReport check_ct(const TruthClass& t) {
  CtReport rep;
  for (int i = 0; i < 8; ++i) rep.axioms.push_back({i + 1, kAxiomNames[i], "pass", 0, {}});
  auto& typing = rep.axioms[0];
  auto& atomic = rep.axioms[1];
  auto& negation = rep.axioms[2];
  auto& disj = rep.axioms[3];
  auto& conj = rep.axioms[4];
  auto& ex = rep.axioms[5];
  auto& all = rep.axioms[6];
  auto& regular = rep.axioms[7];
  const Backend& b = t.backend();
  FormulaSet missing;
  auto need = [&](const Formula& f) {
    if (t.in_universe(f)) return true;
    missing.insert(f);
    return false;
  };

  for (const auto& f : t.sorted_members()) {
    ++typing.instances;
    if (!f.is_sentence()) note(typing, f, "member is not a sentence");
    else if (!t.in_universe(f)) note(typing, f, "member is outside the universe");
  }

  bool quantifiers_ok = b.is_finite() && b.numeral_coherent();
  std::vector<Formula> sentences;
  for (const auto& f : t.universe()) {
    if (f.is_sentence()) sentences.push_back(f);
  }
  std::sort(sentences.begin(), sentences.end());

  for (const auto& f : sentences) {
    bool in = t.contains(f);
    switch (f.head()) {
      case Connective::Eq: {
        ++atomic.instances;
        bool truth = eval_term(f.lhs_term(), {}, b) == eval_term(f.rhs_term(), {}, b);
        if (in != truth) note(atomic, f, truth ? "true equation missing" : "false equation present");
        break;
      }
      case Connective::Not: {
        if (!need(f.child())) break;
        ++negation.instances;
        if (in == t.contains(f.child())) note(negation, f, "negation agrees with its operand");
        break;
      }
      case Connective::Or:
      case Connective::And: {
        auto subs = f.direct_subformulas();
        if (!need(subs[0]) || !need(subs[1])) break;
        bool l = t.contains(subs[0]), r = t.contains(subs[1]);
        auto& ax = f.head() == Connective::Or ? disj : conj;
        ++ax.instances;
        bool expect = f.head() == Connective::Or ? (l || r) : (l && r);
        if (in != expect) note(ax, f, "connective clause violated");
        break;
      }
      case Connective::Exists:
      case Connective::Forall: {
        auto& ax = f.head() == Connective::Exists ? ex : all;
        if (!quantifiers_ok) {
          ax.status = "rejected";
          break;
        }
        Formula body = f.quantified_body();
        Variable v = f.bound_variable();
        bool any = false, every = true, complete = true;
        for (Value x : b.carrier()) {
          Formula inst = substitute(body, Assignment{{v, x}}.restrict_to(body.free_vars()));
          if (!need(inst)) {
            complete = false;
            continue;
          }
          bool hit = t.contains(inst);
          any = any || hit;
          every = every && hit;
        }
        if (!complete) break;
        ++ax.instances;
        bool expect = f.head() == Connective::Exists ? any : every;
        if (in != expect) note(ax, f, "numeral instances disagree with the quantified sentence");
        break;
      }
    }
  }

  if (!quantifiers_ok) {
    regular.status = "rejected";
    for (auto* ax : {&ex, &all}) {
      if (ax->status == "pass") ax->status = "rejected";
    }
  } else {
    std::unordered_map<Formula, Formula, FormulaHash> groups;
    for (const auto& f : sentences) {
      ++regular.instances;
      auto [it, fresh] = groups.emplace(value_normal_form(f, {}, b), f);
      if (!fresh && t.contains(f) != t.contains(it->second)) {
        note(regular, f, "differs from " + print(it->second, 4096) + " with equal term values");
      }
    }
  }
  rep.missing.assign(missing.begin(), missing.end());
  std::sort(rep.missing.begin(), rep.missing.end());
  return rep;
}

Conversion s_to_t(const SatClass& s) {
  std::vector<Formula> sentences;
  for (const auto& f : s.universe()) {
    if (f.is_sentence()) sentences.push_back(f);
  }
  TruthClass t(s.backend(), sentences);
  for (const auto& f : sentences) {
    if (s.contains(f, {})) t.add(f);
  }
  return {std::move(t), check_regular(s).ok()};
}

SatClass t_to_s(const TruthClass& t, const std::optional<std::vector<Formula>>& formulas) {
  const std::vector<Formula>& universe = formulas ? *formulas : t.universe();
  FormulaSet missing;
  std::vector<std::pair<Formula, Assignment>> hits;
  for (const auto& f : universe) {
    for (const auto& a : canonical_assignments(f, t.backend())) {
      Formula inst = substitute(f, a);
      if (!t.in_universe(inst)) {
        missing.insert(inst);
      } else if (t.contains(inst)) {
        hits.emplace_back(f, a);
      }
    }
  }
  if (!missing.empty()) {
    std::vector<Formula> list(missing.begin(), missing.end());
    std::sort(list.begin(), list.end());
    throw ClosureError("truth universe lacks " + std::to_string(list.size()) + " substitution instances", list);
  }
  // The universe of a sentence-only truth class need not be subformula closed.
  SatClass s(t.backend(), universe, true);
  s.set_fragment(false);
  for (const auto& [f, a] : hits) s.add(f, a);
  decide_by_negation(s);
  return s;
}

CtReport check_qc_axioms(const TruthClass& t) {
  CtReport rep;
  rep.axioms.push_back({1, "block-exists", "pass", 0, {}});
  rep.axioms.push_back({2, "block-forall", "pass", 0, {}});
  const Backend& b = t.backend();
  FormulaSet missing;
  std::vector<Formula> sentences;
  for (const auto& f : t.universe()) {
    if (f.is_sentence() && f.kind() == FormulaKind::Block) sentences.push_back(f);
  }
  std::sort(sentences.begin(), sentences.end());
  for (const auto& f : sentences) {
    auto& ax = rep.axioms[f.quantifier() == Quantifier::Exists ? 0 : 1];
    if (!b.is_finite() || !b.numeral_coherent()) {
      ax.status = "rejected";
      continue;
    }
    if (f.block_length() > (std::uint64_t{1} << 16)) continue;
    for (const auto& strip : block_strips(f)) {
      const Formula& body = strip.remainder;
      VariableSet live;
      for (Variable v : strip.prefix.distinct()) {
        if (set_contains(body.free_vars(), v)) live.push_back(v);
      }
      bool any = false, every = true, complete = true;
      for (const auto& a : asn_variants({}, live, b)) {
        Formula inst = substitute(body, a);
        if (!t.in_universe(inst)) {
          missing.insert(inst);
          complete = false;
          continue;
        }
        bool hit = t.contains(inst);
        any = any || hit;
        every = every && hit;
      }
      if (!complete) continue;
      ++ax.instances;
      bool expect = strip.quantifier == Quantifier::Exists ? any : every;
      if (t.contains(f) != expect) {
        ax.status = "fail";
        if (ax.violations.size() < kViolationCap) {
          ax.violations.push_back({ax.name, f, std::nullopt, "block of length " + strip.prefix.length().str()});
        }
      }
    }
  }
  rep.missing.assign(missing.begin(), missing.end());
  std::sort(rep.missing.begin(), rep.missing.end());
  return rep;
}

}  // namespace satwork
