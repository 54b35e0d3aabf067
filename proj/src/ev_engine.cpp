#include "satwork/ev_engine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "satwork/equivalence.hpp"
#include "satwork/families.hpp"

namespace satwork {

namespace {

constexpr std::uint64_t kStripLimit = std::uint64_t{1} << 16;
constexpr std::uint64_t kTemplateBudget = std::uint64_t{1} << 16;

// f with its first k quantifiers removed; 1 <= k <= block length.
Formula strip(const Formula& f, const BigNat& k) {
  if (k == f.block_length()) return f.child();
  return Formula::quant(f.quantifier(), f.block_vars().drop_front(k), f.child());
}

bool is_suffix(const VarSeq& s, const VarSeq& of) {
  BigNat n = s.length(), m = of.length();
  return n <= m && of.drop_front(m - n) == s;
}

bool is_eta_of(const Formula& f, const std::optional<BigNat>& a) {
  if (!a) return false;
  auto m = match_eta(f);
  return m && m->a == *a;
}

// Position of f on the chain eta(a; suffix of vs), if it lies on it.
std::optional<VarSeq> chain_prefix(const Formula& f, const BigNat& a, const VarSeq& vs) {
  auto m = match_eta(f);
  if (!m || m->a != a || !is_suffix(m->prefix, vs)) return std::nullopt;
  return m->prefix;
}

// Class key: the template skeleton, or the formula itself when its template
// is too large to build (such formulas only ever form singleton classes).
struct ClassKey {
  bool singleton;
  Formula f;
  friend bool operator==(const ClassKey&, const ClassKey&) = default;
};
struct ClassKeyHash {
  std::size_t operator()(const ClassKey& k) const { return k.f.hash() * 2 + k.singleton; }
};

ClassKey class_key(const Formula& f) {
  try {
    return {false, template_of(f, kTemplateBudget).skeleton};
  } catch (const BudgetExceeded&) {
    return {true, f};
  }
}

std::vector<Formula> closure_candidates(const Formula& f) {
  std::vector<Formula> out = f.direct_subformulas();
  if (f.kind() == FormulaKind::Block) {
    BigNat n = f.block_length();
    std::uint64_t lim = n > kStripLimit ? kStripLimit : static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 2; k <= lim; ++k) out.push_back(strip(f, k));
  }
  return out;
}

}  // namespace

Formula root(const Formula& f, const BigNat& b) {
  if (f.kind() != FormulaKind::Block) throw Error("root of an unquantified formula: " + print_compact(f));
  if (f.depth() > b) {
    BigNat k = f.depth() - b;
    if (k <= f.block_length()) return strip(f, k);
  }
  return f.child();
}

std::string to_string(Classification c) {
  return c == Classification::Problematic ? "problematic" : "unproblematic";
}

Classification classify(const Formula& f, const BigNat& b, const std::optional<BigNat>& a) {
  if (f.depth() <= b || is_eta_of(f, a)) return Classification::Problematic;
  return Classification::Unproblematic;
}

void check_config(const StepConfig& cfg, const std::vector<Formula>& fragment) {
  for (const auto& f : class_domain(cfg.base)) {
    if (f.depth() > cfg.b) throw ConstructionError("base class decides a formula deeper than b: " + print_compact(f));
  }
  if (!cfg.initial_step) return;
  if (!cfg.a || *cfg.a < 1) throw ConstructionError("initial step needs a pathology target a >= 1");
  if (cfg.m1 < 1 || cfg.m2 < 1) throw ConstructionError("margins must be positive");
  if (cfg.w.length() < cfg.b + cfg.m1) throw ConstructionError("|w| - b is below the margin");
  if (!cfg.w.is_prefix_of(cfg.w_prime) || cfg.w_prime.length() < cfg.w.length() + cfg.m2) {
    throw ConstructionError("w must be an initial segment of w' with |w'| - |w| at least the margin");
  }
  if (is_suffix(cfg.w, cfg.w_prime)) throw ConstructionError("eta(a; w) lies on the strip chain of eta(a; w')");
  if (eta(*cfg.a, cfg.w).depth() <= cfg.b) throw ConstructionError("eta(a; w) has depth at most b");
  // The w' chain must bottom out in a formula whose direct strip is absent,
  // so that nothing true can propagate up to eta(a; w').
  FormulaSet present(fragment.begin(), fragment.end());
  for (const auto& f : fragment) {
    auto p = chain_prefix(f, *cfg.a, cfg.w_prime);
    if (!p || p->empty() || f.depth() <= cfg.b) continue;
    Formula below = eta(*cfg.a, p->drop_front(1));
    if (!present.count(below)) continue;
    if (below.depth() <= cfg.b || p->length() == 1) {
      throw ConstructionError("no gap below the w' chain at " + print_compact(f));
    }
  }
}

FragmentUniverse build_universe(const std::vector<Formula>& gamma, const StepConfig& cfg) {
  FragmentUniverse u;
  FormulaSet seen;
  auto push = [&](const Formula& f) {
    if (!seen.insert(f).second) return false;
    u.formulas.push_back(f);
    return true;
  };
  for (const auto& f : gamma) push(f);
  if (cfg.initial_step && cfg.a) {
    push(eta(*cfg.a, cfg.w));
    push(eta(*cfg.a, cfg.w_prime));
    push(eta(*cfg.a));
  }
  std::size_t base = u.formulas.size();
  for (std::size_t i = 0; i < base; ++i) {
    const Formula f = u.formulas[i];
    if (f.kind() != FormulaKind::Block) continue;
    Formula r = root(f, cfg.b);
    if (push(r)) u.roots_added.push_back(r);
  }

  std::unordered_map<ClassKey, std::size_t, ClassKeyHash> key_index;
  auto assign = [&](const Formula& f, const ClassKey& k) {
    auto [it, fresh] = key_index.emplace(k, u.classes.size());
    if (fresh) u.classes.emplace_back();
    u.classes[it->second].push_back(f);
    u.class_of[f] = it->second;
  };
  for (const auto& f : u.formulas) assign(f, class_key(f));

  // Add subformulas and strips similar to a formula already present, so that
  // similar formulas see the same shape of fragment below them.
  std::deque<Formula> queue(u.formulas.begin(), u.formulas.end());
  while (!queue.empty()) {
    Formula f = queue.front();
    queue.pop_front();
    for (const auto& c : closure_candidates(f)) {
      if (seen.count(c)) continue;
      ClassKey k = class_key(c);
      if (!key_index.count(k)) continue;
      push(c);
      assign(c, k);
      queue.push_back(c);
    }
  }
  return u;
}

Order build_order(const FragmentUniverse& u, const BigNat& /*b*/, const std::optional<BigNat>& a) {
  std::size_t n = u.classes.size();
  Order o;
  o.preds.assign(n, {});
  auto in_u = [&](const Formula& f) { return u.class_of.count(f) > 0; };
  for (const auto& f : u.formulas) {
    std::size_t cf = u.class_of.at(f);
    for (const auto& d : f.direct_subformulas()) {
      if (in_u(d)) o.preds[cf].insert(u.class_of.at(d));
    }
    if (f.kind() != FormulaKind::Block) continue;
    // Shortest jump: the first strip present in the fragment.
    BigNat len = f.block_length();
    std::uint64_t lim = len > kStripLimit ? kStripLimit : static_cast<std::uint64_t>(len);
    for (std::uint64_t k = 1; k <= lim; ++k) {
      Formula s = strip(f, k);
      if (!in_u(s)) continue;
      if (k == 1 || !is_eta_of(s, a)) {
        o.jump[f] = k;
        o.preds[cf].insert(u.class_of.at(s));
      }
      break;
    }
  }

  // Kahn's algorithm; rank = 1 + max over predecessors.
  std::vector<std::vector<std::size_t>> succs(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p : o.preds[c]) {
      succs[p].push_back(c);
      ++indeg[c];
    }
  }
  o.rank.assign(n, 0);
  std::deque<std::size_t> ready;
  for (std::size_t c = 0; c < n; ++c)
    if (indeg[c] == 0) ready.push_back(c);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t c = ready.front();
    ready.pop_front();
    ++done;
    for (std::size_t s : succs[c]) {
      o.rank[s] = std::max(o.rank[s], o.rank[c] + 1);
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  if (done != n) {
    std::ostringstream os;
    os << "order is cyclic among:";
    for (std::size_t c = 0; c < n; ++c)
      if (indeg[c] > 0) os << ' ' << print_compact(u.classes[c].front());
    throw ConstructionError(os.str());
  }
  return o;
}

namespace {

// Values of the base class, extended compositionally to fragment formulas of
// depth <= b that it does not mention.
class BaseValues {
 public:
  explicit BaseValues(const SatClass& p) : p_(p), dom_(class_domain(p)) {
    for (const auto& f : dom_)
      if (f.kind() == FormulaKind::RepConj) reps_.push_back(f);
  }

  bool value(const Formula& f, const Assignment& a) {
    Assignment r = a.restrict_to(f.free_vars());
    if (dom_.count(f)) return p_.contains(f, r);
    Member key{f, r};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = compute(f, r);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  bool compute(const Formula& f, const Assignment& a) {
    const Backend& b = p_.backend();
    switch (f.kind()) {
      case FormulaKind::Eq:
        return eval_term(f.lhs_term(), a, b) == eval_term(f.rhs_term(), a, b);
      case FormulaKind::Not:
        return !value(f.child(), a);
      case FormulaKind::Or:
        return value(f.child(0), a) || value(f.child(1), a);
      case FormulaKind::And:
        return value(f.child(0), a) && value(f.child(1), a);
      case FormulaKind::RepConj: {
        // Jump to the longest shorter repetition the base class decides.
        std::optional<Formula> best;
        for (const auto& g : reps_) {
          if (g.child() == f.child() && g.rep_count() < f.rep_count() &&
              (!best || g.rep_count() > best->rep_count()))
            best = g;
        }
        bool body = value(f.child(), a);
        return best ? body && value(*best, a) : body;
      }
      case FormulaKind::Block: {
        bool want = f.quantifier() == Quantifier::Exists;
        Formula body = f.quantified_body();
        for (const auto& c : asn_variants(a, VariableSet{f.bound_variable()}, b)) {
          if (value(body, c) == want) return want;
        }
        return !want;
      }
    }
    return false;
  }

  const SatClass& p_;
  FormulaSet dom_;
  std::vector<Formula> reps_;
  std::unordered_map<Member, bool, MemberHash> memo_;
};

bool is_seed(const Formula& f, const StepConfig& cfg) {
  if (!cfg.initial_step || !cfg.a || f.depth() <= cfg.b) return false;
  auto p = chain_prefix(f, *cfg.a, cfg.w);
  return p && !is_suffix(*p, cfg.w_prime);
}

}  // namespace

StepResult ev_step(const StepConfig& cfg, const std::vector<Formula>& gamma) {
  const Backend& backend = cfg.base.backend();
  if (!backend.is_finite()) throw UnsupportedEnumeration("the construction needs a finite carrier");
  FragmentUniverse u = build_universe(gamma, cfg);
  check_config(cfg, u.formulas);
  Order order = build_order(u, cfg.b, cfg.a);

  std::vector<Formula> universe = u.formulas;
  for (const auto& f : cfg.base.universe())
    if (!u.class_of.count(f)) universe.push_back(f);
  SatClass s(backend, universe, true);

  // S_0: the base class, its extension to shallow fragment formulas (atoms
  // included), and the seeds of eta(a; w).
  for (const auto& m : cfg.base.members()) s.add(m.formula, m.asn);
  BaseValues base(cfg.base);
  FormulaSet fixed;
  for (const auto& f : u.formulas) {
    if (f.depth() <= cfg.b) {
      fixed.insert(f);
      for (const auto& a : canonical_assignments(f, backend))
        if (base.value(f, a)) s.add(f, a);
    } else if (is_seed(f, cfg)) {
      fixed.insert(f);
      for (const auto& a : canonical_assignments(f, backend)) s.add(f, a);
    }
  }

  StepResult r{s, u, order, {}};
  SatClass& out = r.s;
  r.chain.rank = order.rank;
  r.chain.stages.push_back(out.sorted_members());
  std::size_t max_rank = 0;
  for (std::size_t k : order.rank) max_rank = std::max(max_rank, k);
  if (max_rank > u.classes.size()) throw ConstructionError("rank exceeds the number of classes");

  for (std::size_t j = 1; j <= max_rank; ++j) {
    std::vector<Member> added;
    for (std::size_t c = 0; c < u.classes.size(); ++c) {
      if (order.rank[c] != j) continue;
      for (const auto& f : u.classes[c]) {
        if (fixed.count(f)) continue;
        for (const auto& a : canonical_assignments(f, backend)) {
          bool v = false;
          switch (f.kind()) {
            case FormulaKind::Eq:
              v = base.value(f, a);
              break;
            case FormulaKind::Not:
              v = !out.contains(f.child(), a);
              break;
            case FormulaKind::Or:
              v = out.contains(f.child(0), a) || out.contains(f.child(1), a);
              break;
            case FormulaKind::And:
            case FormulaKind::RepConj: {
              auto subs = f.direct_subformulas();
              v = out.contains(subs[0], a) && out.contains(subs[1], a);
              break;
            }
            case FormulaKind::Block: {
              auto it = order.jump.find(f);
              if (it == order.jump.end()) break;
              Formula body = strip(f, it->second);
              VariableSet vars;
              for (Variable x : f.block_vars().take_front(it->second).distinct())
                if (set_contains(body.free_vars(), x)) vars.push_back(x);
              bool want = f.quantifier() == Quantifier::Exists;
              v = !want;
              for (const auto& c2 : asn_variants(a, vars, backend)) {
                if (out.contains(body, c2) == want) {
                  v = want;
                  break;
                }
              }
              break;
            }
          }
          if (v) added.push_back({f, a});
        }
      }
    }
    // Same-rank formulas never read each other, so adding late is equivalent.
    for (const auto& m : added) out.add(m.formula, m.asn);
    r.chain.stages.push_back(out.sorted_members());
  }
  return r;
}

Report verify_theta(const StepResult& r, const StepConfig& cfg) {
  Report rep;
  const SatClass& s = r.s;
  for (const auto& m : cfg.base.sorted_members()) {
    if (!s.contains(m.formula, m.asn)) rep.violations.push_back({"compatibility", m.formula, m.asn, "base pair dropped"});
  }
  FormulaSet present(r.universe.formulas.begin(), r.universe.formulas.end());
  for (const auto& f : r.universe.formulas) {
    auto subs = f.direct_subformulas();
    if (subs.empty() || !std::all_of(subs.begin(), subs.end(), [&](const Formula& d) { return present.count(d) > 0; }))
      continue;
    CompResult c = check_comp(s, f);
    if (!c.ok) rep.violations.push_back({"comp", f, c.witness, c.clause});
  }
  for (auto& v : check_regular(s).violations) rep.violations.push_back(std::move(v));
  for (const auto& f : r.universe.formulas) {
    if (classify(f, cfg.b, cfg.a) != Classification::Unproblematic) continue;
    QcStatus q = qc_formula(s, f, present);
    if (q.kind == QcKind::Fails) rep.violations.push_back({"qc", f, q.witness, "fails for " + print_compact(*q.block)});
  }
  if (cfg.initial_step && cfg.a) {
    Formula tw = eta(*cfg.a, cfg.w), fw = eta(*cfg.a, cfg.w_prime), ea = eta(*cfg.a);
    if (!s.contains(tw, {})) rep.violations.push_back({"seed", tw, Assignment{}, "eta(a; w) not satisfied"});
    if (s.contains(fw, {})) rep.violations.push_back({"seed", fw, Assignment{}, "eta(a; w') satisfied"});
    if (qc_formula(s, ea, present).kind != QcKind::Fails)
      rep.violations.push_back({"seed", ea, std::nullopt, "quantifier correctness does not fail for eta(a)"});
  }
  rep.sort();
  return rep;
}

SatClass ev_chain(const StepFn& step, const SatClass& initial, const std::vector<Formula>& target) {
  std::set<BigNat> depths;
  for (const auto& f : target) depths.insert(f.depth());
  std::vector<SatClass> stages;
  SatClass prev = initial;
  std::size_t index = 0;
  for (const BigNat& d : depths) {
    std::vector<Formula> slice;
    for (const auto& f : target)
      if (f.depth() <= d) slice.push_back(f);
    SatClass next = step(prev, slice);
    for (const auto& m : prev.members())
      if (!next.contains(m.formula, m.asn)) throw ChainError("stage drops a member of its predecessor", index);
    for (const auto& f : slice)
      if (!next.in_universe(f)) throw ChainError("stage does not cover its slice", index);
    if (!verify_satclass(next, VerifyMode::Fragment).ok()) throw ChainError("stage fails verification", index);
    stages.push_back(next);
    prev = std::move(next);
    ++index;
  }
  if (stages.empty()) return initial;
  std::vector<Formula> universe;
  FormulaSet seen;
  for (const auto& st : stages)
    for (const auto& f : st.universe())
      if (seen.insert(f).second) universe.push_back(f);
  SatClass u(initial.backend(), universe, true);
  for (const auto& st : stages)
    for (const auto& m : st.members()) u.add(m.formula, m.asn);
  if (!verify_satclass(u, VerifyMode::Fragment).ok()) throw ChainError("union fails verification", stages.size());
  return u;
}

StepFn no_pathology_step() {
  return [](const SatClass& prev, const std::vector<Formula>& slice) {
    BigNat b = 0;
    for (const auto& f : class_domain(prev)) b = std::max(b, f.depth());
    StepConfig cfg{prev, b, std::nullopt, {}, {}, false, 1, 1};
    return ev_step(cfg, slice).s;
  };
}

namespace {

constexpr std::uint64_t kChainVarBase = std::uint64_t{1} << 36;
constexpr std::uint64_t kSegmentVarBase = kChainVarBase + 4096;

}  // namespace

DefinabilityResult definability_run(const std::set<BigNat>& targets, const DefinabilityParams& params) {
  if (!params.schedule.empty() && params.schedule.size() != targets.size())
    throw SchedulingError("schedule must give one depth cutoff per target");
  if (params.chain_length > 4096) throw Error("chain length too large");
  for (const auto& a : targets)
    if (a < 1) throw Error("eta counts start at 1");

  DefinabilityResult res{SatClass(params.backend, {}, true), {}, {}, {}, {}, {}};
  for (std::uint64_t x = 1; x <= params.scan_max; ++x) res.scanned.insert(BigNat(x));
  res.scanned.insert(targets.begin(), targets.end());

  std::vector<Variable> chain_vars;
  for (std::uint64_t i = 0; i < params.chain_length; ++i) chain_vars.push_back(Variable(kChainVarBase + i));
  VarSeq chain(chain_vars);
  std::vector<Formula> gamma;
  for (const auto& x : res.scanned) {
    for (std::uint64_t k = 0; k <= params.chain_length; ++k) gamma.push_back(eta(x, chain.drop_front(k)));
  }

  auto run_length = [](const BigNat& n) {
    if (n > BigNat(std::numeric_limits<std::uint64_t>::max())) throw SchedulingError("block length exceeds 64 bits");
    return static_cast<std::uint64_t>(n);
  };

  SatClass current(params.backend, {}, true);
  BigNat b = params.b0;
  std::size_t i = 0;
  for (const auto& a : targets) {
    // w = p^(b + m1), w' = w q^m2: w is not a suffix of w', and every proper
    // strip of w' that ends in q stays off the seeded chain.
    Variable p(kSegmentVarBase + 2 * i), q(kSegmentVarBase + 2 * i + 1);
    StepConfig cfg{restrict_depth(current, b), b, a, {}, {}, true, params.m1, params.m2};
    cfg.w.push_back(p, run_length(b + params.m1));
    cfg.w_prime = cfg.w;
    cfg.w_prime.push_back(q, params.m2);

    StepResult r = ev_step(cfg, gamma);
    res.step_reports.push_back(verify_theta(r, cfg));
    res.configs.push_back(cfg);
    res.steps.push_back(r);
    gamma.push_back(eta(a, cfg.w));
    gamma.push_back(eta(a, cfg.w_prime));

    BigNat needed = eta(a, cfg.w_prime).depth();
    BigNat next = needed > b ? needed : b;
    if (!params.schedule.empty()) {
      next = params.schedule[i];
      if (next < b) throw SchedulingError("depth cutoffs must not decrease");
    }
    current = restrict_depth(r.s, next);
    if (qc_formula(current, eta(a)).kind != QcKind::Fails) {
      throw SchedulingError("cutoff " + to_string(next) + " does not retain the failure planted at " + to_string(a));
    }
    b = next;
    ++i;
  }

  StepConfig last{current, b, std::nullopt, {}, {}, false, params.m1, params.m2};
  StepResult r = ev_step(last, gamma);
  res.step_reports.push_back(verify_theta(r, last));
  res.configs.push_back(last);
  res.steps.push_back(r);
  res.s = r.s;
  for (const auto& x : res.scanned) {
    if (qc_formula(res.s, eta(x)).kind == QcKind::Fails) res.recovered.insert(x);
  }
  return res;
}

}  // namespace satwork
