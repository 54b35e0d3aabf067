// Satisfaction classes over a finite backend and their verifiers.

#ifndef SATWORK_SATCLASS_HPP
#define SATWORK_SATCLASS_HPP

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "satwork/backend.hpp"
#include "satwork/syntax.hpp"

namespace satwork {

struct Member {
  Formula formula;
  Assignment asn;  // domain is exactly FV(formula)
  friend bool operator==(const Member&, const Member&) = default;
};

struct MemberHash {
  std::size_t operator()(const Member& m) const { return m.formula.hash() * 1000003u ^ m.asn.hash(); }
};

bool operator<(const Member& a, const Member& b);

using MemberSet = std::unordered_set<Member, MemberHash>;

class SatClass {
 public:
  // A fragment class is only meant to be compositional on its universe;
  // a non-fragment universe must be closed under direct subformulas.
  SatClass(Backend backend, std::vector<Formula> universe, bool fragment = false);

  const Backend& backend() const { return backend_; }
  const std::vector<Formula>& universe() const { return universe_; }
  bool in_universe(const Formula& f) const { return index_.count(f) > 0; }
  bool fragment() const { return fragment_; }
  void set_fragment(bool fragment) { fragment_ = fragment; }
  void add_to_universe(const Formula& f);

  // Assignments are restricted to FV(f); they must cover it.
  void add(const Formula& f, const Assignment& a);
  void remove(const Formula& f, const Assignment& a);
  void toggle(const Formula& f, const Assignment& a);
  bool contains(const Formula& f, const Assignment& a) const;

  const MemberSet& members() const { return members_; }
  std::vector<Member> sorted_members() const;
  std::size_t size() const { return members_.size(); }
  FormulaSet mentioned() const;

  // Same backend description and the same member set.
  bool same_members(const SatClass& other) const { return members_ == other.members_; }

 private:
  Backend backend_;
  std::vector<Formula> universe_;
  FormulaSet index_;
  MemberSet members_;
  bool fragment_;
};

// Assignments with domain exactly FV(f) over the backend's carrier.
std::vector<Assignment> canonical_assignments(const Formula& f, const Backend& b);

struct Violation {
  std::string clause;
  Formula formula;
  std::optional<Assignment> witness;
  std::string detail;
};

struct Report {
  bool ok() const { return violations.empty(); }
  std::vector<Violation> violations;
  void sort();
};

struct DomainReport {
  FormulaSet domain;
  FormulaSet decided;
  std::vector<Violation> violations;
};

// Least D: the negation-stripped mentioned formulas closed under direct
// subformulas; violations list the bullets that D fails.
DomainReport minimal_domain(const SatClass& s);

// The formulas the class is claimed to be compositional on: the universe for
// fragment classes, the minimal domain otherwise.
FormulaSet class_domain(const SatClass& s);

struct CompResult {
  bool ok = true;
  std::string clause;
  std::optional<Assignment> witness;
};
CompResult check_comp(const SatClass& s, const Formula& f);

enum class VerifyMode { Strict, Fragment };
Report verify_satclass(const SatClass& s, VerifyMode mode);

// Completes a class that is compositional on the subformula-closed D.
SatClass complete_presat(const SatClass& s, const FormulaSet& d);

Report check_regular(const SatClass& s);

enum class QcKind { Holds, Fails, Undetermined };
std::string to_string(QcKind k);

struct QcStatus {
  QcKind kind = QcKind::Holds;
  std::optional<Formula> block;  // witnessing Q vs f
  std::optional<Assignment> witness;
};

// The block equivalence for Q vs f against the class.
QcStatus qc_status(const SatClass& s, const Formula& f, Quantifier q, const VarSeq& vars);
// Scans every block formula of the domain whose strip is f.
QcStatus qc_formula(const SatClass& s, const Formula& f);
QcStatus qc_formula(const SatClass& s, const Formula& f, const FormulaSet& domain);

SatClass restrict_depth(const SatClass& s, const BigNat& b);
bool decides(const SatClass& s, const Formula& f);

// Adds (~f, a) for every f of the minimal domain and canonical a with
// (f, a) not a member, so that the class decides its domain.
void decide_by_negation(SatClass& s);

// Members are the pairs (f, a) with f in the universe and f true at a, plus
// (~f, a) for f in the resulting domain and false at a. The universe must be
// closed under direct subformulas.
SatClass tarski_satclass(const std::vector<Formula>& universe, const Backend& b);

// Closes a formula list under direct subformulas, keeping first-seen order.
std::vector<Formula> subformula_closure(const std::vector<Formula>& fs);

}  // namespace satwork

#endif  // SATWORK_SATCLASS_HPP
