// Truth classes for CT-, and the conversions to and from satisfaction classes.

#ifndef SATWORK_TRUTH_HPP
#define SATWORK_TRUTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "satwork/backend.hpp"
#include "satwork/satclass.hpp"

namespace satwork {

class TruthClass {
 public:
  TruthClass(Backend backend, std::vector<Formula> universe);

  const Backend& backend() const { return backend_; }
  const std::vector<Formula>& universe() const { return universe_; }
  bool in_universe(const Formula& f) const { return index_.count(f) > 0; }
  void add_to_universe(const Formula& f);

  // Members are kept even when they break typing, so check_ct can report them.
  void add(const Formula& f) { members_.insert(f); }
  void remove(const Formula& f) { members_.erase(f); }
  bool contains(const Formula& f) const { return members_.count(f) > 0; }
  const FormulaSet& members() const { return members_; }
  std::vector<Formula> sorted_members() const;
  bool same_members(const TruthClass& other) const { return members_ == other.members_; }

 private:
  Backend backend_;
  std::vector<Formula> universe_;
  FormulaSet index_;
  FormulaSet members_;
};

struct AxiomResult {
  int axiom = 0;
  std::string name;
  std::string status;  // "pass", "fail" or "rejected"
  std::size_t instances = 0;
  std::vector<Violation> violations;
};

struct CtReport {
  std::vector<AxiomResult> axioms;  // axioms 1..8 in order
  // Sentences an instance needed but the universe lacks; those instances
  // are skipped.
  std::vector<Formula> missing;
  bool ok() const;
};

CtReport check_ct(const TruthClass& t);

struct Conversion {
  TruthClass truth;
  bool certified;  // the source class passed check_regular
};

// T = sentences f of the universe with (f, empty) in S.
Conversion s_to_t(const SatClass& s);

class ClosureError : public Error {
 public:
  ClosureError(const std::string& msg, std::vector<Formula> missing)
      : Error(msg), missing_(std::move(missing)) {}
  const std::vector<Formula>& missing() const { return missing_; }

 private:
  std::vector<Formula> missing_;
};

// S = {(f, a) : f in the formula universe, f[a] in T}, with the domain then
// decided by negations. The formula universe defaults to T's universe;
// every f[a] must lie in T's universe (ClosureError lists the missing
// sentences).
SatClass t_to_s(const TruthClass& t, const std::optional<std::vector<Formula>>& formulas = std::nullopt);

// Block truth equivalence T(Q vs f) == Q a T(f[a]) for every block strip of
// every block sentence in the universe.
CtReport check_qc_axioms(const TruthClass& t);

}  // namespace satwork

#endif  // SATWORK_TRUTH_HPP
