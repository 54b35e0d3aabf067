// Finite-stage extension of a satisfaction class with a planted
// quantifier-correctness failure, the chain driver over a filtration, and the
// definability loop that plants failures exactly at a given set of eta counts.

#ifndef SATWORK_EV_ENGINE_HPP
#define SATWORK_EV_ENGINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "satwork/satclass.hpp"

namespace satwork {

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class SchedulingError : public Error {
 public:
  using Error::Error;
};

class ChainError : public Error {
 public:
  ChainError(const std::string& what, std::size_t stage) : Error(what), stage_(stage) {}
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

// The unique psi with f = Q vs psi and depth(psi) = b; failing that, the
// maximal strip of the leading block. Throws Error for unquantified f.
Formula root(const Formula& f, const BigNat& b);

enum class Classification { Problematic, Unproblematic };
std::string to_string(Classification c);

// Problematic iff depth(f) <= b (the base class domain) or f is eta(a; vs)
// for some possibly empty block vs.
Classification classify(const Formula& f, const BigNat& b, const std::optional<BigNat>& a);

struct StepConfig {
  SatClass base;  // P
  BigNat b;
  std::optional<BigNat> a;
  VarSeq w;
  VarSeq w_prime;
  bool initial_step = false;
  std::uint64_t m1 = 1;
  std::uint64_t m2 = 1;
};

// Throws ConstructionError naming the first violated requirement.
void check_config(const StepConfig& cfg, const std::vector<Formula>& fragment);

struct FragmentUniverse {
  std::vector<Formula> formulas;    // closure, in insertion order
  std::vector<Formula> roots_added;
  std::vector<std::vector<Formula>> classes;
  FormulaMap<std::size_t> class_of;
};

// Gamma_0 plus (in initial steps) the eta seeds, their roots, and every
// direct subformula or block strip similar to a formula already present.
FragmentUniverse build_universe(const std::vector<Formula>& gamma, const StepConfig& cfg);

struct Order {
  std::vector<std::set<std::size_t>> preds;  // per class
  std::vector<std::size_t> rank;
  // Per formula: the strip (1 = direct subformula) its block clause reads.
  FormulaMap<std::uint64_t> jump;
};

// Throws ConstructionError listing a cycle if the relation is not acyclic.
Order build_order(const FragmentUniverse& u, const BigNat& b, const std::optional<BigNat>& a);

struct ChainState {
  std::vector<std::vector<Member>> stages;  // S_0, S_1, ... (cumulative)
  std::vector<std::size_t> rank;            // per class
};

struct StepResult {
  SatClass s;  // fragment class over the closure plus the base universe
  FragmentUniverse universe;
  Order order;
  ChainState chain;
};

StepResult ev_step(const StepConfig& cfg, const std::vector<Formula>& gamma);

Report verify_theta(const StepResult& r, const StepConfig& cfg);

using StepFn = std::function<SatClass(const SatClass& previous, const std::vector<Formula>& slice)>;

// Runs step over the depth filtration of target and returns the union.
SatClass ev_chain(const StepFn& step, const SatClass& initial, const std::vector<Formula>& target);

// A step without planted failures: extends previous compositionally to slice.
StepFn no_pathology_step();

struct DefinabilityParams {
  Backend backend = Backend::cyclic(3);
  std::uint64_t scan_max = 12;
  BigNat b0 = 2;
  std::uint64_t m1 = 1;
  std::uint64_t m2 = 1;
  std::uint64_t chain_length = 2;
  // Explicit depth cutoffs, one per target in ascending order.
  std::vector<BigNat> schedule;
};

struct DefinabilityResult {
  SatClass s;
  std::set<BigNat> recovered;
  std::set<BigNat> scanned;
  std::vector<Report> step_reports;
  // Every step in order; the last one is the unseeded finishing step.
  std::vector<StepConfig> configs;
  std::vector<StepResult> steps;
};

DefinabilityResult definability_run(const std::set<BigNat>& targets, const DefinabilityParams& params);

}  // namespace satwork

#endif  // SATWORK_EV_ENGINE_HPP
