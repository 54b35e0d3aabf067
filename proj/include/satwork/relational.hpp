// The relational signature {Z, Succ, Plus, Times} with equality: flattening
// of arithmetic formulas, truth, back-and-forth equivalence and exhaustive
// one-variable type enumeration.

#ifndef SATWORK_RELATIONAL_HPP
#define SATWORK_RELATIONAL_HPP

#include <memory>
#include <string>
#include <vector>

#include "satwork/backend.hpp"
#include "satwork/syntax.hpp"

namespace satwork {

enum class RelKind { Eq, Z, Succ, Plus, Times, Not, Or, And, Exists, Forall };

class RelFormula {
 public:
  static RelFormula atom(RelKind kind, std::vector<Variable> args);
  static RelFormula neg(RelFormula f);
  static RelFormula binary(RelKind kind, RelFormula l, RelFormula r);
  static RelFormula quant(RelKind kind, Variable v, RelFormula body);

  RelKind kind() const { return node_->kind; }
  const std::vector<Variable>& args() const { return node_->args; }  // atoms; binder at [0]
  const RelFormula& child(int i = 0) const { return node_->kids[i]; }

  struct Node {
    RelKind kind;
    std::vector<Variable> args;
    std::vector<RelFormula> kids;
  };

 private:
  explicit RelFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Fresh variables of the translation live above this index.
inline constexpr std::uint64_t kRelBase = std::uint64_t{1} << 44;

// Each atom s=t becomes E fresh (graph atoms /\ x_s = x_t); numerals are
// unfolded, so the formula must have at most node_budget expanded nodes.
RelFormula relational_translate(const Formula& f, std::uint64_t node_budget = 1u << 16);
std::string print(const RelFormula& f);
bool rel_sat(const RelFormula& f, const Assignment& a, const Backend& b);

// n-round back-and-forth equivalence of (B, a) and (B, c).
bool ef_equiv(Value a, Value c, int n, const Backend& b);

struct TypeFormula {
  RelFormula formula;  // representative; its only free variable (if any) is v0
  bool holds;
};

// All one-variable relational formulas of connective depth <= n up to
// semantic equivalence over B, each with its truth value at a. Requires
// n <= 2 and at most 4 carrier elements.
std::vector<TypeFormula> tp_exhaustive(Value a, int n, const Backend& b);

}  // namespace satwork

#endif  // SATWORK_RELATIONAL_HPP
