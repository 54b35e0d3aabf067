// Gödel codes as symbolic natural numbers.
//
// Codes use the tag-and-pair scheme
//   pair(x, y) = (x+y)(x+y+1)/2 + y
//   v_i -> pair(0, i)     0 -> pair(1, 0)     St -> pair(2, t)
//   s+t -> pair(3, pair(s, t))    s*t -> pair(4, pair(s, t))
//   s=t -> pair(5, pair(s, t))    ~f  -> pair(6, f)
//   f\/g -> pair(7, pair(f, g))   f/\g -> pair(8, pair(f, g))
//   E v f -> pair(9, pair(v, f))  A v f -> pair(10, pair(v, f))
//   <> -> 0                       <x, rest...> -> 1 + pair(x, <rest...>)
//
// An HFCode is a shared DAG of Number, Pair, Succ and Set nodes; a Set node
// {e1, ..., en} denotes the Ackermann code sum 2^ei. Numeric values are only
// materialized within a bit budget.

#ifndef SATWORK_HFCODE_HPP
#define SATWORK_HFCODE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "satwork/syntax.hpp"

namespace satwork {

inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 20;

BigNat cantor_pair(const BigNat& x, const BigNat& y);

class HFCode {
 public:
  enum class Kind { Number, Pair, Succ, Set };

  static HFCode number(const BigNat& n);
  static HFCode pair(const HFCode& x, const HFCode& y);
  static HFCode succ(const HFCode& x);
  static HFCode set(std::vector<HFCode> elements);

  Kind kind() const;
  const std::vector<HFCode>& children() const;
  // Upper bound on the bit length of the value, saturating at 2^64 - 1.
  std::uint64_t bit_bound() const;

  // Exact value if it has at most bit_budget bits.
  std::optional<BigNat> value(std::uint64_t bit_budget = kDefaultBitBudget) const;
  // Value modulo 2^k; requires k + DAG height to stay within the budget.
  BigNat value_mod_pow2(std::uint64_t k, std::uint64_t bit_budget = kDefaultBitBudget) const;

  struct Node;

 private:
  explicit HFCode(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Bit x of y is 1. Numeric where possible, set-theoretic for Set nodes,
// modular for huge y; throws BudgetExceeded when neither applies.
bool ack_member(const HFCode& x, const HFCode& y, std::uint64_t bit_budget = kDefaultBitBudget);
bool hf_equal(const HFCode& x, const HFCode& y, std::uint64_t bit_budget = kDefaultBitBudget);

HFCode godel_code(Variable v);
HFCode godel_code(const Term& t);
// Throws BudgetExceeded for formulas whose expanded tree exceeds
// node_budget nodes.
HFCode godel_code(const Formula& f, std::uint64_t node_budget = std::uint64_t{1} << 20);
HFCode sequence_code(const std::vector<HFCode>& items);

}  // namespace satwork

#endif  // SATWORK_HFCODE_HPP
