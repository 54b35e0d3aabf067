// Structures interpreting {0, S, +, *} and term evaluation.

#ifndef SATWORK_BACKEND_HPP
#define SATWORK_BACKEND_HPP

#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "satwork/syntax.hpp"

namespace satwork {

class UnsupportedEnumeration : public Error {
 public:
  using Error::Error;
};

struct Cyclic {
  Value m = 1;
};

// The standard naturals; quantifiers are searched up to `bound` only.
struct BoundedNat {
  Value bound = 0;
};

// Tables are indexed by carrier position and hold carrier values.
struct Tabular {
  std::vector<Value> carrier;
  Value zero = 0;
  std::vector<Value> succ;
  std::vector<std::vector<Value>> plus;
  std::vector<std::vector<Value>> times;
};

class Backend {
 public:
  static Backend cyclic(Value m);
  static Backend bounded_nat(Value bound);
  static Backend tabular(Tabular t);

  const std::variant<Cyclic, BoundedNat, Tabular>& spec() const { return spec_; }
  bool is_finite() const;
  // Finite carrier; throws UnsupportedEnumeration for BoundedNat.
  const std::vector<Value>& carrier() const;
  // Values ranged over by quantifiers (0..bound for BoundedNat).
  std::vector<Value> search_range() const;
  bool contains(Value x) const;

  Value zero() const;
  Value succ(Value x) const;
  Value plus(Value x, Value y) const;
  Value times(Value x, Value y) const;
  // Value of the numeral S^n 0 without unfolding it.
  Value numeral(const BigNat& n) const;
  // Every carrier value x is the value of the numeral for x.
  bool numeral_coherent() const;
  std::string describe() const;

 private:
  std::size_t index_of(Value x) const;

  std::variant<Cyclic, BoundedNat, Tabular> spec_;
  std::vector<Value> carrier_;
  std::unordered_map<Value, std::size_t> index_;
  std::vector<Value> zero_orbit_;  // zero, S zero, ... up to the first repeat
  std::size_t orbit_cycle_start_ = 0;
};

Value eval_term(const Term& t, const Assignment& a, const Backend& b);

// All b ~ a differing at most on vars, with domain dom(a) + vars.
std::vector<Assignment> asn_variants(const Assignment& a, const VariableSet& vars, const Backend& b);
std::vector<Assignment> asn_variants(const Assignment& a, const VarSeq& vars, const Backend& b);

// All assignments with domain exactly `vars` over the finite carrier.
std::vector<Assignment> all_assignments(const VariableSet& vars, const Backend& b);

}  // namespace satwork

#endif  // SATWORK_BACKEND_HPP
