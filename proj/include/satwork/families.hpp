// Parametric formula families with astronomically large parameters.
//
//   eta(a)        = A x ((x=x /\ x=x) /\ ... /\ x=x)       a copies, left-nested
//   eta(a; vs)    = E vs eta(a)
//   anchor(a; f)  = (num(a)=num(a) /\ f)
//   xi(a, 0)      = (v=v /\ eta(a))
//   xi(a, b+1)    = A x_b E y_b (x_b=v /\ (y_b=v /\ xi(a, b)))
//
// All of them are ordinary Formula values; the compression lives in the
// RepConj, Block and numeral nodes, so no separate expansion type exists.

#ifndef SATWORK_FAMILIES_HPP
#define SATWORK_FAMILIES_HPP

#include <optional>
#include <string>

#include "satwork/syntax.hpp"

namespace satwork {

// The bound variable of eta and the free variable of xi.
Variable eta_variable();
Variable xi_free_variable();
Variable xi_x(std::uint64_t level);
Variable xi_y(std::uint64_t level);

inline constexpr std::uint64_t kXiLevelLimit = std::uint64_t{1} << 20;

Formula eta(const BigNat& a);
Formula eta(const BigNat& a, const VarSeq& prefix);
Formula phi_anchor(const BigNat& a, const Formula& f);
Formula xi(const BigNat& a, const BigNat& b);

// Returns f when its expanded tree has at most node_budget formula nodes;
// otherwise throws BudgetExceeded carrying the exact node count.
Formula expand(const Formula& f, const BigNat& node_budget);

struct EtaMatch {
  BigNat a;
  VarSeq prefix;  // empty for plain eta(a)
};
// Recognizes eta(a) and eta(a; vs).
std::optional<EtaMatch> match_eta(const Formula& f);
bool is_eta_form(const Formula& f);

// Printer that keeps compressed nodes compressed, using the extended
// literals accepted by the parser (eta, anchor, conj, block, num).
std::string print_compact(const Formula& f);
std::string print_compact(const Term& t);

}  // namespace satwork

#endif  // SATWORK_FAMILIES_HPP
