// Tarskian truth in a backend, three-valued for the bounded naturals.

#ifndef SATWORK_TARSKI_HPP
#define SATWORK_TARSKI_HPP

#include <string>

#include "satwork/backend.hpp"
#include "satwork/syntax.hpp"

namespace satwork {

enum class Verdict { False, True, Unknown };

std::string to_string(Verdict v);

// Unknown only arises on BoundedNat when a quantifier search up to the bound
// is inconclusive. Vacuous quantifiers are skipped.
Verdict tarski_sat(const Formula& f, const Assignment& a, const Backend& b);

}  // namespace satwork

#endif  // SATWORK_TARSKI_HPP
