// Templates, syntactic similarity and extensional equivalence of pairs.

#ifndef SATWORK_EQUIVALENCE_HPP
#define SATWORK_EQUIVALENCE_HPP

#include <vector>

#include "satwork/backend.hpp"
#include "satwork/syntax.hpp"

namespace satwork {

// skeleton[holes[i] / fresh variable i] is the original formula, where the
// fresh variables are the free variables of the skeleton in order of first
// occurrence.
struct Template {
  Formula skeleton;
  std::vector<Variable> fresh;
  std::vector<Term> holes;
};

// Every maximal term position without bound variables becomes a fresh free
// variable; fresh variables take the lowest indices not bound in f.
// Repeated conjunctions whose body has no such position stay compressed;
// others are unrolled within node_budget formula nodes.
Template template_of(const Formula& f, std::uint64_t node_budget = std::uint64_t{1} << 20);
bool similar(const Formula& f, const Formula& g);

// Substitutes a and replaces each maximal closed subterm by the numeral of
// its value.
Formula value_normal_form(const Formula& f, const Assignment& a, const Backend& b);
bool ext_equiv(const Formula& f, const Assignment& a, const Formula& g, const Assignment& c, const Backend& b);

}  // namespace satwork

#endif  // SATWORK_EQUIVALENCE_HPP
