// Arithmetized syntax over the signature {0, S, +, *, =}.
//
// Terms and formulas are immutable, structurally shared DAG nodes. Two
// compressed node kinds exist next to the plain grammar constructors:
//
//   * RepConj(body, k): the left-nested conjunction of k >= 2 copies of body,
//   * Block(Q, v1 ... vn, body): a maximal block of like quantifiers, with the
//     variable sequence run-length encoded.
//
// Every smart constructor canonicalizes, so a formula built through plain
// And/Exists/Forall nodes and the same formula built through the compressed
// constructors compare equal. Numerals S...S0 are stored as a count.

#ifndef SATWORK_SYNTAX_HPP
#define SATWORK_SYNTAX_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace satwork {

using BigNat = boost::multiprecision::cpp_int;
using Value = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, BigNat required)
      : Error(what), required_(std::move(required)) {}
  const BigNat& required() const { return required_; }

 private:
  BigNat required_;
};

BigNat parse_bignat(std::string_view digits);
std::string to_string(const BigNat& n);

// Variables are natural-number indices. "v<i>" names index i; lowercase
// letter identifiers live in a reserved range above kNamedBase.
class Variable {
 public:
  static constexpr std::uint64_t kNamedBase = std::uint64_t{1} << 48;
  // Reserved range for the fresh x_b / y_b variables of the xi family.
  static constexpr std::uint64_t kXiBase = std::uint64_t{1} << 40;

  constexpr Variable() = default;
  constexpr explicit Variable(std::uint64_t index) : index_(index) {}

  static Variable named(std::string_view identifier);

  constexpr std::uint64_t index() const { return index_; }
  std::string name() const;

  friend constexpr auto operator<=>(Variable, Variable) = default;

 private:
  std::uint64_t index_ = 0;
};

using VariableSet = std::vector<Variable>;  // sorted, unique

struct VarRun {
  Variable var;
  std::uint64_t count = 1;
  friend bool operator==(const VarRun&, const VarRun&) = default;
};

// Run-length encoded variable sequence; adjacent runs never share a variable.
class VarSeq {
 public:
  VarSeq() = default;
  VarSeq(std::initializer_list<Variable> vars);
  explicit VarSeq(const std::vector<Variable>& vars);

  void push_back(Variable v, std::uint64_t count = 1);
  void append(const VarSeq& other);

  const std::vector<VarRun>& runs() const { return runs_; }
  BigNat length() const;
  bool empty() const { return runs_.empty(); }
  Variable front() const { return runs_.front().var; }
  // Drops the first k variables; k must not exceed length().
  VarSeq drop_front(const BigNat& k) const;
  VarSeq take_front(const BigNat& k) const;
  VariableSet distinct() const;
  bool is_prefix_of(const VarSeq& other) const;
  std::vector<Variable> expand(std::size_t limit) const;

  friend bool operator==(const VarSeq&, const VarSeq&) = default;

 private:
  std::vector<VarRun> runs_;
};

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Numeral, Succ, Add, Mul, Var };

class Term {
 public:
  static Term zero();
  static Term numeral(const BigNat& n);
  static Term numeral(Value n) { return numeral(BigNat(n)); }
  static Term var(Variable v);
  static Term succ(const Term& t);
  static Term add(const Term& l, const Term& r);
  static Term mul(const Term& l, const Term& r);

  TermKind kind() const;
  // Numeral: number of S applications.
  const BigNat& count() const;
  Variable variable() const;
  const Term& lhs() const;  // Succ argument, or left operand
  const Term& rhs() const;

  bool is_closed() const;
  const VariableSet& free_vars() const;
  // Number of nodes of the fully expanded tree (S^n 0 has n + 1 nodes).
  const BigNat& node_count() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Formulas

enum class Quantifier { Exists, Forall };

// The grammar-level head constructor of a formula.
enum class Connective { Eq, Not, Or, And, Exists, Forall };

enum class FormulaKind { Eq, Not, Or, And, RepConj, Block };

class Formula {
 public:
  static Formula eq(const Term& l, const Term& r);
  static Formula neg(const Formula& f);
  static Formula disj(const Formula& l, const Formula& r);
  static Formula conj(const Formula& l, const Formula& r);
  // Left-nested conjunction of k copies; k >= 1.
  static Formula rep_conj(const Formula& body, const BigNat& k);
  static Formula exists(Variable v, const Formula& body);
  static Formula forall(Variable v, const Formula& body);
  static Formula quant(Quantifier q, const VarSeq& vars, const Formula& body);

  FormulaKind kind() const;
  Connective head() const;

  // Eq
  const Term& lhs_term() const;
  const Term& rhs_term() const;
  // Not: operand. Or/And: left/right. RepConj: body. Block: body.
  const Formula& child(int i = 0) const;
  const BigNat& rep_count() const;
  Quantifier quantifier() const;
  const VarSeq& block_vars() const;
  const BigNat& block_length() const;

  // Logical view: the first bound variable of a quantified formula, and the
  // formula with that single quantifier removed.
  Variable bound_variable() const;
  Formula quantified_body() const;

  std::vector<Formula> direct_subformulas() const;
  const VariableSet& free_vars() const;
  bool is_sentence() const { return free_vars().empty(); }
  const BigNat& depth() const;
  // Connective/quantifier/atom nodes of the expanded tree (terms excluded).
  const BigNat& node_count() const;
  // All nodes of the expanded tree including term nodes.
  const BigNat& ast_size() const;
  bool has_compressed_nodes() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  // Deterministic structural order used for report ordering.
  friend bool operator<(const Formula& a, const Formula& b);

  struct Node;
  const Node* node_ptr() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node&& n);
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::unordered_set<Formula, FormulaHash>;
template <class V>
using FormulaMap = std::unordered_map<Formula, V, FormulaHash>;

// ---------------------------------------------------------------------------
// Assignments

class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<Variable, Value>> init);

  std::optional<Value> get(Variable v) const;
  void set(Variable v, Value x);
  bool covers(const VariableSet& vars) const;
  Assignment restrict_to(const VariableSet& vars) const;
  VariableSet domain() const;
  const std::vector<std::pair<Variable, Value>>& bindings() const { return b_; }
  bool empty() const { return b_.empty(); }
  std::size_t hash() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<Variable, Value>> b_;
};

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const { return a.hash(); }
};

VariableSet set_union(const VariableSet& a, const VariableSet& b);
VariableSet set_minus(const VariableSet& a, const VariableSet& b);
bool set_contains(const VariableSet& s, Variable v);

// ---------------------------------------------------------------------------
// Syntactic operations

Term numeral(Value x);
Formula substitute(const Formula& f, const Assignment& a);
Term substitute(const Term& t, const Assignment& a);

// Variables occurring bound anywhere in f.
VariableSet bound_variables(const Formula& f);

// Rewrites every term position of f. The callback receives the term and the
// set of variables bound at that position; it must be a pure function of its
// arguments (RepConj bodies are rewritten once and shared).
Formula map_terms(const Formula& f,
                  const std::function<Term(const Term&, const VariableSet&)>& fn);

// Decomposes the leading quantifier block: for k in 1..n (n = block length)
// the formula obtained by removing the first k quantifiers. Requires n to fit
// in `limit`.
struct BlockStrip {
  Quantifier quantifier;
  VarSeq prefix;
  Formula remainder;
};
std::vector<BlockStrip> block_strips(const Formula& f, std::uint64_t limit = 1u << 16);

std::string print(const Term& t, std::uint64_t node_budget = 1u << 20);
std::string print(const Formula& f, std::uint64_t node_budget = 1u << 20);

}  // namespace satwork

template <>
struct std::hash<satwork::Formula> {
  std::size_t operator()(const satwork::Formula& f) const { return f.hash(); }
};
template <>
struct std::hash<satwork::Assignment> {
  std::size_t operator()(const satwork::Assignment& a) const { return a.hash(); }
};

#endif  // SATWORK_SYNTAX_HPP
