// Parser for the formula grammar
//
//   term    := "0" | VAR | "S" term | "(" term "+" term ")" | "(" term "*" term ")"
//   formula := term "=" term | "~" formula | "(" formula "\/" formula ")"
//            | "(" formula "/\" formula ")" | "E" VAR formula | "A" VAR formula
//   VAR     := "v" [0-9]+ | [a-z]+
//
// plus redundant parentheses around formulas and the compressed literals
//
//   eta(a)  eta(a; x,y^3)  anchor(a; formula)  xi(a,b)
//   conj(k; formula)  block(E; x,y^3; formula)  num(n)
//
// Numbers are decimal with arbitrary precision. Columns are 1-based.

#ifndef SATWORK_PARSER_HPP
#define SATWORK_PARSER_HPP

#include <string_view>

#include "satwork/syntax.hpp"

namespace satwork {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t column)
      : Error("syntax error at column " + std::to_string(column) + ": " + msg), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
Variable parse_variable(std::string_view text);

}  // namespace satwork

#endif  // SATWORK_PARSER_HPP
