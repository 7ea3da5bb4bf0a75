#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ptc/error.hpp"

namespace ptc {

class ExpressionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Arithmetic expression over the plant variables, parsed once and
/// evaluated as a tree.
///
/// Grammar (EBNF):
///
///     expr    = term , { ("+" | "-") , term } ;
///     term    = unary , { ("*" | "/") , unary } ;
///     unary   = [ "+" | "-" ] , unary | primary ;
///     primary = number | variable | call | "(" , expr , ")" ;
///     call    = ("sin" | "cos" | "exp" | "abs") , "(" , expr , ")" ;
///     variable= "x" , digit , { digit } | "u" | "t" ;
///     number  = digits , [ "." , digits ] , [ ("e" | "E") , [ "+" | "-" ] , digits ]
///             | "." , digits , [ exponent ] ;
///
/// State variables are 1-based: x1 .. xn. Whitespace is ignored.
class Expression {
 public:
  struct Node;

  /// Throws ExpressionError on syntax errors or x_k with k outside [1, n_states].
  static Expression parse(std::string_view text, std::size_t n_states);

  double evaluate(std::span<const double> x, double u, double t) const;

  const std::string& text() const noexcept { return text_; }
  /// True when the expression references u.
  bool uses_input() const noexcept { return uses_input_; }

 private:
  Expression(std::shared_ptr<const Node> root, std::string text, bool uses_input)
      : root_(std::move(root)), text_(std::move(text)), uses_input_(uses_input) {}

  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_input_ = false;
};

}  // namespace ptc
