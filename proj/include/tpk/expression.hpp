#pragma once

#include <memory>
#include <string>

#include "tpk/symbol.hpp"

namespace tpk {

/// Syntax tree of a symbol expression such as "((x+i)^3/(x-2i)) * r(inf)^(1/2)".
struct Expr {
  enum class Kind { Number, Variable, Jump, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  /// Number: value, imaginary when `imaginary` is set ("2.5i", "i").
  double value = 0.0;
  bool imaginary = false;
  /// Jump: r(location); a bare "r" is r(inf).
  Location location;
  /// Pow: lhs^exponent.
  Exponent exponent;
  std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws SyntaxError with line, column and the expected tokens.
ExprPtr parse_symbol(const std::string& text);

/// Fully parenthesized text that parses back to an equal tree.
std::string pretty_print(const ExprPtr& e);

bool same_tree(const ExprPtr& a, const ExprPtr& b);

/// Products, quotients and powers of linear polynomials in x, constants and r(c)^alpha.
/// Throws UnsupportedConstruct for sums of non-linear terms and fractional powers of
/// anything but r(c).
PCSymbol lower(const ExprPtr& e, const Exponent& p);

}  // namespace tpk
