#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dualspace/operator_polynomial.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

struct ExpressionTerm;

/// Parsed operator expression, kept close to the source so it can be printed
/// back. Grammar (whitespace and newlines are free):
///
///   expr   := term (('+' | '-') term)*
///   term   := ['-'] ( coeff ['*' body] | body ) ['+' 'h.c.']
///   body   := factor ('*' factor)* | '(' expr ')'
///   coeff  := decimal | decimal 'i' | 'i' | '(' decimal ',' decimal ')'
///   factor := ('a' | 'ad' | 'c' | 'cd') '[' positive int ']'
struct Expression {
  std::vector<ExpressionTerm> terms;

  friend bool operator==(const Expression&, const Expression&);
};

struct ExpressionTerm {
  /// Includes the sign of a leading '-'.
  Complex coeff{1.0, 0.0};
  bool explicit_coeff = false;
  std::vector<LadderSymbol> factors;
  /// One element for a parenthesized group, empty otherwise.
  std::vector<Expression> group;
  /// "+ h.c." followed this term.
  bool add_conjugate = false;

  friend bool operator==(const ExpressionTerm&, const ExpressionTerm&) = default;
};

/// Throws ParseError with the 1-based line and column of the offending input.
Expression parse_expression(std::string_view src);

/// Canonical text that parses back to an equal Expression.
std::string pretty_print(const Expression& expr);

/// Sum of terms; "+ h.c." adds the reversed, conjugated copy of its term.
OperatorPolynomial expand(const Expression& expr);

/// parse_expression followed by expand.
OperatorPolynomial parse_polynomial(std::string_view src);

}  // namespace dualspace
