#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "setdist/ext_real.hpp"

namespace setdist {

// Parse error with a 1-based position inside the expression text.
struct ExprError : std::runtime_error {
  ExprError(const std::string& message, int line_, int column_)
      : std::runtime_error(message), line(line_), column(column_) {}
  int line = 1;
  int column = 1;
};

// Extended-real value together with the evaluation incidents that produced
// it. A division by (finite) zero yields +inf and sets the flag.
struct EvalResult {
  ExtReal value{0.0};
  bool div_by_zero = false;
  bool domain_error = false;  // e.g. pow of a negative base to a fractional exponent
};

// Scalar expression over the grammar
//   e := number | x_i | (e) | -e | e+e | e-e | e*e | e/e
//      | abs(e) | max(e,e) | min(e,e) | pow(e, number) | indicator(lo, hi)
// with standard precedence (* / bind tighter than + -), left associativity,
// and numbers/lo/hi as optionally signed literals. Variables are x_1-based.
// indicator(lo, hi) evaluates to 0 when every coordinate of the evaluation
// point lies in [lo, hi] and +inf otherwise; multiplication follows the
// convention 0 * (+-inf) = 0 so scaled indicators behave as expected.
class ScalarExpr {
 public:
  enum class Kind {
    kNumber,
    kVar,
    kNeg,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kAbs,
    kMax,
    kMin,
    kPow,
    kIndicator,
  };

  struct Node {
    Kind kind = Kind::kNumber;
    double number = 0.0;    // kNumber value; kPow exponent; kIndicator lo
    double number2 = 0.0;   // kIndicator hi
    std::size_t var = 0;    // kVar: zero-based coordinate index
    std::vector<Node> children;
  };

  // Throws ExprError on malformed input.
  static ScalarExpr parse(std::string_view text);

  const Node& root() const { return root_; }
  const std::string& source() const { return source_; }

  // Smallest n such that every referenced variable x_i has i <= n.
  std::size_t arity() const { return arity_; }

  // Evaluates at x; throws std::invalid_argument when x has fewer
  // coordinates than arity().
  EvalResult eval(std::span<const double> x) const;

 private:
  Node root_;
  std::string source_;
  std::size_t arity_ = 0;
};

}  // namespace setdist
