#ifndef SEQSPACE_EXPR_HPP
#define SEQSPACE_EXPR_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace seqspace::expr {

/// Parse error with the offending position inside the expression text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error("at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// A compiled arithmetic expression over the integer variables k and n.
/// Grammar: + - * / ^ (right-assoc), unary minus, parentheses, decimal
/// numbers, and the functions ln, exp, sqrt, pow(a, b).
class Expr {
 public:
  double eval(double k, double n = 0.0) const { return fn_(k, n); }
  const std::string& text() const { return text_; }

 private:
  friend Expr parse(const std::string&);
  std::function<double(double, double)> fn_;
  std::string text_;
};

/// Compiles text into an Expr; throws ParseError with a position on bad input.
Expr parse(const std::string& text);

}  // namespace seqspace::expr

#endif  // SEQSPACE_EXPR_HPP
