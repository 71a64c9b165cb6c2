#include "seqspace/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

namespace seqspace::expr {

namespace {

using EvalFn = std::function<double(double, double)>;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  EvalFn parse_all() {
    EvalFn e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  EvalFn parse_expr() {
    EvalFn lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        EvalFn rhs = parse_term();
        lhs = [lhs, rhs](double k, double n) { return lhs(k, n) + rhs(k, n); };
      } else if (consume('-')) {
        EvalFn rhs = parse_term();
        lhs = [lhs, rhs](double k, double n) { return lhs(k, n) - rhs(k, n); };
      } else {
        return lhs;
      }
    }
  }

  EvalFn parse_term() {
    EvalFn lhs = parse_unary();
    for (;;) {
      if (consume('*')) {
        EvalFn rhs = parse_unary();
        lhs = [lhs, rhs](double k, double n) { return lhs(k, n) * rhs(k, n); };
      } else if (consume('/')) {
        EvalFn rhs = parse_unary();
        lhs = [lhs, rhs](double k, double n) { return lhs(k, n) / rhs(k, n); };
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than '^', so -k^2 is -(k^2).
  EvalFn parse_unary() {
    if (consume('-')) {
      EvalFn inner = parse_unary();
      return [inner](double k, double n) { return -inner(k, n); };
    }
    return parse_power();
  }

  EvalFn parse_power() {
    EvalFn base = parse_primary();
    if (consume('^')) {
      EvalFn exp = parse_unary();  // right associative; allows 2^-k
      return [base, exp](double k, double n) { return std::pow(base(k, n), exp(k, n)); };
    }
    return base;
  }

  EvalFn parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      EvalFn e = parse_expr();
      if (!consume(')')) throw ParseError(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  EvalFn parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError(pos_, "malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return [v](double, double) { return v; };
  }

  EvalFn parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "k") return [](double k, double) { return k; };
    if (name == "n") return [](double, double n) { return n; };
    if (peek() != '(') throw ParseError(start, "unknown variable '" + name + "'");
    consume('(');
    std::vector<EvalFn> args;
    if (peek() != ')') {
      args.push_back(parse_expr());
      while (consume(',')) args.push_back(parse_expr());
    }
    if (!consume(')')) throw ParseError(pos_, "expected ')' after function arguments");
    auto need = [&](std::size_t n_args) {
      if (args.size() != n_args)
        throw ParseError(start, "function '" + name + "' takes " + std::to_string(n_args) +
                                    " argument(s)");
    };
    if (name == "ln") {
      need(1);
      EvalFn a = args[0];
      return [a](double k, double n) { return std::log(a(k, n)); };
    }
    if (name == "exp") {
      need(1);
      EvalFn a = args[0];
      return [a](double k, double n) { return std::exp(a(k, n)); };
    }
    if (name == "sqrt") {
      need(1);
      EvalFn a = args[0];
      return [a](double k, double n) { return std::sqrt(a(k, n)); };
    }
    if (name == "pow") {
      need(2);
      EvalFn a = args[0], b = args[1];
      return [a, b](double k, double n) { return std::pow(a(k, n), b(k, n)); };
    }
    throw ParseError(start, "unknown function '" + name + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) {
  Parser p(text);
  Expr e;
  e.fn_ = p.parse_all();
  e.text_ = text;
  return e;
}

}  // namespace seqspace::expr
