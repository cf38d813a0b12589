#include "setdist/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "note_fmt.hpp"

namespace setdist {

namespace {

struct Token {
  enum class Type { kNumber, kVar, kName, kSymbol, kEnd };
  Type type = Type::kEnd;
  double number = 0.0;
  std::size_t var = 0;        // kVar
  std::string name;           // kName (abs, max, ...); kSymbol text
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) {
      t.type = Token::Type::kEnd;
      return t;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_name(t);
    if (std::string_view("+-*/(),").find(c) != std::string_view::npos) {
      t.type = Token::Type::kSymbol;
      t.name = std::string(1, c);
      advance();
      return t;
    }
    throw ExprError(detail::cat("unexpected character '", c, "'"), line_, col_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  Token lex_number(Token t) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      advance();
    // Exponent part: e/E optionally followed by a sign, then digits.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t peek = pos_ + 1;
      if (peek < text_.size() && (text_[peek] == '+' || text_[peek] == '-')) ++peek;
      if (peek < text_.size() && std::isdigit(static_cast<unsigned char>(text_[peek]))) {
        while (pos_ < peek) advance();
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
      }
    }
    const std::string lit(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(lit.c_str(), &end);
    if (end == lit.c_str() || *end != '\0')
      throw ExprError(detail::cat("malformed number '", lit, "'"), t.line, t.column);
    t.type = Token::Type::kNumber;
    t.number = v;
    return t;
  }

  Token lex_name(Token t) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    const std::string word(text_.substr(start, pos_ - start));
    if (word == "abs" || word == "max" || word == "min" || word == "pow" ||
        word == "indicator") {
      t.type = Token::Type::kName;
      t.name = word;
      return t;
    }
    if (word.size() > 2 && word[0] == 'x' && word[1] == '_') {
      const std::string digits = word.substr(2);
      for (char d : digits)
        if (!std::isdigit(static_cast<unsigned char>(d)))
          throw ExprError(detail::cat("malformed variable '", word,
                                      "' (expected x_<index>)"),
                          t.line, t.column);
      const long idx = std::strtol(digits.c_str(), nullptr, 10);
      if (idx < 1)
        throw ExprError(detail::cat("variable index must be >= 1 in '", word, "'"),
                        t.line, t.column);
      t.type = Token::Type::kVar;
      t.var = static_cast<std::size_t>(idx - 1);
      return t;
    }
    throw ExprError(detail::cat("unknown identifier '", word, "'"), t.line, t.column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

using Node = ScalarExpr::Node;
using Kind = ScalarExpr::Kind;

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Node parse_expression() {
    Node lhs = parse_term();
    while (is_symbol("+") || is_symbol("-")) {
      const Kind k = is_symbol("+") ? Kind::kAdd : Kind::kSub;
      shift();
      Node rhs = parse_term();
      Node n;
      n.kind = k;
      n.children.push_back(std::move(lhs));
      n.children.push_back(std::move(rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  void expect_end() {
    if (cur_.type != Token::Type::kEnd)
      throw ExprError("unexpected trailing input", cur_.line, cur_.column);
  }

 private:
  Node parse_term() {
    Node lhs = parse_unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Kind k = is_symbol("*") ? Kind::kMul : Kind::kDiv;
      shift();
      Node rhs = parse_unary();
      Node n;
      n.kind = k;
      n.children.push_back(std::move(lhs));
      n.children.push_back(std::move(rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  Node parse_unary() {
    if (is_symbol("-")) {
      shift();
      Node n;
      n.kind = Kind::kNeg;
      n.children.push_back(parse_unary());
      return n;
    }
    return parse_primary();
  }

  Node parse_primary() {
    Node n;
    switch (cur_.type) {
      case Token::Type::kNumber:
        n.kind = Kind::kNumber;
        n.number = cur_.number;
        shift();
        return n;
      case Token::Type::kVar:
        n.kind = Kind::kVar;
        n.var = cur_.var;
        shift();
        return n;
      case Token::Type::kName:
        return parse_call();
      case Token::Type::kSymbol:
        if (cur_.name == "(") {
          shift();
          Node inner = parse_expression();
          expect_symbol(")");
          return inner;
        }
        break;
      case Token::Type::kEnd:
        break;
    }
    throw ExprError("expected a number, variable, '(', or function call", cur_.line,
                    cur_.column);
  }

  Node parse_call() {
    const std::string fn = cur_.name;
    shift();
    expect_symbol("(");
    Node n;
    if (fn == "abs") {
      n.kind = Kind::kAbs;
      n.children.push_back(parse_expression());
    } else if (fn == "max" || fn == "min") {
      n.kind = fn == "max" ? Kind::kMax : Kind::kMin;
      n.children.push_back(parse_expression());
      expect_symbol(",");
      n.children.push_back(parse_expression());
    } else if (fn == "pow") {
      n.kind = Kind::kPow;
      n.children.push_back(parse_expression());
      expect_symbol(",");
      n.number = parse_signed_number();
    } else {  // indicator
      n.kind = Kind::kIndicator;
      n.number = parse_signed_number();
      expect_symbol(",");
      n.number2 = parse_signed_number();
      if (n.number2 < n.number)
        throw ExprError("indicator bounds out of order", cur_.line, cur_.column);
    }
    expect_symbol(")");
    return n;
  }

  double parse_signed_number() {
    double sign = 1.0;
    while (is_symbol("-")) {
      sign = -sign;
      shift();
    }
    if (cur_.type != Token::Type::kNumber)
      throw ExprError("expected a numeric literal", cur_.line, cur_.column);
    const double v = sign * cur_.number;
    shift();
    return v;
  }

  bool is_symbol(std::string_view s) const {
    return cur_.type == Token::Type::kSymbol && cur_.name == s;
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s))
      throw ExprError(detail::cat("expected '", s, "'"), cur_.line, cur_.column);
    shift();
  }

  void shift() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
};

std::size_t max_var(const Node& n) {
  std::size_t m = n.kind == Kind::kVar ? n.var + 1 : 0;
  for (const Node& c : n.children) m = std::max(m, max_var(c));
  return m;
}

// Extended-real product with the conventions 0 * inf = 0 and
// sign-propagating infinities; finite products are IEEE.
double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return (a > 0) == (b > 0) ? kInf : -kInf;
  return a * b;
}

double eval_node(const Node& n, std::span<const double> x, EvalResult& flags) {
  switch (n.kind) {
    case Kind::kNumber:
      return n.number;
    case Kind::kVar:
      return x[n.var];
    case Kind::kNeg:
      return -eval_node(n.children[0], x, flags);
    case Kind::kAdd:
      return (ExtReal(eval_node(n.children[0], x, flags)) +
              ExtReal(eval_node(n.children[1], x, flags)))
          .raw();
    case Kind::kSub:
      return (ExtReal(eval_node(n.children[0], x, flags)) -
              ExtReal(eval_node(n.children[1], x, flags)))
          .raw();
    case Kind::kMul:
      return ext_mul(eval_node(n.children[0], x, flags),
                     eval_node(n.children[1], x, flags));
    case Kind::kDiv: {
      const double a = eval_node(n.children[0], x, flags);
      const double b = eval_node(n.children[1], x, flags);
      if (b == 0.0) {
        flags.div_by_zero = true;
        return kInf;
      }
      if (std::isinf(b)) {
        if (std::isinf(a)) {
          flags.domain_error = true;
          return kInf;
        }
        return 0.0;
      }
      return std::isinf(a) ? ((a > 0) == (b > 0) ? kInf : -kInf) : a / b;
    }
    case Kind::kAbs:
      return std::abs(eval_node(n.children[0], x, flags));
    case Kind::kMax:
      return std::max(eval_node(n.children[0], x, flags),
                      eval_node(n.children[1], x, flags));
    case Kind::kMin:
      return std::min(eval_node(n.children[0], x, flags),
                      eval_node(n.children[1], x, flags));
    case Kind::kPow: {
      const double base = eval_node(n.children[0], x, flags);
      const double r = std::pow(base, n.number);
      if (std::isnan(r)) {
        flags.domain_error = true;
        return kInf;
      }
      return r;
    }
    case Kind::kIndicator:
      for (double xi : x)
        if (xi < n.number || xi > n.number2) return kInf;
      return 0.0;
  }
  return 0.0;  // unreachable
}

}  // namespace

ScalarExpr ScalarExpr::parse(std::string_view text) {
  Parser p(text);
  ScalarExpr e;
  e.root_ = p.parse_expression();
  p.expect_end();
  e.source_ = std::string(text);
  e.arity_ = max_var(e.root_);
  return e;
}

EvalResult ScalarExpr::eval(std::span<const double> x) const {
  if (x.size() < arity_)
    throw std::invalid_argument(detail::cat("expression '", source_, "' needs ", arity_,
                                            " coordinates, got ", x.size()));
  EvalResult r;
  r.value = ExtReal(eval_node(root_, x, r));
  return r;
}

}  // namespace setdist
