#include "ptc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace ptc {

struct Expression::Node {
  enum class Kind { constant, state, input, time, neg, add, sub, mul, div, sin, cos, exp, abs };
  Kind kind = Kind::constant;
  double value = 0.0;
  std::size_t index = 0;
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

std::unique_ptr<Node> make(Kind kind, std::unique_ptr<Node> left = nullptr, std::unique_ptr<Node> right = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t n_states) : text_(text), n_states_(n_states) {}

  std::unique_ptr<Node> parse() {
    auto root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

  bool uses_input = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::unique_ptr<Node> expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::add, std::move(lhs), term());
      else if (accept('-')) lhs = make(Kind::sub, std::move(lhs), term());
      else return lhs;
    }
  }

  std::unique_ptr<Node> term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::mul, std::move(lhs), unary());
      else if (accept('/')) lhs = make(Kind::div, std::move(lhs), unary());
      else return lhs;
    }
  }

  std::unique_ptr<Node> unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  std::unique_ptr<Node> primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  std::unique_ptr<Node> number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t d0 = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - d0;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    auto n = make(Kind::constant);
    const std::string literal(text_.substr(start, pos_ - start));
    n->value = std::strtod(literal.c_str(), nullptr);
    return n;
  }

  std::unique_ptr<Node> identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "u") {
      uses_input = true;
      return make(Kind::input);
    }
    if (name == "t") return make(Kind::time);
    if (name == "sin" || name == "cos" || name == "exp" || name == "abs") {
      const Kind k = name == "sin" ? Kind::sin : name == "cos" ? Kind::cos : name == "exp" ? Kind::exp : Kind::abs;
      expect('(');
      auto arg = expr();
      expect(')');
      return make(k, std::move(arg));
    }
    if (name.size() >= 2 && name[0] == 'x') {
      std::size_t idx = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) fail("unknown identifier '" + std::string(name) + "'");
        idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
        if (idx > 1000000) fail("state index too large");
      }
      if (idx < 1 || idx > n_states_)
        fail("state '" + std::string(name) + "' outside x1..x" + std::to_string(n_states_));
      auto n = make(Kind::state);
      n->index = idx - 1;
      return n;
    }
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t n_states_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, std::span<const double> x, double u, double t) {
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::state: return x[n.index];
    case Kind::input: return u;
    case Kind::time: return t;
    case Kind::neg: return -eval(*n.left, x, u, t);
    case Kind::add: return eval(*n.left, x, u, t) + eval(*n.right, x, u, t);
    case Kind::sub: return eval(*n.left, x, u, t) - eval(*n.right, x, u, t);
    case Kind::mul: return eval(*n.left, x, u, t) * eval(*n.right, x, u, t);
    case Kind::div: return eval(*n.left, x, u, t) / eval(*n.right, x, u, t);
    case Kind::sin: return std::sin(eval(*n.left, x, u, t));
    case Kind::cos: return std::cos(eval(*n.left, x, u, t));
    case Kind::exp: return std::exp(eval(*n.left, x, u, t));
    case Kind::abs: return std::abs(eval(*n.left, x, u, t));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::size_t n_states) {
  Parser parser(text, n_states);
  std::shared_ptr<const Node> root = parser.parse();
  return Expression(std::move(root), std::string(text), parser.uses_input);
}

double Expression::evaluate(std::span<const double> x, double u, double t) const {
  return eval(*root_, x, u, t);
}

}  // namespace ptc
