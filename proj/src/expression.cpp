#include "frenet/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "frenet/error.hpp"

namespace frenet {
namespace {

using Kind = Expression::Kind;
using Function = Expression::Function;
using NodePtr = std::shared_ptr<const Expression::Node>;

constexpr std::array<std::pair<std::string_view, Function>, 7> kFunctions = {{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"sqrt", Function::Sqrt},
    {"exp", Function::Exp},
    {"log", Function::Log},
    {"abs", Function::Abs},
}};

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok type = Tok::End;
  std::string_view text;
  double number = 0.0;
  std::size_t column = 0;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.column = pos_ + 1;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      t.type = Tok::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    ++pos_;
    t.text = src_.substr(pos_ - 1, 1);
    switch (c) {
      case '+': t.type = Tok::Plus; break;
      case '-': t.type = Tok::Minus; break;
      case '*': t.type = Tok::Star; break;
      case '/': t.type = Tok::Slash; break;
      case '^': t.type = Tok::Caret; break;
      case '(': t.type = Tok::LParen; break;
      case ')': t.type = Tok::RParen; break;
      case ',': t.type = Tok::Comma; break;
      default:
        throw Error(ErrorCode::SyntaxError,
                    "unexpected character '" + std::string(1, c) + "' at column " +
                        std::to_string(t.column),
                    std::nullopt, t.column);
    }
    return t;
  }

 private:
  Token lex_number(Token t) {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      throw Error(ErrorCode::SyntaxError, "malformed number at column " + std::to_string(t.column),
                  std::nullopt, t.column);
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        throw Error(ErrorCode::SyntaxError,
                    "malformed exponent at column " + std::to_string(t.column), std::nullopt,
                    t.column);
      }
    }
    t.type = Tok::Number;
    t.text = src_.substr(start, pos_ - start);
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (ec != std::errc() || !std::isfinite(t.number)) {
      throw Error(ErrorCode::SyntaxError, "number out of range at column " + std::to_string(t.column),
                  std::nullopt, t.column);
    }
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

NodePtr make_call(Function f, NodePtr arg) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Kind::Call;
  n->function = f;
  n->lhs = std::move(arg);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  NodePtr parse_all() {
    if (cur_.type == Tok::End) fail("empty expression");
    NodePtr e = expr();
    if (cur_.type != Tok::End) fail("unexpected '" + std::string(cur_.text) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::SyntaxError) const {
    throw Error(code, what + " at column " + std::to_string(cur_.column), std::nullopt,
                cur_.column);
  }

  void advance() { cur_ = lexer_.next(); }

  void expect(Tok type, const char* what) {
    if (cur_.type != type) fail(std::string("expected ") + what);
    advance();
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
      const Kind k = cur_.type == Tok::Plus ? Kind::Add : Kind::Subtract;
      advance();
      lhs = make(k, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (cur_.type == Tok::Star || cur_.type == Tok::Slash) {
      const Kind k = cur_.type == Tok::Star ? Kind::Multiply : Kind::Divide;
      advance();
      lhs = make(k, lhs, factor());
    }
    return lhs;
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (cur_.type == Tok::Caret) {
      advance();
      return make(Kind::Power, base, factor());
    }
    return base;
  }

  NodePtr unary() {
    if (cur_.type == Tok::Minus) {
      advance();
      return make(Kind::Negate, unary());
    }
    return primary();
  }

  NodePtr primary() {
    switch (cur_.type) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return make_number(v);
      }
      case Tok::LParen: {
        advance();
        NodePtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        return identifier();
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + std::string(cur_.text) + "'");
    }
  }

  NodePtr identifier() {
    const Token id = cur_;
    advance();
    if (id.text == "s") {
      if (cur_.type == Tok::LParen) fail("variable 's' is not a function", ErrorCode::ArityMismatch);
      return make(Kind::Variable);
    }
    for (const auto& [name, f] : kFunctions) {
      if (name != id.text) continue;
      if (cur_.type != Tok::LParen) fail("expected '(' after " + std::string(name));
      advance();
      if (cur_.type == Tok::RParen) {
        fail(std::string(name) + " takes exactly one argument", ErrorCode::ArityMismatch);
      }
      NodePtr arg = expr();
      if (cur_.type == Tok::Comma) {
        fail(std::string(name) + " takes exactly one argument", ErrorCode::ArityMismatch);
      }
      expect(Tok::RParen, "')'");
      return make_call(f, arg);
    }
    throw Error(ErrorCode::UnknownIdentifier,
                "unknown identifier '" + std::string(id.text) + "' at column " +
                    std::to_string(id.column),
                std::nullopt, id.column);
  }

  Lexer lexer_;
  Token cur_;
};

// Binding strength used by the printer; a child is parenthesized when its
// strength is below what the parent position requires.
int strength(const Expression::Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Subtract: return 1;
    case Kind::Multiply:
    case Kind::Divide: return 2;
    case Kind::Power: return 3;
    case Kind::Negate: return 4;
    default: return 5;
  }
}

void print(const Expression::Node& n, std::string& out);

void print_child(const Expression::Node& n, int required, std::string& out) {
  if (strength(n) < required) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print(const Expression::Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, res.ptr);
      return;
    }
    case Kind::Variable: out += 's'; return;
    case Kind::Negate:
      out += '-';
      print_child(*n.lhs, 4, out);
      return;
    case Kind::Call:
      out += function_name(n.function);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    case Kind::Add:
    case Kind::Subtract:
      print_child(*n.lhs, 1, out);
      out += n.kind == Kind::Add ? " + " : " - ";
      print_child(*n.rhs, 2, out);
      return;
    case Kind::Multiply:
    case Kind::Divide:
      print_child(*n.lhs, 2, out);
      out += n.kind == Kind::Multiply ? " * " : " / ";
      print_child(*n.rhs, 3, out);
      return;
    case Kind::Power:
      print_child(*n.lhs, 4, out);
      out += '^';
      print_child(*n.rhs, 3, out);
      return;
  }
}

Dual eval(const Expression::Node& n, double s) {
  switch (n.kind) {
    case Kind::Number: return {n.value, 0.0};
    case Kind::Variable: return {s, 1.0};
    case Kind::Negate: {
      const Dual a = eval(*n.lhs, s);
      return {-a.value, -a.deriv};
    }
    case Kind::Add: {
      const Dual a = eval(*n.lhs, s), b = eval(*n.rhs, s);
      return {a.value + b.value, a.deriv + b.deriv};
    }
    case Kind::Subtract: {
      const Dual a = eval(*n.lhs, s), b = eval(*n.rhs, s);
      return {a.value - b.value, a.deriv - b.deriv};
    }
    case Kind::Multiply: {
      const Dual a = eval(*n.lhs, s), b = eval(*n.rhs, s);
      return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
    }
    case Kind::Divide: {
      const Dual a = eval(*n.lhs, s), b = eval(*n.rhs, s);
      const double q = a.value / b.value;
      return {q, (a.deriv - q * b.deriv) / b.value};
    }
    case Kind::Power: {
      const Dual a = eval(*n.lhs, s), b = eval(*n.rhs, s);
      const double v = std::pow(a.value, b.value);
      if (b.deriv == 0.0) {
        const double d = a.deriv == 0.0 ? 0.0
                                        : b.value * std::pow(a.value, b.value - 1.0) * a.deriv;
        return {v, d};
      }
      return {v, v * (b.deriv * std::log(a.value) + b.value * a.deriv / a.value)};
    }
    case Kind::Call: {
      const Dual a = eval(*n.lhs, s);
      switch (n.function) {
        case Function::Sin: return {std::sin(a.value), std::cos(a.value) * a.deriv};
        case Function::Cos: return {std::cos(a.value), -std::sin(a.value) * a.deriv};
        case Function::Tan: {
          const double c = std::cos(a.value);
          return {std::tan(a.value), a.deriv / (c * c)};
        }
        case Function::Sqrt: {
          const double r = std::sqrt(a.value);
          return {r, a.deriv == 0.0 ? 0.0 : a.deriv / (2.0 * r)};
        }
        case Function::Exp: {
          const double e = std::exp(a.value);
          return {e, e * a.deriv};
        }
        case Function::Log:
          return {a.value > 0.0 ? std::log(a.value) : std::nan(""), a.deriv / a.value};
        case Function::Abs: {
          const double sign = a.value > 0.0 ? 1.0 : (a.value < 0.0 ? -1.0 : 0.0);
          return {std::fabs(a.value), sign * a.deriv};
        }
      }
    }
  }
  return {std::nan(""), std::nan("")};
}

bool equal(const Expression::Node* a, const Expression::Node* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Number: return a->value == b->value && std::signbit(a->value) == std::signbit(b->value);
    case Kind::Variable: return true;
    case Kind::Call: return a->function == b->function && equal(a->lhs.get(), b->lhs.get());
    case Kind::Negate: return equal(a->lhs.get(), b->lhs.get());
    default: return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

std::string_view function_name(Expression::Function f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

Expression Expression::parse(std::string_view source) {
  return Expression(Parser(source).parse_all());
}

Expression Expression::number(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite literal");
  if (std::signbit(v)) return negate(Expression(make_number(-v)));
  return Expression(make_number(v));
}

Expression Expression::variable() { return Expression(make(Kind::Variable)); }

Expression Expression::negate(Expression a) { return Expression(make(Kind::Negate, a.root_)); }

Expression Expression::binary(Kind op, Expression a, Expression b) {
  switch (op) {
    case Kind::Add:
    case Kind::Subtract:
    case Kind::Multiply:
    case Kind::Divide:
    case Kind::Power: return Expression(make(op, a.root_, b.root_));
    default: throw Error(ErrorCode::InvalidArgument, "not a binary operator");
  }
}

Expression Expression::call(Function f, Expression a) { return Expression(make_call(f, a.root_)); }

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Dual Expression::evaluate(double s) const {
  const Dual d = eval(*root_, s);
  if (!std::isfinite(d.value) || !std::isfinite(d.deriv)) {
    throw Error(ErrorCode::ProfileEvalError,
                "expression '" + to_string() + "' is not finite (or not differentiable) at s=" +
                    std::to_string(s),
                s);
  }
  return d;
}

bool operator==(const Expression& a, const Expression& b) {
  return equal(a.root_.get(), b.root_.get());
}

}  // namespace frenet
