#include "bogofock/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace bogofock::expr {

namespace {

const char* kFunctions[] = {"exp", "tanh", "cosh", "sinh", "sqrt", "delta", "recip"};

int function_arity(const std::string& name) {
  if (name == "delta") return 2;
  for (const char* f : kFunctions)
    if (name == f) return 1;
  return -1;
}

ExprPtr make_number(double value, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::number;
  e->number = value;
  e->pos = pos;
  return e;
}

ExprPtr make_name(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::name;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr make_unary(ExprPtr arg, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::unary_minus;
  e->args = {std::move(arg)};
  e->pos = pos;
  return e;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::binary;
  e->op = op;
  e->args = {std::move(lhs), std::move(rhs)};
  e->pos = pos;
  return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::call;
  e->name = std::move(name);
  e->args = std::move(args);
  e->pos = pos;
  return e;
}

struct Token {
  enum class Kind { number, name, op, lparen, rparen, comma, end };
  Kind kind = Kind::end;
  double number = 0.0;
  std::string name;
  char op = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& current() const { return token_; }

  void advance() {
    skip_whitespace();
    token_.pos = pos_;
    if (index_ >= src_.size()) {
      token_.kind = Token::Kind::end;
      return;
    }
    const char c = src_[index_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = index_;
      while (index_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[index_])) || src_[index_] == '_'))
        consume();
      token_.kind = Token::Kind::name;
      token_.name = std::string(src_.substr(start, index_ - start));
      return;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        token_.kind = Token::Kind::op;
        token_.op = c;
        consume();
        return;
      case '(':
        token_.kind = Token::Kind::lparen;
        consume();
        return;
      case ')':
        token_.kind = Token::Kind::rparen;
        consume();
        return;
      case ',':
        token_.kind = Token::Kind::comma;
        consume();
        return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

 private:
  void consume() {
    if (src_[index_] == '\n') {
      pos_.line += 1;
      pos_.column = 1;
    } else {
      pos_.column += 1;
    }
    index_ += 1;
  }

  void skip_whitespace() {
    while (index_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[index_]))) consume();
  }

  void lex_number() {
    const std::size_t start = index_;
    while (index_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[index_]))) consume();
    if (index_ < src_.size() && src_[index_] == '.') {
      consume();
      while (index_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[index_]))) consume();
    }
    if (index_ < src_.size() && (src_[index_] == 'e' || src_[index_] == 'E')) {
      std::size_t mark = index_;
      SourcePos mark_pos = pos_;
      consume();
      if (index_ < src_.size() && (src_[index_] == '+' || src_[index_] == '-')) consume();
      if (index_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[index_]))) {
        while (index_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[index_]))) consume();
      } else {
        index_ = mark;  // the 'e' belongs to a following name, not the literal
        pos_ = mark_pos;
      }
    }
    token_.kind = Token::Kind::number;
    token_.number = std::strtod(std::string(src_.substr(start, index_ - start)).c_str(), nullptr);
  }

  std::string_view src_;
  std::size_t index_ = 0;
  SourcePos pos_{1, 1};
  Token token_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    if (lexer_.current().kind != Token::Kind::end)
      throw ParseError("unexpected trailing input", lexer_.current().pos);
    return e;
  }

 private:
  ExprPtr parse_sum() {
    ExprPtr lhs = parse_product();
    while (lexer_.current().kind == Token::Kind::op &&
           (lexer_.current().op == '+' || lexer_.current().op == '-')) {
      const char op = lexer_.current().op;
      const SourcePos pos = lexer_.current().pos;
      lexer_.advance();
      lhs = make_binary(op, std::move(lhs), parse_product(), pos);
    }
    return lhs;
  }

  ExprPtr parse_product() {
    ExprPtr lhs = parse_unary();
    while (lexer_.current().kind == Token::Kind::op &&
           (lexer_.current().op == '*' || lexer_.current().op == '/')) {
      const char op = lexer_.current().op;
      const SourcePos pos = lexer_.current().pos;
      lexer_.advance();
      lhs = make_binary(op, std::move(lhs), parse_unary(), pos);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (lexer_.current().kind == Token::Kind::op && lexer_.current().op == '-') {
      const SourcePos pos = lexer_.current().pos;
      lexer_.advance();
      return make_unary(parse_unary(), pos);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (lexer_.current().kind == Token::Kind::op && lexer_.current().op == '^') {
      const SourcePos pos = lexer_.current().pos;
      lexer_.advance();
      return make_binary('^', std::move(base), parse_unary(), pos);
    }
    return base;
  }

  ExprPtr parse_atom() {
    const Token token = lexer_.current();
    switch (token.kind) {
      case Token::Kind::number:
        lexer_.advance();
        return make_number(token.number, token.pos);
      case Token::Kind::name: {
        lexer_.advance();
        if (lexer_.current().kind == Token::Kind::lparen) {
          const int arity = function_arity(token.name);
          if (arity < 0) throw ParseError("unknown function '" + token.name + "'", token.pos);
          lexer_.advance();
          std::vector<ExprPtr> args;
          args.push_back(parse_sum());
          while (lexer_.current().kind == Token::Kind::comma) {
            lexer_.advance();
            args.push_back(parse_sum());
          }
          if (lexer_.current().kind != Token::Kind::rparen)
            throw ParseError("expected ')'", lexer_.current().pos);
          lexer_.advance();
          if (static_cast<int>(args.size()) != arity)
            throw ParseError("function '" + token.name + "' expects " + std::to_string(arity) +
                                 " argument(s)",
                             token.pos);
          return make_call(token.name, std::move(args), token.pos);
        }
        return make_name(token.name, token.pos);
      }
      case Token::Kind::lparen: {
        lexer_.advance();
        ExprPtr inner = parse_sum();
        if (lexer_.current().kind != Token::Kind::rparen)
          throw ParseError("expected ')'", lexer_.current().pos);
        lexer_.advance();
        return inner;
      }
      default:
        throw ParseError("expected a value", token.pos);
    }
  }

  Lexer lexer_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary:
      if (e.op == '+' || e.op == '-') return 1;
      if (e.op == '*' || e.op == '/') return 2;
      return 4;  // ^
    case Expr::Kind::unary_minus:
      return 3;
    default:
      return 5;
  }
}

std::string print_number(double value) {
  // Shortest decimal form that round-trips to the same double.
  char buffer[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

void print_into(const Expr& e, std::string& out) {
  const auto child = [&out](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_into(c, out);
    if (parens) out += ')';
  };
  switch (e.kind) {
    case Expr::Kind::number:
      out += print_number(e.number);
      return;
    case Expr::Kind::name:
      out += e.name;
      return;
    case Expr::Kind::unary_minus:
      out += '-';
      child(*e.args[0], precedence(*e.args[0]) < 3);
      return;
    case Expr::Kind::binary: {
      const int prec = precedence(e);
      if (e.op == '^') {
        // Right associative; the exponent slot admits unary minus directly.
        child(*e.args[0], precedence(*e.args[0]) <= prec);
        out += '^';
        child(*e.args[1], precedence(*e.args[1]) < 3);
      } else {
        child(*e.args[0], precedence(*e.args[0]) < prec);
        out += e.op;
        child(*e.args[1], precedence(*e.args[1]) <= prec);
      }
      return;
    }
    case Expr::Kind::call: {
      out += e.name;
      out += '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += ',';
        print_into(*e.args[i], out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

ParseError::ParseError(const std::string& message, SourcePos pos)
    : std::runtime_error(message + " at line " + std::to_string(pos.line) + ", column " +
                         std::to_string(pos.column)),
      pos_(pos) {}

ExprPtr parse(std::string_view src) { return Parser(src).run(); }

std::string print(const ExprPtr& e) {
  std::string out;
  print_into(*e, out);
  return out;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::number:
      if (a->number != b->number) return false;
      break;
    case Expr::Kind::name:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::binary:
      if (a->op != b->op) return false;
      break;
    case Expr::Kind::call:
      if (a->name != b->name) return false;
      break;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement) {
  if (e->kind == Expr::Kind::name) return e->name == var ? replacement : e;
  if (e->args.empty()) return e;
  auto out = std::make_shared<Expr>(*e);
  for (auto& arg : out->args) arg = substitute(arg, var, replacement);
  return out;
}

Complex eval(const ExprPtr& e, const Bindings& bindings) {
  switch (e->kind) {
    case Expr::Kind::number:
      return Complex(e->number, 0.0);
    case Expr::Kind::name: {
      if (e->name == "j") return Complex(double(bindings.j), 0.0);
      if (e->name == "k") return Complex(double(bindings.k), 0.0);
      if (e->name == "i") return Complex(0.0, 1.0);
      auto it = bindings.params.find(e->name);
      if (it == bindings.params.end()) throw EvalError("unbound name '" + e->name + "'");
      return Complex(it->second, 0.0);
    }
    case Expr::Kind::unary_minus:
      return -eval(e->args[0], bindings);
    case Expr::Kind::binary: {
      const Complex lhs = eval(e->args[0], bindings);
      const Complex rhs = eval(e->args[1], bindings);
      switch (e->op) {
        case '+': return lhs + rhs;
        case '-': return lhs - rhs;
        case '*': return lhs * rhs;
        case '/':
          if (rhs == Complex(0.0, 0.0)) throw EvalError("division by zero");
          return lhs / rhs;
        default: {  // '^'
          if (lhs == Complex(0.0, 0.0)) {
            if (rhs.imag() == 0.0 && rhs.real() > 0.0) return Complex(0.0, 0.0);
            if (rhs == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
            throw EvalError("zero raised to a non-positive power");
          }
          // Integer exponents go through exact repeated multiplication.
          if (rhs.imag() == 0.0 && rhs.real() == std::floor(rhs.real()) && std::abs(rhs.real()) <= 64.0) {
            long n = static_cast<long>(rhs.real());
            Complex base = n < 0 ? Complex(1.0, 0.0) / lhs : lhs;
            n = std::labs(n);
            Complex acc(1.0, 0.0);
            while (n > 0) {
              if (n & 1) acc *= base;
              base *= base;
              n >>= 1;
            }
            return acc;
          }
          return std::pow(lhs, rhs);
        }
      }
    }
    case Expr::Kind::call: {
      const Complex x = eval(e->args[0], bindings);
      if (e->name == "exp") return std::exp(x);
      if (e->name == "tanh") return std::tanh(x);
      if (e->name == "cosh") return std::cosh(x);
      if (e->name == "sinh") return std::sinh(x);
      if (e->name == "sqrt") return std::sqrt(x);
      if (e->name == "recip") {
        if (x == Complex(0.0, 0.0)) throw EvalError("division by zero");
        return Complex(1.0, 0.0) / x;
      }
      // delta
      const Complex y = eval(e->args[1], bindings);
      return x == y ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    }
  }
  throw EvalError("malformed expression node");
}

Matrix build_matrix(const ExprPtr& e, const std::map<std::string, double>& params, int modes) {
  Matrix out(modes, modes);
  Bindings bindings;
  bindings.params = params;
  for (int j = 1; j <= modes; ++j)
    for (int k = 1; k <= modes; ++k) {
      bindings.j = j;
      bindings.k = k;
      out(j - 1, k - 1) = eval(e, bindings);
    }
  return out;
}

BogoliubovMap build_operator(const OperatorFamily& family, int modes) {
  Matrix v = family.v ? build_matrix(family.v, family.params, modes)
                      : Matrix(Matrix::Zero(modes, modes));
  Matrix u;
  if (family.u) {
    u = build_matrix(family.u, family.params, modes);
  } else if (family.auto_u) {
    for (int j = 0; j < modes; ++j)
      for (int k = 0; k < modes; ++k)
        if ((j != k && v(j, k) != Complex(0.0, 0.0)) || (j == k && v(j, k).imag() != 0.0))
          throw std::invalid_argument("build_operator: auto_u requires a diagonal real v");
    u = Matrix::Zero(modes, modes);
    for (int j = 0; j < modes; ++j) u(j, j) = std::sqrt(1.0 + v(j, j).real() * v(j, j).real());
  } else {
    u = Matrix::Identity(modes, modes);
  }
  return make_map(std::move(u), std::move(v));
}

}  // namespace bogofock::expr
