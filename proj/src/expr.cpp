#include "mrs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace mrs {

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

static bool lookup_func(std::string_view name, Func& out) {
  if (name == "sin") out = Func::Sin;
  else if (name == "cos") out = Func::Cos;
  else if (name == "tan") out = Func::Tan;
  else if (name == "sinh") out = Func::Sinh;
  else if (name == "cosh") out = Func::Cosh;
  else if (name == "tanh") out = Func::Tanh;
  else if (name == "exp") out = Func::Exp;
  else if (name == "ln") out = Func::Ln;
  else if (name == "sqrt") out = Func::Sqrt;
  else return false;
  return true;
}

// ---------------------------------------------------------------------------
// Node constructors

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Number;
  e->number = v;
  return e;
}

ExprPtr make_var() {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  return e;
}

ExprPtr make_param(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Param;
  e->name = std::move(name);
  return e;
}

ExprPtr make_unary(ExprKind k, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  return e;
}

ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr make_call(Func f, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->func = f;
  e->a = std::move(a);
  return e;
}

static bool is_num(const ExprPtr& e, double v) {
  return e->kind == ExprKind::Number && e->number == v;
}

static bool is_number(const ExprPtr& e) { return e->kind == ExprKind::Number; }

ExprPtr fnum(double v) { return make_number(v); }

ExprPtr fneg(ExprPtr a) {
  if (is_number(a)) return fnum(-a->number);
  if (a->kind == ExprKind::Neg) return a->a;
  return make_unary(ExprKind::Neg, std::move(a));
}

ExprPtr fadd(ExprPtr a, ExprPtr b) {
  if (is_number(a) && is_number(b)) return fnum(a->number + b->number);
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  return make_binary(ExprKind::Add, std::move(a), std::move(b));
}

ExprPtr fsub(ExprPtr a, ExprPtr b) {
  if (is_number(a) && is_number(b)) return fnum(a->number - b->number);
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return fneg(std::move(b));
  return make_binary(ExprKind::Sub, std::move(a), std::move(b));
}

ExprPtr fmul(ExprPtr a, ExprPtr b) {
  if (is_number(a) && is_number(b)) return fnum(a->number * b->number);
  if (is_num(a, 0.0) || is_num(b, 0.0)) return fnum(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  if (is_num(a, -1.0)) return fneg(std::move(b));
  if (is_num(b, -1.0)) return fneg(std::move(a));
  return make_binary(ExprKind::Mul, std::move(a), std::move(b));
}

ExprPtr fdiv(ExprPtr a, ExprPtr b) {
  if (is_number(a) && is_number(b) && b->number != 0.0)
    return fnum(a->number / b->number);
  if (is_num(b, 1.0)) return a;
  return make_binary(ExprKind::Div, std::move(a), std::move(b));
}

ExprPtr fpow(ExprPtr a, ExprPtr b) {
  if (is_number(a) && is_number(b)) {
    const double r = std::pow(a->number, b->number);
    if (std::isfinite(r)) return fnum(r);
  }
  if (is_num(b, 1.0)) return a;
  if (is_num(b, 0.0)) return fnum(1.0);
  return make_binary(ExprKind::Pow, std::move(a), std::move(b));
}

ExprPtr fcall(Func f, ExprPtr a) {
  if (is_number(a)) {
    double r = 0.0;
    bool ok = true;
    const double x = a->number;
    switch (f) {
      case Func::Sin: r = std::sin(x); break;
      case Func::Cos: r = std::cos(x); break;
      case Func::Tan: r = std::tan(x); break;
      case Func::Sinh: r = std::sinh(x); break;
      case Func::Cosh: r = std::cosh(x); break;
      case Func::Tanh: r = std::tanh(x); break;
      case Func::Exp: r = std::exp(x); break;
      case Func::Ln: ok = x > 0.0; r = ok ? std::log(x) : 0.0; break;
      case Func::Sqrt: ok = x >= 0.0; r = ok ? std::sqrt(x) : 0.0; break;
    }
    if (ok && std::isfinite(r)) return fnum(r);
  }
  return make_call(f, std::move(a));
}

bool is_constant(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number:
    case ExprKind::Param:
      return true;
    case ExprKind::Var:
      return false;
    case ExprKind::Neg:
    case ExprKind::Call:
      return is_constant(e->a);
    default:
      return is_constant(e->a) && is_constant(e->b);
  }
}

ExprPtr fold(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number:
    case ExprKind::Var:
    case ExprKind::Param:
      return e;
    case ExprKind::Neg:
      return fneg(fold(e->a));
    case ExprKind::Add:
      return fadd(fold(e->a), fold(e->b));
    case ExprKind::Sub:
      return fsub(fold(e->a), fold(e->b));
    case ExprKind::Mul:
      return fmul(fold(e->a), fold(e->b));
    case ExprKind::Div:
      return fdiv(fold(e->a), fold(e->b));
    case ExprKind::Pow:
      return fpow(fold(e->a), fold(e->b));
    case ExprKind::Call:
      return fcall(e->func, fold(e->a));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type = End;
  double num = 0.0;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_ws();
      Token t;
      t.pos = i_;
      if (i_ >= text_.size()) {
        t.type = Token::End;
        tokens.push_back(t);
        break;
      }
      const char c = text_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.type = Token::Num;
        t.num = scan_number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Token::Ident;
        t.text = scan_ident();
      } else {
        switch (c) {
          case '+': t.type = Token::Plus; break;
          case '-': t.type = Token::Minus; break;
          case '*': t.type = Token::Star; break;
          case '/': t.type = Token::Slash; break;
          case '^': t.type = Token::Caret; break;
          case '(': t.type = Token::LParen; break;
          case ')': t.type = Token::RParen; break;
          default:
            throw Error(Errc::ParseError,
                        std::string("unexpected character '") + c + "'", i_);
        }
        ++i_;
      }
      tokens.push_back(std::move(t));
    }
    return tokens;
  }

 private:
  void skip_ws() {
    while (i_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
  }

  double scan_number() {
    const std::size_t start = i_;
    bool any_digit = false;
    while (i_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      ++i_;
      any_digit = true;
    }
    if (i_ < text_.size() && text_[i_] == '.') {
      ++i_;
      while (i_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        ++i_;
        any_digit = true;
      }
    }
    if (!any_digit)
      throw Error(Errc::ParseError, "malformed number", start);
    // Optional exponent; only consumed when it is a complete exponent.
    if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        i_ = j;
        while (i_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[i_])))
          ++i_;
      }
    }
    const std::string slice(text_.substr(start, i_ - start));
    char* end = nullptr;
    const double v = std::strtod(slice.c_str(), &end);
    if (end == nullptr || *end != '\0' || !std::isfinite(v))
      throw Error(Errc::ParseError, "malformed number", start);
    return v;
  }

  std::string scan_ident() {
    const std::size_t start = i_;
    while (i_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
            text_[i_] == '_'))
      ++i_;
    return std::string(text_.substr(start, i_ - start));
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (cur().type != Token::End)
      throw Error(Errc::ParseError, "unexpected trailing input", cur().pos);
    return e;
  }

 private:
  const Token& cur() const { return tokens_[i_]; }
  void advance() { ++i_; }

  bool accept(Token::Type t) {
    if (cur().type == t) {
      advance();
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (accept(Token::Plus)) e = make_binary(ExprKind::Add, e, parse_term());
      else if (accept(Token::Minus)) e = make_binary(ExprKind::Sub, e, parse_term());
      else return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (true) {
      if (accept(Token::Star)) e = make_binary(ExprKind::Mul, e, parse_unary());
      else if (accept(Token::Slash)) e = make_binary(ExprKind::Div, e, parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Token::Minus)) return make_unary(ExprKind::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept(Token::Caret)) {
      // Right-associative; the exponent may carry its own unary minus.
      return make_binary(ExprKind::Pow, base, parse_unary());
    }
    return base;
  }

  ExprPtr parse_atom() {
    const Token& t = cur();
    switch (t.type) {
      case Token::Num:
        advance();
        return make_number(t.num);
      case Token::Ident: {
        const std::string name = t.text;
        const std::size_t pos = t.pos;
        advance();
        Func f{};
        const bool is_func = lookup_func(name, f);
        if (accept(Token::LParen)) {
          if (!is_func)
            throw Error(Errc::UnknownFunction,
                        "unknown function '" + name + "'", pos);
          ExprPtr arg = parse_expr();
          if (!accept(Token::RParen))
            throw Error(Errc::ParseError, "expected ')'", cur().pos);
          return make_call(f, arg);
        }
        if (is_func)
          throw Error(Errc::ParseError,
                      "function name '" + name + "' requires an argument list",
                      pos);
        if (name == "u") return make_var();
        return make_param(name);
      }
      case Token::LParen: {
        advance();
        ExprPtr e = parse_expr();
        if (!accept(Token::RParen))
          throw Error(Errc::ParseError, "expected ')'", cur().pos);
        return e;
      }
      default:
        throw Error(Errc::ParseError, "expected number, identifier, or '('",
                    t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Differentiation

ExprPtr differentiate(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number:
    case ExprKind::Param:
      return fnum(0.0);
    case ExprKind::Var:
      return fnum(1.0);
    case ExprKind::Neg:
      return fneg(differentiate(e->a));
    case ExprKind::Add:
      return fadd(differentiate(e->a), differentiate(e->b));
    case ExprKind::Sub:
      return fsub(differentiate(e->a), differentiate(e->b));
    case ExprKind::Mul:
      return fadd(fmul(differentiate(e->a), e->b),
                  fmul(e->a, differentiate(e->b)));
    case ExprKind::Div:
      return fdiv(fsub(fmul(differentiate(e->a), e->b),
                       fmul(e->a, differentiate(e->b))),
                  fmul(e->b, e->b));
    case ExprKind::Pow: {
      if (is_constant(e->b)) {
        // Power rule; exponents containing only numbers and parameters are
        // constants in u.
        return fmul(fmul(e->b, fpow(e->a, fsub(e->b, fnum(1.0)))),
                    differentiate(e->a));
      }
      // General case via d(a^b) = a^b * (b' ln a + b a'/a).
      return fmul(e, fadd(fmul(differentiate(e->b), fcall(Func::Ln, e->a)),
                          fmul(e->b, fdiv(differentiate(e->a), e->a))));
    }
    case ExprKind::Call: {
      const ExprPtr da = differentiate(e->a);
      switch (e->func) {
        case Func::Sin:
          return fmul(fcall(Func::Cos, e->a), da);
        case Func::Cos:
          return fneg(fmul(fcall(Func::Sin, e->a), da));
        case Func::Tan: {
          const ExprPtr c = fcall(Func::Cos, e->a);
          return fdiv(da, fmul(c, c));
        }
        case Func::Sinh:
          return fmul(fcall(Func::Cosh, e->a), da);
        case Func::Cosh:
          return fmul(fcall(Func::Sinh, e->a), da);
        case Func::Tanh: {
          const ExprPtr c = fcall(Func::Cosh, e->a);
          return fdiv(da, fmul(c, c));
        }
        case Func::Exp:
          return fmul(e, da);
        case Func::Ln:
          return fdiv(da, e->a);
        case Func::Sqrt:
          return fdiv(da, fmul(fnum(2.0), e));
      }
      break;
    }
  }
  throw Error(Errc::EvalError, "differentiate: malformed expression tree");
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Larger binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_number(std::string& out, double v) {
  char buf[40];
  if (v < 0.0 || (v == 0.0 && std::signbit(v))) {
    // Negative literals do not exist in the grammar; print through Neg form.
    std::snprintf(buf, sizeof buf, "(-%.17g)", -v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  out += buf;
}

void print_expr(std::string& out, const ExprPtr& e, int min_prec) {
  const int prec = precedence(*e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e->kind) {
    case ExprKind::Number:
      print_number(out, e->number);
      break;
    case ExprKind::Var:
      out += 'u';
      break;
    case ExprKind::Param:
      out += e->name;
      break;
    case ExprKind::Neg:
      out += '-';
      print_expr(out, e->a, 3);
      break;
    case ExprKind::Add:
      print_expr(out, e->a, 1);
      out += " + ";
      print_expr(out, e->b, 2);
      break;
    case ExprKind::Sub:
      print_expr(out, e->a, 1);
      out += " - ";
      print_expr(out, e->b, 2);
      break;
    case ExprKind::Mul:
      print_expr(out, e->a, 2);
      out += '*';
      print_expr(out, e->b, 3);
      break;
    case ExprKind::Div:
      print_expr(out, e->a, 2);
      out += '/';
      print_expr(out, e->b, 3);
      break;
    case ExprKind::Pow:
      // "^" binds the atom to its left, so any non-atom base needs parens;
      // the exponent re-enters at unary level (right-associative).
      print_expr(out, e->a, 5);
      out += '^';
      print_expr(out, e->b, 3);
      break;
    case ExprKind::Call:
      out += func_name(e->func);
      out += '(';
      print_expr(out, e->a, 0);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::string out;
  print_expr(out, e, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

double eval(const ExprPtr& e, double u, const ParamMap& params) {
  switch (e->kind) {
    case ExprKind::Number:
      return e->number;
    case ExprKind::Var:
      return u;
    case ExprKind::Param: {
      auto it = params.find(e->name);
      if (it == params.end())
        throw Error(Errc::UnboundParameter,
                    "parameter '" + e->name + "' has no binding");
      return it->second;
    }
    case ExprKind::Neg:
      return -eval(e->a, u, params);
    case ExprKind::Add:
      return eval(e->a, u, params) + eval(e->b, u, params);
    case ExprKind::Sub:
      return eval(e->a, u, params) - eval(e->b, u, params);
    case ExprKind::Mul: {
      const double r = eval(e->a, u, params) * eval(e->b, u, params);
      if (!std::isfinite(r)) throw Error(Errc::EvalError, "non-finite product");
      return r;
    }
    case ExprKind::Div: {
      const double den = eval(e->b, u, params);
      if (den == 0.0) throw Error(Errc::EvalError, "division by zero");
      const double r = eval(e->a, u, params) / den;
      if (!std::isfinite(r)) throw Error(Errc::EvalError, "non-finite quotient");
      return r;
    }
    case ExprKind::Pow: {
      const double base = eval(e->a, u, params);
      const double ex = eval(e->b, u, params);
      const double r = std::pow(base, ex);
      if (!std::isfinite(r))
        throw Error(Errc::EvalError, "power outside the real domain");
      return r;
    }
    case ExprKind::Call: {
      const double x = eval(e->a, u, params);
      double r = 0.0;
      switch (e->func) {
        case Func::Sin: r = std::sin(x); break;
        case Func::Cos: r = std::cos(x); break;
        case Func::Tan: r = std::tan(x); break;
        case Func::Sinh: r = std::sinh(x); break;
        case Func::Cosh: r = std::cosh(x); break;
        case Func::Tanh: r = std::tanh(x); break;
        case Func::Exp: r = std::exp(x); break;
        case Func::Ln:
          if (x <= 0.0)
            throw Error(Errc::EvalError, "ln of a non-positive value");
          r = std::log(x);
          break;
        case Func::Sqrt:
          if (x < 0.0)
            throw Error(Errc::EvalError, "sqrt of a negative value");
          r = std::sqrt(x);
          break;
      }
      if (!std::isfinite(r))
        throw Error(Errc::EvalError,
                    std::string("non-finite result from ") + func_name(e->func));
      return r;
    }
  }
  throw Error(Errc::EvalError, "eval: malformed expression tree");
}

void collect_params(const ExprPtr& e, std::map<std::string, int>& out) {
  switch (e->kind) {
    case ExprKind::Param:
      ++out[e->name];
      return;
    case ExprKind::Number:
    case ExprKind::Var:
      return;
    case ExprKind::Neg:
    case ExprKind::Call:
      collect_params(e->a, out);
      return;
    default:
      collect_params(e->a, out);
      collect_params(e->b, out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Curves

CompiledCurve::CompiledCurve(ExprCurve curve) : curve_(std::move(curve)) {
  for (int i = 0; i < 3; ++i) {
    curve_.comp[i] = fold(curve_.comp[i]);
    d1_[i] = differentiate(curve_.comp[i]);
    d2_[i] = differentiate(d1_[i]);
    d3_[i] = differentiate(d2_[i]);
  }
}

Vec3L CompiledCurve::position(double u) const {
  return {eval(curve_.comp[0], u, curve_.params),
          eval(curve_.comp[1], u, curve_.params),
          eval(curve_.comp[2], u, curve_.params)};
}

CompiledCurve compile(ExprCurve curve) { return CompiledCurve(std::move(curve)); }

CurveEval eval_curve(const CompiledCurve& c, double u) {
  const ParamMap& ps = c.params();
  CurveEval out;
  out.u = u;
  out.p = {eval(c.comp()[0], u, ps), eval(c.comp()[1], u, ps),
           eval(c.comp()[2], u, ps)};
  out.d1 = {eval(c.d1()[0], u, ps), eval(c.d1()[1], u, ps),
            eval(c.d1()[2], u, ps)};
  out.d2 = {eval(c.d2()[0], u, ps), eval(c.d2()[1], u, ps),
            eval(c.d2()[2], u, ps)};
  out.d3 = {eval(c.d3()[0], u, ps), eval(c.d3()[1], u, ps),
            eval(c.d3()[2], u, ps)};
  for (const Vec3L* v : {&out.p, &out.d1, &out.d2, &out.d3}) {
    if (!std::isfinite(v->c1) || !std::isfinite(v->c2) || !std::isfinite(v->c3))
      throw Error(Errc::EvalError, "curve evaluation produced a non-finite value");
  }
  return out;
}

}  // namespace mrs
