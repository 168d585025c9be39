#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mrs/lorentz.hpp"

namespace mrs {

/// Closed real interval; lo < hi everywhere these are validated.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Uniform samples over [iv.lo, iv.hi], endpoints included (n >= 2),
/// or the single point iv.lo for n == 1.
inline std::vector<double> linspace(const Interval& iv, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
  if (n == 1) {
    out.push_back(iv.lo);
    return out;
  }
  const double span = iv.hi - iv.lo;
  for (int i = 0; i < n; ++i)
    out.push_back(iv.lo + span * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

enum class ExprKind { Number, Var, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt };

const char* func_name(Func f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Subtrees are shared freely; nothing
/// mutates a node after construction.
struct Expr {
  ExprKind kind;
  double number = 0.0;   // Number
  std::string name;      // Param
  Func func = Func::Sin; // Call
  ExprPtr a;             // operand / lhs
  ExprPtr b;             // rhs
};

using ParamMap = std::map<std::string, double>;

// Raw node constructors (no folding). The parser uses these so that the
// printed form stays close to the input.
ExprPtr make_number(double v);
ExprPtr make_var();
ExprPtr make_param(std::string name);
ExprPtr make_unary(ExprKind k, ExprPtr a);
ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b);
ExprPtr make_call(Func f, ExprPtr a);

// Folding constructors: collapse constant subexpressions and drop
// multiplicative/additive identities. differentiate() builds through these.
ExprPtr fnum(double v);
ExprPtr fneg(ExprPtr a);
ExprPtr fadd(ExprPtr a, ExprPtr b);
ExprPtr fsub(ExprPtr a, ExprPtr b);
ExprPtr fmul(ExprPtr a, ExprPtr b);
ExprPtr fdiv(ExprPtr a, ExprPtr b);
ExprPtr fpow(ExprPtr a, ExprPtr b);
ExprPtr fcall(Func f, ExprPtr a);

/// True when the subtree contains no occurrence of the variable "u".
/// Parameters are constants for differentiation purposes.
bool is_constant(const ExprPtr& e);

/// Parse the expression grammar
///   expr  := term (("+" | "-") term)*
///   term  := unary (("*" | "/") unary)*
///   unary := "-" unary | power
///   power := atom ("^" unary)?
///   atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
/// "^" is right-associative and binds tighter than unary minus. The variable
/// is "u"; the function names sin cos tan sinh cosh tanh exp ln sqrt are
/// reserved; every other identifier is a named parameter.
/// Throws Error(ParseError) with a byte offset, or Error(UnknownFunction).
ExprPtr parse(std::string_view text);

/// Exact symbolic derivative with respect to u. Applies constant folding
/// only; no other simplification.
ExprPtr differentiate(const ExprPtr& e);

/// Unparse. parse(to_string(parse(s))) evaluates identically to parse(s).
std::string to_string(const ExprPtr& e);

/// Evaluate at u with the given parameter bindings. Throws
/// Error(UnboundParameter) for a parameter missing from the bindings and
/// Error(EvalError) for domain errors or non-finite intermediate results.
double eval(const ExprPtr& e, double u, const ParamMap& params);

/// Collect the parameter names referenced by the tree.
void collect_params(const ExprPtr& e, std::map<std::string, int>& out);

/// Apply the folding constructors bottom-up (evaluation-equivalent tree).
ExprPtr fold(const ExprPtr& e);

/// Curve u -> (c1(u), c2(u), c3(u)) in IR^3_1 as three expression trees plus
/// parameter bindings shared by all components.
struct ExprCurve {
  std::array<ExprPtr, 3> comp;
  ParamMap params;
};

/// Position and the first three derivatives of a curve at one u.
struct CurveEval {
  double u = 0.0;
  Vec3L p, d1, d2, d3;
};

/// Curve with derivative trees differentiated once and cached.
class CompiledCurve {
 public:
  CompiledCurve() = default;
  explicit CompiledCurve(ExprCurve curve);

  const ExprCurve& curve() const { return curve_; }
  const std::array<ExprPtr, 3>& comp() const { return curve_.comp; }
  const std::array<ExprPtr, 3>& d1() const { return d1_; }
  const std::array<ExprPtr, 3>& d2() const { return d2_; }
  const std::array<ExprPtr, 3>& d3() const { return d3_; }
  const ParamMap& params() const { return curve_.params; }

  /// Position only (three tree evaluations).
  Vec3L position(double u) const;

 private:
  ExprCurve curve_;
  std::array<ExprPtr, 3> d1_, d2_, d3_;
};

CompiledCurve compile(ExprCurve curve);

/// Evaluate position and derivatives 1..3 at u. All twelve results are
/// checked finite; a NaN/Inf raises Error(EvalError).
CurveEval eval_curve(const CompiledCurve& c, double u);

}  // namespace mrs
