#pragma once

#include <string>

#include "mrs/expr.hpp"
#include "mrs/framing.hpp"
#include "mrs/lorentz.hpp"

namespace mrs {

/// Causal case of a non-developable ruled surface at a point, determined by
/// (eps_x, eps_a, eps_y, causal class of the surface normal).
enum class SurfaceCase {
  TL_SpacelikeRuling_ATimelike,   // timelike surface, spacelike ruling, a timelike
  TL_SpacelikeRuling_ASpacelike,  // timelike surface, spacelike ruling, a spacelike
  TL_TimelikeRuling,              // timelike surface, timelike ruling
  SL_YTimelike,                   // spacelike surface, y timelike
  SL_YSpacelike,                  // spacelike surface, y spacelike
};

constexpr const char* to_string(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::TL_SpacelikeRuling_ATimelike:
      return "TL_SpacelikeRuling_ATimelike";
    case SurfaceCase::TL_SpacelikeRuling_ASpacelike:
      return "TL_SpacelikeRuling_ASpacelike";
    case SurfaceCase::TL_TimelikeRuling:
      return "TL_TimelikeRuling";
    case SurfaceCase::SL_YTimelike:
      return "SL_YTimelike";
    case SurfaceCase::SL_YSpacelike:
      return "SL_YSpacelike";
  }
  return "Unknown";
}

constexpr SurfaceCase kAllSurfaceCases[] = {
    SurfaceCase::TL_SpacelikeRuling_ATimelike,
    SurfaceCase::TL_SpacelikeRuling_ASpacelike,
    SurfaceCase::TL_TimelikeRuling,
    SurfaceCase::SL_YTimelike,
    SurfaceCase::SL_YSpacelike,
};

/// Sign relating the recorded structure function lambda to the projection
/// coefficient cx = <sigma', x>/<x, x>: lambda = sign * cx. The a-timelike
/// case records lambda = -cx; every other case records lambda = cx.
constexpr int lambda_sign(SurfaceCase c) {
  return c == SurfaceCase::TL_SpacelikeRuling_ATimelike ? -1 : 1;
}

/// Pointwise striction data: sigma(u) = alpha(u) - offset(u) * b(u) with
/// offset = <alpha', b'> / <b', b'>, which makes <sigma', b'> = 0.
struct StrictionPoint {
  Vec3L sigma;
  double offset = 0.0;
};

/// Structure functions of the striction-adjusted surface at one u.
/// sigma' = cx * x + cy * y; mu = cy; lambda_printed applies the per-case
/// sign to cx for the timelike-surface case the frame pattern determines.
/// Derivatives are Richardson-extrapolated central differences with step h.
struct StructureSample {
  double u = 0.0;
  double cx = 0.0, cy = 0.0;
  double lambda_printed = 0.0, mu = 0.0;
  double delta = 0.0;  // pitch of the striction line
  double theta = 0.0;  // angle density of the director
  double k_g = 0.0;
  double d_cx = 0.0, d2_cx = 0.0;
  double d_cy = 0.0, d2_cy = 0.0;
  double d_kg = 0.0;
  int eps_x = 1, eps_a = 1, eps_y = 1;
  bool developable = false;  // |cy| <= 1e-6
};

/// Non-developable ruled surface X(u, v) = sigma(u) + v * b(u) built from a
/// base curve and a unit arc-length director. The striction line sigma is
/// constructed symbolically from the component trees of alpha and b, so its
/// derivatives up to order three are exact.
class RuledSurface {
 public:
  RuledSurface(ExprCurve alpha, ExprCurve director, Interval domain_u,
               Interval domain_v, std::string name);

  const CompiledCurve& base() const { return alpha_; }
  const CompiledCurve& director() const { return b_; }
  const CompiledCurve& striction_line() const { return sigma_; }
  const ExprPtr& striction_offset_expr() const { return offset_; }
  const Interval& domain_u() const { return domain_u_; }
  const Interval& domain_v() const { return domain_v_; }
  const std::string& name() const { return name_; }

  /// Director and non-developability checks over domain_u (n samples).
  /// Throws the check_director errors, or Developable when |mu| <= tol_dev
  /// at some sample.
  void validate(int n = 128, double tol = 1e-9, double tol_dev = 1e-6) const;

 private:
  CompiledCurve alpha_, b_, sigma_;
  ExprPtr offset_;
  Interval domain_u_, domain_v_;
  std::string name_;
};

/// Symbolic striction curve sigma = alpha - (<alpha',b'>/<b',b'>) * b.
ExprCurve build_striction_curve(const ExprCurve& alpha, const ExprCurve& b);

/// Pointwise striction evaluation. Throws NullRulingDerivative when
/// <b', b'> is within tol of zero.
StrictionPoint striction(const CompiledCurve& alpha, const CompiledCurve& b,
                         double u, double tol = 1e-9);

/// Structure functions at u with Richardson derivative step h. Throws the
/// frame errors and StrictionResidual when sigma' fails to decompose as
/// cx * x + cy * y within 1e-7.
StructureSample structure_sample(const RuledSurface& s, double u,
                                 double h = 1e-4, double tol = 1e-9);

/// Causal case at (u, v). Throws DegenerateMetric when |EG - F^2| <=
/// tol_degenerate (scaled), and NullNormal when cross(X_u, X_v) is null
/// within tol_null.
SurfaceCase classify(const RuledSurface& s, double u, double v,
                     double tol_null = 1e-9, double tol_degenerate = 1e-10);

/// Surface point sigma(u) + v * b(u).
Vec3L evaluate(const RuledSurface& s, double u, double v);

}  // namespace mrs
