#include "mrs/ruled.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>

namespace mrs {

namespace {

/// Lorentzian inner product at the expression level.
ExprPtr inner_expr(const std::array<ExprPtr, 3>& a,
                   const std::array<ExprPtr, 3>& b) {
  return fsub(fadd(fmul(a[0], b[0]), fmul(a[1], b[1])), fmul(a[2], b[2]));
}

struct StructureCore {
  FrameSample fr;
  double cx = 0.0, cy = 0.0, delta = 0.0;
};

StructureCore structure_core(const RuledSurface& s, double u, double tol) {
  StructureCore out;
  out.fr = frame(s.director(), u, tol);
  const CurveEval se = eval_curve(s.striction_line(), u);
  out.cx = inner(se.d1, out.fr.x) / inner(out.fr.x, out.fr.x);
  out.cy = inner(se.d1, out.fr.y) / inner(out.fr.y, out.fr.y);
  out.delta = -inner(se.d1, out.fr.x);
  const Vec3L r = se.d1 - out.cx * out.fr.x - out.cy * out.fr.y;
  if (std::sqrt(sq_euclid(r)) > 1e-7)
    throw Error(Errc::StrictionResidual,
                "sigma' does not decompose as cx*x + cy*y at u = " +
                    std::to_string(u));
  return out;
}

/// Timelike-surface case implied by the frame signs alone.
SurfaceCase frame_default_case(const FrameSample& fr) {
  if (fr.eps_x < 0) return SurfaceCase::TL_TimelikeRuling;
  if (fr.eps_a < 0) return SurfaceCase::TL_SpacelikeRuling_ATimelike;
  return SurfaceCase::TL_SpacelikeRuling_ASpacelike;
}

}  // namespace

namespace {

// offset = <alpha', b'> / <b', b'>. A numerator that folds to the zero
// literal means the base curve is already the striction line; the quotient
// is dropped so the offset (and every tree built from it) stays the
// constant 0 instead of 0 over a u-dependent denominator.
ExprPtr striction_offset_tree(const std::array<ExprPtr, 3>& da,
                              const std::array<ExprPtr, 3>& db) {
  const ExprPtr num = inner_expr(da, db);
  if (num->kind == ExprKind::Number && num->number == 0.0) return num;
  return fdiv(num, inner_expr(db, db));
}

}  // namespace

ExprCurve build_striction_curve(const ExprCurve& alpha, const ExprCurve& b) {
  std::array<ExprPtr, 3> da, db;
  for (int i = 0; i < 3; ++i) {
    da[i] = differentiate(fold(alpha.comp[i]));
    db[i] = differentiate(fold(b.comp[i]));
  }
  const ExprPtr offset = striction_offset_tree(da, db);

  ExprCurve sigma;
  sigma.params = alpha.params;
  sigma.params.insert(b.params.begin(), b.params.end());
  for (int i = 0; i < 3; ++i)
    sigma.comp[i] = fsub(alpha.comp[i], fmul(offset, b.comp[i]));
  return sigma;
}

RuledSurface::RuledSurface(ExprCurve alpha, ExprCurve director,
                           Interval domain_u, Interval domain_v,
                           std::string name)
    : domain_u_(domain_u), domain_v_(domain_v), name_(std::move(name)) {
  ExprCurve sigma = build_striction_curve(alpha, director);

  std::array<ExprPtr, 3> da, db;
  for (int i = 0; i < 3; ++i) {
    da[i] = differentiate(fold(alpha.comp[i]));
    db[i] = differentiate(fold(director.comp[i]));
  }
  offset_ = striction_offset_tree(da, db);

  alpha_ = compile(std::move(alpha));
  b_ = compile(std::move(director));
  sigma_ = compile(std::move(sigma));
}

void RuledSurface::validate(int n, double tol, double tol_dev) const {
  check_director(b_, domain_u_, n, tol);
  for (double u : linspace(domain_u_, n)) {
    const StructureCore core = structure_core(*this, u, tol);
    if (std::abs(core.cy) <= tol_dev)
      throw Error(Errc::Developable,
                  "surface is developable: |mu| <= " + std::to_string(tol_dev) +
                      " at u = " + std::to_string(u));
  }
}

StrictionPoint striction(const CompiledCurve& alpha, const CompiledCurve& b,
                         double u, double tol) {
  const CurveEval ca = eval_curve(alpha, u);
  const CurveEval cb = eval_curve(b, u);
  const double den = inner(cb.d1, cb.d1);
  if (std::abs(den) <= tol * std::max(1.0, sq_euclid(cb.d1)))
    throw Error(Errc::NullRulingDerivative,
                "<b', b'> vanishes at u = " + std::to_string(u));
  StrictionPoint out;
  out.offset = inner(ca.d1, cb.d1) / den;
  out.sigma = ca.p - out.offset * cb.p;
  return out;
}

StructureSample structure_sample(const RuledSurface& s, double u, double h,
                                 double tol) {
  const StructureCore center = structure_core(s, u, tol);

  StructureSample out;
  out.u = u;
  out.cx = center.cx;
  out.cy = center.cy;
  out.mu = center.cy;
  out.delta = center.delta;
  out.theta = angle_density(s.director(), u);
  out.k_g = center.fr.k_g;
  out.eps_x = center.fr.eps_x;
  out.eps_a = center.fr.eps_a;
  out.eps_y = center.fr.eps_y;
  out.lambda_printed = lambda_sign(frame_default_case(center.fr)) * center.cx;
  out.developable = std::abs(center.cy) <= 1e-6;

  // One Richardson level on central differences: five core evaluations give
  // first and second derivatives of cx, cy, k_g together.
  struct Triple {
    double cx, cy, kg;
  };
  auto probe = [&](double uu) -> Triple {
    const StructureCore c = structure_core(s, uu, tol);
    return {c.cx, c.cy, c.fr.k_g};
  };
  const Triple pm2 = probe(u - h);
  const Triple pm1 = probe(u - h / 2.0);
  const Triple pp1 = probe(u + h / 2.0);
  const Triple pp2 = probe(u + h);

  auto rich1 = [&](double fm2, double fm1, double fp1, double fp2) {
    const double dh = (fp2 - fm2) / (2.0 * h);
    const double dh2 = (fp1 - fm1) / h;
    return (4.0 * dh2 - dh) / 3.0;
  };
  auto rich2 = [&](double fm2, double fm1, double f0, double fp1, double fp2) {
    const double dh = (fp2 - 2.0 * f0 + fm2) / (h * h);
    const double dh2 = (fp1 - 2.0 * f0 + fm1) / (h * h / 4.0);
    return (4.0 * dh2 - dh) / 3.0;
  };

  out.d_cx = rich1(pm2.cx, pm1.cx, pp1.cx, pp2.cx);
  out.d_cy = rich1(pm2.cy, pm1.cy, pp1.cy, pp2.cy);
  out.d_kg = rich1(pm2.kg, pm1.kg, pp1.kg, pp2.kg);
  out.d2_cx = rich2(pm2.cx, pm1.cx, center.cx, pp1.cx, pp2.cx);
  out.d2_cy = rich2(pm2.cy, pm1.cy, center.cy, pp1.cy, pp2.cy);

  return out;
}

SurfaceCase classify(const RuledSurface& s, double u, double v,
                     double tol_null, double tol_degenerate) {
  const FrameSample fr = frame(s.director(), u, tol_null);
  const CurveEval se = eval_curve(s.striction_line(), u);

  const Vec3L xu = se.d1 + v * fr.a;
  const Vec3L xv = fr.x;
  const double E = inner(xu, xu);
  const double F = inner(xu, xv);
  const double G = inner(xv, xv);
  const double det1 = E * G - F * F;
  if (std::abs(det1) <= tol_degenerate * std::max(1.0, std::abs(E * G) + F * F))
    throw Error(Errc::DegenerateMetric,
                "EG - F^2 vanishes at (u, v) = (" + std::to_string(u) + ", " +
                    std::to_string(v) + ")");
  const Vec3L n_raw = cross(xu, xv);
  const CausalClass nc = causal_class(n_raw, tol_null);
  if (nc == CausalClass::Null)
    throw Error(Errc::NullNormal, "surface normal is null at (u, v) = (" +
                                      std::to_string(u) + ", " +
                                      std::to_string(v) + ")");

  if (nc == CausalClass::Spacelike) {
    // Spacelike normal: the surface is timelike.
    return frame_default_case(fr);
  }
  // Timelike normal: the surface is spacelike.
  return fr.eps_y < 0 ? SurfaceCase::SL_YTimelike : SurfaceCase::SL_YSpacelike;
}

Vec3L evaluate(const RuledSurface& s, double u, double v) {
  return s.striction_line().position(u) + v * s.director().position(u);
}

}  // namespace mrs
