#include "mrs/framing.hpp"

#include <cmath>
#include <string>

namespace mrs {

namespace {

bool near_null(double q, const Vec3L& v, double tol) {
  return std::abs(q) <= tol * std::max(1.0, sq_euclid(v));
}

std::string at_u(double u) { return " at u = " + std::to_string(u); }

}  // namespace

DirectorCheck check_director(const CompiledCurve& b, const Interval& dom, int n,
                             double tol) {
  if (n < 2)
    throw Error(Errc::BadSpec, "check_director requires at least 2 samples");

  DirectorCheck out;
  out.u_samples = linspace(dom, n);

  bool have_null_db = false;
  double null_db_u = 0.0;
  bool class_change = false;
  double class_change_u = 0.0;
  CausalClass class_b{}, class_db{};
  bool first = true;

  for (double u : out.u_samples) {
    const CurveEval ce = eval_curve(b, u);
    const double ib = inner(ce.p, ce.p);
    const double idb = inner(ce.d1, ce.d1);
    out.max_dev_b = std::max(out.max_dev_b, std::abs(std::abs(ib) - 1.0));
    out.max_dev_db = std::max(out.max_dev_db, std::abs(std::abs(idb) - 1.0));
    if (!have_null_db && near_null(idb, ce.d1, tol)) {
      have_null_db = true;
      null_db_u = u;
    }
    const CausalClass cb = causal_class(ce.p, tol);
    const CausalClass cdb = causal_class(ce.d1, tol);
    if (first) {
      class_b = cb;
      class_db = cdb;
      out.director_class = cb;
      first = false;
    } else if (!class_change && (cb != class_b || cdb != class_db)) {
      class_change = true;
      class_change_u = u;
    }
  }

  if (out.max_dev_b > tol)
    throw Error(Errc::NotUnitDirector,
                "director is not a unit curve: max | |<b,b>| - 1 | = " +
                    std::to_string(out.max_dev_b));
  if (have_null_db)
    throw Error(Errc::NullDirectorDerivative,
                "director derivative is null" + at_u(null_db_u));
  if (out.max_dev_db > tol)
    throw Error(Errc::NotArcLength,
                "director is not arc-length: max | |<b',b'>| - 1 | = " +
                    std::to_string(out.max_dev_db));
  if (class_change)
    throw Error(Errc::CausalClassChange,
                "director or its derivative changes causal class" +
                    at_u(class_change_u));
  return out;
}

FrameSample frame(const CompiledCurve& b, double u, double tol) {
  const CurveEval ce = eval_curve(b, u);

  FrameSample fs;
  fs.u = u;
  fs.x = ce.p;
  fs.a = ce.d1;
  fs.y = cross(fs.a, fs.x);

  const double qx = inner(fs.x, fs.x);
  const double qa = inner(fs.a, fs.a);
  const double qy = inner(fs.y, fs.y);
  if (near_null(qx, fs.x, tol))
    throw Error(Errc::NullFrameVector, "frame vector x is null" + at_u(u));
  if (near_null(qa, fs.a, tol))
    throw Error(Errc::NullFrameVector, "frame vector a is null" + at_u(u));
  if (near_null(qy, fs.y, tol))
    throw Error(Errc::NullFrameVector, "frame vector y is null" + at_u(u));
  fs.eps_x = qx > 0.0 ? 1 : -1;
  fs.eps_a = qa > 0.0 ? 1 : -1;
  fs.eps_y = qy > 0.0 ? 1 : -1;

  fs.cx_aprime = inner(ce.d2, fs.x) / qx;
  fs.cy_aprime = inner(ce.d2, fs.y) / qy;
  fs.k_g = fs.cy_aprime;

  // b'' has no a-component (|<a,a>| is constant), so the two projections
  // must reconstruct it.
  const Vec3L r = ce.d2 - fs.cx_aprime * fs.x - fs.cy_aprime * fs.y;
  if (std::sqrt(sq_euclid(r)) > tol)
    throw Error(Errc::FrameResidual,
                "b'' does not decompose in the frame" + at_u(u));
  return fs;
}

double pitch(const CompiledCurve& alpha, const CompiledCurve& b, double u) {
  const CurveEval ca = eval_curve(alpha, u);
  const Vec3L bp = b.position(u);
  return -inner(ca.d1, bp);
}

double angle_density(const CompiledCurve& b, double u) {
  const CurveEval ce = eval_curve(b, u);
  return -inner(cross(ce.d2, ce.p), ce.d1);
}

}  // namespace mrs
