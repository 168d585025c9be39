#pragma once

#include <vector>

#include "mrs/expr.hpp"
#include "mrs/lorentz.hpp"

namespace mrs {

/// Spherical frame of a director curve b at one u: x = b, a = b', y = cross(a, x).
/// The eps_* are the signs of the pseudo-norms; exactly one of them is -1 for
/// a valid frame. cx_aprime and cy_aprime are the projection coefficients of
/// b'' onto x and y; k_g is the geodesic curvature, defined as the y-projection
/// cy_aprime (the a-component of b'' vanishes identically).
struct FrameSample {
  double u = 0.0;
  Vec3L x, a, y;
  int eps_x = 1, eps_a = 1, eps_y = 1;
  double cx_aprime = 0.0;
  double cy_aprime = 0.0;
  double k_g = 0.0;
};

/// Result of scanning a director over its domain.
struct DirectorCheck {
  std::vector<double> u_samples;
  double max_dev_b = 0.0;   // max | |inner(b,b)| - 1 |
  double max_dev_db = 0.0;  // max | |inner(b',b')| - 1 |
  CausalClass director_class = CausalClass::Spacelike;
};

/// Scan n uniform samples of the director over dom and verify that it is a
/// unit-speed unit curve of constant causal type. Throws, in this order of
/// checks: NotUnitDirector, NullDirectorDerivative (checked before the
/// arc-length deviation so an isolated null b' is reported specifically),
/// NotArcLength, CausalClassChange.
DirectorCheck check_director(const CompiledCurve& b, const Interval& dom, int n,
                             double tol);

/// Frame at one u. Throws NullFrameVector when b, b', or cross(b', b) is null
/// within tol, and FrameResidual when b'' fails to decompose as
/// cx_aprime*x + cy_aprime*y within tol.
FrameSample frame(const CompiledCurve& b, double u, double tol);

/// Pitch delta(u) = -inner(alpha'(u), b(u)).
double pitch(const CompiledCurve& alpha, const CompiledCurve& b, double u);

/// Angle density theta(u) = -inner((b' x b)', b') = -inner(cross(b'', b), b').
double angle_density(const CompiledCurve& b, double u);

}  // namespace mrs
