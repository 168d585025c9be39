#pragma once

#include <algorithm>
#include <cmath>

#include "mrs/errors.hpp"

namespace mrs {

/// Vector in Minkowski 3-space IR^3_1 with metric signature (+, +, -):
/// inner(x, y) = x1*y1 + x2*y2 - x3*y3. The third coordinate is the
/// timelike one.
struct Vec3L {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

enum class CausalClass { Spacelike, Timelike, Null };

constexpr const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::Timelike: return "Timelike";
    case CausalClass::Null: return "Null";
  }
  return "Unknown";
}

constexpr Vec3L operator+(const Vec3L& a, const Vec3L& b) {
  return {a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}

constexpr Vec3L operator-(const Vec3L& a, const Vec3L& b) {
  return {a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
}

constexpr Vec3L operator-(const Vec3L& a) { return {-a.c1, -a.c2, -a.c3}; }

constexpr Vec3L operator*(double s, const Vec3L& a) {
  return {s * a.c1, s * a.c2, s * a.c3};
}

constexpr Vec3L operator*(const Vec3L& a, double s) { return s * a; }

/// Lorentzian inner product, signature (+, +, -).
constexpr double inner(const Vec3L& x, const Vec3L& y) {
  return x.c1 * y.c1 + x.c2 * y.c2 - x.c3 * y.c3;
}

/// Squared Euclidean magnitude; used only to scale tolerances.
constexpr double sq_euclid(const Vec3L& x) {
  return x.c1 * x.c1 + x.c2 * x.c2 + x.c3 * x.c3;
}

/// Lorentzian cross product, fixed by the identity
/// inner(cross(x, y), z) = det(x, y, z) for all z (rows x, y, z).
/// Both factors are Lorentz-orthogonal to the result.
constexpr Vec3L cross(const Vec3L& x, const Vec3L& y) {
  return {x.c2 * y.c3 - x.c3 * y.c2,
          x.c3 * y.c1 - x.c1 * y.c3,
          x.c2 * y.c1 - x.c1 * y.c2};
}

/// Causal classification. |inner(x,x)| is compared against
/// tol * max(1, sq_euclid(x)); the exact zero vector counts as Spacelike.
inline CausalClass causal_class(const Vec3L& x, double tol) {
  if (x.c1 == 0.0 && x.c2 == 0.0 && x.c3 == 0.0) return CausalClass::Spacelike;
  const double q = inner(x, x);
  if (std::abs(q) <= tol * std::max(1.0, sq_euclid(x))) return CausalClass::Null;
  return q > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

/// Pseudo-norm sqrt(|inner(x, x)|).
inline double norm(const Vec3L& x) { return std::sqrt(std::abs(inner(x, x))); }

/// x / norm(x). Rejects null and zero vectors.
inline Vec3L normalize(const Vec3L& x, double tol = 1e-9) {
  if (causal_class(x, tol) == CausalClass::Null)
    throw Error(Errc::NullVector, "cannot normalize a null vector");
  const double n = norm(x);
  if (n == 0.0)
    throw Error(Errc::NullVector, "cannot normalize the zero vector");
  return {x.c1 / n, x.c2 / n, x.c3 / n};
}

}  // namespace mrs
