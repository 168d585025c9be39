#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrs/ruled.hpp"

namespace mrs {

/// Sampling configuration shared by the audit and the exporters.
struct GridConfig {
  int nu = 32;
  int nv = 32;
  double derivative_step = 1e-4;
  double tol_null = 1e-9;
  double tol_degenerate = 1e-10;
};

/// First and second fundamental form coefficients at (u, v), with the unit
/// normal n = cross(X_u, X_v)/norm and the sign eps_n of <n, n>. N == 0 for
/// every ruled surface (X_vv = 0).
struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double L = 0.0, M = 0.0, N = 0.0;
  double det1 = 0.0;  // EG - F^2
  Vec3L n_unit;
  int eps_n = 1;
};

struct GaussMean {
  double K = 0.0;
  double H = 0.0;
};

/// Curvature and torsion of the striction line under the pseudo-norm
/// sqrt(|<.,.>|). tau is absent when <sigma' x sigma'', sigma' x sigma''>
/// vanishes (the torsion is undefined there, never infinite).
struct StrictionCurvature {
  double kappa = 0.0;
  std::optional<double> tau;
};

/// Values of the recorded per-case closed forms, together with the core
/// denominator each formula divides by (for H this excludes the factor 2).
struct PrintedValues {
  double K = 0.0, H = 0.0, kappa_sq = 0.0, tau = 0.0;
};

enum class PrintedKind { K, H, KappaSq, Tau };

constexpr const char* to_string(PrintedKind k) {
  switch (k) {
    case PrintedKind::K: return "K";
    case PrintedKind::H: return "H";
    case PrintedKind::KappaSq: return "kappa_sq";
    case PrintedKind::Tau: return "tau";
  }
  return "?";
}

struct Printed {
  double value = 0.0;
  double denominator = 0.0;  // core denominator, before any constant factor
};

enum class Verdict { Matches, MatchesUpToSign, MatchesWithSquaredDenominator, Mismatch };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Matches: return "Matches";
    case Verdict::MatchesUpToSign: return "MatchesUpToSign";
    case Verdict::MatchesWithSquaredDenominator: return "MatchesWithSquaredDenominator";
    case Verdict::Mismatch: return "Mismatch";
  }
  return "?";
}

/// Per-(formula, case) audit aggregate. Deviations are printed-vs-oracle;
/// the verdict additionally considers the sign-flipped and
/// squared-denominator readings of the printed formula.
struct FormulaStat {
  PrintedKind kind = PrintedKind::K;
  SurfaceCase scase = SurfaceCase::TL_SpacelikeRuling_ATimelike;
  long samples = 0;
  long skipped = 0;  // samples where the printed value or oracle is undefined
  double max_abs_dev = 0.0;
  double mean_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  Verdict verdict = Verdict::Mismatch;
};

struct AuditReport {
  std::string surface;
  int nu = 0, nv = 0;
  long skipped = 0;  // grid points on the degenerate locus
  std::map<SurfaceCase, long> case_counts;
  std::vector<FormulaStat> formulas;
  std::vector<std::string> notes;
};

/// Fundamental forms at (u, v). Throws DegenerateMetric and NullNormal.
FundamentalForms fundamental_forms(const RuledSurface& s, double u, double v,
                                   double tol_null = 1e-9,
                                   double tol_degenerate = 1e-10);

/// Gauss and mean curvature from fundamental forms:
/// K = -eps (LN - M^2)/(EG - F^2), H = eps (GL + EN - 2FM)/(2(EG - F^2)),
/// eps = -1 for a timelike normal and +1 for a spacelike normal.
GaussMean gauss_mean_oracle(const FundamentalForms& f);

/// kappa = ||sigma' x sigma''|| / ||sigma'||^3 and
/// tau = <sigma', sigma'' x sigma'''> / ||sigma' x sigma''||^2 from exact
/// symbolic derivatives of the striction line. Throws NullTangent when
/// sigma' is null.
StrictionCurvature kappa_tau_oracle(const RuledSurface& s, double u,
                                    double tol = 1e-9);

/// Same formulas applied to explicitly given derivatives (test hook).
StrictionCurvature kappa_tau_from_derivatives(const Vec3L& d1, const Vec3L& d2,
                                              const Vec3L& d3,
                                              double tol = 1e-9);

/// One recorded closed form for the given case, evaluated from the structure
/// functions (lambda takes the per-case sign of cx). Throws
/// PrintedDenominatorZero when the core denominator vanishes.
Printed printed_formula(SurfaceCase c, const StructureSample& s, double v,
                        PrintedKind kind);

/// All four recorded closed forms; throws if any denominator vanishes.
PrintedValues printed_formulas(SurfaceCase c, const StructureSample& s,
                               double v);

/// Sample an nu x nv grid over the surface domains, skip metric-degenerate
/// points, and compare every recorded closed form against the oracle.
/// Throws EmptyGrid when no grid point survives.
AuditReport audit(const RuledSurface& s, const GridConfig& cfg);

}  // namespace mrs
