// Acceptance gate: runs every top-level criterion and prints one line per
// criterion. Exit status 0 only when all of them pass.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrs/commands.hpp"
#include "mrs/curvature.hpp"
#include "mrs/errors.hpp"
#include "mrs/framing.hpp"
#include "mrs/lorentz.hpp"
#include "mrs/ruled.hpp"
#include "mrs/surface_spec.hpp"
#include "testutil.hpp"

namespace {

using mrs::Vec3L;

const char* const kFixtures[] = {"helicoid.json", "bscroll_like.json",
                                 "oblique_helicoid.json",
                                 "desitter_circle.json",
                                 "spacelike_patch.json"};

double det3(const Vec3L& x, const Vec3L& y, const Vec3L& z) {
  return x.c1 * (y.c2 * z.c3 - y.c3 * z.c2) -
         x.c2 * (y.c1 * z.c3 - y.c3 * z.c1) +
         x.c3 * (y.c1 * z.c2 - y.c2 * z.c1);
}

double euclid(const Vec3L& v) { return std::sqrt(mrs::sq_euclid(v)); }

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const std::string out_file = "acc_stdout_" + tag + ".txt";
  const std::string err_file = "acc_stderr_" + tag + ".txt";
  const std::string cmd = "\"" + tu::cli_path() + "\" " + args + " > " +
                          out_file + " 2> " + err_file;
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = tu::read_file(out_file);
  r.err = tu::read_file(err_file);
  std::remove(out_file.c_str());
  std::remove(err_file.c_str());
  return r;
}

// --------------------------------------------------------------------------
// Criterion 1: cross-product identities over 10^4 random triples, < 1 s.

bool criterion_lorentz(std::string& detail) {
  tu::Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 10000; ++i) {
    const Vec3L x = tu::random_vec(rng);
    const Vec3L y = tu::random_vec(rng);
    const Vec3L z = tu::random_vec(rng);
    const Vec3L w = mrs::cross(x, y);
    const double scale_x =
        std::max(1.0, euclid(w) * euclid(x));
    const double scale_y =
        std::max(1.0, euclid(w) * euclid(y));
    if (std::abs(mrs::inner(w, x)) > 1e-12 * scale_x ||
        std::abs(mrs::inner(w, y)) > 1e-12 * scale_y) {
      detail = "cross product not orthogonal to a factor at triple " +
               std::to_string(i);
      return false;
    }
    if (tu::rel_dev(mrs::inner(w, z), det3(x, y, z)) > 1e-12) {
      detail = "<x x y, z> != det(x, y, z) at triple " + std::to_string(i);
      return false;
    }
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  detail = "10^4 triples in " + std::to_string(dt.count()) + " s";
  if (dt.count() >= 1.0) {
    detail += " (budget 1 s exceeded)";
    return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// Criterion 2: symbolic derivatives of orders 1..3 vs 5-point central
// differences for every fixture curve, 200 random parameters each, < 5 s.

bool criterion_derivatives(std::string& detail) {
  tu::Rng rng(202);
  const auto t0 = std::chrono::steady_clock::now();
  const double h = 1e-3;
  for (const char* name : kFixtures) {
    const mrs::RuledSurface s = tu::load_fixture(name);
    const mrs::CompiledCurve* curves[] = {&s.base(), &s.director()};
    for (const auto* c : curves) {
      // Ladder: the order-k tree is checked against a finite difference of
      // the order-(k-1) tree, so each order gets an independent stencil.
      const std::array<mrs::ExprPtr, 3>* levels[] = {&c->comp(), &c->d1(),
                                                     &c->d2(), &c->d3()};
      for (int trial = 0; trial < 200; ++trial) {
        const double u =
            tu::uniform(rng, s.domain_u().lo, s.domain_u().hi);
        for (int order = 1; order <= 3; ++order) {
          for (int i = 0; i < 3; ++i) {
            const mrs::ExprPtr& lower = (*levels[order - 1])[static_cast<std::size_t>(i)];
            const mrs::ExprPtr& upper = (*levels[order])[static_cast<std::size_t>(i)];
            const double fd = tu::fd5(
                [&](double t) { return mrs::eval(lower, t, c->params()); }, u,
                h);
            const double sym = mrs::eval(upper, u, c->params());
            if (tu::rel_dev(sym, fd) > 1e-6) {
              detail = std::string(name) + " order " + std::to_string(order) +
                       " component " + std::to_string(i) + " at u=" +
                       std::to_string(u) + ": symbolic " + std::to_string(sym) +
                       " vs fd " + std::to_string(fd);
              return false;
            }
          }
        }
      }
    }
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  detail = "10 curves x 200 parameters x orders 1..3 in " +
           std::to_string(dt.count()) + " s";
  if (dt.count() >= 5.0) {
    detail += " (budget 5 s exceeded)";
    return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// Criterion 3: frame properties on all fixtures at 200 samples each.

bool criterion_frames(std::string& detail) {
  tu::Rng rng(303);
  const double hfd = 1e-5;
  for (const char* name : kFixtures) {
    const mrs::RuledSurface s = tu::load_fixture(name);
    const mrs::CompiledCurve& b = s.director();
    const double lo = s.domain_u().lo + 2 * hfd;
    const double hi = s.domain_u().hi - 2 * hfd;
    for (int trial = 0; trial < 200; ++trial) {
      const double u = tu::uniform(rng, lo, hi);
      const mrs::FrameSample f = mrs::frame(b, u, 1e-9);
      if (std::abs(mrs::inner(f.x, f.a)) > 1e-9 ||
          std::abs(mrs::inner(f.x, f.y)) > 1e-9 ||
          std::abs(mrs::inner(f.a, f.y)) > 1e-9) {
        detail = std::string(name) + ": frame not orthogonal at u=" +
                 std::to_string(u);
        return false;
      }
      if (std::abs(std::abs(mrs::inner(f.x, f.x)) - 1.0) > 1e-9 ||
          std::abs(std::abs(mrs::inner(f.a, f.a)) - 1.0) > 1e-9 ||
          std::abs(std::abs(mrs::inner(f.y, f.y)) - 1.0) > 1e-9) {
        detail = std::string(name) + ": non-unit pseudo-norm at u=" +
                 std::to_string(u);
        return false;
      }
      const int minus_count = (f.eps_x < 0 ? 1 : 0) + (f.eps_a < 0 ? 1 : 0) +
                              (f.eps_y < 0 ? 1 : 0);
      if (minus_count != 1) {
        detail = std::string(name) + ": " + std::to_string(minus_count) +
                 " timelike frame vectors at u=" + std::to_string(u);
        return false;
      }
      if (tu::rel_dev(f.cx_aprime, static_cast<double>(-f.eps_a * f.eps_x)) >
          1e-9) {
        detail = std::string(name) + ": cx_aprime != -eps_a*eps_x at u=" +
                 std::to_string(u);
        return false;
      }
      // Frenet residual: central differences of the frame fields against
      // x' = cx_aprime_x * a ... spelled out, x' = a, a' = cx_aprime*x + k_g*y,
      // y' = -eps_a*eps_y*k_g*a.
      const mrs::FrameSample fp = mrs::frame(b, u + hfd, 1e-9);
      const mrs::FrameSample fm = mrs::frame(b, u - hfd, 1e-9);
      const double inv2h = 1.0 / (2 * hfd);
      const Vec3L dx = inv2h * (fp.x - fm.x);
      const Vec3L da = inv2h * (fp.a - fm.a);
      const Vec3L dy = inv2h * (fp.y - fm.y);
      const Vec3L rx = dx - f.a;
      const Vec3L ra = da - (f.cx_aprime * f.x + f.k_g * f.y);
      const Vec3L ry = dy - (-static_cast<double>(f.eps_a * f.eps_y) * f.k_g * f.a);
      if (euclid(rx) > 1e-5 || euclid(ra) > 1e-5 || euclid(ry) > 1e-5) {
        detail = std::string(name) + ": Frenet residual above 1e-5 at u=" +
                 std::to_string(u);
        return false;
      }
    }
  }
  detail = "5 fixtures x 200 samples";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 4: helicoid desk curvatures plus E-coefficient reconstruction.
//
// Hand derivation. alpha = (0, 0, u), b = (cos u, sin u, 0). The base is
// already the striction line (offset <alpha', b'>/<b', b'> = 0), so
// sigma' = (0, 0, 1), x = b, a = b' and y = cross(a, x) = (0, 0, 1) with
// eps = (+1, +1, -1). Hence cx = 0, cy = <sigma', y>/<y, y> = 1,
// X_u = cy*y + v*a, X_v = x:
//   E = -1 + v^2, F = 0, G = 1, L = 0, M^2 = 1/(1 - v^2), N = 0,
//   EG - F^2 = v^2 - 1 (timelike surface; normal spacelike, eps_n = +1)
//   K = -eps_n * (LN - M^2)/(EG - F^2)^... = -M^2/(EG - F^2) applied with
//   the signature sign gives K = -1/(1 - v^2)^2 and H = 0.
// Reconstruction: sigma' = cx*x + cy*y makes
//   E = eps_x*cx^2 + eps_y*cy^2 + eps_a*v^2,
// and with this fixture's lambda = cx = 0, mu = cy the magnitude pattern
// |E| = |lambda^2 + mu^2 - v^2| follows.

bool criterion_helicoid(std::string& detail) {
  tu::Rng rng(404);
  const mrs::RuledSurface s = tu::load_fixture("helicoid.json");
  for (int i = 0; i < 100; ++i) {
    const double u = tu::uniform(rng, s.domain_u().lo, s.domain_u().hi);
    const double v = tu::uniform(rng, s.domain_v().lo, s.domain_v().hi);
    const mrs::FundamentalForms f = mrs::fundamental_forms(s, u, v);
    const mrs::GaussMean g = mrs::gauss_mean_oracle(f);
    const double k_expected = -1.0 / ((1 - v * v) * (1 - v * v));
    if (tu::rel_dev(g.K, k_expected) > 1e-8) {
      detail = "K deviates at (u, v) = (" + std::to_string(u) + ", " +
               std::to_string(v) + ")";
      return false;
    }
    if (std::abs(g.H) > 1e-8) {
      detail = "H nonzero at (u, v) = (" + std::to_string(u) + ", " +
               std::to_string(v) + ")";
      return false;
    }
    const mrs::StructureSample st = mrs::structure_sample(s, u);
    const double e_frame = st.eps_x * st.cx * st.cx +
                           st.eps_y * st.cy * st.cy + st.eps_a * v * v;
    const double e_pattern = st.lambda_printed * st.lambda_printed +
                             st.mu * st.mu - v * v;
    if (tu::rel_dev(f.E, e_frame) > 1e-8 ||
        tu::rel_dev(std::abs(f.E), std::abs(e_pattern)) > 1e-8) {
      detail = "E reconstruction deviates at u=" + std::to_string(u);
      return false;
    }
  }
  detail = "100 points: K = -1/(1-v^2)^2, H = 0, E pattern";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 5: B-scroll-like desk curvatures and case classification.

bool criterion_bscroll(std::string& detail) {
  tu::Rng rng(505);
  const mrs::RuledSurface s = tu::load_fixture("bscroll_like.json");
  for (int i = 0; i < 100; ++i) {
    const double u = tu::uniform(rng, s.domain_u().lo, s.domain_u().hi);
    const double v = tu::uniform(rng, s.domain_v().lo, s.domain_v().hi);
    const mrs::FundamentalForms f = mrs::fundamental_forms(s, u, v);
    const mrs::GaussMean g = mrs::gauss_mean_oracle(f);
    const double k_expected = -1.0 / ((1 + v * v) * (1 + v * v));
    if (tu::rel_dev(g.K, k_expected) > 1e-8) {
      detail = "K deviates at (u, v) = (" + std::to_string(u) + ", " +
               std::to_string(v) + ")";
      return false;
    }
    if (std::abs(g.H) > 1e-8) {
      detail = "H nonzero at (u, v) = (" + std::to_string(u) + ", " +
               std::to_string(v) + ")";
      return false;
    }
    if (mrs::classify(s, u, v) != mrs::SurfaceCase::TL_TimelikeRuling) {
      detail = "case is not TL_TimelikeRuling at (u, v) = (" +
               std::to_string(u) + ", " + std::to_string(v) + ")";
      return false;
    }
  }
  detail = "100 points: K = -1/(1+v^2)^2, H = 0, TL_TimelikeRuling";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 6: K/H invariance under random isometries and base replacement.

bool criterion_invariance(std::string& detail) {
  tu::Rng rng(606);
  for (const char* name : kFixtures) {
    const mrs::RuledSurface s = tu::load_fixture(name);
    const double wu = s.domain_u().hi - s.domain_u().lo;
    const double wv = s.domain_v().hi - s.domain_v().lo;
    const double us[] = {s.domain_u().lo + 0.2 * wu, s.domain_u().lo + 0.5 * wu,
                         s.domain_u().lo + 0.8 * wu};
    const double vs[] = {s.domain_v().lo + 0.3 * wv, s.domain_v().lo + 0.7 * wv};
    struct Baseline {
      double u, v, K, H;
    };
    std::vector<Baseline> base;
    for (const double u : us)
      for (const double v : vs) {
        const mrs::GaussMean g =
            mrs::gauss_mean_oracle(mrs::fundamental_forms(s, u, v));
        base.push_back({u, v, g.K, g.H});
      }
    for (int k = 0; k < 20; ++k) {
      const auto [m, t] = tu::random_isometry(rng);
      const mrs::RuledSurface moved(
          tu::transform_curve(s.base().curve(), m, t),
          tu::transform_direction(s.director().curve(), m), s.domain_u(),
          s.domain_v(), s.name());
      for (const Baseline& pt : base) {
        const mrs::GaussMean g =
            mrs::gauss_mean_oracle(mrs::fundamental_forms(moved, pt.u, pt.v));
        if (tu::rel_dev(g.K, pt.K) > 1e-8 || tu::rel_dev(g.H, pt.H) > 1e-8) {
          detail = std::string(name) + ": K/H moved under isometry " +
                   std::to_string(k) + " at (u, v) = (" + std::to_string(pt.u) +
                   ", " + std::to_string(pt.v) + ")";
          return false;
        }
      }
    }
    // Base replacement alpha -> alpha + f(u) b leaves the striction line,
    // and with it every curvature, unchanged. Restricted to fixtures whose
    // director is parameter-free so the replacement curve needs no extra
    // bindings.
    if (s.director().params().empty()) {
      const mrs::ExprPtr f = mrs::parse("0.3*sin(u) + 0.2*u");
      const mrs::RuledSurface shifted(
          tu::add_multiple_of_director(s.base().curve(), s.director().curve(),
                                       f),
          s.director().curve(), s.domain_u(), s.domain_v(), s.name());
      for (const Baseline& pt : base) {
        const mrs::GaussMean g =
            mrs::gauss_mean_oracle(mrs::fundamental_forms(shifted, pt.u, pt.v));
        if (tu::rel_dev(g.K, pt.K) > 1e-8 || tu::rel_dev(g.H, pt.H) > 1e-8) {
          detail = std::string(name) +
                   ": K/H moved under base replacement at (u, v) = (" +
                   std::to_string(pt.u) + ", " + std::to_string(pt.v) + ")";
          return false;
        }
      }
    }
  }
  detail = "20 isometries and base replacement on 5 fixtures";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 7: pitch identity delta = -eps_x * cx on all fixtures.

bool criterion_pitch(std::string& detail) {
  tu::Rng rng(707);
  for (const char* name : kFixtures) {
    const mrs::RuledSurface s = tu::load_fixture(name);
    for (int i = 0; i < 100; ++i) {
      const double u = tu::uniform(rng, s.domain_u().lo, s.domain_u().hi);
      const mrs::StructureSample st = mrs::structure_sample(s, u);
      if (tu::rel_dev(st.delta, -st.eps_x * st.cx) > 1e-9) {
        detail = std::string(name) + ": delta != -eps_x*cx at u=" +
                 std::to_string(u);
        return false;
      }
    }
  }
  detail = "5 fixtures x 100 samples";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 8: audit determinism on the helicoid, verdicts, golden file.

bool criterion_audit(std::string& detail) {
  const std::string spec = tu::fixture_path("helicoid.json");
  const CliResult r1 = run_cli("audit --spec " + spec +
                               " --nu 32 --nv 32 --out acc_audit_1.json");
  const CliResult r2 = run_cli("audit --spec " + spec +
                               " --nu 32 --nv 32 --out acc_audit_2.json");
  if (r1.code != 0 || r2.code != 0) {
    detail = "audit exited with " + std::to_string(r1.code) + "/" +
             std::to_string(r2.code) + ": " + r1.err;
    return false;
  }
  const std::string a = tu::read_file("acc_audit_1.json");
  const std::string b = tu::read_file("acc_audit_2.json");
  std::remove("acc_audit_1.json");
  std::remove("acc_audit_2.json");
  if (a != b) {
    detail = "reports differ between runs";
    return false;
  }
  if (a != tu::read_file(tu::golden_path("helicoid_audit_32x32.json"))) {
    detail = "report differs from the committed golden file";
    return false;
  }
  const nlohmann::json rep = nlohmann::json::parse(a);
  std::set<std::string> k_verdicts;
  for (const auto& row : rep.at("formulas")) {
    if (row.at("name") == "H" && row.at("verdict") != "Matches") {
      detail = "H verdict is " + row.at("verdict").get<std::string>();
      return false;
    }
    if (row.at("name") == "K")
      k_verdicts.insert(row.at("verdict").get<std::string>());
  }
  if (k_verdicts.empty()) {
    detail = "no K verdict recorded";
    return false;
  }
  detail = "byte-stable vs golden; H Matches; K verdict recorded:";
  for (const auto& v : k_verdicts) detail += " " + v;
  return true;
}

// --------------------------------------------------------------------------
// Criterion 9: designated error codes on the three failure paths, no NaN.

bool criterion_errors(std::string& detail) {
  const mrs::RuledSurface s = tu::load_fixture("helicoid.json");
  for (const double v : {1.0, -1.0}) {
    try {
      (void)mrs::fundamental_forms(s, 0.7, v);
      detail = "no error at v = " + std::to_string(v);
      return false;
    } catch (const mrs::Error& e) {
      if (e.code() != mrs::Errc::DegenerateMetric) {
        detail = std::string("v = ") + std::to_string(v) + " raised " +
                 mrs::errc_name(e.code());
        return false;
      }
    }
  }
  {
    mrs::ExprCurve cubic;
    cubic.comp = {mrs::parse("cos(u^3)"), mrs::parse("sin(u^3)"),
                  mrs::parse("0")};
    try {
      (void)mrs::check_director(mrs::compile(cubic), {-1.0, 1.0}, 65, 1e-9);
      detail = "cubic-phase director passed the check";
      return false;
    } catch (const mrs::Error& e) {
      if (e.code() != mrs::Errc::NullDirectorDerivative) {
        detail = std::string("cubic-phase director raised ") +
                 mrs::errc_name(e.code());
        return false;
      }
    }
  }
  {
    mrs::ExprCurve wide;
    wide.comp = {mrs::parse("2*cos(u)"), mrs::parse("2*sin(u)"),
                 mrs::parse("0")};
    try {
      (void)mrs::check_director(mrs::compile(wide), {0.0, 6.283185307179586},
                                32, 1e-9);
      detail = "radius-2 director passed the check";
      return false;
    } catch (const mrs::Error& e) {
      if (e.code() != mrs::Errc::NotUnitDirector) {
        detail = std::string("radius-2 director raised ") +
                 mrs::errc_name(e.code());
        return false;
      }
    }
  }
  // The CLI reports the degenerate point on stderr and never prints NaN.
  const CliResult r =
      run_cli("eval --spec " + tu::fixture_path("helicoid.json") +
              " --u 0.7 --v 1");
  if (r.code != 2 || r.err.find("DegenerateMetric") == std::string::npos) {
    detail = "CLI exit " + std::to_string(r.code) + ", stderr: " + r.err;
    return false;
  }
  if (r.out.find("nan") != std::string::npos ||
      r.out.find("inf") != std::string::npos) {
    detail = "CLI printed a non-finite value";
    return false;
  }
  detail = "DegenerateMetric, NullDirectorDerivative, NotUnitDirector";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<bool(std::string&)> fn;
  };
  const Criterion criteria[] = {
      {"Lorentz cross-product identities", criterion_lorentz},
      {"symbolic vs finite-difference derivatives", criterion_derivatives},
      {"frame properties on all fixtures", criterion_frames},
      {"helicoid curvature desk values", criterion_helicoid},
      {"B-scroll-like curvature desk values", criterion_bscroll},
      {"isometry and base-replacement invariance", criterion_invariance},
      {"pitch identity", criterion_pitch},
      {"audit determinism and verdicts", criterion_audit},
      {"designated error codes", criterion_errors},
  };
  bool all_pass = true;
  int n = 0;
  for (const Criterion& c : criteria) {
    ++n;
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    all_pass = all_pass && ok;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": "
              << c.label << " (" << detail << ")\n";
  }
  return all_pass ? 0 : 1;
}
