#include "mrs/commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mrs/jsonout.hpp"

namespace mrs {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Errc::IoError, "cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out)
    throw Error(Errc::IoError, "cannot write output file: " + path);
}

void key_value_or_null(JsonWriter& w, const char* k,
                       const std::optional<double>& v) {
  w.key(k);
  if (v)
    w.value(*v);
  else
    w.null_value();
}

std::string csv_num(double v) { return json_number(v); }

}  // namespace

std::string audit_report_json(const AuditReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("formulas").begin_array();
  for (const FormulaStat& st : rep.formulas) {
    w.begin_object();
    w.key("case").value(to_string(st.scase));
    w.key("max_abs_dev").value(st.max_abs_dev);
    w.key("max_rel_dev").value(st.max_rel_dev);
    w.key("mean_abs_dev").value(st.mean_abs_dev);
    w.key("name").value(to_string(st.kind));
    w.key("verdict").value(to_string(st.verdict));
    w.end_object();
  }
  w.end_array();
  w.key("grid").begin_object();
  w.key("nu").value(rep.nu);
  w.key("nv").value(rep.nv);
  w.key("skipped").value(rep.skipped);
  w.end_object();
  w.key("notes").begin_array();
  for (const std::string& n : rep.notes) w.value(n);
  w.end_array();
  w.key("surface").value(rep.surface);
  w.end_object();
  return w.take();
}

std::string eval_record_json(const RuledSurface& s, double u, double v) {
  const FrameSample fr = frame(s.director(), u, 1e-9);
  const StructureSample sample = structure_sample(s, u);
  const SurfaceCase sc = classify(s, u, v);
  const FundamentalForms f = fundamental_forms(s, u, v);
  const GaussMean gm = gauss_mean_oracle(f);
  const StrictionCurvature kt = kappa_tau_oracle(s, u);
  const Vec3L pos = evaluate(s, u, v);

  auto printed = [&](PrintedKind kind) -> std::optional<double> {
    try {
      return printed_formula(sc, sample, v, kind).value;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const std::optional<double> kp = printed(PrintedKind::K);
  const std::optional<double> hp = printed(PrintedKind::H);
  const std::optional<double> ksqp = printed(PrintedKind::KappaSq);
  const std::optional<double> taup = printed(PrintedKind::Tau);

  auto abs_dev = [](const std::optional<double>& p,
                    double oracle) -> std::optional<double> {
    if (!p) return std::nullopt;
    return std::abs(*p - oracle);
  };

  JsonWriter w;
  w.begin_object();
  w.key("H_oracle").value(gm.H);
  key_value_or_null(w, "H_printed", hp);
  w.key("K_oracle").value(gm.K);
  key_value_or_null(w, "K_printed", kp);
  key_value_or_null(w, "abs_dev_H", abs_dev(hp, gm.H));
  key_value_or_null(w, "abs_dev_K", abs_dev(kp, gm.K));
  w.key("case").value(to_string(sc));
  w.key("frame").begin_object();
  w.key("a").value(fr.a);
  w.key("eps_a").value(fr.eps_a);
  w.key("eps_x").value(fr.eps_x);
  w.key("eps_y").value(fr.eps_y);
  w.key("k_g").value(fr.k_g);
  w.key("x").value(fr.x);
  w.key("y").value(fr.y);
  w.end_object();
  w.key("kappa_oracle").value(kt.kappa);
  key_value_or_null(w, "kappa_sq_printed", ksqp);
  w.key("position").value(pos);
  w.key("structure").begin_object();
  w.key("cx").value(sample.cx);
  w.key("cy").value(sample.cy);
  w.key("d2_cx").value(sample.d2_cx);
  w.key("d2_cy").value(sample.d2_cy);
  w.key("d_cx").value(sample.d_cx);
  w.key("d_cy").value(sample.d_cy);
  w.key("d_kg").value(sample.d_kg);
  w.key("delta").value(sample.delta);
  w.key("developable").value(sample.developable);
  w.key("k_g").value(sample.k_g);
  w.key("lambda_printed").value(sample.lambda_printed);
  w.key("mu").value(sample.mu);
  w.key("theta").value(sample.theta);
  w.end_object();
  w.key("surface").value(s.name());
  key_value_or_null(w, "tau_oracle", kt.tau);
  key_value_or_null(w, "tau_printed", taup);
  w.key("u").value(u);
  w.key("v").value(v);
  w.end_object();
  return w.take();
}

std::string export_obj(const RuledSurface& s, int nu, int nv) {
  const std::vector<double> us = linspace(s.domain_u(), nu);
  const std::vector<double> vs = linspace(s.domain_v(), nv);
  std::string out;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const Vec3L p = evaluate(s, us[i], vs[j]);
      out += "v " + csv_num(p.c1) + " " + csv_num(p.c2) + " " + csv_num(p.c3) +
             "\n";
    }
  }
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const int a = i * nv + j + 1;
      const int b = (i + 1) * nv + j + 1;
      const int c = (i + 1) * nv + j + 2;
      const int d = i * nv + j + 2;
      out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
             std::to_string(c) + "\n";
      out += "f " + std::to_string(a) + " " + std::to_string(c) + " " +
             std::to_string(d) + "\n";
    }
  }
  return out;
}

std::string export_csv(const RuledSurface& s, int nu, int nv) {
  const std::vector<double> us = linspace(s.domain_u(), nu);
  const std::vector<double> vs = linspace(s.domain_v(), nv);
  std::string out =
      "u,v,x1,x2,x3,case,K_oracle,H_oracle,K_printed,H_printed,E,F,G,L,M,N\n";

  for (int i = 0; i < nu; ++i) {
    const double u = us[i];
    bool column_ok = true;
    StructureSample sample;
    try {
      sample = structure_sample(s, u);
    } catch (const Error&) {
      column_ok = false;
    }
    for (int j = 0; j < nv; ++j) {
      const double v = vs[j];
      const Vec3L p = evaluate(s, u, v);
      out += csv_num(u) + "," + csv_num(v) + "," + csv_num(p.c1) + "," +
             csv_num(p.c2) + "," + csv_num(p.c3);

      SurfaceCase sc;
      FundamentalForms f;
      bool point_ok = column_ok;
      if (point_ok) {
        try {
          sc = classify(s, u, v);
          f = fundamental_forms(s, u, v);
        } catch (const Error&) {
          point_ok = false;
        }
      }
      if (!point_ok) {
        // case,K_oracle,H_oracle,K_printed,H_printed,E,F,G,L,M,N stay empty.
        out += ",,,,,,,,,,,\n";
        continue;
      }
      const GaussMean gm = gauss_mean_oracle(f);
      std::string kp, hp;
      try {
        kp = csv_num(printed_formula(sc, sample, v, PrintedKind::K).value);
      } catch (const Error&) {
      }
      try {
        hp = csv_num(printed_formula(sc, sample, v, PrintedKind::H).value);
      } catch (const Error&) {
      }
      out += std::string(",") + to_string(sc) + "," + csv_num(gm.K) + "," +
             csv_num(gm.H) + "," + kp + "," + hp + "," + csv_num(f.E) + "," +
             csv_num(f.F) + "," + csv_num(f.G) + "," + csv_num(f.L) + "," +
             csv_num(f.M) + "," + csv_num(f.N) + "\n";
    }
  }
  return out;
}

int cmd_eval(const std::string& spec_path, double u, double v, bool echo_spec,
             std::ostream& out) {
  const SurfaceSpec spec = load_surface_spec(spec_path);
  if (echo_spec) {
    out << echo_surface_spec(spec);
    return 0;
  }
  RuledSurface s = make_surface(spec);
  s.validate();
  out << eval_record_json(s, u, v);
  return 0;
}

int cmd_audit(const std::string& spec_path, const GridConfig& cfg,
              const std::string& out_path) {
  RuledSurface s = make_surface(load_surface_spec(spec_path));
  s.validate();
  const AuditReport rep = audit(s, cfg);
  write_file(out_path, audit_report_json(rep));
  return 0;
}

int cmd_export(const std::string& spec_path, const std::string& format, int nu,
               int nv, const std::string& out_path) {
  if (format != "obj" && format != "csv")
    throw Error(Errc::Usage, "unknown export format \"" + format + "\"");
  if (nu < 2 || nv < 2)
    throw Error(Errc::Usage, "export grid must be at least 2x2");
  RuledSurface s = make_surface(load_surface_spec(spec_path));
  s.validate();
  write_file(out_path,
             format == "obj" ? export_obj(s, nu, nv) : export_csv(s, nu, nv));
  return 0;
}

int cmd_frames(const std::string& spec_path, int n, std::ostream& out) {
  if (n < 2)
    throw Error(Errc::Usage, "--n must be at least 2");
  RuledSurface s = make_surface(load_surface_spec(spec_path));
  s.validate(n);
  out << "u,x1,x2,x3,a1,a2,a3,y1,y2,y3,eps_x,eps_a,eps_y,k_g,delta,theta,cx,"
         "cy\n";
  for (double u : linspace(s.domain_u(), n)) {
    const FrameSample fr = frame(s.director(), u, 1e-9);
    const CurveEval se = eval_curve(s.striction_line(), u);
    const double cx = inner(se.d1, fr.x) / inner(fr.x, fr.x);
    const double cy = inner(se.d1, fr.y) / inner(fr.y, fr.y);
    const double delta = -inner(se.d1, fr.x);
    const double theta = angle_density(s.director(), u);
    out << csv_num(u) << "," << csv_num(fr.x.c1) << "," << csv_num(fr.x.c2)
        << "," << csv_num(fr.x.c3) << "," << csv_num(fr.a.c1) << ","
        << csv_num(fr.a.c2) << "," << csv_num(fr.a.c3) << ","
        << csv_num(fr.y.c1) << "," << csv_num(fr.y.c2) << ","
        << csv_num(fr.y.c3) << "," << fr.eps_x << "," << fr.eps_a << ","
        << fr.eps_y << "," << csv_num(fr.k_g) << "," << csv_num(delta) << ","
        << csv_num(theta) << "," << csv_num(cx) << "," << csv_num(cy) << "\n";
  }
  return 0;
}

}  // namespace mrs
