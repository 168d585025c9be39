#pragma once

#include <iosfwd>
#include <string>

#include "mrs/curvature.hpp"
#include "mrs/surface_spec.hpp"

namespace mrs {

/// AuditReport as JSON:
/// {"formulas": [{"case", "max_abs_dev", "max_rel_dev", "mean_abs_dev",
/// "name", "verdict"}], "grid": {"nu", "nv", "skipped"}, "notes": [...],
/// "surface": ...} — keys sorted at every level, %.17g numbers.
std::string audit_report_json(const AuditReport& rep);

/// One-point evaluation record: position, frame, structure sample, case,
/// oracle and recorded K/H/kappa/tau. Printed entries whose denominator
/// vanishes serialize as null rather than failing the whole record.
std::string eval_record_json(const RuledSurface& s, double u, double v);

/// OBJ mesh: nu*nv `v` lines row-major over (u, v), then 1-indexed `f`
/// triangles, two per grid quad.
std::string export_obj(const RuledSurface& s, int nu, int nv);

/// CSV field export with header
/// u,v,x1,x2,x3,case,K_oracle,H_oracle,K_printed,H_printed,E,F,G,L,M,N.
/// Degenerate points keep their position columns and leave the rest empty.
std::string export_csv(const RuledSurface& s, int nu, int nv);

int cmd_eval(const std::string& spec_path, double u, double v, bool echo_spec,
             std::ostream& out);
int cmd_audit(const std::string& spec_path, const GridConfig& cfg,
              const std::string& out_path);
int cmd_export(const std::string& spec_path, const std::string& format, int nu,
               int nv, const std::string& out_path);
int cmd_frames(const std::string& spec_path, int n, std::ostream& out);

}  // namespace mrs
