#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mrs/commands.hpp"
#include "mrs/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "mrs: ruled surfaces in Minkowski 3-space -- structure functions, "
      "curvature oracles, and closed-form audits"};
  app.require_subcommand(1);

  std::string eval_spec;
  double eval_u = 0.0, eval_v = 0.0;
  bool echo_spec = false;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one (u, v) sample");
  eval->add_option("--spec", eval_spec, "Surface spec JSON file")->required();
  eval->add_option("--u", eval_u, "u coordinate");
  eval->add_option("--v", eval_v, "v coordinate");
  eval->add_flag("--echo-spec", echo_spec,
                 "Print the normalized spec instead of evaluating");

  std::string audit_spec, audit_out;
  mrs::GridConfig cfg;
  CLI::App* audit = app.add_subcommand(
      "audit", "Compare recorded closed forms against the oracle on a grid");
  audit->add_option("--spec", audit_spec, "Surface spec JSON file")->required();
  audit->add_option("--nu", cfg.nu, "u sample count");
  audit->add_option("--nv", cfg.nv, "v sample count");
  audit->add_option("--out", audit_out, "Report output path")->required();
  audit->add_option("--step", cfg.derivative_step,
                    "Richardson derivative step");
  audit->add_option("--tol-null", cfg.tol_null, "Null-vector tolerance");

  std::string export_spec, export_format, export_out;
  int export_nu = 32, export_nv = 32;
  CLI::App* exp = app.add_subcommand("export", "Write an OBJ mesh or CSV field");
  exp->add_option("--spec", export_spec, "Surface spec JSON file")->required();
  exp->add_option("--format", export_format, "obj or csv")
      ->required()
      ->check(CLI::IsMember({"obj", "csv"}));
  exp->add_option("--nu", export_nu, "u sample count");
  exp->add_option("--nv", export_nv, "v sample count");
  exp->add_option("--out", export_out, "Output path")->required();

  std::string frames_spec;
  int frames_n = 16;
  CLI::App* frames =
      app.add_subcommand("frames", "Print the director frame table as CSV");
  frames->add_option("--spec", frames_spec, "Surface spec JSON file")
      ->required();
  frames->add_option("--n", frames_n, "Sample count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval->parsed())
      return mrs::cmd_eval(eval_spec, eval_u, eval_v, echo_spec, std::cout);
    if (audit->parsed()) return mrs::cmd_audit(audit_spec, cfg, audit_out);
    if (exp->parsed())
      return mrs::cmd_export(export_spec, export_format, export_nu, export_nv,
                             export_out);
    if (frames->parsed())
      return mrs::cmd_frames(frames_spec, frames_n, std::cout);
  } catch (const mrs::Error& e) {
    std::cerr << "error: " << mrs::errc_name(e.code()) << ": " << e.what();
    if (e.position() != mrs::Error::npos)
      std::cerr << " (byte " << e.position() << ")";
    std::cerr << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
