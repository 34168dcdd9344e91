#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcb/experiment.hpp"

namespace {

int cmd_run(const std::string& preset_name, const std::string& config_path,
            const std::vector<std::string>& overrides, const std::string& out_dir) {
  pcb::ExperimentConfig config;
  if (!preset_name.empty())
    config = pcb::preset(preset_name);
  else if (!config_path.empty())
    config = pcb::load_config_file(config_path);
  else {
    std::cerr << "run: pass --preset or --config\n";
    return 2;
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      std::cerr << "run: override '" << ov << "' is not key=value\n";
      return 2;
    }
    pcb::apply_override(config, ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (!out_dir.empty()) config.out_dir = out_dir;

  const pcb::RunReport report = pcb::run(config);
  std::cout << "run '" << config.label << "' finished in " << report.wall_seconds << " s\n"
            << "  final snapshot: " << report.final_csv << "\n"
            << "  series:         " << report.series_csv << "\n";
  if (!report.audit_csv.empty()) std::cout << "  audit:          " << report.audit_csv << "\n";
  std::cout << "  entropy: " << report.entropy_initial << " -> " << report.entropy_final << "\n";
  double drift = 0.0;
  for (double d : report.mass_drift) drift = std::max(drift, std::abs(d));
  std::cout << "  max mass drift per mode: " << drift << "\n";
  for (const auto& a : report.audits)
    std::printf("  discontinuity @ x=%.4f  s=%+.3e  rh_residual=%.3e  entropy_%s\n", a.location,
                a.speed, a.rh_residual, a.entropy_admissible ? "admissible" : "VIOLATION");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-Galerkin Burgers solvers (CPR/FV/FD) with entropy-stable fluxes"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "evolve one configuration and write CSV reports");
  std::string preset_name, config_path, out_dir;
  std::vector<std::string> overrides;
  run_cmd->add_option("--preset", preset_name,
                      "named preset (fig1, fig2, fig3, fig4-*, fig5, fig6)");
  run_cmd->add_option("--config", config_path, "key=value config file");
  run_cmd->add_option("--override", overrides, "key=value overrides, repeatable");
  run_cmd->add_option("--out", out_dir, "output directory (joined with $PCB_OUT_ROOT)");

  // reference
  auto* ref_cmd = app.add_subcommand("reference", "emit closed-form reference coefficients");
  std::string ref_case = "shock", family = "hermite", ref_out = "reference.csv";
  double ref_t = 0.5, alpha = 0.0, beta = 0.0;
  double a = 1.0, b = 0.2, x0 = 0.5;
  int grid = 1001, modes = 7;
  ref_cmd->add_option("--case", ref_case, "shock | rarefaction | bump");
  ref_cmd->add_option("--family", family, "hermite | jacobi | laguerre");
  ref_cmd->add_option("--alpha", alpha, "family parameter alpha");
  ref_cmd->add_option("--beta", beta, "family parameter beta (jacobi)");
  ref_cmd->add_option("--t", ref_t, "evaluation time (0 emits initial data)");
  ref_cmd->add_option("--grid", grid, "number of x samples");
  ref_cmd->add_option("--modes", modes, "number of coefficients to emit");
  ref_cmd->add_option("--a", a, "jump half-height");
  ref_cmd->add_option("--b", b, "stochastic slope");
  ref_cmd->add_option("--x0", x0, "initial discontinuity location");
  ref_cmd->add_option("--out", ref_out, "output csv path");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "error norms between two csv files");
  std::string csv_a, csv_b, cmp_out;
  bool interpolate = false;
  cmp_cmd->add_option("a", csv_a, "first csv")->required();
  cmp_cmd->add_option("b", csv_b, "second csv")->required();
  cmp_cmd->add_flag("--interpolate", interpolate, "resample b onto a's grid");
  cmp_cmd->add_option("--out", cmp_out, "also write the norms as csv");

  // presets
  auto* list_cmd = app.add_subcommand("presets", "list preset names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(preset_name, config_path, overrides, out_dir);
    if (ref_cmd->parsed()) {
      pcb::ReferenceRequest req;
      if (ref_case == "shock")
        req.test_case = pcb::TestCase::Shock;
      else if (ref_case == "rarefaction")
        req.test_case = pcb::TestCase::Rarefaction;
      else if (ref_case == "bump")
        req.test_case = pcb::TestCase::Bump;
      else {
        std::cerr << "reference: unknown case '" << ref_case << "'\n";
        return 2;
      }
      if (family == "hermite")
        req.family = pcb::OrthogonalFamily::hermite();
      else if (family == "jacobi")
        req.family = pcb::OrthogonalFamily::jacobi(alpha, beta);
      else if (family == "laguerre")
        req.family = pcb::OrthogonalFamily::laguerre(alpha);
      else {
        std::cerr << "reference: unknown family '" << family << "'\n";
        return 2;
      }
      req.t = ref_t;
      req.grid_points = grid;
      req.modes = modes;
      req.setup = {pcb::RiemannSetup::Kind::Shock, a, b, x0};
      req.bump.b = b;
      pcb::emit_reference(req, ref_out);
      std::cout << "wrote " << ref_out << "\n";
      return 0;
    }
    if (cmp_cmd->parsed()) {
      const pcb::CompareReport rep = pcb::compare_csv(csv_a, csv_b, interpolate);
      std::printf("%-12s %14s %14s %14s\n", "column", "L1", "L2", "Linf");
      for (const auto& c : rep.columns)
        std::printf("%-12s %14.6e %14.6e %14.6e\n", c.name.c_str(), c.l1, c.l2, c.linf);
      if (!cmp_out.empty()) {
        std::ofstream out(cmp_out);
        if (!out) {
          std::cerr << "compare: cannot write " << cmp_out << "\n";
          return 1;
        }
        out << "column,l1,l2,linf\n";
        char line[160];
        for (const auto& c : rep.columns) {
          std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%.17g\n", c.name.c_str(), c.l1, c.l2,
                        c.linf);
          out << line;
        }
      }
      return 0;
    }
    if (list_cmd->parsed()) {
      for (const auto& n : pcb::preset_names()) std::cout << n << "\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
