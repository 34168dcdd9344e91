#pragma once

#include <string>
#include <vector>

#include "pcb/audit.hpp"
#include "pcb/fd.hpp"
#include "pcb/galerkin.hpp"
#include "pcb/reference.hpp"

namespace pcb {

enum class TestCase { Bump, Rarefaction, Shock };
enum class SolverKind { CPR, FV, FD };
enum class FluxKind { EC, LLF_ES };
enum class BcChoice { Default, Periodic, Inflow, Outflow };

/// Full description of one run. Flat key=value serialization; unknown keys
/// are rejected with the offending name.
struct ExperimentConfig {
  TestCase test_case = TestCase::Shock;
  SolverKind solver = SolverKind::CPR;
  int pc_order = 3;    // M
  int elements = 250;  // N: elements (CPR), cells (FV, FD grid cells)
  int degree = 3;      // p, CPR only
  long steps = 10000;
  double t_end = 0.5;
  double dt = 0.0;  // 0: derived as t_end / steps
  FluxKind flux = FluxKind::LLF_ES;
  double omega = 1.0;
  int filter_order = 0;          // s; 0 disables filtering
  double filter_strength = 0.0;  // eps
  int fd_order = 4;
  FdDissipation fd_dissipation = FdDissipation::SecondAndFourth;
  double fd_c2 = 0.5;
  double fd_c4 = 0.05;
  BcChoice bc = BcChoice::Default;
  double a = 1.0;
  double b = 0.2;
  double x0 = 0.5;
  double r = 0.25;
  double eps_bump = 0.0271828182845904524;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  long record_stride = 0;  // series sampling; 0: about 10^4 rows
  std::string label = "run";
  std::string out_dir = "out";
  bool write_outputs = true;

  /// echo as ordered key=value lines
  std::vector<std::pair<std::string, std::string>> items() const;
};

ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();
void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value);
ExperimentConfig load_config_file(const std::string& path);
void validate(const ExperimentConfig& config);

struct RunReport {
  std::string initial_csv;
  std::string final_csv;
  std::string series_csv;
  std::string audit_csv;
  std::string meta_path;
  std::string plot_path;
  std::vector<double> mass_drift;  // per mode, final - initial
  double entropy_initial = 0.0;
  double entropy_final = 0.0;
  double wall_seconds = 0.0;
  std::vector<DiscontinuityAudit> audits;
  // final profile kept in memory for downstream analysis
  std::vector<double> xs;
  std::vector<ModeVector> profile;
  // entropy/mass time series (sampled)
  std::vector<double> series_t;
  std::vector<double> series_entropy;
};

/// Initializes the chosen case, evolves it, writes the snapshot/series/audit
/// files with a config-echo sidecar, and returns the report. Rejects invalid
/// configs with a field-level message; aborts with the step index if the
/// state turns NaN.
RunReport run(const ExperimentConfig& config);

struct ReferenceRequest {
  TestCase test_case = TestCase::Shock;
  OrthogonalFamily family = OrthogonalFamily::hermite();
  double t = 0.5;
  int grid_points = 1001;
  int modes = 7;  // emits u_0 .. u_{modes-1}
  RiemannSetup setup;
  BumpSetup bump;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
};

/// Writes columns x, u_0..u_{M_report}, E, Var for the requested reference
/// solution. t = 0 emits the piecewise initial coefficients.
void emit_reference(const ReferenceRequest& request, const std::string& out_path);

struct ColumnNorms {
  std::string name;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};
struct CompareReport {
  std::vector<ColumnNorms> columns;
  const ColumnNorms* find(const std::string& name) const;
};

/// Column-wise error norms between two CSV files sharing an x column.
/// Differing grids require interpolate = true (linear, second onto first).
CompareReport compare_csv(const std::string& path_a, const std::string& path_b,
                          bool interpolate = false);

/// FNV-1a content hash used in the metadata sidecars.
std::string content_hash_hex(const std::string& bytes);

/// Resolves out_dir against the PCB_OUT_ROOT environment variable.
std::string resolve_out_dir(const std::string& out_dir);

}  // namespace pcb
