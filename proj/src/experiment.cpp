#include "pcb/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pcb/cpr.hpp"
#include "pcb/fv.hpp"
#include "pcb/numerical_flux.hpp"
#include "pcb/time_integration.hpp"

namespace pcb {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* to_string(TestCase c) {
  switch (c) {
    case TestCase::Bump: return "bump";
    case TestCase::Rarefaction: return "rarefaction";
    case TestCase::Shock: return "shock";
  }
  return "?";
}
const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::CPR: return "cpr";
    case SolverKind::FV: return "fv";
    case SolverKind::FD: return "fd";
  }
  return "?";
}
const char* to_string(FluxKind f) { return f == FluxKind::EC ? "ec" : "llf"; }
const char* to_string(BcChoice b) {
  switch (b) {
    case BcChoice::Default: return "default";
    case BcChoice::Periodic: return "periodic";
    case BcChoice::Inflow: return "inflow";
    case BcChoice::Outflow: return "outflow";
  }
  return "?";
}
const char* to_string(FdDissipation d) {
  return d == FdDissipation::SecondAndFourth ? "second_and_fourth" : "fourth_only";
}

template <typename T>
T parse_enum(const std::string& value, std::initializer_list<std::pair<const char*, T>> table,
             const std::string& key) {
  for (const auto& [name, v] : table)
    if (value == name) return v;
  throw std::invalid_argument("config key '" + key + "': unknown value '" + value + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not an integer: '" + v + "'");
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ExperimentConfig::items() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("case", to_string(test_case));
  kv.emplace_back("solver", to_string(solver));
  kv.emplace_back("M", std::to_string(pc_order));
  kv.emplace_back("N", std::to_string(elements));
  kv.emplace_back("p", std::to_string(degree));
  kv.emplace_back("steps", std::to_string(steps));
  kv.emplace_back("t_end", fmt(t_end));
  kv.emplace_back("dt", fmt(dt));
  kv.emplace_back("flux", to_string(flux));
  kv.emplace_back("omega", fmt(omega));
  kv.emplace_back("filter_s", std::to_string(filter_order));
  kv.emplace_back("filter_eps", fmt(filter_strength));
  kv.emplace_back("fd_order", std::to_string(fd_order));
  kv.emplace_back("fd_dissipation", to_string(fd_dissipation));
  kv.emplace_back("fd_c2", fmt(fd_c2));
  kv.emplace_back("fd_c4", fmt(fd_c4));
  kv.emplace_back("bc", to_string(bc));
  kv.emplace_back("a", fmt(a));
  kv.emplace_back("b", fmt(b));
  kv.emplace_back("x0", fmt(x0));
  kv.emplace_back("r", fmt(r));
  kv.emplace_back("eps_bump", fmt(eps_bump));
  kv.emplace_back("domain_lo", fmt(domain_lo));
  kv.emplace_back("domain_hi", fmt(domain_hi));
  kv.emplace_back("record_stride", std::to_string(record_stride));
  kv.emplace_back("label", label);
  kv.emplace_back("out_dir", out_dir);
  return kv;
}

void apply_override(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "case")
    c.test_case = parse_enum<TestCase>(value,
                                       {{"bump", TestCase::Bump},
                                        {"rarefaction", TestCase::Rarefaction},
                                        {"shock", TestCase::Shock}},
                                       key);
  else if (key == "solver")
    c.solver = parse_enum<SolverKind>(
        value, {{"cpr", SolverKind::CPR}, {"fv", SolverKind::FV}, {"fd", SolverKind::FD}}, key);
  else if (key == "M")
    c.pc_order = static_cast<int>(parse_long(value, key));
  else if (key == "N")
    c.elements = static_cast<int>(parse_long(value, key));
  else if (key == "p")
    c.degree = static_cast<int>(parse_long(value, key));
  else if (key == "steps")
    c.steps = parse_long(value, key);
  else if (key == "t_end")
    c.t_end = parse_double(value, key);
  else if (key == "dt")
    c.dt = parse_double(value, key);
  else if (key == "flux")
    c.flux = parse_enum<FluxKind>(value, {{"ec", FluxKind::EC}, {"llf", FluxKind::LLF_ES}}, key);
  else if (key == "omega")
    c.omega = parse_double(value, key);
  else if (key == "filter_s")
    c.filter_order = static_cast<int>(parse_long(value, key));
  else if (key == "filter_eps")
    c.filter_strength = parse_double(value, key);
  else if (key == "fd_order")
    c.fd_order = static_cast<int>(parse_long(value, key));
  else if (key == "fd_dissipation")
    c.fd_dissipation = parse_enum<FdDissipation>(value,
                                                 {{"second_and_fourth", FdDissipation::SecondAndFourth},
                                                  {"fourth_only", FdDissipation::FourthOnly}},
                                                 key);
  else if (key == "fd_c2")
    c.fd_c2 = parse_double(value, key);
  else if (key == "fd_c4")
    c.fd_c4 = parse_double(value, key);
  else if (key == "bc")
    c.bc = parse_enum<BcChoice>(value,
                                {{"default", BcChoice::Default},
                                 {"periodic", BcChoice::Periodic},
                                 {"inflow", BcChoice::Inflow},
                                 {"outflow", BcChoice::Outflow}},
                                key);
  else if (key == "a")
    c.a = parse_double(value, key);
  else if (key == "b")
    c.b = parse_double(value, key);
  else if (key == "x0")
    c.x0 = parse_double(value, key);
  else if (key == "r")
    c.r = parse_double(value, key);
  else if (key == "eps_bump")
    c.eps_bump = parse_double(value, key);
  else if (key == "domain_lo")
    c.domain_lo = parse_double(value, key);
  else if (key == "domain_hi")
    c.domain_hi = parse_double(value, key);
  else if (key == "record_stride")
    c.record_stride = parse_long(value, key);
  else if (key == "label")
    c.label = value;
  else if (key == "out_dir")
    c.out_dir = value;
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_override(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"fig1",        "fig1-fv",     "fig2",        "fig2-fv",     "fig3",
          "fig3-fv",     "fig4-cpr-low", "fig4-cpr-high", "fig4-fv-low", "fig4-fv-high",
          "fig4-fd-low", "fig4-fd-high", "fig5",        "fig6"};
}

ExperimentConfig preset(const std::string& name) {
  // Desk-scaled counterparts of the published runs; the shock-case grids
  // trade the original N=2500 elements / 1e5 steps for N=250 / 1e4.
  ExperimentConfig c;
  c.label = name;
  auto shock_base = [&](SolverKind s) {
    c.test_case = TestCase::Shock;
    c.solver = s;
    c.pc_order = 3;
    c.t_end = 0.5;
    c.steps = 10000;
    c.a = 1.0;
    c.b = 0.2;
    c.x0 = 0.5;
  };
  if (name == "fig1") {
    c.test_case = TestCase::Bump;
    c.solver = SolverKind::CPR;
    c.pc_order = 3;
    c.degree = 9;
    c.elements = 10;
    c.steps = 10000;
    c.t_end = 10.0;
    c.x0 = 0.25;
    c.r = 0.25;
  } else if (name == "fig1-fv") {
    c.test_case = TestCase::Bump;
    c.solver = SolverKind::FV;
    c.pc_order = 3;
    c.elements = 1000;
    c.steps = 10000;
    c.t_end = 10.0;
    c.x0 = 0.25;
    c.r = 0.25;
  } else if (name == "fig2") {
    c.test_case = TestCase::Rarefaction;
    c.solver = SolverKind::CPR;
    c.pc_order = 3;
    c.degree = 7;
    c.elements = 10;
    c.steps = 1000;
    c.t_end = 0.25;
  } else if (name == "fig2-fv") {
    c.test_case = TestCase::Rarefaction;
    c.solver = SolverKind::FV;
    c.pc_order = 3;
    c.elements = 80;
    c.steps = 1000;
    c.t_end = 0.25;
  } else if (name == "fig3" || name == "fig4-cpr-low") {
    shock_base(SolverKind::CPR);
    c.degree = 3;
    c.elements = 250;
  } else if (name == "fig4-cpr-high") {
    shock_base(SolverKind::CPR);
    c.degree = 3;
    c.elements = 250;
    c.filter_order = 1;
    c.filter_strength = 100.0;
  } else if (name == "fig3-fv" || name == "fig4-fv-high") {
    shock_base(SolverKind::FV);
    c.elements = 1000;
    c.omega = 1.0;
  } else if (name == "fig4-fv-low" || name == "fig5") {
    shock_base(SolverKind::FV);
    c.elements = 1000;
    c.omega = 5e-3;
  } else if (name == "fig4-fd-high" || name == "fig6") {
    shock_base(SolverKind::FD);
    c.elements = 1000;
    c.fd_dissipation = FdDissipation::SecondAndFourth;
  } else if (name == "fig4-fd-low") {
    shock_base(SolverKind::FD);
    c.elements = 1000;
    c.fd_dissipation = FdDissipation::FourthOnly;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
  };
  if (c.pc_order < 0) fail("M", "must be >= 0");
  if (c.elements < 1) fail("N", "must be >= 1");
  if (c.solver == SolverKind::CPR && (c.degree < 1 || c.degree > 20))
    fail("p", "must be in [1, 20] for the cpr solver");
  if (c.steps < 1) fail("steps", "must be >= 1");
  if (!(c.t_end > 0.0)) fail("t_end", "must be > 0");
  if (c.dt < 0.0) fail("dt", "must be >= 0 (0 derives dt from steps)");
  if (!(c.omega > 0.0) || c.omega > 1.0) fail("omega", "must lie in (0, 1]");
  if (c.filter_order < 0) fail("filter_s", "must be >= 0");
  if (c.filter_strength < 0.0) fail("filter_eps", "must be >= 0");
  if (c.fd_order != 2 && c.fd_order != 4) fail("fd_order", "must be 2 or 4");
  if (c.solver == SolverKind::FD && c.elements < 8) fail("N", "fd solver needs N >= 8");
  if (!(c.domain_hi > c.domain_lo)) fail("domain_hi", "must exceed domain_lo");
  if (c.test_case != TestCase::Bump) {
    if (!(c.a > 0.0)) fail("a", "must be > 0");
    if (!(c.b > 0.0)) fail("b", "must be > 0");
    if (c.x0 < c.domain_lo || c.x0 > c.domain_hi) fail("x0", "must lie in the domain");
  } else {
    if (!(c.r > 0.0)) fail("r", "must be > 0");
  }
  if (c.solver == SolverKind::FV && c.flux == FluxKind::EC)
    fail("flux", "the fv solver always carries omega-scaled dissipation; set omega instead");
  if (c.solver == SolverKind::FD && c.test_case == TestCase::Bump)
    fail("case", "the fd solver works on the bounded grid; periodic bump is not supported");
  if (c.label.empty()) fail("label", "must not be empty");
}

namespace {

BcKind resolve_bc(const ExperimentConfig& c) {
  switch (c.bc) {
    case BcChoice::Periodic: return BcKind::Periodic;
    case BcChoice::Inflow: return BcKind::InflowDirichlet;
    case BcChoice::Outflow: return BcKind::Outflow;
    case BcChoice::Default: break;
  }
  switch (c.test_case) {
    case TestCase::Bump: return BcKind::Periodic;
    case TestCase::Rarefaction: return BcKind::Outflow;
    case TestCase::Shock: return BcKind::InflowDirichlet;
  }
  return BcKind::Periodic;
}

BoundaryCondition make_bc(const ExperimentConfig& c, const RiemannSetup& setup, int modes) {
  const BcKind kind = resolve_bc(c);
  if (kind == BcKind::InflowDirichlet) {
    ModeVector left = initial_coefficients(setup, c.domain_lo, modes, true);
    ModeVector right = initial_coefficients(setup, c.domain_hi, modes, false);
    return BoundaryCondition::inflow(std::move(left), std::move(right));
  }
  BoundaryCondition bc;
  bc.kind = kind;
  return bc;
}

struct SeriesRow {
  long step;
  double t;
  double entropy;
  ModeVector mass;
};

void atomic_write(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  std::filesystem::rename(tmp, path);
}

std::string snapshot_csv(const std::vector<double>& xs, const std::vector<ModeVector>& profile,
                         const TripleProductTensor& tensor) {
  const int nk = tensor.order() + 1;
  std::string s = "x";
  for (int k = 0; k < nk; ++k) s += ",u_" + std::to_string(k);
  s += ",E,Var";
  for (int k = 0; k < nk; ++k) s += ",lambda_" + std::to_string(k);
  s += ",U,F\n";
  for (size_t i = 0; i < xs.size(); ++i) {
    const ModeVector& u = profile[i];
    s += fmt(xs[i]);
    for (int k = 0; k < nk; ++k) s += "," + fmt(u[k]);
    const Moments m = moments(u);
    s += "," + fmt(m.expectation) + "," + fmt(m.variance);
    const auto eig = eigenvalues(u, tensor);
    for (int k = 0; k < nk; ++k) s += "," + fmt(eig[k]);
    s += "," + fmt(entropy(u)) + "," + fmt(entropy_flux(u, tensor)) + "\n";
  }
  return s;
}

std::string series_csv(const std::vector<SeriesRow>& rows, int nk) {
  std::string s = "step,t,entropy";
  for (int k = 0; k < nk; ++k) s += ",mass_" + std::to_string(k);
  s += "\n";
  for (const auto& r : rows) {
    s += std::to_string(r.step) + "," + fmt(r.t) + "," + fmt(r.entropy);
    for (int k = 0; k < nk; ++k) s += "," + fmt(r.mass[k]);
    s += "\n";
  }
  return s;
}

std::string audit_csv(const std::vector<DiscontinuityAudit>& audits) {
  std::string s = "location,speed,rh_residual,entropy_jump,entropy_admissible\n";
  for (const auto& a : audits) {
    s += fmt(a.location) + "," + fmt(a.speed) + "," + fmt(a.rh_residual) + "," +
         fmt(a.entropy_jump) + "," + (a.entropy_admissible ? "1" : "0") + "\n";
  }
  return s;
}

std::string plot_script(const std::string& label, const std::string& final_csv, int nk) {
  std::ostringstream s;
  s << "# gnuplot script for run '" << label << "'\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'x'\n"
    << "set terminal pngcairo size 1100,420\n"
    << "set output '" << label << "_moments.png'\n"
    << "set multiplot layout 1,2\n"
    << "set ylabel 'E(u)'\n"
    << "plot '" << final_csv << "' using 1:" << nk + 2 << " with lines title 'E(u)'\n"
    << "set ylabel 'Var(u)'\n"
    << "plot '" << final_csv << "' using 1:" << nk + 3 << " with lines title 'Var(u)'\n"
    << "unset multiplot\n";
  return s.str();
}

struct EvolveResult {
  std::vector<SeriesRow> series;
  std::vector<double> xs;
  std::vector<ModeVector> profile;
  std::vector<ModeVector> initial_profile;
};

}  // namespace

std::string content_hash_hex(const std::string& bytes) {
  // FNV-1a, 64 bit
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string resolve_out_dir(const std::string& out_dir) {
  if (!out_dir.empty() && out_dir.front() == '/') return out_dir;
  const char* root = std::getenv("PCB_OUT_ROOT");
  if (root == nullptr || *root == '\0') return out_dir;
  return std::string(root) + "/" + out_dir;
}

RunReport run(const ExperimentConfig& config) {
  validate(config);
  const auto t_start = std::chrono::steady_clock::now();

  const int nk = config.pc_order + 1;
  const TripleProductTensor tensor(config.pc_order);
  RiemannSetup setup;
  setup.kind = (config.test_case == TestCase::Rarefaction) ? RiemannSetup::Kind::Rarefaction
                                                           : RiemannSetup::Kind::Shock;
  setup.a = config.a;
  setup.b = config.b;
  setup.x0 = config.x0;
  BumpSetup bump{config.x0, config.r, config.eps_bump, config.b};

  const double dt = (config.dt > 0.0) ? config.dt : config.t_end / config.steps;
  const long steps = (config.dt > 0.0)
                         ? std::max<long>(1, static_cast<long>(std::llround(config.t_end / config.dt)))
                         : config.steps;
  const long stride =
      (config.record_stride > 0) ? config.record_stride : std::max<long>(1, steps / 10000);

  const BoundaryCondition bc = make_bc(config, setup, nk);

  auto init_point = [&](double x, bool from_left) -> ModeVector {
    if (config.test_case == TestCase::Bump) return bump_initial(x, bump, nk);
    return initial_coefficients(setup, x, nk, from_left);
  };

  EvolveResult result;
  auto record = [&](std::vector<SeriesRow>& rows, long step, double entropy_val,
                    ModeVector mass) {
    if (!std::isfinite(entropy_val))
      throw std::runtime_error("non-finite state (NaN) detected at step " + std::to_string(step));
    rows.push_back({step, step * dt, entropy_val, std::move(mass)});
  };

  if (config.solver == SolverKind::CPR) {
    const SBPOperatorSet ops = lobatto_operators(config.degree);
    const Mesh1D mesh{config.domain_lo, config.domain_hi, config.elements};
    const int nn = ops.node_count();
    SolutionField field(config.elements, nn, nk);
    for (int e = 0; e < config.elements; ++e)
      for (int n = 0; n < nn; ++n) {
        const ModeVector u = init_point(mesh.node_position(e, ops.nodes[n]), n != 0);
        std::copy(u.begin(), u.end(), field.node_modes(e, n).begin());
      }
    const FluxKernel kernel = (config.flux == FluxKind::EC)
                                  ? make_ec_kernel(tensor)
                                  : make_llf_kernel(tensor, config.omega);
    FilterMatrix filter;
    const bool filtered = config.filter_order >= 1 && config.filter_strength > 0.0;
    if (filtered) filter = exponential_filter(ops, config.filter_order, config.filter_strength);

    SolutionField scratch(config.elements, nn, nk), rate_buf(config.elements, nn, nk);
    RhsFn rhs = [&](const std::vector<double>& u, std::vector<double>& out) {
      scratch.coeff = u;
      semidiscrete_rhs(scratch, mesh, ops, tensor, kernel, bc, rate_buf);
      out = rate_buf.coeff;
    };
    TimeIntegrator stepper(StepperKind::SSPRK33, dt);

    for (int e = 0; e < config.elements; ++e)
      for (int n = 0; n < nn; ++n) {
        result.xs.push_back(mesh.node_position(e, ops.nodes[n]));
        const auto u = field.node_modes(e, n);
        result.initial_profile.emplace_back(u.begin(), u.end());
      }
    record(result.series, 0, total_entropy(field, mesh, ops), total_mass(field, mesh, ops));
    std::vector<double> state = field.coeff;
    for (long s = 1; s <= steps; ++s) {
      stepper.step(state, rhs);
      if (filtered) {
        field.coeff = state;
        apply_filter(field, filter);
        state = field.coeff;
      }
      if (s % stride == 0 || s == steps) {
        field.coeff = state;
        record(result.series, s, total_entropy(field, mesh, ops), total_mass(field, mesh, ops));
      }
    }
    field.coeff = state;
    for (int e = 0; e < config.elements; ++e)
      for (int n = 0; n < nn; ++n) {
        const auto u = field.node_modes(e, n);
        result.profile.emplace_back(u.begin(), u.end());
      }
  } else if (config.solver == SolverKind::FV) {
    const double dx = (config.domain_hi - config.domain_lo) / config.elements;
    FVState state(config.elements, nk, dx);
    for (int i = 0; i < config.elements; ++i) {
      const double x = config.domain_lo + (i + 0.5) * dx;
      const ModeVector u = init_point(x, true);
      std::copy(u.begin(), u.end(), state.cell(i).begin());
      result.xs.push_back(x);
      result.initial_profile.push_back(u);
    }
    auto measure = [&](const FVState& st) {
      long double ent = 0.0L;
      std::vector<long double> mass(nk, 0.0L);
      for (int i = 0; i < st.cells; ++i) {
        const auto u = st.cell(i);
        for (int k = 0; k < nk; ++k) {
          ent += static_cast<long double>(u[k]) * u[k];
          mass[k] += u[k];
        }
      }
      ModeVector m(nk);
      for (int k = 0; k < nk; ++k) m[k] = static_cast<double>(mass[k] * dx);
      return std::pair<double, ModeVector>(static_cast<double>(0.5L * ent * dx), m);
    };
    FVState scratch = state, rate_buf = state;
    RhsFn rhs = [&](const std::vector<double>& u, std::vector<double>& out) {
      scratch.value = u;
      fv_rhs(scratch, tensor, config.omega, bc, rate_buf);
      out = rate_buf.value;
    };
    TimeIntegrator stepper(StepperKind::SSPRK33, dt);
    auto [e0, m0] = measure(state);
    record(result.series, 0, e0, std::move(m0));
    std::vector<double> flat = state.value;
    for (long s = 1; s <= steps; ++s) {
      stepper.step(flat, rhs);
      if (s % stride == 0 || s == steps) {
        state.value = flat;
        auto [ents, ms] = measure(state);
        record(result.series, s, ents, std::move(ms));
      }
    }
    state.value = flat;
    for (int i = 0; i < state.cells; ++i) {
      const auto u = state.cell(i);
      result.profile.emplace_back(u.begin(), u.end());
    }
  } else {
    const FdOperator op =
        fd_sbp_operator(config.elements, config.domain_lo, config.domain_hi, config.fd_order);
    FdScheme scheme{config.fd_dissipation, config.fd_c2, config.fd_c4};
    FDState state(op.grid_points, nk);
    for (int i = 0; i < op.grid_points; ++i) {
      const ModeVector u = init_point(op.x[i], true);
      std::copy(u.begin(), u.end(), state.node(i).begin());
      result.xs.push_back(op.x[i]);
      result.initial_profile.push_back(u);
    }
    auto measure = [&](const FDState& st) {
      long double ent = 0.0L;
      std::vector<long double> mass(nk, 0.0L);
      for (int i = 0; i < st.points; ++i) {
        const auto u = st.node(i);
        for (int k = 0; k < nk; ++k) {
          ent += op.mnorm[i] * static_cast<long double>(u[k]) * u[k];
          mass[k] += op.mnorm[i] * u[k];
        }
      }
      ModeVector m(nk);
      for (int k = 0; k < nk; ++k) m[k] = static_cast<double>(mass[k]);
      return std::pair<double, ModeVector>(static_cast<double>(0.5L * ent), m);
    };
    FDState scratch = state, rate_buf = state;
    RhsFn rhs = [&](const std::vector<double>& u, std::vector<double>& out) {
      scratch.value = u;
      fd_rhs(scratch, op, tensor, scheme, bc, rate_buf);
      out = rate_buf.value;
    };
    TimeIntegrator stepper(StepperKind::RK4, dt);
    auto [e0, m0] = measure(state);
    record(result.series, 0, e0, std::move(m0));
    std::vector<double> flat = state.value;
    for (long s = 1; s <= steps; ++s) {
      stepper.step(flat, rhs);
      if (s % stride == 0 || s == steps) {
        state.value = flat;
        auto [ents, ms] = measure(state);
        record(result.series, s, ents, std::move(ms));
      }
    }
    state.value = flat;
    for (int i = 0; i < state.points; ++i) {
      const auto u = state.node(i);
      result.profile.emplace_back(u.begin(), u.end());
    }
  }

  RunReport report;
  report.xs = std::move(result.xs);
  report.profile = std::move(result.profile);
  report.entropy_initial = result.series.front().entropy;
  report.entropy_final = result.series.back().entropy;
  report.mass_drift.resize(nk);
  for (int k = 0; k < nk; ++k)
    report.mass_drift[k] = result.series.back().mass[k] - result.series.front().mass[k];
  for (const auto& row : result.series) {
    report.series_t.push_back(row.t);
    report.series_entropy.push_back(row.entropy);
  }
  if (config.test_case == TestCase::Shock)
    report.audits = rankine_hugoniot_audit(report.xs, report.profile, tensor);

  if (config.write_outputs) {
    const std::string dir = resolve_out_dir(config.out_dir);
    std::filesystem::create_directories(dir);
    const std::string base = dir + "/" + config.label;
    report.initial_csv = base + "_initial.csv";
    report.final_csv = base + "_final.csv";
    report.series_csv = base + "_series.csv";
    report.plot_path = base + "_plot.gp";
    report.meta_path = base + "_meta.txt";

    const std::string initial_bytes = snapshot_csv(report.xs, result.initial_profile, tensor);
    const std::string final_bytes = snapshot_csv(report.xs, report.profile, tensor);
    const std::string series_bytes = series_csv(result.series, nk);
    atomic_write(report.initial_csv, initial_bytes);
    atomic_write(report.final_csv, final_bytes);
    atomic_write(report.series_csv, series_bytes);
    atomic_write(report.plot_path, plot_script(config.label, report.final_csv, nk));

    std::string meta = "schema=1\n";
    for (const auto& [k, v] : config.items()) meta += k + "=" + v + "\n";
    meta += "hash_initial=" + content_hash_hex(initial_bytes) + "\n";
    meta += "hash_final=" + content_hash_hex(final_bytes) + "\n";
    meta += "hash_series=" + content_hash_hex(series_bytes) + "\n";
    if (config.test_case == TestCase::Shock) {
      report.audit_csv = base + "_audit.csv";
      const std::string audit_bytes = audit_csv(report.audits);
      atomic_write(report.audit_csv, audit_bytes);
      meta += "hash_audit=" + content_hash_hex(audit_bytes) + "\n";
    }
    atomic_write(report.meta_path, meta);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

namespace {

double family_moment0(const OrthogonalFamily& family, int i) {
  return i == 0 ? family_norm2(family, 0) : 0.0;
}

double family_moment1(const OrthogonalFamily& family, int i) {
  switch (family.kind) {
    case OrthogonalFamily::Kind::HermiteNormalized:
      return i == 1 ? 1.0 : 0.0;
    case OrthogonalFamily::Kind::Jacobi: {
      const double ab2 = family.alpha + family.beta + 2.0;
      if (i == 1) return 2.0 / ab2 * family_norm2(family, 1);
      if (i == 0) return -(family.alpha - family.beta) / ab2 * family_norm2(family, 0);
      return 0.0;
    }
    case OrthogonalFamily::Kind::Laguerre: {
      const double g = std::exp(std::lgamma(family.alpha + 2.0));
      if (i == 0) return g;
      if (i == 1) return -g;
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace

void emit_reference(const ReferenceRequest& request, const std::string& out_path) {
  const auto& fam = request.family;
  const bool hermite = fam.kind == OrthogonalFamily::Kind::HermiteNormalized;
  if (request.test_case == TestCase::Bump) {
    if (!hermite || request.t != 0.0)
      throw std::invalid_argument(
          "emit_reference: the bump case provides only Hermite initial data (t = 0)");
  }
  if (request.t < 0.0) throw std::invalid_argument("emit_reference: t must be >= 0");
  if (request.modes < 1 || request.grid_points < 2)
    throw std::invalid_argument("emit_reference: need modes >= 1 and grid_points >= 2");

  RiemannSetup setup = request.setup;
  setup.kind = (request.test_case == TestCase::Rarefaction) ? RiemannSetup::Kind::Rarefaction
                                                            : RiemannSetup::Kind::Shock;
  const int nm = request.modes;

  auto coefficient = [&](int i, double x) -> double {
    if (request.test_case == TestCase::Bump) return bump_initial(x, request.bump, nm)[i];
    if (request.t == 0.0) {
      const ModeVector init = initial_coefficients(setup, x, std::max(nm, 2), true);
      const double sgn = init[0] / setup.a;  // +-1 by side of x0
      return sgn * setup.a * family_moment0(fam, i) + setup.b * family_moment1(fam, i);
    }
    if (hermite)
      return setup.kind == RiemannSetup::Kind::Shock
                 ? shock_coefficient(i, x, request.t, setup)
                 : rarefaction_coefficient(i, x, request.t, setup);
    if (fam.kind == OrthogonalFamily::Kind::Jacobi) {
      if (setup.kind == RiemannSetup::Kind::Shock && i >= 1)
        return jacobi_shock_coefficient(i, x, request.t, setup, fam.alpha, fam.beta);
      if (setup.kind == RiemannSetup::Kind::Rarefaction && i >= 2)
        return jacobi_rarefaction_coefficient(i, x, request.t, setup, fam.alpha, fam.beta);
      return reference_projection(fam, i, x, request.t, setup);
    }
    if (setup.kind == RiemannSetup::Kind::Shock && i >= 1)
      return laguerre_shock_coefficient(i, x, request.t, setup, fam.alpha);
    if (setup.kind == RiemannSetup::Kind::Rarefaction && i >= 2)
      return laguerre_rarefaction_coefficient(i, x, request.t, setup, fam.alpha);
    return reference_projection(fam, i, x, request.t, setup);
  };

  std::string s = "x";
  for (int k = 0; k < nm; ++k) s += ",u_" + std::to_string(k);
  s += ",E,Var\n";
  for (int g = 0; g < request.grid_points; ++g) {
    const double x = request.domain_lo + (request.domain_hi - request.domain_lo) * g /
                                             (request.grid_points - 1);
    s += fmt(x);
    std::vector<double> u(nm);
    for (int k = 0; k < nm; ++k) {
      u[k] = coefficient(k, x);
      s += "," + fmt(u[k]);
    }
    // expansion moments: E = u_0 / h_0, Var = sum u_i^2 / h_i
    const double e = u[0] / family_norm2(fam, 0);
    double var = 0.0;
    for (int k = 1; k < nm; ++k) var += u[k] * u[k] / family_norm2(fam, k);
    s += "," + fmt(e) + "," + fmt(var) + "\n";
  }
  atomic_write(out_path, s);
  atomic_write(out_path + ".meta",
               "schema=1\nsource=reference\nhash=" + content_hash_hex(s) + "\n");
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // column-major
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ls(line);
    size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      if (c >= t.columns.size()) throw std::runtime_error("ragged csv row in " + path);
      t.columns[c++].push_back(std::stod(cell));
    }
    if (c != t.columns.size()) throw std::runtime_error("ragged csv row in " + path);
  }
  return t;
}

size_t column_index(const CsvTable& t, const std::string& name) {
  for (size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return i;
  throw std::runtime_error("csv is missing column '" + name + "'");
}

std::vector<double> interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                                  const std::vector<double>& xq) {
  std::vector<double> out(xq.size());
  for (size_t i = 0; i < xq.size(); ++i) {
    const double x = xq[i];
    if (x <= xs.front()) {
      out[i] = ys.front();
      continue;
    }
    if (x >= xs.back()) {
      out[i] = ys.back();
      continue;
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t hi = static_cast<size_t>(it - xs.begin());
    const size_t lo = hi - 1;
    const double w = (xs[hi] > xs[lo]) ? (x - xs[lo]) / (xs[hi] - xs[lo]) : 0.0;
    out[i] = (1.0 - w) * ys[lo] + w * ys[hi];
  }
  return out;
}

}  // namespace

const ColumnNorms* CompareReport::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

CompareReport compare_csv(const std::string& path_a, const std::string& path_b,
                          bool interpolate) {
  const CsvTable a = read_csv(path_a);
  const CsvTable b = read_csv(path_b);
  const auto& xa = a.columns[column_index(a, "x")];
  const auto& xb = b.columns[column_index(b, "x")];
  bool same_grid = xa.size() == xb.size();
  if (same_grid)
    for (size_t i = 0; i < xa.size(); ++i)
      if (std::abs(xa[i] - xb[i]) > 1e-12) {
        same_grid = false;
        break;
      }
  if (!same_grid && !interpolate)
    throw std::invalid_argument("compare_csv: grids differ; pass interpolate to resample");

  // midpoint cell weights on a's grid
  const size_t n = xa.size();
  std::vector<double> w(n, 0.0);
  if (n >= 2) {
    w[0] = 0.5 * (xa[1] - xa[0]);
    w[n - 1] = 0.5 * (xa[n - 1] - xa[n - 2]);
    for (size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (xa[i + 1] - xa[i - 1]);
  }

  CompareReport report;
  for (size_t ca = 0; ca < a.header.size(); ++ca) {
    if (a.header[ca] == "x") continue;
    size_t cb = b.header.size();
    for (size_t j = 0; j < b.header.size(); ++j)
      if (b.header[j] == a.header[ca]) cb = j;
    if (cb == b.header.size()) continue;
    const std::vector<double> yb =
        same_grid ? b.columns[cb] : interp_linear(xb, b.columns[cb], xa);
    ColumnNorms norms;
    norms.name = a.header[ca];
    for (size_t i = 0; i < n; ++i) {
      const double d = a.columns[ca][i] - yb[i];
      norms.l1 += w[i] * std::abs(d);
      norms.l2 += w[i] * d * d;
      norms.linf = std::max(norms.linf, std::abs(d));
    }
    norms.l2 = std::sqrt(norms.l2);
    report.columns.push_back(norms);
  }
  return report;
}

}  // namespace pcb
