#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Eigenvalues>

#include "glebd/analysis.hpp"
#include "glebd/errors.hpp"
#include "glebd/io.hpp"
#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/presets.hpp"
#include "glebd/reduction.hpp"
#include "glebd/simulators.hpp"
#include "glebd/version.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const glebd::Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

struct KernelOptions {
  std::string name = "ad(2,4)";
  std::string table_path;
  double table_gamma = 0.0;
  double table_m_inf = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kernel", name,
                    "kernel name: ad(gamma,K[,m]) or langevin(gamma)");
    cmd->add_option("--table", table_path,
                    "CSV of (s, Theta(s)) rows for a tabulated kernel "
                    "(overrides --kernel)");
    cmd->add_option("--table-gamma", table_gamma,
                    "instantaneous friction of the tabulated kernel");
    cmd->add_option("--table-m-inf", table_m_inf,
                    "Theta(0) of the tabulated kernel");
  }

  glebd::KernelSpec build() const {
    if (!table_path.empty())
      return glebd::tabulated_kernel(glebd::read_table_csv(table_path),
                                     table_gamma, table_m_inf);
    return glebd::kernel_from_name(name);
  }

  std::string label() const {
    return table_path.empty() ? name : "table:" + table_path;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) out.push_back(token);
  return out;
}

std::string resolve_outdir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("GLEBD_OUTDIR"); env && *env)
    return env;
  return "";
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  KernelOptions kernel;
  int order = 2;
  double kBT = 1.0;
  std::string out;
};

void run_fit(const FitOptions& opt) {
  const auto kernel = opt.kernel.build();
  ordered_json doc;
  doc["tool_version"] = glebd::kVersion;
  doc["kernel"] = opt.kernel.label();
  doc["order"] = opt.order;
  if (opt.order == 0) {
    doc["chi_inf"] = matrix_json(glebd::chi_infinity(kernel));
  } else {
    const auto fit = glebd::fit_order(kernel, opt.order);
    const auto system = glebd::build_extended_system(fit, opt.kBT);
    const auto report = glebd::verify_fdt(system);
    doc["kBT"] = opt.kBT;
    doc["chi_inf"] = matrix_json(fit.chi_inf);
    ordered_json moments = ordered_json::array();
    for (const auto& m : fit.moments) moments.push_back(matrix_json(m));
    doc["moments"] = moments;
    ordered_json A = ordered_json::array(), B = ordered_json::array();
    for (const auto& m : fit.A) A.push_back(matrix_json(m));
    for (const auto& m : fit.B) B.push_back(matrix_json(m));
    doc["A"] = A;
    doc["B"] = B;
    doc["D"] = matrix_json(system.D);
    doc["Q"] = matrix_json(system.Q);
    doc["Sigma"] = matrix_json(system.Sigma);
    doc["noise_correlated"] = system.noise_correlated;
    Eigen::EigenSolver<glebd::Matrix> es(system.D);
    ordered_json eigs = ordered_json::array();
    for (Eigen::Index i = 0; i < system.D.rows(); ++i)
      eigs.push_back({{"re", es.eigenvalues()[i].real()},
                      {"im", es.eigenvalues()[i].imag()}});
    doc["D_eigenvalues"] = eigs;
    doc["fdt"] = {{"lyapunov_residual", report.lyapunov_residual},
                  {"q_min_eig", report.q_min_eig},
                  {"sigma_min_eig", report.sigma_min_eig},
                  {"sigma_cross_block", report.sigma_cross_block},
                  {"last_column_mismatch", report.last_column_mismatch},
                  {"analytic_identity_max", report.analytic_identity_max}};
  }
  const std::string text = doc.dump(2) + "\n";
  if (opt.out.empty())
    std::cout << text;
  else
    glebd::write_text_file(opt.out, text);
}

// -------------------------------------------------------------- invert

struct InvertOptions {
  KernelOptions kernel;
  std::string method = "euler";
  int order = 2;
  double t_max = 10.0;
  int points = 501;
  double kBT = 1.0;
  std::string out = "chi.csv";
  bool serial = false;
};

void run_invert(const InvertOptions& opt) {
  if (opt.points < 2)
    throw glebd::ValidationError("--points must be at least 2");
  const auto kernel = opt.kernel.build();
  std::vector<double> grid(opt.points);
  for (int i = 0; i < opt.points; ++i)
    grid[i] = opt.t_max * i / (opt.points - 1);
  const auto policy = opt.serial ? glebd::ExecutionPolicy::serial
                                 : glebd::ExecutionPolicy::openmp;
  glebd::KernelCurve curve;
  if (opt.method == "euler")
    curve = glebd::chi_exact_euler(kernel, grid, {}, policy);
  else if (opt.method == "closed")
    curve = glebd::chi_closed_curve(kernel, grid);
  else if (opt.method == "rational")
    curve = glebd::approx_kernel_curve(
        glebd::build_extended_system(glebd::fit_order(kernel, opt.order),
                                     opt.kBT),
        grid);
  else
    throw glebd::ValidationError(
        "--method must be euler, closed or rational, got " + opt.method);

  glebd::Metadata meta;
  meta.emplace_back("tool_version", glebd::kVersion);
  meta.emplace_back("kernel", opt.kernel.label());
  meta.emplace_back("method", opt.method);
  if (opt.method == "rational")
    meta.emplace_back("order", std::to_string(opt.order));
  meta.emplace_back("t_max", glebd::format_double(opt.t_max));
  meta.emplace_back("points", std::to_string(opt.points));
  glebd::write_kernel_curve_csv(opt.out, curve, meta);
  std::cout << opt.out << "\n";
}

// ------------------------------------------------------------ simulate

struct SimulateOptions {
  std::string model = "bd";
  KernelOptions kernel;
  int order = 2;
  double gamma = 2.0;
  double K = 4.0;
  double mass = 1.0;
  double kBT = 1.0;
  double morse_a = 1.0;
  bool no_morse = false;
  int natoms = 8192;
  bool no_thermal_init = false;
  double x0 = 0.0;
  double dt = 1e-3;
  long long steps = 1000;
  long long burnin = 0;
  long long stride = 1;
  int ntraj = 1;
  std::uint64_t seed = 1;
  std::string channels = "x";
  bool serial = false;
  std::string out = "trajectories.csv";
};

glebd::ForceField simulate_force(const SimulateOptions& opt) {
  return opt.no_morse ? glebd::zero_force_field()
                      : glebd::morse_force_field(opt.morse_a);
}

// --gamma/--K build the default kernel unless --kernel/--table name
// another one explicitly.
glebd::KernelSpec kernel_for(const SimulateOptions& opt) {
  if (!opt.kernel.table_path.empty()) return opt.kernel.build();
  if (opt.kernel.name == "ad(2,4)")
    return glebd::adelman_doll_kernel(opt.gamma, opt.K, opt.mass);
  return opt.kernel.build();
}

void run_simulate(const SimulateOptions& opt) {
  glebd::SimConfig sim;
  sim.dt = opt.dt;
  sim.steps = opt.steps;
  sim.burnin = opt.burnin;
  sim.ntraj = opt.ntraj;
  sim.seed = opt.seed;
  sim.kBT = opt.kBT;
  sim.stride = opt.stride;
  sim.policy = opt.serial ? glebd::ExecutionPolicy::serial
                          : glebd::ExecutionPolicy::openmp;
  sim.channels = split_list(opt.channels);

  glebd::TrajectoryEnsemble ens;
  if (opt.model == "chain") {
    glebd::ChainConfig chain;
    chain.natoms = opt.natoms;
    chain.K = opt.K;
    chain.mass = opt.mass;
    chain.gamma = opt.gamma;
    chain.kBT = opt.kBT;
    chain.morse_a = opt.morse_a;
    chain.morse_on = !opt.no_morse;
    chain.thermal_init = !opt.no_thermal_init;
    chain.x0_init = opt.x0;
    ens = glebd::simulate_chain(chain, sim);
  } else if (opt.model == "bd") {
    ens = glebd::simulate_bd(kernel_for(opt), simulate_force(opt), sim);
  } else if (opt.model == "embedded") {
    const auto system = glebd::build_extended_system(
        glebd::fit_order(kernel_for(opt), opt.order), opt.kBT);
    ens = glebd::simulate_embedded(system, simulate_force(opt), sim);
  } else if (opt.model == "nonlocal") {
    std::vector<double> grid(static_cast<std::size_t>(opt.steps) + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = opt.dt * i;
    const auto curve = glebd::chi_exact_euler(kernel_for(opt), grid, {},
                                              sim.policy);
    ens = glebd::simulate_nonlocal(curve, simulate_force(opt), sim);
  } else {
    throw glebd::ValidationError(
        "--model must be chain, bd, embedded or nonlocal, got " + opt.model);
  }

  glebd::Metadata meta;
  meta.emplace_back("tool_version", glebd::kVersion);
  meta.emplace_back("model", opt.model);
  if (opt.model != "chain") meta.emplace_back("kernel", opt.kernel.label());
  if (opt.model == "embedded")
    meta.emplace_back("order", std::to_string(opt.order));
  meta.emplace_back("kBT", glebd::format_double(opt.kBT));
  meta.emplace_back("dt", glebd::format_double(opt.dt));
  meta.emplace_back("steps", std::to_string(opt.steps));
  meta.emplace_back("burnin", std::to_string(opt.burnin));
  meta.emplace_back("stride", std::to_string(opt.stride));
  meta.emplace_back("ntraj", std::to_string(opt.ntraj));
  meta.emplace_back("seed", std::to_string(opt.seed));
  glebd::write_trajectory_csv(opt.out, ens, meta);
  std::cout << opt.out << "\n";
}

// ----------------------------------------------------------- correlate

struct CorrelateOptions {
  std::string in;
  std::string channel = "x";
  double max_lag = 1.0;
  bool keep_mean = false;
  bool serial = false;
  std::string out = "correlation.csv";
};

void run_correlate(const CorrelateOptions& opt) {
  const auto ens = glebd::read_trajectory_csv(opt.in);
  const auto corr = glebd::autocorrelation(
      ens, opt.max_lag, opt.channel, !opt.keep_mean,
      opt.serial ? glebd::ExecutionPolicy::serial
                 : glebd::ExecutionPolicy::openmp);
  glebd::Metadata meta;
  meta.emplace_back("tool_version", glebd::kVersion);
  meta.emplace_back("input", opt.in);
  meta.emplace_back("channel", opt.channel);
  meta.emplace_back("max_lag", glebd::format_double(opt.max_lag));
  meta.emplace_back("subtract_mean", opt.keep_mean ? "false" : "true");
  glebd::write_correlation_csv(opt.out, corr, meta);
  std::cout << opt.out << "\n";
}

// ----------------------------------------------------------- reproduce

struct ReproduceOptions {
  std::string preset;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string outdir;
};

void run_reproduce(const ReproduceOptions& opt) {
  glebd::ExperimentConfig config;
  if (!opt.config_path.empty())
    for (const auto& [key, value] :
         glebd::read_key_value_file(opt.config_path))
      config.set(key, value);
  for (const auto& text : opt.overrides) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw glebd::ValidationError("--set expects key=value, got " + text);
    config.set(text.substr(0, eq), text.substr(eq + 1));
  }
  if (const std::string dir = resolve_outdir(opt.outdir); !dir.empty())
    config.outdir = dir;
  config.scenario = opt.preset;

  const auto result = glebd::run_preset(opt.preset, config);
  for (const auto& [key, value] : result.metrics)
    std::cout << key << " = " << glebd::format_double(value) << "\n";
  for (const auto& [key, value] : result.flags)
    std::cout << key << " = " << (value ? "true" : "false") << "\n";
  for (const auto& file : result.files) std::cout << file << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coordinate-only reduction of generalized Langevin dynamics: kernel "
      "fits, resolvent inversion, reference and reduced simulators"};
  app.set_version_flag("--version", glebd::kVersion);
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand(
      "fit", "moment-matched rational kernel and FDT-consistent noise");
  fit.kernel.attach(fit_cmd);
  fit_cmd->add_option("--order", fit.order, "approximation order, 0..3 (0: "
                      "static mobility only)")
      ->check(CLI::Range(0, 3));
  fit_cmd->add_option("--kBT", fit.kBT, "temperature");
  fit_cmd->add_option("--out", fit.out, "write JSON here instead of stdout");

  InvertOptions invert;
  auto* invert_cmd =
      app.add_subcommand("invert", "memory kernel chi(t) on a uniform grid");
  invert.kernel.attach(invert_cmd);
  invert_cmd->add_option("--method", invert.method,
                         "euler | closed | rational");
  invert_cmd->add_option("--order", invert.order,
                         "rational order when --method rational")
      ->check(CLI::Range(1, 3));
  invert_cmd->add_option("--t-max", invert.t_max, "grid end");
  invert_cmd->add_option("--points", invert.points, "grid size");
  invert_cmd->add_flag("--serial", invert.serial, "disable OpenMP");
  invert_cmd->add_option("--out", invert.out, "output CSV");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run a trajectory ensemble");
  sim_cmd->add_option("--model", sim.model,
                      "chain | bd | embedded | nonlocal");
  sim.kernel.attach(sim_cmd);
  sim_cmd->add_option("--order", sim.order, "embedded model order")
      ->check(CLI::Range(1, 3));
  sim_cmd->add_option("--gamma", sim.gamma, "instantaneous friction");
  sim_cmd->add_option("--K", sim.K, "chain spring constant");
  sim_cmd->add_option("--mass", sim.mass, "chain atom mass");
  sim_cmd->add_option("--kBT", sim.kBT, "temperature");
  sim_cmd->add_option("--morse-a", sim.morse_a, "Morse range parameter");
  sim_cmd->add_flag("--no-morse", sim.no_morse, "run without the bond force");
  sim_cmd->add_option("--natoms", sim.natoms, "chain length");
  sim_cmd->add_flag("--no-thermal-init", sim.no_thermal_init,
                    "start the chain from rest");
  sim_cmd->add_option("--x0", sim.x0, "atom-0 start when not thermalized");
  sim_cmd->add_option("--dt", sim.dt, "time step");
  sim_cmd->add_option("--steps", sim.steps, "total integration steps");
  sim_cmd->add_option("--burnin", sim.burnin, "steps discarded up front");
  sim_cmd->add_option("--stride", sim.stride, "record every stride-th step");
  sim_cmd->add_option("--ntraj", sim.ntraj, "ensemble size");
  sim_cmd->add_option("--seed", sim.seed, "base seed");
  sim_cmd->add_option("--channels", sim.channels,
                      "comma list, e.g. x,v or x,z,w");
  sim_cmd->add_flag("--serial", sim.serial, "disable OpenMP");
  sim_cmd->add_option("--out", sim.out, "output CSV");

  CorrelateOptions corr;
  auto* corr_cmd = app.add_subcommand(
      "correlate", "autocorrelation of a recorded channel");
  corr_cmd->add_option("--in", corr.in, "trajectory CSV")->required();
  corr_cmd->add_option("--channel", corr.channel, "channel name");
  corr_cmd->add_option("--maxlag", corr.max_lag, "largest lag (time units)");
  corr_cmd->add_flag("--keep-mean", corr.keep_mean,
                     "skip per-trajectory mean subtraction (use for "
                     "channels with a structurally zero mean)");
  corr_cmd->add_flag("--serial", corr.serial, "disable OpenMP");
  corr_cmd->add_option("--out", corr.out, "output CSV");

  ReproduceOptions rep;
  auto* rep_cmd = app.add_subcommand(
      "reproduce", "run a named figure preset at desk scale");
  rep_cmd->add_option("preset", rep.preset,
                      "fig1..fig7, custom, or all")
      ->required();
  rep_cmd->add_option("--config", rep.config_path, "key=value file");
  rep_cmd->add_option("--set", rep.overrides,
                      "override one key, e.g. --set chain_ensemble=8");
  rep_cmd->add_option("--outdir", rep.outdir,
                      "output directory (beats GLEBD_OUTDIR; default '.')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) run_fit(fit);
    if (invert_cmd->parsed()) run_invert(invert);
    if (sim_cmd->parsed()) run_simulate(sim);
    if (corr_cmd->parsed()) run_correlate(corr);
    if (rep_cmd->parsed()) run_reproduce(rep);
  } catch (const glebd::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const glebd::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
