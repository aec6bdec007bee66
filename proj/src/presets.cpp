#include "glebd/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "glebd/analysis.hpp"
#include "glebd/errors.hpp"
#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/reduction.hpp"
#include "glebd/simulators.hpp"
#include "glebd/svg.hpp"
#include "glebd/version.hpp"

namespace glebd {

namespace {

double parse_num(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ValidationError("config " + key + ": not a number: " + value);
  }
  if (used != value.size() || !std::isfinite(v))
    throw ValidationError("config " + key + ": not a number: " + value);
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_num(key, value);
  if (v != std::floor(v) || std::fabs(v) > 1e15)
    throw ValidationError("config " + key + ": not an integer: " + value);
  return static_cast<int>(v);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

long long stride_for(const std::string& model, double spacing, double dt) {
  const long long stride = std::llround(spacing / dt);
  if (stride < 1 || std::fabs(stride * dt - spacing) > 1e-9 * spacing)
    throw ValidationError("record_spacing must be an integer multiple of " +
                          model + " dt");
  return stride;
}

std::string k_label(double K) {
  std::string digits;
  for (char c : format_double(K))
    if (c != '.') digits += c;
  return "K" + digits;
}

// A correlation "crosses zero" when some lag is below zero by more
// than three standard errors and by more than 2 percent of the lag-0
// value, so estimator noise on a positive decaying correlation cannot
// trip the flag.
bool crosses_zero(const CorrelationSeries& c) {
  const double floor_abs = 0.02 * c.value.at(0);
  for (std::size_t i = 1; i < c.value.size(); ++i)
    if (c.value[i] < -std::max(3.0 * c.std_error[i], floor_abs)) return true;
  return false;
}

std::vector<PlotSeries> correlation_plot(
    const std::vector<std::pair<std::string, const CorrelationSeries*>>&
        named) {
  std::vector<PlotSeries> out;
  for (const auto& [label, series] : named)
    out.push_back({series->lag, series->value, label});
  return out;
}

struct Runner {
  const ExperimentConfig& cfg;
  std::map<std::string, CorrelationSeries> cache;

  explicit Runner(const ExperimentConfig& c) : cfg(c) {}

  std::string out_path(const std::string& name) const {
    return (std::filesystem::path(cfg.outdir) / name).string();
  }

  Metadata base_meta(const std::string& preset) const {
    Metadata meta;
    meta.emplace_back("tool_version", kVersion);
    meta.emplace_back("preset", preset);
    for (const auto& kv : cfg.to_metadata()) meta.push_back(kv);
    return meta;
  }

  SimConfig sim_config(const std::string& model, double dt, double burnin_time,
                       double run_time, int ntraj,
                       const std::string& seed_key) const {
    SimConfig sim;
    sim.dt = dt;
    sim.burnin = std::llround(burnin_time / dt);
    sim.steps = sim.burnin + std::llround(run_time / dt);
    sim.ntraj = ntraj;
    sim.seed = splitmix64(cfg.seed ^ fnv1a64(seed_key));
    sim.kBT = cfg.kBT;
    sim.stride = stride_for(model, cfg.record_spacing, dt);
    sim.policy = cfg.execution_policy();
    sim.channels = {"x"};
    return sim;
  }

  // Scenario runs are cached so figures sharing a panel reuse them.
  const CorrelationSeries& correlation(const std::string& model, int order,
                                       double gamma, double K) {
    const std::string key = model + "/" + std::to_string(order) + "/" +
                            format_double(gamma) + "/" + format_double(K);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    TrajectoryEnsemble ens;
    if (model == "chain") {
      ChainConfig chain;
      chain.natoms = cfg.chain_natoms;
      chain.K = K;
      chain.gamma = gamma;
      chain.kBT = cfg.kBT;
      chain.morse_a = cfg.morse_a;
      ens = simulate_chain(
          chain, sim_config("chain", cfg.chain_dt, cfg.chain_burnin_time,
                            cfg.chain_run_time, cfg.chain_ensemble, key));
    } else if (model == "bd") {
      ens = simulate_bd(
          adelman_doll_kernel(gamma, K), morse_force_field(cfg.morse_a),
          sim_config("bd", cfg.bd_dt, cfg.bd_burnin_time, cfg.bd_run_time,
                     cfg.reduced_ensemble, key));
    } else {
      const auto system = build_extended_system(
          fit_order(adelman_doll_kernel(gamma, K), order), cfg.kBT);
      ens = simulate_embedded(
          system, morse_force_field(cfg.morse_a),
          sim_config("embedded", cfg.embedded_dt, cfg.embedded_burnin_time,
                     cfg.embedded_run_time, cfg.reduced_ensemble, key));
    }
    auto corr =
        autocorrelation(ens, cfg.max_lag, "x", true, cfg.execution_policy());
    return cache.emplace(key, std::move(corr)).first->second;
  }

  void write_summary(const std::string& preset, PresetResult& result) {
    nlohmann::ordered_json doc;
    doc["tool_version"] = kVersion;
    doc["preset"] = preset;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : cfg.to_metadata()) config[key] = value;
    doc["config"] = config;
    doc["metrics"] = result.metrics;
    doc["flags"] = result.flags;
    doc["files"] = result.files;
    const std::string path = out_path(preset + "_summary.json");
    write_text_file(path, doc.dump(2) + "\n");
    result.files.push_back(path);
  }

  // Correlation figure: full chain vs reduced models on each panel.
  PresetResult correlation_figure(const std::string& preset, double gamma,
                                  const std::vector<double>& Ks,
                                  const std::vector<int>& orders,
                                  bool with_chain, bool with_bd,
                                  bool crossing_flags) {
    PresetResult result;
    for (double K : Ks) {
      const std::string prefix =
          Ks.size() == 1 ? preset : preset + "_" + k_label(K);
      const std::string metric_prefix =
          Ks.size() == 1 ? "" : k_label(K) + ".";
      Metadata meta = base_meta(preset);
      meta.emplace_back("panel_gamma", format_double(gamma));
      meta.emplace_back("panel_K", format_double(K));

      std::vector<std::pair<std::string, const CorrelationSeries*>> layers;
      const CorrelationSeries* full = nullptr;
      if (with_chain) {
        full = &correlation("chain", 0, gamma, K);
        Metadata m = meta;
        m.emplace_back("model", "chain");
        const std::string path = out_path(prefix + "_full.csv");
        write_correlation_csv(path, *full, m);
        result.files.push_back(path);
        layers.emplace_back("full chain", full);
      }
      if (with_bd) {
        const auto& bd = correlation("bd", 0, gamma, K);
        Metadata m = meta;
        m.emplace_back("model", "bd");
        const std::string path = out_path(prefix + "_bd.csv");
        write_correlation_csv(path, bd, m);
        result.files.push_back(path);
        layers.emplace_back("bd", &bd);
        if (full)
          result.metrics[metric_prefix + "error_bd"] =
              correlation_error(*full, bd, cfg.horizon);
        if (crossing_flags)
          result.flags[metric_prefix + "bd_crosses_zero"] = crosses_zero(bd);
      }
      for (int n : orders) {
        const auto& emb = correlation("embedded", n, gamma, K);
        Metadata m = meta;
        m.emplace_back("model", "embedded");
        m.emplace_back("order", std::to_string(n));
        const std::string path =
            out_path(prefix + "_n" + std::to_string(n) + ".csv");
        write_correlation_csv(path, emb, m);
        result.files.push_back(path);
        layers.emplace_back("order-" + std::to_string(n), &emb);
        if (full)
          result.metrics[metric_prefix + "error_n" + std::to_string(n)] =
              correlation_error(*full, emb, cfg.horizon);
      }
      if (crossing_flags && full)
        result.flags[metric_prefix + "full_crosses_zero"] =
            crosses_zero(*full);
      if (full && with_bd && orders.size() >= 2) {
        const double eb = result.metrics[metric_prefix + "error_bd"];
        const double e1 =
            result.metrics[metric_prefix + "error_n" + std::to_string(
                                               orders[0])];
        const double e2 =
            result.metrics[metric_prefix + "error_n" + std::to_string(
                                               orders[1])];
        result.flags[metric_prefix + "ordering_bd_n1_n2"] =
            eb > e1 && e1 > e2;
      }

      std::ostringstream title;
      title << "position autocorrelation, gamma=" << format_double(gamma)
            << ", K=" << format_double(K);
      const std::string svg_path = out_path(prefix + "_overlay.svg");
      emit_plot(correlation_plot(layers), svg_path, title.str(), "lag",
                "autocorrelation", meta);
      result.files.push_back(svg_path);
    }
    write_summary(preset, result);
    return result;
  }

  // Kernel figure: exact inversion against the rational kernels.
  PresetResult kernel_figure(const std::string& preset, double gamma,
                             const std::vector<double>& Ks,
                             const std::vector<int>& orders) {
    PresetResult result;
    std::vector<double> grid(cfg.kernel_points);
    if (cfg.kernel_points < 2)
      throw ValidationError("kernel_points must be at least 2");
    for (int i = 0; i < cfg.kernel_points; ++i)
      grid[i] = cfg.kernel_t_max * i / (cfg.kernel_points - 1);

    for (double K : Ks) {
      const std::string prefix =
          Ks.size() == 1 ? preset : preset + "_" + k_label(K);
      const std::string metric_prefix =
          Ks.size() == 1 ? "" : k_label(K) + ".";
      const auto kernel = adelman_doll_kernel(gamma, K);
      const auto exact =
          chi_exact_euler(kernel, grid, {}, cfg.execution_policy());

      std::vector<KernelCurve> curves = {exact};
      std::vector<std::string> labels = {"exact-euler"};
      std::vector<double> errors;
      for (int n : orders) {
        const auto system =
            build_extended_system(fit_order(kernel, n), cfg.kBT);
        curves.push_back(approx_kernel_curve(system, grid));
        labels.push_back("order-" + std::to_string(n));
        const double err = kernel_error(exact, curves.back(), cfg.horizon);
        errors.push_back(err);
        result.metrics[metric_prefix + "error_n" + std::to_string(n)] = err;
      }
      bool monotone = true;
      for (std::size_t i = 1; i < errors.size(); ++i)
        monotone = monotone && errors[i] < errors[i - 1];
      result.flags[metric_prefix + "monotone_orders"] = monotone;

      Metadata meta = base_meta(preset);
      meta.emplace_back("panel_gamma", format_double(gamma));
      meta.emplace_back("panel_K", format_double(K));
      const std::string csv_path = out_path(prefix + ".csv");
      write_multi_curve_csv(csv_path, curves, labels, meta);
      result.files.push_back(csv_path);

      std::vector<PlotSeries> plot;
      for (std::size_t c = 0; c < curves.size(); ++c) {
        PlotSeries s;
        s.x = grid;
        s.y.reserve(grid.size());
        for (const auto& m : curves[c].value) s.y.push_back(m(0, 0));
        s.label = labels[c];
        plot.push_back(std::move(s));
      }
      std::ostringstream title;
      title << "memory kernel, gamma=" << format_double(gamma)
            << ", K=" << format_double(K);
      const std::string svg_path = out_path(prefix + "_overlay.svg");
      emit_plot(plot, svg_path, title.str(), "t", "chi", meta);
      result.files.push_back(svg_path);
    }
    write_summary(preset, result);
    return result;
  }

  PresetResult custom_figure() {
    bool with_chain = false, with_bd = false;
    std::vector<int> orders;
    std::stringstream models(cfg.models);
    std::string token;
    while (std::getline(models, token, ',')) {
      if (token == "chain")
        with_chain = true;
      else if (token == "bd")
        with_bd = true;
      else if (token == "n1" || token == "n2" || token == "n3")
        orders.push_back(token[1] - '0');
      else if (!token.empty())
        throw ValidationError("unknown model in config models list: " +
                              token);
    }
    if (!with_chain && !with_bd && orders.empty())
      throw ValidationError("config models list selects nothing");
    return correlation_figure("custom", cfg.gamma, {cfg.K}, orders,
                              with_chain, with_bd, true);
  }

  PresetResult run(const std::string& name) {
    std::filesystem::create_directories(cfg.outdir);
    if (name == "fig1")
      return correlation_figure(name, 2.0, {4.0}, {}, true, true, false);
    if (name == "fig2")
      return correlation_figure(name, 2.0, {0.2}, {}, true, true, false);
    if (name == "fig3")
      return correlation_figure(name, 0.0, {4.0, 0.2}, {}, true, true, true);
    if (name == "fig4") return kernel_figure(name, 2.0, {4.0, 0.2}, {1, 2});
    if (name == "fig5")
      return kernel_figure(name, 0.0, {4.0, 0.2}, {1, 2, 3});
    if (name == "fig6")
      return correlation_figure(name, 2.0, {4.0, 0.2}, {1, 2}, true, true,
                                false);
    if (name == "fig7")
      return correlation_figure(name, 0.0, {4.0, 0.2}, {1, 2, 3}, true, true,
                                true);
    if (name == "custom") return custom_figure();
    if (name == "all") {
      PresetResult merged;
      for (const auto& fig :
           {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}) {
        PresetResult one = run(fig);
        for (const auto& f : one.files) merged.files.push_back(f);
        for (const auto& [k, v] : one.metrics)
          merged.metrics[std::string(fig) + "." + k] = v;
        for (const auto& [k, v] : one.flags)
          merged.flags[std::string(fig) + "." + k] = v;
      }
      return merged;
    }
    throw ValidationError("unknown preset: " + name);
  }
};

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "scenario")
    scenario = value;
  else if (key == "gamma")
    gamma = parse_num(key, value);
  else if (key == "K")
    K = parse_num(key, value);
  else if (key == "kBT")
    kBT = parse_num(key, value);
  else if (key == "morse_a")
    morse_a = parse_num(key, value);
  else if (key == "models")
    models = value;
  else if (key == "chain_natoms")
    chain_natoms = parse_int(key, value);
  else if (key == "chain_ensemble")
    chain_ensemble = parse_int(key, value);
  else if (key == "chain_dt")
    chain_dt = parse_num(key, value);
  else if (key == "chain_burnin_time")
    chain_burnin_time = parse_num(key, value);
  else if (key == "chain_run_time")
    chain_run_time = parse_num(key, value);
  else if (key == "reduced_ensemble")
    reduced_ensemble = parse_int(key, value);
  else if (key == "bd_dt")
    bd_dt = parse_num(key, value);
  else if (key == "bd_burnin_time")
    bd_burnin_time = parse_num(key, value);
  else if (key == "bd_run_time")
    bd_run_time = parse_num(key, value);
  else if (key == "embedded_dt")
    embedded_dt = parse_num(key, value);
  else if (key == "embedded_burnin_time")
    embedded_burnin_time = parse_num(key, value);
  else if (key == "embedded_run_time")
    embedded_run_time = parse_num(key, value);
  else if (key == "record_spacing")
    record_spacing = parse_num(key, value);
  else if (key == "max_lag")
    max_lag = parse_num(key, value);
  else if (key == "horizon")
    horizon = parse_num(key, value);
  else if (key == "kernel_t_max")
    kernel_t_max = parse_num(key, value);
  else if (key == "kernel_points")
    kernel_points = parse_int(key, value);
  else if (key == "seed") {
    const double v = parse_num(key, value);
    if (v < 0 || v != std::floor(v))
      throw ValidationError("config seed: not a non-negative integer: " +
                            value);
    seed = static_cast<std::uint64_t>(v);
  } else if (key == "outdir")
    outdir = value;
  else if (key == "policy") {
    if (value != "serial" && value != "openmp")
      throw ValidationError("config policy: expected serial or openmp, got " +
                            value);
    policy = value;
  } else
    throw ValidationError("unknown config key: " + key);
}

Metadata ExperimentConfig::to_metadata() const {
  Metadata meta;
  const auto num = [&](const char* key, double v) {
    meta.emplace_back(key, format_double(v));
  };
  meta.emplace_back("scenario", scenario);
  num("gamma", gamma);
  num("K", K);
  num("kBT", kBT);
  num("morse_a", morse_a);
  meta.emplace_back("models", models);
  num("chain_natoms", chain_natoms);
  num("chain_ensemble", chain_ensemble);
  num("chain_dt", chain_dt);
  num("chain_burnin_time", chain_burnin_time);
  num("chain_run_time", chain_run_time);
  num("reduced_ensemble", reduced_ensemble);
  num("bd_dt", bd_dt);
  num("bd_burnin_time", bd_burnin_time);
  num("bd_run_time", bd_run_time);
  num("embedded_dt", embedded_dt);
  num("embedded_burnin_time", embedded_burnin_time);
  num("embedded_run_time", embedded_run_time);
  num("record_spacing", record_spacing);
  num("max_lag", max_lag);
  num("horizon", horizon);
  num("kernel_t_max", kernel_t_max);
  num("kernel_points", kernel_points);
  meta.emplace_back("seed", std::to_string(seed));
  meta.emplace_back("outdir", outdir);
  meta.emplace_back("policy", policy);
  return meta;
}

ExecutionPolicy ExperimentConfig::execution_policy() const {
  if (policy == "serial") return ExecutionPolicy::serial;
  if (policy == "openmp") return ExecutionPolicy::openmp;
  throw ValidationError("config policy: expected serial or openmp, got " +
                        policy);
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5",
          "fig6", "fig7", "custom", "all"};
}

PresetResult run_preset(const std::string& name,
                        const ExperimentConfig& config) {
  Runner runner(config);
  return runner.run(name);
}

}  // namespace glebd
