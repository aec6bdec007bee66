#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glebd/io.hpp"
#include "glebd/types.hpp"

namespace glebd {

// Flat, fully serialized experiment configuration. Every output file
// carries these pairs verbatim in its metadata header, and rerunning
// a preset with an identical configuration reproduces identical
// numeric columns.
struct ExperimentConfig {
  std::string scenario = "custom";
  double gamma = 2.0;
  double K = 4.0;
  // Presets run cold: 0.05 keeps the Morse well occupied (escape is
  // exponentially suppressed) so correlation estimates are not
  // contaminated by rare hops over the dissociation barrier.
  double kBT = 0.05;
  double morse_a = 1.0;
  std::string models = "chain,bd,n1,n2";

  int chain_natoms = 4096;  // set 8192 to restore the full-size chain
  int chain_ensemble = 64;
  double chain_dt = 2e-3;
  double chain_burnin_time = 20.0;
  // Equal chain/bd windows make the per-trajectory mean-subtraction
  // bias (-Var(mean), proportional to 1/run_time) nearly cancel in
  // chain-vs-bd error metrics.
  double chain_run_time = 200.0;

  int reduced_ensemble = 4096;
  double bd_dt = 1e-2;
  double bd_burnin_time = 20.0;
  double bd_run_time = 200.0;
  double embedded_dt = 1e-3;
  double embedded_burnin_time = 20.0;
  double embedded_run_time = 150.0;

  double record_spacing = 0.02;  // shared correlation lag grid
  double max_lag = 10.0;
  double horizon = 10.0;  // error-metric window

  double kernel_t_max = 10.0;
  int kernel_points = 501;

  std::uint64_t seed = 20260817;
  std::string outdir = ".";
  std::string policy = "openmp";

  // Parses one key=value override; unknown keys are rejected.
  void set(const std::string& key, const std::string& value);
  Metadata to_metadata() const;
  ExecutionPolicy execution_policy() const;
};

struct PresetResult {
  std::vector<std::string> files;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> flags;
};

std::vector<std::string> preset_names();

// Runs one figure preset (or "all") at desk scale: simulates the
// models the figure needs, writes correlation/kernel CSVs, an SVG
// overlay per panel and a summary JSON of error metrics, and returns
// the metrics alongside the written paths. Scenario runs shared
// between figures are computed once per call.
PresetResult run_preset(const std::string& name,
                        const ExperimentConfig& config);

}  // namespace glebd
