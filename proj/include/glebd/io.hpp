#pragma once

#include <string>
#include <utility>
#include <vector>

#include "glebd/analysis.hpp"
#include "glebd/laplace.hpp"
#include "glebd/simulators.hpp"

namespace glebd {

// Ordered key/value pairs emitted as "# key = value" comment lines at
// the top of every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal representation that round-trips the double; used
// for every numeric column so identical inputs give identical bytes.
std::string format_double(double v);

// t,chi[i][j]...,provenance (one column per matrix entry, row-major).
void write_kernel_curve_csv(const std::string& path, const KernelCurve& curve,
                            const Metadata& meta);

// t plus one column per scalar curve, named by its label. All curves
// must share the grid.
void write_multi_curve_csv(const std::string& path,
                           const std::vector<KernelCurve>& curves,
                           const std::vector<std::string>& labels,
                           const Metadata& meta);

// lag,value,stderr,n
void write_correlation_csv(const std::string& path,
                           const CorrelationSeries& series,
                           const Metadata& meta);

// traj_index,t,<channel columns>; multi-component channels expand to
// name[0..d-1].
void write_trajectory_csv(const std::string& path,
                          const TrajectoryEnsemble& ensemble,
                          const Metadata& meta);

// Inverse of write_trajectory_csv (metadata lines are skipped).
TrajectoryEnsemble read_trajectory_csv(const std::string& path);

// Flat key=value configuration text ('#' comments, blank lines
// allowed); later keys override earlier ones.
std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path);

// Two-column CSV (s,value) for tabulated kernel transforms; skips
// comment lines and an optional header row.
std::vector<std::pair<double, double>> read_table_csv(
    const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace glebd
