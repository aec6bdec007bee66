#pragma once

#include <string>
#include <vector>

#include "glebd/laplace.hpp"
#include "glebd/simulators.hpp"
#include "glebd/types.hpp"

namespace glebd {

struct CorrelationSeries {
  std::vector<double> lag;
  std::vector<double> value;
  std::vector<double> std_error;  // across-trajectory, per lag
  long long n = 0;                // trajectories entering each estimate
  bool mean_subtracted = true;
  std::string channel;
};

// Autocovariance of a scalar channel, averaged over time origins
// (unbiased 1/(len - lag) divisor, FFT-based) and the ensemble;
// standard errors from the across-trajectory spread. max_lag is in
// time units and may not exceed a fifth of the recorded span.
// subtract_mean removes each trajectory's own mean first; channels
// with a structurally zero mean (the noise channel w) should pass
// false, since the subtraction biases every lag by -Var(mean).
CorrelationSeries autocorrelation(const TrajectoryEnsemble& ensemble,
                                  double max_lag,
                                  const std::string& channel = "x",
                                  bool subtract_mean = true,
                                  ExecutionPolicy policy =
                                      ExecutionPolicy::serial);

// Relative L2 error ||ref - cand|| / ||ref|| over [0, horizon] by the
// trapezoid rule (Frobenius norm per sample). Grids must agree on the
// compared range.
double kernel_error(const KernelCurve& reference, const KernelCurve& candidate,
                    double horizon);

// Same metric for correlation estimates.
double correlation_error(const CorrelationSeries& reference,
                         const CorrelationSeries& candidate, double horizon);

struct ChannelStats {
  std::string channel;
  double mean = 0.0;
  double mean_std_error = 0.0;
  double variance = 0.0;
  double variance_std_error = 0.0;
  long long nsamples = 0;
};

struct EquilibriumReport {
  std::vector<ChannelStats> channels;
};

// Per-channel mean and variance pooled over trajectories and time,
// with standard errors from the across-trajectory spread of the
// per-trajectory statistics.
EquilibriumReport equilibrium_stats(const TrajectoryEnsemble& ensemble);

}  // namespace glebd
