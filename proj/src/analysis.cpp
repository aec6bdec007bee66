#include "glebd/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "glebd/errors.hpp"
#include "glebd/fft.hpp"

namespace glebd {

CorrelationSeries autocorrelation(const TrajectoryEnsemble& ensemble,
                                  double max_lag, const std::string& channel,
                                  bool subtract_mean, ExecutionPolicy policy) {
  if (ensemble.d != 1)
    throw ValidationError("autocorrelation: scalar channels only");
  const auto& series = ensemble.channel(channel);
  const std::size_t len = ensemble.t.size();
  if (len < 2) throw ValidationError("autocorrelation: series too short");
  const double dtr = ensemble.dt_record;
  const double span = dtr * static_cast<double>(len - 1);
  if (!(max_lag >= 0.0))
    throw ValidationError("autocorrelation: max_lag must be >= 0");
  if (max_lag > span / 5.0 + 1e-9 * span)
    throw ValidationError(
        "autocorrelation: max_lag " + std::to_string(max_lag) +
        " exceeds a fifth of the recorded span " + std::to_string(span));
  const std::size_t nlag =
      static_cast<std::size_t>(std::floor(max_lag / dtr + 1e-9));
  const int ntraj = ensemble.ntraj;

  // Phase 1: independent per-trajectory estimates (parallelizable);
  // phase 2: reduction in index order, so results do not depend on
  // the execution policy.
  std::vector<std::vector<double>> per_traj(
      ntraj, std::vector<double>(nlag + 1, 0.0));
  const auto one = [&](int k) {
    std::vector<double> y(series[k].begin(), series[k].end());
    if (subtract_mean) {
      double m = 0.0;
      for (double v : y) m += v;
      m /= static_cast<double>(y.size());
      for (double& v : y) v -= m;
    }
    const std::vector<double> sums = autocorr_sums(y, nlag);
    for (std::size_t tau = 0; tau <= nlag; ++tau)
      per_traj[k][tau] = sums[tau] / static_cast<double>(len - tau);
  };
#ifdef _OPENMP
  if (policy == ExecutionPolicy::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < ntraj; ++k) one(k);
  } else {
    for (int k = 0; k < ntraj; ++k) one(k);
  }
#else
  (void)policy;
  for (int k = 0; k < ntraj; ++k) one(k);
#endif

  CorrelationSeries out;
  out.channel = channel;
  out.mean_subtracted = subtract_mean;
  out.n = ntraj;
  out.lag.resize(nlag + 1);
  out.value.resize(nlag + 1);
  out.std_error.resize(nlag + 1);
  for (std::size_t tau = 0; tau <= nlag; ++tau) {
    out.lag[tau] = dtr * static_cast<double>(tau);
    double m = 0.0;
    for (int k = 0; k < ntraj; ++k) m += per_traj[k][tau];
    m /= ntraj;
    double s2 = 0.0;
    for (int k = 0; k < ntraj; ++k) {
      const double dv = per_traj[k][tau] - m;
      s2 += dv * dv;
    }
    out.value[tau] = m;
    out.std_error[tau] =
        (ntraj > 1) ? std::sqrt(s2 / (ntraj - 1) / ntraj) : 0.0;
  }
  return out;
}

namespace {

double rel_l2(const std::vector<double>& t, const std::vector<double>& ref,
              const std::vector<double>& cand) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    const double d0 = ref[i] - cand[i], d1 = ref[i + 1] - cand[i + 1];
    num += 0.5 * h * (d0 * d0 + d1 * d1);
    den += 0.5 * h * (ref[i] * ref[i] + ref[i + 1] * ref[i + 1]);
  }
  if (!(den > 0.0))
    throw ValidationError("relative L2 error: reference is identically zero");
  return std::sqrt(num / den);
}

}  // namespace

double kernel_error(const KernelCurve& reference, const KernelCurve& candidate,
                    double horizon) {
  if (reference.d != candidate.d)
    throw ValidationError("kernel_error: dimension mismatch");
  std::size_t count = 0;
  for (std::size_t i = 0; i < reference.t.size(); ++i) {
    if (reference.t[i] > horizon + 1e-12) break;
    if (i >= candidate.t.size() ||
        std::fabs(candidate.t[i] - reference.t[i]) >
            1e-12 * std::max(1.0, reference.t[i]))
      throw ValidationError("kernel_error: curves use different grids");
    ++count;
  }
  if (count < 2)
    throw ValidationError("kernel_error: fewer than two shared grid points");
  // Frobenius norm of the difference per sample; scalars reduce to
  // |ref - cand|.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double h = reference.t[i + 1] - reference.t[i];
    const double d0 = (reference.value[i] - candidate.value[i]).norm();
    const double d1 = (reference.value[i + 1] - candidate.value[i + 1]).norm();
    const double r0 = reference.value[i].norm();
    const double r1 = reference.value[i + 1].norm();
    num += 0.5 * h * (d0 * d0 + d1 * d1);
    den += 0.5 * h * (r0 * r0 + r1 * r1);
  }
  if (!(den > 0.0))
    throw ValidationError("kernel_error: reference is identically zero");
  return std::sqrt(num / den);
}

double correlation_error(const CorrelationSeries& reference,
                         const CorrelationSeries& candidate, double horizon) {
  std::vector<double> t, a, b;
  for (std::size_t i = 0; i < reference.lag.size(); ++i) {
    if (reference.lag[i] > horizon + 1e-12) break;
    if (i >= candidate.lag.size() ||
        std::fabs(candidate.lag[i] - reference.lag[i]) >
            1e-12 * std::max(1.0, reference.lag[i]))
      throw ValidationError("correlation_error: series use different grids");
    t.push_back(reference.lag[i]);
    a.push_back(reference.value[i]);
    b.push_back(candidate.value[i]);
  }
  if (t.size() < 2)
    throw ValidationError(
        "correlation_error: fewer than two shared lag points");
  return rel_l2(t, a, b);
}

EquilibriumReport equilibrium_stats(const TrajectoryEnsemble& ensemble) {
  EquilibriumReport report;
  const int ntraj = ensemble.ntraj;
  for (std::size_t c = 0; c < ensemble.channels.size(); ++c) {
    ChannelStats st;
    st.channel = ensemble.channels[c];
    std::vector<double> tmean(ntraj, 0.0), tvar(ntraj, 0.0);
    long long total = 0;
    for (int k = 0; k < ntraj; ++k) {
      const auto& y = ensemble.series[c][k];
      double m = 0.0;
      for (double v : y) m += v;
      m /= static_cast<double>(y.size());
      double s2 = 0.0;
      for (double v : y) s2 += (v - m) * (v - m);
      tmean[k] = m;
      tvar[k] = s2 / static_cast<double>(y.size());
      total += static_cast<long long>(y.size());
    }
    double mm = 0.0, mv = 0.0;
    for (int k = 0; k < ntraj; ++k) {
      mm += tmean[k];
      mv += tvar[k];
    }
    mm /= ntraj;
    mv /= ntraj;
    double sm = 0.0, sv = 0.0;
    for (int k = 0; k < ntraj; ++k) {
      sm += (tmean[k] - mm) * (tmean[k] - mm);
      sv += (tvar[k] - mv) * (tvar[k] - mv);
    }
    st.mean = mm;
    st.variance = mv;
    st.mean_std_error =
        (ntraj > 1) ? std::sqrt(sm / (ntraj - 1) / ntraj) : 0.0;
    st.variance_std_error =
        (ntraj > 1) ? std::sqrt(sv / (ntraj - 1) / ntraj) : 0.0;
    st.nsamples = total;
    report.channels.push_back(st);
  }
  return report;
}

}  // namespace glebd
