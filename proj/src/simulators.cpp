#include "glebd/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>

#include <Eigen/Eigenvalues>

#include "glebd/errors.hpp"
#include "glebd/fft.hpp"

namespace glebd {

const std::vector<std::vector<double>>& TrajectoryEnsemble::channel(
    const std::string& name) const {
  for (std::size_t c = 0; c < channels.size(); ++c)
    if (channels[c] == name) return series[c];
  throw ValidationError("TrajectoryEnsemble: channel '" + name +
                        "' was not recorded");
}

bool TrajectoryEnsemble::has_channel(const std::string& name) const {
  return std::find(channels.begin(), channels.end(), name) != channels.end();
}

namespace {

void validate_sim(const SimConfig& sim) {
  if (!(sim.dt > 0.0) || !std::isfinite(sim.dt))
    throw ValidationError("simulate: dt must be positive and finite");
  if (sim.steps < 1) throw ValidationError("simulate: steps must be >= 1");
  if (sim.burnin < 0 || sim.burnin >= sim.steps)
    throw ValidationError("simulate: burnin must lie in [0, steps)");
  if (sim.ntraj < 1) throw ValidationError("simulate: ntraj must be >= 1");
  if (sim.stride < 1) throw ValidationError("simulate: stride must be >= 1");
  if (sim.kBT < 0.0) throw ValidationError("simulate: kBT must be >= 0");
  if (sim.channels.empty())
    throw ValidationError("simulate: at least one channel must be recorded");
}

void validate_channels(const SimConfig& sim,
                       const std::vector<std::string>& allowed,
                       const std::string& model) {
  for (const auto& c : sim.channels)
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end())
      throw ValidationError("simulate_" + model + ": channel '" + c +
                            "' is not recordable for this model");
}

// Record indices are burnin, burnin+stride, ... <= steps.
std::size_t record_count(const SimConfig& sim) {
  return static_cast<std::size_t>((sim.steps - sim.burnin) / sim.stride) + 1;
}

TrajectoryEnsemble make_ensemble(const SimConfig& sim, int d,
                                 const std::string& model) {
  TrajectoryEnsemble ens;
  ens.channels = sim.channels;
  ens.d = d;
  ens.ntraj = sim.ntraj;
  ens.dt = sim.dt;
  ens.dt_record = sim.dt * static_cast<double>(sim.stride);
  ens.base_seed = sim.seed;
  ens.model = model;
  const std::size_t nrec = record_count(sim);
  ens.t.resize(nrec);
  for (std::size_t j = 0; j < nrec; ++j)
    ens.t[j] = ens.dt_record * static_cast<double>(j);
  ens.series.assign(sim.channels.size(),
                    std::vector<std::vector<double>>(sim.ntraj));
  for (auto& ch : ens.series)
    for (auto& tr : ch) tr.assign(nrec * static_cast<std::size_t>(d), 0.0);
  return ens;
}

// Runs work(k, rng) for every trajectory index with its own stream;
// the first exception wins and is rethrown on the calling thread.
void run_ensemble(int ntraj, std::uint64_t seed, ExecutionPolicy policy,
                  const std::function<void(int, RngStream&)>& work) {
  std::exception_ptr err;
#ifdef _OPENMP
  if (policy == ExecutionPolicy::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < ntraj; ++k) {
      try {
        RngStream rng(seed, static_cast<std::uint64_t>(k));
        work(k, rng);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)policy;
#endif
  for (int k = 0; k < ntraj; ++k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    work(k, rng);
  }
  if (err) std::rethrow_exception(err);
}

// Symmetric square root with tiny negative eigenvalues clipped to
// zero; hypoelliptic systems legitimately have rank-deficient Sigma.
Matrix psd_sqrt(const Matrix& S, const std::string& what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (S + S.transpose().eval()));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Vector lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-12 * scale)
      throw NumericalError("simulate: " + what +
                           " is not positive semidefinite (eigenvalue " +
                           std::to_string(lam(i)) + ")");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().transpose();
}

double require_finite(double f, const std::string& model) {
  if (!std::isfinite(f))
    throw NumericalError("simulate_" + model + ": non-finite force value");
  return f;
}

// Inverse-CDF table for the marginal of x_0 under the conditional
// Gibbs measure with the wall fixed: integrating out atoms 1..N-1
// leaves the bare potential plus an effective spring K/N.
struct InverseCdf {
  std::vector<double> u;
  std::vector<double> cdf;  // normalized to 1, same length as u

  double draw(double r) const {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.begin()) return u.front();
    if (it == cdf.end()) return u.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    const double c0 = cdf[i - 1], c1 = cdf[i];
    const double w = (c1 > c0) ? (r - c0) / (c1 - c0) : 0.5;
    return u[i - 1] + w * (u[i] - u[i - 1]);
  }
};

InverseCdf build_x0_sampler(const ChainConfig& chain) {
  const double kBT = chain.kBT;
  const double keff = chain.K / static_cast<double>(chain.natoms);
  const auto pot = [&](double x) {
    double p = 0.5 * keff * x * x;
    if (chain.morse_on) {
      const double e = std::exp(-chain.morse_a * x);
      p += (e - 1.0) * (e - 1.0);
    }
    return p;
  };
  const double p0 = pot(0.0);
  const double threshold = p0 + 40.0 * kBT;
  const double sigma_free =
      std::sqrt(static_cast<double>(chain.natoms) * kBT / chain.K);
  double h = sigma_free / 128.0;
  double hi = h;
  while (pot(hi) < threshold && hi < 1e7) {
    hi += h;
    h *= 1.25;
  }
  h = sigma_free / 128.0;
  double lo = -h;
  while (pot(lo) < threshold && lo > -1e7) {
    lo -= h;
    h *= 1.25;
  }

  const int npts = 65536;
  InverseCdf table;
  table.u.resize(npts);
  table.cdf.resize(npts);
  std::vector<double> w(npts);
  const double du = (hi - lo) / (npts - 1);
  for (int i = 0; i < npts; ++i) {
    table.u[i] = lo + du * i;
    w[i] = std::exp(-(pot(table.u[i]) - p0) / kBT);
  }
  table.cdf[0] = 0.0;
  for (int i = 1; i < npts; ++i)
    table.cdf[i] = table.cdf[i - 1] + 0.5 * (w[i] + w[i - 1]) * du;
  const double total = table.cdf.back();
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalError("simulate_chain: degenerate initial distribution");
  for (auto& c : table.cdf) c /= total;
  return table;
}

}  // namespace

TrajectoryEnsemble simulate_chain(const ChainConfig& chain,
                                  const SimConfig& sim) {
  validate_sim(sim);
  validate_channels(sim, {"x", "v", "energy"}, "chain");
  if (chain.natoms < 2)
    throw ValidationError("simulate_chain: need at least two atoms");
  if (!(chain.K > 0.0) || !(chain.mass > 0.0))
    throw ValidationError("simulate_chain: K and mass must be positive");
  if (chain.gamma < 0.0)
    throw ValidationError("simulate_chain: gamma must be >= 0");
  if (chain.kBT < 0.0)
    throw ValidationError("simulate_chain: kBT must be >= 0");
  if (!chain.pinned)
    throw ValidationError(
        "simulate_chain: only the pinned gas molecule is supported");
  if (chain.morse_on && !(chain.morse_a > 0.0))
    throw ValidationError("simulate_chain: Morse parameter must be positive");
  if (chain.thermal_init && !(chain.kBT > 0.0))
    throw ValidationError(
        "simulate_chain: Gibbs initial conditions need kBT > 0");
  // Fastest chain mode has frequency 2 sqrt(K/m); require dt well
  // under its period before running anything.
  const double dt_max = 0.1 / std::sqrt(4.0 * chain.K / chain.mass);
  if (sim.dt > dt_max)
    throw ValidationError(
        "simulate_chain: dt " + std::to_string(sim.dt) +
        " exceeds the stability bound " + std::to_string(dt_max));

  TrajectoryEnsemble ens = make_ensemble(sim, 1, "chain");
  const InverseCdf x0_table =
      chain.thermal_init ? build_x0_sampler(chain) : InverseCdf{};

  const int N = chain.natoms;
  const double K = chain.K, m = chain.mass, gamma = chain.gamma;
  const double kBT = chain.kBT;
  const double dt = sim.dt;
  const double hdt = 0.5 * dt / m;
  const double cfr = 0.5 * gamma * dt / m;
  const double noise_amp =
      (gamma > 0.0 && kBT > 0.0) ? std::sqrt(2.0 * gamma * kBT / dt) : 0.0;

  const auto atom0_force = [&](double x) {
    return chain.morse_on ? morse_force(x, chain.morse_a) : 0.0;
  };
  const auto atom0_pot = [&](double x) {
    if (!chain.morse_on) return 0.0;
    const double e = std::exp(-chain.morse_a * x);
    return (e - 1.0) * (e - 1.0);
  };

  run_ensemble(sim.ntraj, sim.seed, sim.policy, [&](int k, RngStream& rng) {
    std::vector<double> x(N, 0.0), v(N, 0.0), f(N, 0.0);
    if (chain.thermal_init) {
      x[0] = x0_table.draw(rng.uniform());
      const double step_var = kBT / K;
      for (int j = 1; j < N; ++j) {
        const double ratio = static_cast<double>(N - j) / (N - j + 1);
        x[j] = x[j - 1] * ratio + std::sqrt(step_var * ratio) * rng.normal();
      }
      const double v_sd = std::sqrt(kBT / m);
      for (int j = 0; j < N; ++j) v[j] = v_sd * rng.normal();
    } else {
      x[0] = chain.x0_init;
    }

    const auto forces = [&] {
      f[0] = atom0_force(x[0]) + K * (x[1] - x[0]);
      for (int j = 1; j < N - 1; ++j)
        f[j] = K * (x[j + 1] - 2.0 * x[j] + x[j - 1]);
      f[N - 1] = K * (x[N - 2] - 2.0 * x[N - 1]);
    };
    const auto record = [&](std::size_t idx) {
      for (std::size_t c = 0; c < sim.channels.size(); ++c) {
        const std::string& name = sim.channels[c];
        double val = 0.0;
        if (name == "x")
          val = x[0];
        else if (name == "v")
          val = v[0];
        else {
          double e = atom0_pot(x[0]);
          for (int j = 0; j < N; ++j) e += 0.5 * m * v[j] * v[j];
          for (int j = 0; j + 1 < N; ++j) {
            const double dx = x[j + 1] - x[j];
            e += 0.5 * K * dx * dx;
          }
          e += 0.5 * K * x[N - 1] * x[N - 1];
          val = e;
        }
        ens.series[c][k][idx] = val;
      }
    };

    forces();
    std::size_t rec = 0;
    for (long long i = 0;; ++i) {
      if (i >= sim.burnin && (i - sim.burnin) % sim.stride == 0)
        record(rec++);
      if (i >= sim.steps) break;
      const double R = (noise_amp > 0.0) ? noise_amp * rng.normal() : 0.0;
      v[0] = v[0] * (1.0 - cfr) + hdt * (f[0] + R);
      for (int j = 1; j < N; ++j) v[j] += hdt * f[j];
      for (int j = 0; j < N; ++j) x[j] += dt * v[j];
      forces();
      v[0] = (v[0] + hdt * (f[0] + R)) / (1.0 + cfr);
      for (int j = 1; j < N; ++j) v[j] += hdt * f[j];
    }
  });
  return ens;
}

TrajectoryEnsemble simulate_bd(const KernelSpec& kernel,
                               const ForceField& force, const SimConfig& sim) {
  validate_sim(sim);
  validate_channels(sim, {"x"}, "bd");
  if (!force.force) throw ValidationError("simulate_bd: force is unset");
  const Matrix mob = chi_infinity(kernel);
  const int d = kernel.d;
  const Matrix noiseL =
      std::sqrt(2.0 * sim.kBT * sim.dt) * psd_sqrt(mob, "chi_infinity");

  TrajectoryEnsemble ens = make_ensemble(sim, d, "bd");
  run_ensemble(sim.ntraj, sim.seed, sim.policy, [&](int k, RngStream& rng) {
    Vector x = Vector::Zero(d), fv(d), eta(d);
    std::size_t rec = 0;
    for (long long i = 0;; ++i) {
      if (i >= sim.burnin && (i - sim.burnin) % sim.stride == 0) {
        for (int c = 0; c < d; ++c)
          ens.series[0][k][rec * d + c] = x(c);
        ++rec;
      }
      if (i >= sim.steps) break;
      for (int c = 0; c < d; ++c)
        fv(c) = require_finite(force.force(x(c)), "bd");
      for (int c = 0; c < d; ++c) eta(c) = rng.normal();
      x += sim.dt * (mob * fv) + noiseL * eta;
    }
  });
  return ens;
}

TrajectoryEnsemble simulate_embedded(const ExtendedSystem& system,
                                     const ForceField& force,
                                     const SimConfig& sim) {
  validate_sim(sim);
  const int n = system.n, d = system.d;
  std::vector<std::string> allowed = {"x", "z", "w"};
  if (n >= 2) allowed.push_back("z1");
  if (n >= 3) allowed.push_back("z2");
  validate_channels(sim, allowed, "embedded");
  if (!force.force) throw ValidationError("simulate_embedded: force is unset");

  Eigen::EigenSolver<Matrix> es(system.D);
  const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
  if (sim.dt > 0.1 / rho)
    throw ValidationError("simulate_embedded: dt " + std::to_string(sim.dt) +
                          " exceeds the step bound " +
                          std::to_string(0.1 / rho));

  // One-step exact propagation of the linear auxiliary core: since Q
  // solves D Q + Q D^T + Sigma = 0, the transition covariance over dt
  // is Q - E Q E^T in closed form, so the f == 0 noise statistics
  // carry no step-size bias. The force couples through its
  // constant-over-step response D^{-1} (E - I) stack.
  const int nd = n * d;
  const Matrix E = matrix_exponential(sim.dt * system.D);
  const Matrix Qstep(system.Q - E * system.Q * E.transpose());
  const Matrix Lstep = psd_sqrt(Qstep, "step covariance");
  const Matrix Bf =
      system.D.partialPivLu().solve((E - Matrix::Identity(nd, nd)).eval()) *
      system.stack;
  const Matrix Lq = psd_sqrt(system.Q, "Q");
  const bool want_w = std::count(sim.channels.begin(), sim.channels.end(), "w");

  TrajectoryEnsemble ens = make_ensemble(sim, d, "embedded order-" +
                                                     std::to_string(n));
  run_ensemble(sim.ntraj, sim.seed, sim.policy, [&](int k, RngStream& rng) {
    Vector eta(nd);
    for (int c = 0; c < nd; ++c) eta(c) = rng.normal();
    Vector z = Lq * eta;
    Vector zf = Vector::Zero(nd);  // noise-free copy, tracked for w
    Vector x = Vector::Zero(d), fv(d);
    std::size_t rec = 0;
    for (long long i = 0;; ++i) {
      if (i >= sim.burnin && (i - sim.burnin) % sim.stride == 0) {
        for (std::size_t c = 0; c < sim.channels.size(); ++c) {
          const std::string& name = sim.channels[c];
          for (int p = 0; p < d; ++p) {
            double val = 0.0;
            if (name == "x")
              val = x(p);
            else if (name == "z")
              val = z((n - 1) * d + p);
            else if (name == "z1")
              val = z((n - 2) * d + p);
            else if (name == "z2")
              val = z((n - 3) * d + p);
            else
              val = z((n - 1) * d + p) - zf((n - 1) * d + p);
            ens.series[c][k][rec * d + p] = val;
          }
        }
        ++rec;
      }
      if (i >= sim.steps) break;
      for (int p = 0; p < d; ++p)
        fv(p) = require_finite(force.force(x(p)), "embedded");
      for (int c = 0; c < nd; ++c) eta(c) = rng.normal();
      const Vector znew = E * z + Bf * fv + Lstep * eta;
      x += sim.dt * z.segment((n - 1) * d, d);
      if (want_w) zf = E * zf + Bf * fv;
      z = znew;
    }
  });
  return ens;
}

StationaryGaussianSampler::StationaryGaussianSampler(
    std::vector<double> autocov) {
  npoints_ = autocov.size();
  if (npoints_ == 0)
    throw ValidationError("StationaryGaussianSampler: empty covariance");
  double cmax = 0.0;
  for (double c : autocov) {
    if (!std::isfinite(c))
      throw ValidationError("StationaryGaussianSampler: non-finite value");
    cmax = std::max(cmax, std::fabs(c));
  }
  if (npoints_ == 1) {
    use_circulant_ = true;
    scale_ = {std::sqrt(std::max(autocov[0], 0.0))};
    if (autocov[0] < -1e-12 * std::max(cmax, 1.0))
      throw NumericalError("StationaryGaussianSampler: negative variance");
    return;
  }

  // Circulant base: lags 0..N2/2 (zero-extended past the data),
  // mirrored into length N2.
  const std::size_t n2 = std::max<std::size_t>(
      next_pow2(2 * (npoints_ - 1)), 2);
  std::vector<std::complex<double>> circ(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    const std::size_t lag = std::min(j, n2 - j);
    circ[j] = (lag < npoints_) ? autocov[lag] : 0.0;
  }
  fft_inplace(circ, false);
  double lmax = 0.0, lmin = 0.0;
  for (const auto& l : circ) {
    lmax = std::max(lmax, l.real());
    lmin = std::min(lmin, l.real());
  }
  if (lmin >= -1e-6 * std::max(lmax, 1e-300)) {
    use_circulant_ = true;
    scale_.resize(n2);
    for (std::size_t j = 0; j < n2; ++j)
      scale_[j] =
          std::sqrt(std::max(circ[j].real(), 0.0) / static_cast<double>(n2));
    return;
  }

  // Embedding is indefinite: dense Toeplitz factorization for short
  // sequences, refusal with guidance otherwise.
  if (npoints_ > 2048)
    throw NumericalError(
        "StationaryGaussianSampler: circulant embedding is not PSD and the "
        "sequence is too long for the dense fallback; extend the covariance "
        "tail or shorten the grid");
  const int n = static_cast<int>(npoints_);
  Matrix C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = autocov[std::abs(i - j)];
  Eigen::SelfAdjointEigenSolver<Matrix> es(C);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Vector lam = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (lam(i) < -1e-8 * scale)
      throw NumericalError(
          "StationaryGaussianSampler: sequence is not a valid "
          "autocovariance (eigenvalue " + std::to_string(lam(i)) + ")");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  dense_factor_ = es.eigenvectors() * lam.asDiagonal();
  use_circulant_ = false;
}

std::vector<double> StationaryGaussianSampler::sample(RngStream& rng) const {
  std::vector<double> out(npoints_);
  if (npoints_ == 1) {
    out[0] = scale_[0] * rng.normal();
    return out;
  }
  if (use_circulant_) {
    const std::size_t n2 = scale_.size();
    std::vector<std::complex<double>> eps(n2);
    for (std::size_t j = 0; j < n2; ++j) {
      const double u = rng.normal();
      const double v = rng.normal();
      eps[j] = scale_[j] * std::complex<double>(u, v);
    }
    fft_inplace(eps, false);
    for (std::size_t j = 0; j < npoints_; ++j) out[j] = eps[j].real();
    return out;
  }
  Vector eta(static_cast<int>(npoints_));
  for (int i = 0; i < eta.size(); ++i) eta(i) = rng.normal();
  Vector y = dense_factor_ * eta;
  for (std::size_t j = 0; j < npoints_; ++j) out[j] = y(static_cast<int>(j));
  return out;
}

TrajectoryEnsemble simulate_nonlocal(const KernelCurve& chi,
                                     const ForceField& force,
                                     const SimConfig& sim) {
  validate_sim(sim);
  validate_channels(sim, {"x", "w"}, "nonlocal");
  if (!force.force) throw ValidationError("simulate_nonlocal: force is unset");
  if (chi.d != 1)
    throw ValidationError("simulate_nonlocal: scalar kernels only");
  if (sim.steps > 100000)
    throw ValidationError(
        "simulate_nonlocal: refusing steps > 1e5; the history convolution "
        "is O(steps^2)");
  const std::size_t need = static_cast<std::size_t>(sim.steps) + 1;
  if (chi.t.size() < need)
    throw ValidationError(
        "simulate_nonlocal: kernel curve shorter than the simulation grid");
  for (std::size_t i = 0; i < need; ++i)
    if (std::fabs(chi.t[i] - sim.dt * static_cast<double>(i)) >
        1e-9 * std::max(1.0, chi.t[i]))
      throw ValidationError(
          "simulate_nonlocal: kernel curve grid is not dt-aligned");

  std::vector<double> cv(need);
  for (std::size_t i = 0; i < need; ++i) cv[i] = chi.value[i](0, 0);
  std::vector<double> cov(need);
  for (std::size_t i = 0; i < need; ++i) cov[i] = sim.kBT * cv[i];
  const bool noisy = sim.kBT > 0.0;
  const StationaryGaussianSampler sampler =
      noisy ? StationaryGaussianSampler(cov)
            : StationaryGaussianSampler(std::vector<double>{0.0});

  TrajectoryEnsemble ens = make_ensemble(sim, 1, "nonlocal");
  run_ensemble(sim.ntraj, sim.seed, sim.policy, [&](int k, RngStream& rng) {
    std::vector<double> w(need, 0.0);
    if (noisy) w = sampler.sample(rng);
    std::vector<double> fh(need, 0.0);
    double x = 0.0;
    std::size_t rec = 0;
    for (long long i = 0;; ++i) {
      if (i >= sim.burnin && (i - sim.burnin) % sim.stride == 0) {
        for (std::size_t c = 0; c < sim.channels.size(); ++c)
          ens.series[c][k][rec] =
              (sim.channels[c] == "x") ? x : w[static_cast<std::size_t>(i)];
        ++rec;
      }
      if (i >= sim.steps) break;
      const std::size_t ii = static_cast<std::size_t>(i);
      fh[ii] = require_finite(force.force(x), "nonlocal");
      double conv = 0.0;
      if (i >= 1) {
        conv = 0.5 * (cv[ii] * fh[0] + cv[0] * fh[ii]);
        for (std::size_t j = 1; j < ii; ++j) conv += cv[ii - j] * fh[j];
        conv *= sim.dt;
      }
      x += sim.dt * (conv + w[ii]);
    }
  });
  return ens;
}

std::vector<Vector> sample_stationary_gaussian(
    const std::function<Matrix(double)>& cov, const std::vector<double>& grid,
    std::uint64_t seed, std::uint64_t index) {
  if (!cov) throw ValidationError("sample_stationary_gaussian: cov is unset");
  if (grid.empty())
    throw ValidationError("sample_stationary_gaussian: empty grid");
  const Matrix c0 = cov(0.0);
  const int d = static_cast<int>(c0.rows());
  double delta = 0.0;
  if (grid.size() > 1) {
    delta = grid[1] - grid[0];
    if (!(delta > 0.0))
      throw ValidationError("sample_stationary_gaussian: grid not increasing");
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (std::fabs(grid[i] - grid[i - 1] - delta) > 1e-9 * delta)
        throw ValidationError("sample_stationary_gaussian: grid not uniform");
  }
  const std::size_t n = grid.size();
  RngStream rng(seed, index);
  std::vector<Vector> path(n);

  if (d == 1) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i)
      c[i] = cov(delta * static_cast<double>(i))(0, 0);
    StationaryGaussianSampler sampler(c);
    std::vector<double> y = sampler.sample(rng);
    for (std::size_t i = 0; i < n; ++i) {
      path[i] = Vector::Constant(1, y[i]);
    }
    return path;
  }

  if (n * static_cast<std::size_t>(d) > 2048)
    throw ValidationError(
        "sample_stationary_gaussian: matrix covariance restricted to "
        "n*d <= 2048 (dense factorization)");
  const int total = static_cast<int>(n) * d;
  Matrix C(total, total);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix blk = (i >= j)
                             ? cov(delta * static_cast<double>(i - j))
                             : Matrix(cov(delta * static_cast<double>(j - i))
                                          .transpose());
      C.block(static_cast<int>(i) * d, static_cast<int>(j) * d, d, d) = blk;
    }
  const Matrix L = psd_sqrt(C, "stationary covariance");
  Vector eta(total);
  for (int i = 0; i < total; ++i) eta(i) = rng.normal();
  const Vector y = L * eta;
  for (std::size_t i = 0; i < n; ++i)
    path[i] = y.segment(static_cast<int>(i) * d, d);
  return path;
}

}  // namespace glebd
