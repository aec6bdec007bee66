#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/reduction.hpp"
#include "glebd/rng.hpp"
#include "glebd/types.hpp"

namespace glebd {

// Reference model: solid atoms 0..N-1 coupled by springs K, with a
// wall at x_N = 0 and the gas molecule pinned at y = 0 so that it
// acts on atom 0 through a fixed anharmonic force. Damping gamma and
// FDT-matched white noise act on atom 0 only; atoms j >= 1 stay
// Hamiltonian.
struct ChainConfig {
  int natoms = 8192;
  double K = 4.0;
  double mass = 1.0;
  double gamma = 2.0;
  double gas_mass = 1.0;  // unused while pinned
  bool pinned = true;
  double kBT = 1.0;
  double morse_a = 1.0;
  bool morse_on = true;
  // Gibbs-distributed initial conditions (requires kBT > 0). When
  // disabled the start is deterministic: x_0 = x0_init, every other
  // position and every velocity zero (conservation tests).
  bool thermal_init = true;
  double x0_init = 0.0;
};

// steps counts every integration step; the first `burnin` of them are
// discarded and every stride-th state of the rest is recorded, with
// t = 0 at the first recorded sample. kBT here feeds the bd and
// nonlocal models; chain and embedded runs carry their own
// temperature (ChainConfig.kBT, ExtendedSystem.kBT).
struct SimConfig {
  double dt = 1e-3;
  long long steps = 1000;
  long long burnin = 0;
  int ntraj = 1;
  std::uint64_t seed = 1;
  double kBT = 1.0;
  long long stride = 1;
  ExecutionPolicy policy = ExecutionPolicy::serial;
  std::vector<std::string> channels = {"x"};
};

// Recorded ensemble. series[c][k] holds channel channels[c] of
// trajectory k, time-major with d consecutive components per sample.
// All randomness of trajectory k comes from the stream
// (base_seed, k), so the contents do not depend on execution order
// or thread count.
struct TrajectoryEnsemble {
  std::vector<double> t;
  std::vector<std::string> channels;
  int d = 1;
  int ntraj = 0;
  double dt = 0.0;         // integration step
  double dt_record = 0.0;  // spacing of t
  std::uint64_t base_seed = 0;
  std::vector<std::vector<std::vector<double>>> series;
  std::string model;

  const std::vector<std::vector<double>>& channel(
      const std::string& name) const;
  bool has_channel(const std::string& name) const;
};

// Stochastic velocity Verlet on the chain (one thermostat noise per
// step, applied in both half kicks). Channels: x, v (atom 0) and
// energy (total of the chain plus the atom-0 potential).
TrajectoryEnsemble simulate_chain(const ChainConfig& chain,
                                  const SimConfig& sim);

// Euler-Maruyama on dx = chi_inf f(x) dt + sqrt(2 kBT chi_inf dt) eta.
// Channels: x.
TrajectoryEnsemble simulate_bd(const KernelSpec& kernel,
                               const ForceField& force, const SimConfig& sim);

// Integrates the embedding dx = (0..I) z dt,
// dz = (D z + stack f(x)) dt + dW with covariance Sigma dt. The
// linear auxiliary core advances by its exact propagator e^{D dt}
// with transition covariance Q - E Q E^T (no step-size bias for
// f == 0); the force couples via its constant-over-step response and
// x via explicit Euler. The auxiliary state starts from N(0, Q), so
// for f == 0 the observed channel is stationary from the first step.
// Channels: x, z, z1, z2 (aux blocks, bottom block first) and w, the
// noise part of z obtained by co-integrating a noise-free copy.
TrajectoryEnsemble simulate_embedded(const ExtendedSystem& system,
                                     const ForceField& force,
                                     const SimConfig& sim);

// Explicit Euler on dx = [conv(chi, f(x)) + w] dt where w is a
// stationary Gaussian process with covariance kBT chi(tau) sampled by
// circulant embedding, and the memory integral uses trapezoidal
// quadrature over the whole history (cost O(steps^2), hence the step
// cap). The curve must cover the grid 0..steps*dt. Channels: x, w.
TrajectoryEnsemble simulate_nonlocal(const KernelCurve& chi,
                                     const ForceField& force,
                                     const SimConfig& sim);

// Stationary mean-zero Gaussian sampler for a scalar autocovariance
// sequence cov[k] = c(k dt). Builds one circulant embedding
// (power-of-two FFT over a zero-extended base) and falls back to a
// dense symmetric factorization for short sequences whose embedding
// is not PSD.
class StationaryGaussianSampler {
 public:
  explicit StationaryGaussianSampler(std::vector<double> autocov);
  // One path of length size(); consumes a deterministic number of
  // normal draws per call.
  std::vector<double> sample(RngStream& rng) const;
  std::size_t size() const { return npoints_; }
  bool circulant() const { return use_circulant_; }

 private:
  std::size_t npoints_ = 0;
  bool use_circulant_ = true;
  std::vector<double> scale_;  // sqrt(lambda_j / N2) per FFT bin
  Matrix dense_factor_;
};

// One path of the process with matrix autocovariance cov(tau) on a
// uniform grid, seeded by (seed, index). Scalar covariances go
// through the circulant sampler; matrix ones through a dense
// factorization (grid capped accordingly).
std::vector<Vector> sample_stationary_gaussian(
    const std::function<Matrix(double)>& cov, const std::vector<double>& grid,
    std::uint64_t seed, std::uint64_t index = 0);

}  // namespace glebd
