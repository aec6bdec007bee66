#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "glebd/types.hpp"

namespace glebd {

// A memory kernel theta with its damping matrix gamma. The Laplace
// transform Theta(s) is the primary representation; time-domain and
// lambda-domain (lambda = 1/s) forms are optional and only present for
// kernels that have them in closed form.
struct KernelSpec {
  int d = 1;
  Matrix gamma;       // d x d, symmetric
  Matrix m_infinity;  // lim_{s->0+} Theta(s), d x d, symmetric

  // Theta(s); s < 0 evaluates the branch that stays bounded on both
  // ends of the real axis (the continuation the moment stencils probe).
  std::function<Matrix(double)> theta_laplace;
  // Analytic continuation into Re(s) > 0, required for contour-based
  // Laplace inversion. Absent for tabulated kernels.
  std::function<ComplexMatrix(std::complex<double>)> theta_laplace_complex;
  // Theta(1/lambda) continued through lambda = 0 (both signs), used by
  // the finite-difference moment path. Tabulated kernels interpolate it
  // from their rows at s = 1/lambda.
  std::function<Matrix(double)> theta_lambda;
  std::function<Matrix(double)> theta_time;       // optional, t >= 0
  std::function<Matrix(double)> chi_closed_form;  // optional, t >= 0

  // Taylor coefficients of Theta(1/lambda) at lambda = 0 (index k is
  // the lambda^k coefficient). Empty when no closed form is known.
  std::vector<Matrix> theta_lambda_coeffs;

  // Populated for the Adelman-Doll family, zero otherwise.
  double omega0 = 0.0;
  double K = 0.0;
  double mass = 1.0;

  std::string name;
};

struct ForceField {
  std::function<double(double)> potential;
  std::function<double(double)> force;  // f = -potential'
  double a = 0.0;                       // Morse range parameter, 0 if n/a
  std::string name;
};

// theta(t) = (omega0/t) J1(2 omega0 t); the t=0 limit is omega0^2.
double theta_time(double t, double omega0);

// Theta(s) = (sqrt(s^2+4 omega0^2) - s)/2, evaluated in the conjugate
// form 2 omega0^2 / (sqrt(s^2+4 omega0^2) + s) to avoid cancellation.
// Negative s yields the odd, decaying branch -Theta(-s).
double theta_laplace_ad(double s, double omega0);

// Harmonic-chain transform (m/2) sqrt(s^2 + 4K/m) - (m/2) s; equals
// theta_laplace_ad with omega0 = sqrt(K) when m = 1. Same odd branch
// for s < 0.
double theta_laplace_chain(double s, double m, double K);

// Morse force f(x) = -phi'(x) = 2a e^{-ax}(e^{-ax} - 1) for
// phi(u) = (e^{-au} - 1)^2. Throws NumericalError when e^{-ax} would
// overflow instead of emitting a non-finite value.
double morse_force(double x, double a);

ForceField morse_force_field(double a);
ForceField zero_force_field();
ForceField linear_force_field(double k);  // f = -k x, for tests/oracles

// Kernel factories. adelman_doll_kernel carries every optional
// representation; gamma enters as gamma_scalar * I.
KernelSpec adelman_doll_kernel(double gamma_scalar, double K, double m = 1.0);
KernelSpec langevin_kernel(double gamma_scalar);  // Theta == 0
// Tabulated Theta(s) with linear interpolation between (s, value) rows;
// evaluation outside the tabulated range throws (no silent clamping).
// Rows at negative s carry the decaying-branch continuation so the
// moment stencils can probe both sides of lambda = 0.
KernelSpec tabulated_kernel(std::vector<std::pair<double, double>> table,
                            double gamma_scalar, double m_inf);
// Direct sum of two kernels (block-diagonal in every representation
// both sides carry).
KernelSpec block_diag(const KernelSpec& a, const KernelSpec& b);
// Parses "ad(gamma,K)" and "langevin(gamma)".
KernelSpec kernel_from_name(const std::string& text);

// Moments M0..M_{2n-2} of the lambda-expansion X(1/lambda) =
// sum_k M_k lambda^{k+1}. Uses closed-form lambda coefficients when the
// kernel has them, otherwise Richardson-extrapolated central
// differences (h = 1e-2, 5e-3, 2.5e-3). The FD path is accurate to
// ~1e-9 through M2 but degrades for higher moments, so it refuses
// n = 3 requests rather than return low-precision values.
std::vector<Matrix> kernel_moments(const KernelSpec& kernel, int n);

// The finite-difference path by itself, exposed for cross-checks.
std::vector<Matrix> kernel_moments_fd(const KernelSpec& kernel, int n);

}  // namespace glebd
