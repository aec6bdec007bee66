#include "glebd/laplace.hpp"

#include <cmath>
#include <numbers>

#include "glebd/errors.hpp"

namespace glebd {

std::string provenance_tag(const KernelCurve& curve) {
  switch (curve.provenance) {
    case Provenance::exact_euler:
      return "exact-euler";
    case Provenance::closed_form:
      return "closed-form";
    case Provenance::rational:
      return "rational-order-" + std::to_string(curve.order);
  }
  return "unknown";
}

Matrix chi_laplace(const KernelSpec& kernel, double s) {
  if (s < 0.0) throw ValidationError("chi_laplace: s must be >= 0");
  const Matrix theta = kernel.theta_laplace
                           ? kernel.theta_laplace(s)
                           : Matrix::Zero(kernel.d, kernel.d).eval();
  Matrix G = s * Matrix::Identity(kernel.d, kernel.d) + kernel.gamma + theta;
  Eigen::FullPivLU<Matrix> lu(G);
  if (!lu.isInvertible())
    throw NumericalError("chi_laplace: sI + gamma + Theta(s) singular at s = " +
                         std::to_string(s));
  return lu.inverse();
}

ComplexMatrix chi_laplace_complex(const KernelSpec& kernel,
                                  std::complex<double> s) {
  if (!kernel.theta_laplace_complex)
    throw ValidationError("chi_laplace_complex: kernel '" + kernel.name +
                          "' has no analytic continuation of Theta");
  ComplexMatrix G = s * ComplexMatrix::Identity(kernel.d, kernel.d) +
                    kernel.gamma.cast<std::complex<double>>() +
                    kernel.theta_laplace_complex(s);
  Eigen::FullPivLU<ComplexMatrix> lu(G);
  if (!lu.isInvertible())
    throw NumericalError("chi_laplace_complex: resolvent singular at s = (" +
                         std::to_string(s.real()) + ", " +
                         std::to_string(s.imag()) + ")");
  return lu.inverse();
}

namespace {

void validate_config(const InversionConfig& config) {
  if (config.nterms < config.avg_depth + 1)
    throw ValidationError(
        "invert_laplace: series length must be >= averaging depth + 1");
  if (config.avg_depth < 1 || config.a_param <= 0.0)
    throw ValidationError("invert_laplace: bad inversion parameters");
  for (std::size_t i = 0; i < config.grid.size(); ++i) {
    if (config.grid[i] < 0.0)
      throw ValidationError("invert_laplace: grid values must be >= 0");
    if (i > 0 && config.grid[i] <= config.grid[i - 1])
      throw ValidationError("invert_laplace: grid must be strictly increasing");
  }
}

Matrix euler_point(const ComplexTransform& F, double t,
                   const InversionConfig& config,
                   const std::vector<double>& weights) {
  const double A = config.a_param;
  const int L = config.nterms;
  const int m = config.avg_depth;
  const double scale = std::exp(A / 2.0) / t;

  Matrix partial = 0.5 * scale * F(std::complex<double>(A / (2.0 * t), 0.0)).real();
  // Partial sums p[1..L]; the binomial average uses p[L-m..L], so only
  // the tail window is stored.
  std::vector<Matrix> window(m + 1);
  double sign = 1.0;
  for (int k = 1; k <= L; ++k) {
    sign = -sign;
    const std::complex<double> s(A / (2.0 * t),
                                 std::numbers::pi * k / t);
    partial += sign * scale * F(s).real();
    if (k >= L - m) window[k - (L - m)] = partial;
  }
  Matrix out = Matrix::Zero(partial.rows(), partial.cols());
  for (int j = 0; j <= m; ++j) out += weights[j] * window[j];
  if (!out.allFinite())
    throw NumericalError(
        "invert_laplace: non-finite sum at t = " + std::to_string(t) +
        "; reduce nterms or a_param (working precision exceeded)");
  return out;
}

std::vector<double> binomial_weights(int m) {
  std::vector<double> w(m + 1);
  double c = 1.0;
  for (int j = 0; j <= m; ++j) {
    w[j] = c;
    c = c * (m - j) / (j + 1);
  }
  const double norm = std::pow(2.0, -m);
  for (auto& x : w) x *= norm;
  return w;
}

}  // namespace

KernelCurve invert_laplace(const ComplexTransform& F,
                           const InversionConfig& config,
                           std::optional<Matrix> boundary_value,
                           ExecutionPolicy policy) {
  validate_config(config);
  if (config.grid.empty())
    throw ValidationError("invert_laplace: empty evaluation grid");
  const bool has_zero = config.grid.front() == 0.0;
  if (has_zero && !boundary_value)
    throw ValidationError(
        "invert_laplace: grid contains t=0 but no boundary value was given");

  const auto weights = binomial_weights(config.avg_depth);
  KernelCurve curve;
  curve.t = config.grid;
  curve.provenance = Provenance::exact_euler;
  curve.value.resize(config.grid.size());
  const std::size_t first = has_zero ? 1 : 0;
  if (has_zero) curve.value[0] = *boundary_value;

  const auto n = static_cast<std::ptrdiff_t>(config.grid.size());
  std::exception_ptr err;
  if (policy == ExecutionPolicy::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(first); i < n; ++i) {
      try {
        curve.value[i] = euler_point(F, config.grid[i], config, weights);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
  } else {
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(first); i < n; ++i)
      curve.value[i] = euler_point(F, config.grid[i], config, weights);
  }
  if (err) std::rethrow_exception(err);
  curve.d = static_cast<int>(curve.value[first].rows());
  return curve;
}

KernelCurve chi_exact_euler(const KernelSpec& kernel,
                            const std::vector<double>& grid,
                            InversionConfig config, ExecutionPolicy policy) {
  if (grid.empty()) throw ValidationError("chi_exact_euler: empty grid");
  if (!kernel.theta_laplace_complex)
    throw ValidationError("chi_exact_euler: kernel '" + kernel.name +
                          "' has no analytic continuation; cannot invert");
  config.grid = grid;
  // Contour nodes pi*k/t must clear the branch points at 2*omega0
  // before binomial averaging can see the oscillation tail.
  const double t_max = grid.back();
  const int needed =
      32 + static_cast<int>(std::ceil(2.0 * kernel.omega0 * t_max /
                                      std::numbers::pi));
  config.nterms = std::max(config.nterms, needed);
  auto F = [&kernel](std::complex<double> s) {
    return chi_laplace_complex(kernel, s);
  };
  KernelCurve curve = invert_laplace(
      F, config, Matrix::Identity(kernel.d, kernel.d), policy);
  curve.source_name = kernel.name;
  return curve;
}

KernelCurve chi_closed_curve(const KernelSpec& kernel,
                             const std::vector<double>& grid) {
  if (!kernel.chi_closed_form)
    throw ValidationError("chi_closed_curve: kernel '" + kernel.name +
                          "' has no closed-form chi");
  KernelCurve curve;
  curve.t = grid;
  curve.provenance = Provenance::closed_form;
  curve.d = kernel.d;
  curve.source_name = kernel.name;
  curve.value.reserve(grid.size());
  for (double t : grid) curve.value.push_back(kernel.chi_closed_form(t));
  return curve;
}

Matrix chi_infinity(const KernelSpec& kernel) {
  Matrix G = kernel.gamma + kernel.m_infinity;
  Eigen::FullPivLU<Matrix> lu(G);
  if (!lu.isInvertible())
    throw ValidationError("no BD limit: gamma + M_infinity is singular for kernel '" +
                          kernel.name + "'");
  return lu.inverse();
}

namespace {

// Nodes and weights of n-point Gauss-Legendre on [-1, 1] by Newton
// iteration on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

Matrix bromwich_gl(const ComplexTransform& F, const Matrix& tail_coeff,
                   double t, double a, double omega_max,
                   const std::vector<double>& refine_points) {
  if (t <= 0.0) throw ValidationError("bromwich_gl: t must be > 0");
  if (a <= 0.0 || omega_max <= 0.0)
    throw ValidationError("bromwich_gl: contour parameters must be positive");

  // Panel edges: unit panels, geometrically refined toward each given
  // interior kink (6 halvings on both sides).
  std::vector<double> edges;
  for (double e = 0.0; e < omega_max; e += 1.0) edges.push_back(e);
  edges.push_back(omega_max);
  for (double r : refine_points) {
    if (r <= 0.0 || r >= omega_max) continue;
    double h = 0.5;
    for (int level = 0; level < 6; ++level, h *= 0.5) {
      edges.push_back(r - h);
      edges.push_back(r + h);
    }
    edges.push_back(r);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double p, double q) { return q - p < 1e-12; }),
              edges.end());

  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);

  Matrix acc = Matrix::Zero(tail_coeff.rows(), tail_coeff.cols());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p], hi = edges[p + 1];
    // Oscillation e^{i w t}: keep >= 8 nodes per period inside a panel.
    const int splits =
        std::max(1, static_cast<int>(std::ceil((hi - lo) * t / 3.0)));
    for (int q = 0; q < splits; ++q) {
      const double slo = lo + (hi - lo) * q / splits;
      const double shi = lo + (hi - lo) * (q + 1) / splits;
      const double sh = 0.5 * (shi - slo), sm = 0.5 * (shi + slo);
      for (int i = 0; i < 16; ++i) {
        const double w = sm + sh * gx[i];
        const std::complex<double> s(a, w);
        const ComplexMatrix g =
            F(s) - tail_coeff.cast<std::complex<double>>() / s;
        const std::complex<double> phase(std::cos(w * t), std::sin(w * t));
        acc += sh * gw[i] * (phase * g).real();
      }
    }
  }
  return tail_coeff + std::exp(a * t) / std::numbers::pi * acc;
}

}  // namespace glebd
