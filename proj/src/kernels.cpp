#include "glebd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "glebd/errors.hpp"
#include "glebd/special_functions.hpp"

namespace glebd {

double theta_time(double t, double omega0) {
  if (t < 0.0) throw ValidationError("theta_time: t must be >= 0");
  if (omega0 < 0.0) throw ValidationError("theta_time: omega0 must be >= 0");
  if (omega0 == 0.0) return 0.0;
  if (t == 0.0) return omega0 * omega0;
  return omega0 * bessel_j1(2.0 * omega0 * t) / t;
}

double theta_laplace_ad(double s, double omega0) {
  if (omega0 < 0.0) throw ValidationError("theta_laplace_ad: omega0 must be >= 0");
  if (omega0 == 0.0) return 0.0;
  const double root = std::sqrt(s * s + 4.0 * omega0 * omega0);
  // Conjugate pair keeps the denominator a sum of positives either way.
  if (s >= 0.0) return 2.0 * omega0 * omega0 / (root + s);
  return -2.0 * omega0 * omega0 / (root - s);
}

double theta_laplace_chain(double s, double m, double K) {
  if (m <= 0.0 || K <= 0.0)
    throw ValidationError("theta_laplace_chain: m and K must be positive");
  const double root = std::sqrt(s * s + 4.0 * K / m);
  if (s >= 0.0) return 2.0 * K / (root + s);
  return -2.0 * K / (root - s);
}

double morse_force(double x, double a) {
  const double u = -a * x;
  if (u > 350.0)
    throw NumericalError("morse_force: exp overflow at x = " +
                         std::to_string(x));
  const double e = std::exp(u);
  return 2.0 * a * e * (e - 1.0);
}

ForceField morse_force_field(double a) {
  ForceField ff;
  ff.a = a;
  ff.name = "morse(a=" + std::to_string(a) + ")";
  ff.potential = [a](double u) {
    if (-a * u > 350.0)
      throw NumericalError("morse potential: exp overflow");
    const double e = std::exp(-a * u);
    return (e - 1.0) * (e - 1.0);
  };
  ff.force = [a](double x) { return morse_force(x, a); };
  return ff;
}

ForceField zero_force_field() {
  ForceField ff;
  ff.name = "zero";
  ff.potential = [](double) { return 0.0; };
  ff.force = [](double) { return 0.0; };
  return ff;
}

ForceField linear_force_field(double k) {
  ForceField ff;
  ff.name = "linear(k=" + std::to_string(k) + ")";
  ff.potential = [k](double u) { return 0.5 * k * u * u; };
  ff.force = [k](double x) { return -k * x; };
  return ff;
}

namespace {

// lambda^k coefficients of Theta(1/lambda) for the chain kernel:
// (m/2) sum_{n>=1} binom(1/2,n) (4K/m)^n lambda^{2n-1}.
std::vector<Matrix> chain_lambda_coeffs(double K, double m, int max_index) {
  std::vector<Matrix> c(max_index + 1, Matrix::Zero(1, 1));
  double binom = 1.0;  // binom(1/2, n), built up iteratively
  double pow4K = 1.0;
  for (int n = 1; 2 * n - 1 <= max_index; ++n) {
    binom *= (0.5 - (n - 1)) / n;
    pow4K *= 4.0 * K / m;
    c[2 * n - 1](0, 0) = 0.5 * m * binom * pow4K;
  }
  return c;
}

}  // namespace

KernelSpec adelman_doll_kernel(double gamma_scalar, double K, double m) {
  if (K <= 0.0 || m <= 0.0)
    throw ValidationError("adelman_doll_kernel: K and m must be positive");
  if (gamma_scalar < 0.0)
    throw ValidationError("adelman_doll_kernel: gamma must be >= 0");
  KernelSpec k;
  k.d = 1;
  k.gamma = Matrix::Constant(1, 1, gamma_scalar);
  k.omega0 = std::sqrt(K / m);
  k.K = K;
  k.mass = m;
  k.m_infinity = Matrix::Constant(1, 1, std::sqrt(m * K));
  k.name = "ad(gamma=" + std::to_string(gamma_scalar) +
           ",K=" + std::to_string(K) +
           (m != 1.0 ? ",m=" + std::to_string(m) : "") + ")";

  k.theta_laplace = [m, K](double s) {
    return Matrix::Constant(1, 1, theta_laplace_chain(s, m, K));
  };
  k.theta_laplace_complex = [m, K](std::complex<double> s) {
    // Principal sqrt is analytic for Re(s) > 0 (branch points at
    // +-2i*omega0 sit on the imaginary axis); the conjugate form keeps
    // both denominator terms in the right half-plane.
    ComplexMatrix r(1, 1);
    r(0, 0) = 2.0 * K / (std::sqrt(s * s + 4.0 * K / m) + s);
    return r;
  };
  k.theta_lambda = [m, K](double lam) {
    return Matrix::Constant(
        1, 1, 2.0 * K * lam / (1.0 + std::sqrt(1.0 + 4.0 * K * lam * lam / m)));
  };
  const double w = k.omega0;
  k.theta_time = [m, w](double t) {
    return Matrix::Constant(1, 1, m * theta_time(t, w));
  };
  if (gamma_scalar == 0.0 && m == 1.0) {
    k.chi_closed_form = [w](double t) {
      if (t < 0.0) throw ValidationError("chi closed form: t must be >= 0");
      if (t == 0.0) return Matrix::Constant(1, 1, 1.0);
      return Matrix::Constant(1, 1, bessel_j1(2.0 * w * t) / (w * t));
    };
  }
  k.theta_lambda_coeffs = chain_lambda_coeffs(K, m, 7);
  return k;
}

KernelSpec langevin_kernel(double gamma_scalar) {
  if (gamma_scalar < 0.0)
    throw ValidationError("langevin_kernel: gamma must be >= 0");
  KernelSpec k;
  k.d = 1;
  k.gamma = Matrix::Constant(1, 1, gamma_scalar);
  k.m_infinity = Matrix::Zero(1, 1);
  k.name = "langevin(gamma=" + std::to_string(gamma_scalar) + ")";
  k.theta_laplace = [](double) { return Matrix::Zero(1, 1); };
  k.theta_laplace_complex = [](std::complex<double>) {
    return ComplexMatrix::Zero(1, 1).eval();
  };
  k.theta_lambda = [](double) { return Matrix::Zero(1, 1); };
  k.theta_time = [](double) { return Matrix::Zero(1, 1); };
  k.chi_closed_form = [gamma_scalar](double t) {
    return Matrix::Constant(1, 1, std::exp(-gamma_scalar * t));
  };
  k.theta_lambda_coeffs.assign(8, Matrix::Zero(1, 1));
  return k;
}

KernelSpec tabulated_kernel(std::vector<std::pair<double, double>> table,
                            double gamma_scalar, double m_inf) {
  if (table.size() < 2)
    throw ValidationError("tabulated_kernel: need at least two (s, value) rows");
  std::sort(table.begin(), table.end());
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i].first <= table[i - 1].first)
      throw ValidationError("tabulated_kernel: s values must be distinct");
  KernelSpec k;
  k.d = 1;
  k.gamma = Matrix::Constant(1, 1, gamma_scalar);
  k.m_infinity = Matrix::Constant(1, 1, m_inf);
  k.name = "tabulated(" + std::to_string(table.size()) + " rows)";
  const auto lookup = [table = std::move(table)](double s) -> Matrix {
    if (s < table.front().first || s > table.back().first)
      throw ValidationError("tabulated kernel: s = " + std::to_string(s) +
                            " outside tabulated range");
    auto hi = std::lower_bound(
        table.begin(), table.end(), s,
        [](const std::pair<double, double>& row, double v) { return row.first < v; });
    if (hi == table.begin()) return Matrix::Constant(1, 1, hi->second);
    auto lo = hi - 1;
    const double f = (s - lo->first) / (hi->first - lo->first);
    return Matrix::Constant(1, 1, (1.0 - f) * lo->second + f * hi->second);
  };
  k.theta_laplace = lookup;
  k.theta_lambda = [lookup](double lam) {
    if (lam == 0.0) return Matrix::Zero(1, 1).eval();
    return lookup(1.0 / lam);
  };
  return k;
}

KernelSpec block_diag(const KernelSpec& a, const KernelSpec& b) {
  KernelSpec k;
  k.d = a.d + b.d;
  k.gamma = Matrix::Zero(k.d, k.d);
  k.gamma.topLeftCorner(a.d, a.d) = a.gamma;
  k.gamma.bottomRightCorner(b.d, b.d) = b.gamma;
  k.m_infinity = Matrix::Zero(k.d, k.d);
  k.m_infinity.topLeftCorner(a.d, a.d) = a.m_infinity;
  k.m_infinity.bottomRightCorner(b.d, b.d) = b.m_infinity;
  k.name = "blockdiag(" + a.name + "," + b.name + ")";

  auto combine = [da = a.d, db = b.d](const Matrix& ma, const Matrix& mb) {
    Matrix r = Matrix::Zero(da + db, da + db);
    r.topLeftCorner(da, da) = ma;
    r.bottomRightCorner(db, db) = mb;
    return r;
  };
  if (a.theta_laplace && b.theta_laplace)
    k.theta_laplace = [fa = a.theta_laplace, fb = b.theta_laplace,
                       combine](double s) { return combine(fa(s), fb(s)); };
  if (a.theta_laplace_complex && b.theta_laplace_complex)
    k.theta_laplace_complex = [fa = a.theta_laplace_complex,
                               fb = b.theta_laplace_complex, da = a.d,
                               db = b.d](std::complex<double> s) {
      ComplexMatrix r = ComplexMatrix::Zero(da + db, da + db);
      r.topLeftCorner(da, da) = fa(s);
      r.bottomRightCorner(db, db) = fb(s);
      return r;
    };
  if (a.theta_lambda && b.theta_lambda)
    k.theta_lambda = [fa = a.theta_lambda, fb = b.theta_lambda,
                      combine](double lam) { return combine(fa(lam), fb(lam)); };
  if (a.theta_time && b.theta_time)
    k.theta_time = [fa = a.theta_time, fb = b.theta_time,
                    combine](double t) { return combine(fa(t), fb(t)); };
  if (a.chi_closed_form && b.chi_closed_form)
    k.chi_closed_form = [fa = a.chi_closed_form, fb = b.chi_closed_form,
                         combine](double t) { return combine(fa(t), fb(t)); };
  if (!a.theta_lambda_coeffs.empty() && !b.theta_lambda_coeffs.empty()) {
    const std::size_t len =
        std::min(a.theta_lambda_coeffs.size(), b.theta_lambda_coeffs.size());
    for (std::size_t i = 0; i < len; ++i)
      k.theta_lambda_coeffs.push_back(
          combine(a.theta_lambda_coeffs[i], b.theta_lambda_coeffs[i]));
  }
  return k;
}

KernelSpec kernel_from_name(const std::string& text) {
  auto parse_args = [&](std::size_t open) {
    if (text.back() != ')')
      throw ValidationError("kernel name: missing ')': " + text);
    std::vector<double> args;
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        args.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ValidationError("kernel name: bad number '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return args;
  };
  if (text.rfind("ad(", 0) == 0) {
    auto args = parse_args(2);
    if (args.size() == 2) return adelman_doll_kernel(args[0], args[1]);
    if (args.size() == 3) return adelman_doll_kernel(args[0], args[1], args[2]);
    throw ValidationError("kernel name: ad(gamma,K[,m]) takes 2 or 3 arguments");
  }
  if (text.rfind("langevin(", 0) == 0) {
    auto args = parse_args(8);
    if (args.size() == 1) return langevin_kernel(args[0]);
    throw ValidationError("kernel name: langevin(gamma) takes 1 argument");
  }
  throw ValidationError("unknown kernel name: " + text +
                        " (expected ad(gamma,K[,m]) or langevin(gamma))");
}

namespace {

// Series coefficients G_j of G(lambda) = I + lambda gamma +
// lambda Theta(1/lambda); the moments invert that series.
std::vector<Matrix> moments_from_g(const std::vector<Matrix>& G, int count,
                                   int d) {
  std::vector<Matrix> M(count);
  M[0] = Matrix::Identity(d, d);
  for (int p = 1; p < count; ++p) {
    Matrix acc = Matrix::Zero(d, d);
    for (int j = 1; j <= p; ++j) acc += G[j] * M[p - j];
    M[p] = -acc;
  }
  return M;
}

}  // namespace

std::vector<Matrix> kernel_moments(const KernelSpec& kernel, int n) {
  if (n < 1) throw ValidationError("kernel_moments: order must be >= 1");
  if (n > 3) throw ValidationError("kernel_moments: orders beyond 3 unsupported");
  const int count = 2 * n - 1;  // M0..M_{2n-2}
  const int need_theta = count - 2;  // highest lambda index used, -1 if none
  if (static_cast<int>(kernel.theta_lambda_coeffs.size()) > need_theta) {
    std::vector<Matrix> G(count);
    G[0] = Matrix::Identity(kernel.d, kernel.d);
    for (int j = 1; j < count; ++j) {
      G[j] = kernel.theta_lambda_coeffs[j - 1];
      if (j == 1) G[j] += kernel.gamma;
    }
    if (count == 1) return {Matrix::Identity(kernel.d, kernel.d)};
    return moments_from_g(G, count, kernel.d);
  }
  if (n >= 3)
    throw NumericalError(
        "moment precision: finite-difference moments are not accurate enough "
        "for order-3 fits; kernel '" + kernel.name +
        "' lacks closed-form lambda coefficients");
  return kernel_moments_fd(kernel, n);
}

std::vector<Matrix> kernel_moments_fd(const KernelSpec& kernel, int n) {
  if (n < 1) throw ValidationError("kernel_moments_fd: order must be >= 1");
  if (n > 3)
    throw ValidationError("kernel_moments_fd: orders beyond 3 unsupported");
  if (!kernel.theta_lambda)
    throw ValidationError(
        "kernel_moments_fd: kernel '" + kernel.name +
        "' has no Theta(1/lambda) evaluator continued through lambda = 0");
  const int d = kernel.d;
  const int count = 2 * n - 1;
  const Matrix ident = Matrix::Identity(d, d);
  if (count == 1) return {ident};

  auto H = [&](double lam) -> Matrix {
    if (lam == 0.0) return ident;
    Matrix G = ident + lam * kernel.gamma + lam * kernel.theta_lambda(lam);
    return G.partialPivLu().solve(ident);
  };

  // O(h^2) central stencils for derivatives 1..4, then two Richardson
  // levels over h, h/2, h/4.
  std::map<double, Matrix> cache;
  auto Hc = [&](double lam) -> const Matrix& {
    auto it = cache.find(lam);
    if (it == cache.end()) it = cache.emplace(lam, H(lam)).first;
    return it->second;
  };
  auto stencil = [&](int k, double h) -> Matrix {
    switch (k) {
      case 1:
        return (Hc(h) - Hc(-h)) / (2.0 * h);
      case 2:
        return (Hc(h) - 2.0 * ident + Hc(-h)) / (h * h);
      case 3:
        return (Hc(2 * h) - 2.0 * Hc(h) + 2.0 * Hc(-h) - Hc(-2 * h)) /
               (2.0 * h * h * h);
      case 4:
        return (Hc(2 * h) - 4.0 * Hc(h) + 6.0 * ident - 4.0 * Hc(-h) +
                Hc(-2 * h)) /
               (h * h * h * h);
      default:
        throw ValidationError("kernel_moments_fd: derivative order");
    }
  };

  const double h0 = 1e-2;
  std::vector<Matrix> M(count);
  M[0] = ident;
  double factorial = 1.0;
  for (int k = 1; k < count; ++k) {
    factorial *= k;
    Matrix d0 = stencil(k, h0);
    Matrix d1 = stencil(k, h0 / 2.0);
    Matrix d2 = stencil(k, h0 / 4.0);
    Matrix r1a = (4.0 * d1 - d0) / 3.0;
    Matrix r1b = (4.0 * d2 - d1) / 3.0;
    Matrix r2 = (16.0 * r1b - r1a) / 15.0;
    if (!r2.allFinite())
      throw NumericalError("moment precision: finite-difference moment " +
                           std::to_string(k) + " is not finite");
    M[k] = r2 / factorial;
  }
  return M;
}

}  // namespace glebd
