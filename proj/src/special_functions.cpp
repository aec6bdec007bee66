#include "glebd/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "glebd/errors.hpp"

namespace glebd {
namespace {

// Ascending series J1(x) = (x/2) sum_k (-x^2/4)^k / (k! (k+1)!).
// The series alternates; near the switch point the largest term exceeds
// the result by ~1e6, so accumulate in long double to keep the absolute
// error near 1e-13.
double j1_series(double x) {
  const long double xl = x;
  const long double q = -xl * xl / 4.0L;
  long double term = xl / 2.0L;
  long double sum = term;
  for (int k = 1; k <= 80; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-25) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion (DLMF 10.17.3 with nu=1):
//   J1(x) ~ sqrt(2/(pi x)) [P(x) cos(w) - Q(x) sin(w)], w = x - 3pi/4,
// with terms u_m = u_{m-1} (4 - (2m-1)^2) / (8 m x), truncated at the
// smallest term. At the series switch point x=18 the optimal-truncation
// remainder is ~e^{-2x} ~ 2e-16.
double j1_asymptotic(double x) {
  long double u = 1.0L;
  long double P = 1.0L, Q = 0.0L;
  long double prev = 1e30L;
  for (int m = 1; m <= 40; ++m) {
    const long double f = 4.0L - (2.0L * m - 1.0L) * (2.0L * m - 1.0L);
    u *= f / (8.0L * m * static_cast<long double>(x));
    if (std::fabs(static_cast<double>(u)) >= prev) break;
    prev = std::fabs(static_cast<double>(u));
    const int sgn = (m / 2) % 2 == 0 ? 1 : -1;
    if (m % 2 == 0)
      P += sgn * u;
    else
      Q += sgn * u;
    if (prev < 1e-20) break;
  }
  const double w = x - 3.0 * std::numbers::pi / 4.0;
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  return amp * (static_cast<double>(P) * std::cos(w) -
                static_cast<double>(Q) * std::sin(w));
}

}  // namespace

double bessel_j1(double x) {
  if (!std::isfinite(x)) throw ValidationError("bessel_j1: non-finite input");
  const double ax = std::fabs(x);
  const double v = ax <= 18.0 ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -v : v;
}

}  // namespace glebd
