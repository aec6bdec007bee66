#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glebd/kernels.hpp"
#include "glebd/types.hpp"

namespace glebd {

// Euler-summation inversion parameters. The contour parameter a_param
// sets the aliasing floor e^{-a} (~7.6e-10 at 21) and the roundoff
// amplification e^{a/2}; 32 terms with 15 averaged suffice for
// transforms that decay along the contour. Oscillatory kernels need
// the contour nodes pi*k/t to pass the top oscillation frequency, so
// curve builders scale nterms with t_max (see chi_exact_euler).
struct InversionConfig {
  int nterms = 32;
  int avg_depth = 15;
  double a_param = 21.0;
  std::vector<double> grid;
  std::string precision_note =
      "IEEE double; error floor ~ e^{-a_param} + eps * e^{a_param/2}";
};

enum class Provenance { exact_euler, closed_form, rational };

struct KernelCurve {
  std::vector<double> t;
  std::vector<Matrix> value;
  Provenance provenance = Provenance::exact_euler;
  int order = 0;  // meaningful for rational curves only
  int d = 1;
  std::string source_name;
};

// "exact-euler", "closed-form" or "rational-order-n".
std::string provenance_tag(const KernelCurve& curve);

using ComplexTransform =
    std::function<ComplexMatrix(std::complex<double>)>;

// Resolvent X(s) = [sI + gamma + Theta(s)]^{-1}, s >= 0.
Matrix chi_laplace(const KernelSpec& kernel, double s);
// Same through the kernel's analytic continuation (Re s > 0).
ComplexMatrix chi_laplace_complex(const KernelSpec& kernel,
                                  std::complex<double> s);

// Abate-Whitt Euler-summation inversion of F on config.grid. Grid
// values must be >= 0 and strictly increasing; a t=0 entry is filled
// from boundary_value (inversion formulas degrade at t=0), which is
// required in that case.
KernelCurve invert_laplace(const ComplexTransform& F,
                           const InversionConfig& config,
                           std::optional<Matrix> boundary_value = std::nullopt,
                           ExecutionPolicy policy = ExecutionPolicy::serial);

// Inverts the kernel's resolvent on the grid with nterms raised to
// keep contour nodes past the kernel's branch points (2*omega0), and
// chi(0) = I supplied as the boundary value.
KernelCurve chi_exact_euler(const KernelSpec& kernel,
                            const std::vector<double>& grid,
                            InversionConfig config = {},
                            ExecutionPolicy policy = ExecutionPolicy::serial);

// chi(t) from the kernel's closed form, when it has one.
KernelCurve chi_closed_curve(const KernelSpec& kernel,
                             const std::vector<double>& grid);

// (gamma + M_infinity)^{-1}; throws when the kernel has no BD limit.
Matrix chi_infinity(const KernelSpec& kernel);

// Secondary inversion route used to cross-validate exact-euler curves:
// Gauss-Legendre panels on the shifted Bromwich line s = a + i*omega,
// with the tail_coeff/s asymptotic subtracted analytically (its
// inverse transform, tail_coeff, is added back). Panel edges refine
// geometrically toward refine_points, where the integrand loses
// smoothness (kernel branch points).
Matrix bromwich_gl(const ComplexTransform& F, const Matrix& tail_coeff,
                   double t, double a, double omega_max,
                   const std::vector<double>& refine_points);

}  // namespace glebd
