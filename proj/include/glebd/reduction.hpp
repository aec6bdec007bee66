#pragma once

#include <string>
#include <vector>

#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/types.hpp"

namespace glebd {

// Order-n rational approximation of the resolvent in lambda = 1/s:
//   X(lambda) ~= Qd(lambda)^{-1} P(lambda),
//   P = A0 lambda + ... + A_{n-1} lambda^n,
//   Qd = I - B0 lambda - ... - B_{n-1} lambda^n.
// The B blocks left-multiply moments in every matching equation.
struct RationalApproximation {
  int n = 1;
  std::vector<Matrix> A;        // A0..A_{n-1}
  std::vector<Matrix> B;        // B0..B_{n-1}
  std::vector<Matrix> moments;  // matched M0..M_{2n-2}
  Matrix chi_inf;
  KernelSpec kernel;
};

// Markovian embedding of the rational kernel: auxiliary state
// (z_{n-1}, ..., z_1, z) with companion drift D (identity blocks on the
// subdiagonal, B_{n-1-i} in the last block column of row i), input
// stack (A_{n-1}; ...; A0) multiplying the force, white-noise
// covariance Sigma and stationary/initial covariance Q. The observed
// noise channel is the last block; its autocovariance is
// kBT * chi_n(tau) exactly.
struct ExtendedSystem {
  int n = 1;
  int d = 1;
  Matrix D;
  Matrix stack;
  Matrix Sigma;
  Matrix Q;
  double kBT = 1.0;
  // Order-3 systems first try the completion with block-diagonal
  // Sigma; when that is infeasible or indefinite this flag marks the
  // spectral-factorization fallback whose noise is sampled jointly.
  bool noise_correlated = false;
  RationalApproximation fit;
  std::string source_name;
};

struct FdtReport {
  double lyapunov_residual = 0.0;    // ||D Q + Q D^T + Sigma||
  double q_min_eig = 0.0;
  double sigma_min_eig = 0.0;
  double sigma_cross_block = 0.0;    // largest off-diagonal block of Sigma
  double last_column_mismatch = 0.0; // ||Q (0..I)^T - kBT stack||
  double analytic_identity_max = 0.0;  // over 20 lags
};

// Moment-matched fit of order n in {1,2,3}. n=1 is the closed form
// A=I, B=-(gamma+M_inf); n=2 follows the substitution chain
// A0=I, B0 (M1+gamma+M_inf) = M2 + M1 (gamma+M_inf), A1=M1-B0,
// B1=-A1 (gamma+M_inf); n=3 solves the six matching conditions as one
// block linear system. Every fit is re-verified against its matching
// conditions and the companion spectrum is required to be strictly
// stable.
RationalApproximation fit_order(const KernelSpec& kernel, int n);

// FDT-consistent noise construction for the embedding.
ExtendedSystem build_extended_system(const RationalApproximation& fit,
                                     double kBT);

// chi_n(t) = (0 ... I) e^{Dt} stack.
Matrix approx_kernel_eval(const ExtendedSystem& system, double t);
KernelCurve approx_kernel_curve(const ExtendedSystem& system,
                                const std::vector<double>& grid);

FdtReport verify_fdt(const ExtendedSystem& system);

// Scaling-and-squaring Pade-13 matrix exponential.
Matrix matrix_exponential(const Matrix& A);

// Solves D X + X D^T = rhs (D Hurwitz for the uses here) by Kronecker
// vectorization; sizes stay tiny (n*d <= 3 in this project).
Matrix lyapunov_solve(const Matrix& D, const Matrix& rhs);

}  // namespace glebd
