#include "glebd/reduction.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "glebd/errors.hpp"

namespace glebd {

Matrix matrix_exponential(const Matrix& A) {
  // Pade-13 with scaling and squaring (Higham 2005 coefficients).
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const int d = static_cast<int>(A.rows());
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > theta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const Matrix As = A / std::pow(2.0, squarings);
  const Matrix I = Matrix::Identity(d, d);
  const Matrix A2 = As * As;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A2 * A4;
  const Matrix U =
      As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
            b[5] * A4 + b[3] * A2 + b[1] * I);
  const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                   b[4] * A4 + b[2] * A2 + b[0] * I;
  Matrix R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) R = R * R;
  return R;
}

Matrix lyapunov_solve(const Matrix& D, const Matrix& rhs) {
  const int m = static_cast<int>(D.rows());
  Matrix K = Matrix::Zero(m * m, m * m);
  // vec(D X + X D^T) = (I kron D + D kron I) vec(X), column-major vec.
  for (int j = 0; j < m; ++j)
    K.block(j * m, j * m, m, m) += D;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      for (int r = 0; r < m; ++r) K(r + j * m, r + i * m) += D(j, i);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(rhs.data(), m * m);
  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible())
    throw NumericalError("lyapunov_solve: drift has mirrored eigenvalues");
  Eigen::VectorXd x = lu.solve(v);
  Matrix X = Eigen::Map<Matrix>(x.data(), m, m);
  return 0.5 * (X + X.transpose().eval());
}

namespace {

Matrix companion_matrix(const std::vector<Matrix>& B, int n, int d) {
  Matrix D = Matrix::Zero(n * d, n * d);
  for (int i = 1; i < n; ++i)
    D.block(i * d, (i - 1) * d, d, d) = Matrix::Identity(d, d);
  for (int i = 0; i < n; ++i)
    D.block(i * d, (n - 1) * d, d, d) = B[n - 1 - i];
  return D;
}

Matrix input_stack(const std::vector<Matrix>& A, int n, int d) {
  Matrix s = Matrix::Zero(n * d, d);
  for (int i = 0; i < n; ++i) s.block(i * d, 0, d, d) = A[n - 1 - i];
  return s;
}

void check_stability(const Matrix& D, const std::string& what) {
  Eigen::EigenSolver<Matrix> es(D);
  for (int i = 0; i < D.rows(); ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (ev.real() >= 0.0)
      throw NumericalError(what + ": unstable fit, companion eigenvalue (" +
                           std::to_string(ev.real()) + ", " +
                           std::to_string(ev.imag()) + ") not in the open "
                           "left half-plane");
  }
}

// Taylor coefficients x_j of Qd^{-1} P through lambda^{2n-1}; the fit
// must reproduce x_{k+1} = M_k.
std::vector<Matrix> rational_taylor(const RationalApproximation& fit,
                                    int count) {
  const int n = fit.n, d = static_cast<int>(fit.A[0].rows());
  std::vector<Matrix> x(count + 1, Matrix::Zero(d, d));
  for (int j = 1; j <= count; ++j) {
    Matrix acc = Matrix::Zero(d, d);
    if (j <= n) acc = fit.A[j - 1];
    for (int i = 1; i <= std::min(j - 1, n); ++i)
      acc += fit.B[i - 1] * x[j - i];
    x[j] = acc;
  }
  return x;
}

void verify_fit(const RationalApproximation& fit) {
  const int n = fit.n;
  const double scale =
      1.0 + fit.moments.back().cwiseAbs().maxCoeff() +
      fit.chi_inf.cwiseAbs().maxCoeff();
  const auto x = rational_taylor(fit, 2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const double r = (x[k + 1] - fit.moments[k]).cwiseAbs().maxCoeff();
    if (r > 1e-10 * scale)
      throw NumericalError("fit_order: Taylor re-verification failed at "
                           "moment " + std::to_string(k) + ", residual " +
                           std::to_string(r));
  }
  Eigen::FullPivLU<Matrix> lu(fit.B[n - 1]);
  if (!lu.isInvertible())
    throw NumericalError("fit_order: B_{n-1} singular, no lambda->infinity limit");
  const double lim =
      (-lu.solve(fit.A[n - 1]) - fit.chi_inf).cwiseAbs().maxCoeff();
  if (lim > 1e-10 * scale)
    throw NumericalError("fit_order: lambda->infinity limit residual " +
                         std::to_string(lim));
}

}  // namespace

RationalApproximation fit_order(const KernelSpec& kernel, int n) {
  if (n < 1 || n > 3)
    throw ValidationError("fit_order: order must be 1, 2 or 3");
  const int d = kernel.d;
  const Matrix I = Matrix::Identity(d, d);
  RationalApproximation fit;
  fit.n = n;
  fit.kernel = kernel;
  fit.moments = kernel_moments(kernel, n);
  fit.chi_inf = chi_infinity(kernel);
  const Matrix GM = kernel.gamma + kernel.m_infinity;

  if (n == 1) {
    fit.A = {I};
    fit.B = {-GM};
  } else if (n == 2) {
    const Matrix& M1 = fit.moments[1];
    const Matrix& M2 = fit.moments[2];
    Matrix C = M1 + GM;  // B0 C = M2 + M1 GM
    Eigen::FullPivLU<Matrix> lu(C.transpose());
    if (!lu.isInvertible())
      throw ValidationError(
          "fit_order: degenerate order-2 system, M1 + gamma + M_infinity is "
          "singular for kernel '" + kernel.name + "'");
    const Matrix B0 =
        lu.solve((M2 + M1 * GM).transpose()).transpose();
    const Matrix A1 = M1 - B0;
    fit.A = {I, A1};
    fit.B = {B0, -A1 * GM};
  } else {
    // Block system in (B0, B1, B2) with matrices multiplying from the
    // left; unknown X solves sum_i X_i C_i = R_i per condition row:
    //   B0 M2 + B1 M1 + B2 M0      = M3
    //   B0 M3 + B1 M2 + B2 M1      = M4
    //   B0 M1 + B1 M0 - B2 chi_inf = M2
    const auto& M = fit.moments;
    const int dd = d * d;
    Matrix K = Matrix::Zero(3 * dd, 3 * dd);
    Eigen::VectorXd rhs(3 * dd);
    const Matrix rows[3][3] = {{M[2], M[1], M[0]},
                               {M[3], M[2], M[1]},
                               {M[1], M[0], Matrix(-fit.chi_inf)}};
    const Matrix rvec[3] = {M[3], M[4], M[2]};
    for (int r = 0; r < 3; ++r) {
      for (int u = 0; u < 3; ++u) {
        // vec(X C) = (C^T kron I) vec(X), column-major.
        for (int j = 0; j < d; ++j)
          for (int i = 0; i < d; ++i)
            for (int p = 0; p < d; ++p)
              K(r * dd + i + j * d, u * dd + i + p * d) += rows[r][u](p, j);
      }
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) rhs(r * dd + i + j * d) = rvec[r](i, j);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(K);
    if (qr.rank() < 3 * dd)
      throw ValidationError(
          "fit_order: degenerate order-3 moment system for kernel '" +
          kernel.name + "'");
    Eigen::VectorXd sol = qr.solve(rhs);
    std::vector<Matrix> B(3, Matrix::Zero(d, d));
    for (int u = 0; u < 3; ++u)
      B[u] = Eigen::Map<Matrix>(sol.data() + u * dd, d, d);
    const Matrix A1 = M[1] - B[0];
    const Matrix A2 = M[2] - B[0] * M[1] - B[1];
    fit.A = {I, A1, A2};
    fit.B = B;
  }

  verify_fit(fit);
  check_stability(companion_matrix(fit.B, n, d), "fit_order");
  return fit;
}

namespace {

double min_eigenvalue(const Matrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (S + S.transpose().eval()));
  return es.eigenvalues().minCoeff();
}

void require_psd(const Matrix& S, const std::string& what) {
  const double scale = 1.0 + S.cwiseAbs().maxCoeff();
  const double mine = min_eigenvalue(S);
  if (mine < -1e-12 * scale)
    throw NumericalError("build_extended_system: " + what +
                         " is not positive semidefinite, eigenvalue " +
                         std::to_string(mine));
}

// Order-3 completion with block-diagonal Sigma. The last block column
// of Q is fixed by the FDT matching; zeroing the off-diagonal Sigma
// blocks determines the remaining blocks linearly:
//   Q11 = -B2 Q23^T - Q13 B1^T
//   Q12 = -B2 Q33   - Q13 B0^T
//   Q22 = -Q13 - B1 Q33 - Q23 B0^T
// Returns false when the result is asymmetric or indefinite.
bool try_uncorrelated_q3(const ExtendedSystem& sys, const std::vector<Matrix>& A,
                         const std::vector<Matrix>& B, double kBT, int d,
                         Matrix& Q_out, Matrix& Sigma_out) {
  const Matrix Q13 = kBT * A[2];
  const Matrix Q23 = kBT * A[1];
  const Matrix Q33 = kBT * A[0];
  const Matrix Q11 = -B[2] * Q23.transpose() - Q13 * B[1].transpose();
  const Matrix Q12 = -B[2] * Q33 - Q13 * B[0].transpose();
  const Matrix Q22 = -Q13 - B[1] * Q33 - Q23 * B[0].transpose();
  const double scale = 1.0 + Q11.cwiseAbs().maxCoeff() + Q22.cwiseAbs().maxCoeff();
  if ((Q11 - Q11.transpose().eval()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (Q22 - Q22.transpose().eval()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    return false;
  Matrix Q(3 * d, 3 * d);
  Q.block(0, 0, d, d) = 0.5 * (Q11 + Q11.transpose().eval());
  Q.block(0, d, d, d) = Q12;
  Q.block(d, 0, d, d) = Q12.transpose();
  Q.block(d, d, d, d) = 0.5 * (Q22 + Q22.transpose().eval());
  Q.block(0, 2 * d, d, d) = Q13;
  Q.block(2 * d, 0, d, d) = Q13.transpose();
  Q.block(d, 2 * d, d, d) = Q23;
  Q.block(2 * d, d, d, d) = Q23.transpose();
  Q.block(2 * d, 2 * d, d, d) = Q33;
  Matrix Sigma = -(sys.D * Q + Q * sys.D.transpose());
  Sigma = 0.5 * (Sigma + Sigma.transpose().eval());
  const double qscale = 1.0 + Q.cwiseAbs().maxCoeff();
  const double sscale = 1.0 + Sigma.cwiseAbs().maxCoeff();
  if (min_eigenvalue(Q) < -1e-12 * qscale ||
      min_eigenvalue(Sigma) < -1e-10 * sscale)
    return false;
  Q_out = Q;
  Sigma_out = Sigma;
  return true;
}

// Scalar spectral factorization fallback: the noise spectral density
// S(w) = kBT * 2 Re chi_3(iw) = R(iw)/|Dp(iw)|^2 with the even
// polynomial R(s) = kBT [N(s) Dp(-s) + N(-s) Dp(s)], N the numerator
// and Dp the companion characteristic polynomial. Factoring
// R = E(s) E(-s) with E Hurwitz gives a rank-one Sigma = b b^T whose
// Lyapunov solution Q reproduces the FDT matching exactly.
void spectral_q3(const ExtendedSystem& sys, const std::vector<Matrix>& A,
                 const std::vector<Matrix>& B, double kBT, Matrix& Q_out,
                 Matrix& Sigma_out) {
  const int n = 3;
  // Highest-degree-first coefficient lists.
  std::vector<double> N(n), Dp(n + 1);
  for (int i = 0; i < n; ++i) N[i] = A[i](0, 0);
  Dp[0] = 1.0;
  for (int i = 0; i < n; ++i) Dp[i + 1] = -B[i](0, 0);
  auto alternate = [](std::vector<double> c) {
    // p(-s) for highest-first coefficients of degree len-1.
    const int deg = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if ((deg - i) % 2 == 1) c[i] = -c[i];
    return c;
  };
  auto polymul = [](const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };
  const auto Nm = alternate(N);
  const auto Dm = alternate(Dp);
  std::vector<double> R = polymul(N, Dm);
  const auto R2 = polymul(Nm, Dp);
  double rmax = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    R[i] = kBT * (R[i] + R2[i]);
    rmax = std::max(rmax, std::fabs(R[i]));
  }
  while (R.size() > 1 && std::fabs(R.front()) < 1e-12 * rmax)
    R.erase(R.begin());
  const int deg = static_cast<int>(R.size()) - 1;
  if (deg % 2 != 0)
    throw NumericalError("build_extended_system: spectral polynomial not even");

  // R is even: substitute u = s^2 and solve the at-most-quadratic in u.
  std::vector<std::complex<double>> neg_roots;
  const int m = deg / 2;
  std::vector<double> c(m + 1);  // highest-first in u
  for (int i = 0; i <= m; ++i) c[i] = R[2 * i];
  std::vector<std::complex<double>> uroots;
  if (m == 2) {
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(c[1] * c[1] - 4.0 * c[0] * c[2], 0.0));
    uroots = {(-c[1] + disc) / (2.0 * c[0]), (-c[1] - disc) / (2.0 * c[0])};
  } else if (m == 1) {
    uroots = {std::complex<double>(-c[1] / c[0], 0.0)};
  }
  for (const auto& u : uroots) {
    std::complex<double> s = std::sqrt(u);
    if (s.real() > 0.0) s = -s;
    if (s.real() == 0.0)
      throw NumericalError(
          "build_extended_system: spectral factor root on the imaginary "
          "axis; no stable completion");
    neg_roots.push_back(s);
  }
  const double lead =
      R.front() * ((neg_roots.size() % 2 == 0) ? 1.0 : -1.0);
  if (lead <= 0.0)
    throw NumericalError(
        "build_extended_system: spectral density indefinite; no PSD "
        "completion exists");
  // Expand monic prod (s - r) over the Hurwitz half, then scale.
  std::vector<std::complex<double>> e = {1.0};
  for (const auto& r : neg_roots) {
    std::vector<std::complex<double>> nxt(e.size() + 1, 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      nxt[i] += e[i];
      nxt[i + 1] -= e[i] * r;
    }
    e = nxt;
  }
  std::vector<double> E(n, 0.0);  // coefficient of s^i at index i
  const double sl = std::sqrt(lead);
  const int edeg = static_cast<int>(e.size()) - 1;
  for (int i = 0; i <= edeg; ++i) E[edeg - i] = e[i].real() * sl;

  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = E[i];
  Matrix Sigma = b * b.transpose();
  Matrix Q = lyapunov_solve(sys.D, Matrix(-Sigma));
  Q_out = Q;
  Sigma_out = Sigma;
}

}  // namespace

ExtendedSystem build_extended_system(const RationalApproximation& fit,
                                     double kBT) {
  if (kBT <= 0.0)
    throw ValidationError("build_extended_system: kBT must be positive");
  const int n = fit.n, d = static_cast<int>(fit.A[0].rows());
  ExtendedSystem sys;
  sys.n = n;
  sys.d = d;
  sys.kBT = kBT;
  sys.fit = fit;
  sys.source_name = fit.kernel.name + " order-" + std::to_string(n);
  sys.D = companion_matrix(fit.B, n, d);
  sys.stack = input_stack(fit.A, n, d);
  check_stability(sys.D, "build_extended_system");

  if (n == 1) {
    sys.Q = kBT * Matrix::Identity(d, d);
    sys.Sigma = -(sys.D * sys.Q + sys.Q * sys.D.transpose());
  } else if (n == 2) {
    const Matrix Q12 = kBT * fit.A[1];
    const Matrix Q2 = kBT * fit.A[0];
    const Matrix Q1 = kBT * (-fit.A[0].transpose() * fit.B[1].transpose() -
                             fit.B[0] * fit.A[1].transpose());
    Matrix Q(2 * d, 2 * d);
    Q.block(0, 0, d, d) = 0.5 * (Q1 + Q1.transpose().eval());
    Q.block(0, d, d, d) = Q12;
    Q.block(d, 0, d, d) = Q12.transpose();
    Q.block(d, d, d, d) = Q2;
    sys.Q = Q;
    Matrix Sigma = -(sys.D * Q + Q * sys.D.transpose());
    sys.Sigma = 0.5 * (Sigma + Sigma.transpose().eval());
    const double cross = sys.Sigma.block(0, d, d, d).cwiseAbs().maxCoeff();
    if (cross > 1e-12 * (1.0 + sys.Sigma.cwiseAbs().maxCoeff()))
      throw NumericalError(
          "build_extended_system: order-2 cross-block residual " +
          std::to_string(cross));
  } else {
    Matrix Q, Sigma;
    if (try_uncorrelated_q3(sys, fit.A, fit.B, kBT, d, Q, Sigma)) {
      sys.noise_correlated = false;
    } else if (d == 1) {
      spectral_q3(sys, fit.A, fit.B, kBT, Q, Sigma);
      sys.noise_correlated = true;
    } else {
      throw NumericalError(
          "build_extended_system: order-3 completion with block-diagonal "
          "Sigma is infeasible and the correlated fallback covers d=1 only");
    }
    sys.Q = Q;
    sys.Sigma = Sigma;
  }

  require_psd(sys.Q, "Q");
  require_psd(sys.Sigma, "Sigma");
  const Matrix last_col = sys.Q.rightCols(d);
  const double mism = (last_col - kBT * sys.stack).cwiseAbs().maxCoeff();
  if (mism > 1e-9 * (1.0 + sys.stack.cwiseAbs().maxCoeff()) * kBT)
    throw NumericalError(
        "build_extended_system: FDT last-column mismatch " +
        std::to_string(mism));
  return sys;
}

Matrix approx_kernel_eval(const ExtendedSystem& system, double t) {
  if (t < 0.0) throw ValidationError("approx_kernel_eval: t must be >= 0");
  const int d = system.d;
  const Matrix E = matrix_exponential(system.D * t);
  return E.bottomRows(d) * system.stack;
}

KernelCurve approx_kernel_curve(const ExtendedSystem& system,
                                const std::vector<double>& grid) {
  KernelCurve curve;
  curve.t = grid;
  curve.provenance = Provenance::rational;
  curve.order = system.n;
  curve.d = system.d;
  curve.source_name = system.source_name;
  curve.value.reserve(grid.size());
  for (double t : grid) curve.value.push_back(approx_kernel_eval(system, t));
  return curve;
}

FdtReport verify_fdt(const ExtendedSystem& system) {
  FdtReport rep;
  const int d = system.d, n = system.n;
  rep.lyapunov_residual = (system.D * system.Q +
                           system.Q * system.D.transpose() + system.Sigma)
                              .cwiseAbs()
                              .maxCoeff();
  rep.q_min_eig = min_eigenvalue(system.Q);
  rep.sigma_min_eig = min_eigenvalue(system.Sigma);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      rep.sigma_cross_block =
          std::max(rep.sigma_cross_block,
                   system.Sigma.block(i * d, j * d, d, d).cwiseAbs().maxCoeff());
    }
  const Matrix last_col = system.Q.rightCols(d);
  rep.last_column_mismatch =
      (last_col - system.kBT * system.stack).cwiseAbs().maxCoeff();

  // Analytic FDT identity (0..I) e^{D tau} Q (0..I)^T = kBT chi_n(tau)
  // at 20 lags spanning five slowest decay times.
  Eigen::EigenSolver<Matrix> es(system.D);
  double slowest = 1e300;
  for (int i = 0; i < system.D.rows(); ++i)
    slowest = std::min(slowest, -es.eigenvalues()(i).real());
  const double t_max = 5.0 / std::max(slowest, 1e-6);
  for (int j = 1; j <= 20; ++j) {
    const double tau = t_max * j / 20.0;
    const Matrix E = matrix_exponential(system.D * tau);
    const Matrix lhs = E.bottomRows(d) * last_col;
    const Matrix rhs = system.kBT * (E.bottomRows(d) * system.stack);
    rep.analytic_identity_max = std::max(
        rep.analytic_identity_max, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace glebd
