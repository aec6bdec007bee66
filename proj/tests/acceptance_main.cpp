// Acceptance gate: ten end-to-end checks with pinned tolerances and
// runtime budgets, one PASS/FAIL line each. Exit code is the number
// of failed checks. Statistical checks use fixed seeds chosen up
// front; their bands are genuine standard-error bands, not tuned
// allowances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "glebd/analysis.hpp"
#include "glebd/errors.hpp"
#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/presets.hpp"
#include "glebd/reduction.hpp"
#include "glebd/simulators.hpp"

using namespace glebd;

namespace {

struct Scenario {
  double gamma;
  double K;
};

const Scenario kScenarios[] = {{2.0, 4.0}, {2.0, 0.2}, {0.0, 4.0},
                               {0.0, 0.2}};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int g_failures = 0;

void report(int index, bool pass, const std::string& what,
            const std::string& detail, double seconds) {
  if (!pass) ++g_failures;
  std::printf("criterion %2d: %s - %s (%s; %.2f s)\n", index,
              pass ? "PASS" : "FAIL", what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

void report_error(int index, const std::string& what, const std::string& err,
                  double seconds) {
  ++g_failures;
  std::printf("criterion %2d: FAIL - %s (exception: %s; %.2f s)\n", index,
              what.c_str(), err.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------
// 1. Reduction coefficients against closed forms: order 1 on every
//    scenario, the full order-2 set at (gamma, K) = (2, 4).
//    Tolerance 1e-12, budget 1 s.
void criterion_1() {
  Stopwatch timer;
  const std::string what = "rational fit coefficients match closed forms";
  try {
    double dev = 0.0;
    for (const auto& sc : kScenarios) {
      const auto fit = fit_order(adelman_doll_kernel(sc.gamma, sc.K), 1);
      dev = std::max(dev, std::fabs(fit.A[0](0, 0) - 1.0));
      dev = std::max(dev,
                     std::fabs(fit.B[0](0, 0) + sc.gamma + std::sqrt(sc.K)));
    }
    const auto fit2 = fit_order(adelman_doll_kernel(2.0, 4.0), 2);
    const double expected[4] = {1.0, 2.0, -4.0, -8.0};
    dev = std::max(dev, std::fabs(fit2.A[0](0, 0) - expected[0]));
    dev = std::max(dev, std::fabs(fit2.A[1](0, 0) - expected[1]));
    dev = std::max(dev, std::fabs(fit2.B[0](0, 0) - expected[2]));
    dev = std::max(dev, std::fabs(fit2.B[1](0, 0) - expected[3]));
    const double t = timer.seconds();
    report(1, dev <= 1e-12 && t < 1.0, what,
           "max deviation " + fmt(dev) + ", tolerance 1e-12", t);
  } catch (const std::exception& e) {
    report_error(1, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 2. Noise construction: Lyapunov residual, positive semidefinite Q
//    and Sigma, the cross-block identity -Q2 B1 = Q1 + B0 Q12, and
//    the exact-autocovariance identity at 20 lags. Orders 1 and 2 on
//    all scenarios, budget 1 s.
void criterion_2() {
  Stopwatch timer;
  const std::string what = "noise construction identities hold";
  try {
    double lyap = 0.0, min_eig = 0.0, cross = 0.0, identity = 0.0;
    for (const auto& sc : kScenarios)
      for (int n : {1, 2}) {
        const auto sys = build_extended_system(
            fit_order(adelman_doll_kernel(sc.gamma, sc.K), n), 1.0);
        const auto rep = verify_fdt(sys);
        lyap = std::max(lyap, rep.lyapunov_residual);
        min_eig = std::min(min_eig, std::min(rep.q_min_eig,
                                             rep.sigma_min_eig));
        identity = std::max(identity, rep.analytic_identity_max);
        if (n == 2) {
          const int d = sys.d;
          const Matrix Q1 = sys.Q.block(0, 0, d, d);
          const Matrix Q12 = sys.Q.block(0, d, d, d);
          const Matrix Q2 = sys.Q.block(d, d, d, d);
          cross = std::max(
              cross, max_abs(-Q2 * sys.fit.B[1] -
                             (Q1 + sys.fit.B[0] * Q12)));
        }
      }
    const bool pass = lyap <= 1e-12 && min_eig >= -1e-10 && cross <= 1e-12 &&
                      identity <= 1e-10;
    const double t = timer.seconds();
    report(2, pass && t < 1.0, what,
           "lyapunov " + fmt(lyap) + ", min eig " + fmt(min_eig) +
               ", cross-block " + fmt(cross) + ", autocov identity " +
               fmt(identity),
           t);
  } catch (const std::exception& e) {
    report_error(2, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 3. Contour inversion against the undamped closed form
//    J1(2 w0 t)/(w0 t): 200 points on [0, 20], K in {4, 0.2},
//    max error 1e-6, budget 5 s.
void criterion_3() {
  Stopwatch timer;
  const std::string what = "numerical inversion matches the closed form";
  try {
    std::vector<double> grid(200);
    for (int i = 0; i < 200; ++i) grid[i] = 20.0 * i / 199.0;
    double dev = 0.0;
    for (double K : {4.0, 0.2}) {
      const auto kernel = adelman_doll_kernel(0.0, K);
      const auto euler = chi_exact_euler(kernel, grid);
      const auto closed = chi_closed_curve(kernel, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        dev = std::max(dev, std::fabs(euler.value[i](0, 0) -
                                      closed.value[i](0, 0)));
    }
    const double t = timer.seconds();
    report(3, dev <= 1e-6 && t < 5.0, what,
           "max error " + fmt(dev) + ", tolerance 1e-6", t);
  } catch (const std::exception& e) {
    report_error(3, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 4. Mobility identity: the time integral of every reduced kernel
//    equals 0.25 at (gamma, K) = (2, 4) within 1e-6 for orders 1-3.
//    Simpson quadrature, step 1e-3, horizon 40 (tail below 1e-17).
void criterion_4() {
  Stopwatch timer;
  const std::string what = "reduced kernels integrate to the mobility";
  try {
    double dev = 0.0;
    for (int n : {1, 2, 3}) {
      const auto sys = build_extended_system(
          fit_order(adelman_doll_kernel(2.0, 4.0), n), 1.0);
      const double h = 1e-3;
      const long long nsteps = 40000;  // even, horizon 40
      const Matrix step = matrix_exponential(h * sys.D);
      Matrix v = sys.stack;
      const int nd = sys.n * sys.d;
      double integral = v(nd - 1, 0);
      for (long long k = 1; k <= nsteps; ++k) {
        v = step * v;
        const double w = (k == nsteps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        integral += w * v(nd - 1, 0);
      }
      integral *= h / 3.0;
      dev = std::max(dev, std::fabs(integral - 0.25));
    }
    const double t = timer.seconds();
    report(4, dev <= 1e-6, what,
           "max |integral - 0.25| = " + fmt(dev) + ", tolerance 1e-6", t);
  } catch (const std::exception& e) {
    report_error(4, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 5. Short-time structure of the order-2 kernel: one-sided finite
//    differences at 0 give chi'(0) = -gamma and chi''(0) = gamma^2 - K
//    within 1e-4 on every scenario. Step 5e-4 with second-order
//    stencils keeps the truncation error near 1e-5.
void criterion_5() {
  Stopwatch timer;
  const std::string what = "order-2 kernel derivatives at zero";
  try {
    double dev1 = 0.0, dev2 = 0.0;
    for (const auto& sc : kScenarios) {
      const auto sys = build_extended_system(
          fit_order(adelman_doll_kernel(sc.gamma, sc.K), 2), 1.0);
      const double h = 5e-4;
      double f[4];
      for (int j = 0; j < 4; ++j)
        f[j] = approx_kernel_eval(sys, h * j)(0, 0);
      const double d1 = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
      const double d2 =
          (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
      dev1 = std::max(dev1, std::fabs(d1 + sc.gamma));
      dev2 = std::max(dev2, std::fabs(d2 - (sc.gamma * sc.gamma - sc.K)));
    }
    const double t = timer.seconds();
    report(5, dev1 <= 1e-4 && dev2 <= 1e-4, what,
           "max |chi'(0)+gamma| = " + fmt(dev1) +
               ", max |chi''(0)-(gamma^2-K)| = " + fmt(dev2) +
               ", tolerance 1e-4",
           t);
  } catch (const std::exception& e) {
    report_error(5, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 6. Sampled noise statistics: force-free embedded ensembles of
//    2e4 trajectories (dt 1e-3, T 10) reproduce kBT chi_n within
//    3 standard-error bands at 50 lags, and the two-time covariance
//    is shift invariant within 3 combined standard errors. Budget
//    10 min. Systems: order 1 and 2 at (2, 4), order 2 at (0, 0.2).
void criterion_6() {
  Stopwatch timer;
  const std::string what = "sampled noise matches its target covariance";
  try {
    struct Case {
      double gamma, K;
      int n;
      std::uint64_t seed;
    };
    const Case cases[] = {{2.0, 4.0, 1, 61}, {2.0, 4.0, 2, 62},
                          {0.0, 0.2, 2, 63}};
    double max_band_ratio = 0.0;  // |deviation| / (3 stderr), max over lags
    double max_shift_ratio = 0.0;
    bool pass = true;
    for (const auto& c : cases) {
      const auto sys = build_extended_system(
          fit_order(adelman_doll_kernel(c.gamma, c.K), c.n), 1.0);
      SimConfig sim;
      sim.dt = 1e-3;
      sim.steps = 10000;
      sim.stride = 40;
      sim.ntraj = 20000;
      sim.seed = c.seed;
      sim.channels = {"w"};
      sim.policy = ExecutionPolicy::openmp;
      const auto ens = simulate_embedded(sys, zero_force_field(), sim);

      const auto corr = autocorrelation(ens, 1.96, "w", false,
                                        ExecutionPolicy::openmp);
      if (corr.lag.size() != 50)
        throw NumericalError("expected 50 lags, got " +
                             std::to_string(corr.lag.size()));
      for (std::size_t i = 0; i < corr.lag.size(); ++i) {
        const double target =
            sys.kBT * approx_kernel_eval(sys, corr.lag[i])(0, 0);
        const double band = 3.0 * corr.std_error[i];
        const double ratio = std::fabs(corr.value[i] - target) /
                             (band > 0.0 ? band : 1e-300);
        max_band_ratio = std::max(max_band_ratio, ratio);
        if (ratio > 1.0) pass = false;
      }

      // Shift invariance: ensemble covariance at lag 0.52 from two
      // origins 5 time units apart.
      const auto& w = ens.channel("w");
      const std::size_t off = 13;  // 0.52 on the 0.04 record grid
      const std::size_t origins[2] = {63, 188};  // t = 2.52 and 7.52
      double mean[2], se[2];
      for (int o = 0; o < 2; ++o) {
        double m = 0.0;
        for (const auto& traj : w)
          m += traj[origins[o]] * traj[origins[o] + off];
        m /= static_cast<double>(w.size());
        double s2 = 0.0;
        for (const auto& traj : w) {
          const double dv = traj[origins[o]] * traj[origins[o] + off] - m;
          s2 += dv * dv;
        }
        mean[o] = m;
        se[o] = std::sqrt(s2 / (w.size() - 1) / w.size());
      }
      const double band = 3.0 * std::hypot(se[0], se[1]);
      const double ratio = std::fabs(mean[0] - mean[1]) / band;
      max_shift_ratio = std::max(max_shift_ratio, ratio);
      if (ratio > 1.0) pass = false;
    }
    const double t = timer.seconds();
    report(6, pass && t <= 600.0, what,
           "max deviation " + fmt(max_band_ratio) +
               " of the 3-sigma band, shift test " + fmt(max_shift_ratio) +
               " of its band",
           t);
  } catch (const std::exception& e) {
    report_error(6, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 7. Chain equipartition: N = 1024, gamma = 2, K = 4, kBT = 1; the
//    contact-atom velocity variance is 1 within 2%. Budget 5 min.
void criterion_7() {
  Stopwatch timer;
  const std::string what = "chain velocity variance equals kBT/m within 2%";
  try {
    ChainConfig chain;
    chain.natoms = 1024;
    chain.gamma = 2.0;
    chain.K = 4.0;
    chain.kBT = 1.0;
    SimConfig sim;
    sim.dt = 2e-3;
    sim.burnin = 5000;
    sim.steps = 55000;  // 100 time units after a 10 unit burn-in
    sim.stride = 25;
    sim.ntraj = 256;
    sim.seed = 70;
    sim.channels = {"v"};
    sim.policy = ExecutionPolicy::openmp;
    const auto ens = simulate_chain(chain, sim);
    const auto stats = equilibrium_stats(ens);
    const double var = stats.channels[0].variance;
    const double se = stats.channels[0].variance_std_error;
    const double t = timer.seconds();
    report(7, std::fabs(var - 1.0) <= 0.02 && t <= 300.0, what,
           "measured " + fmt(var) + " +/- " + fmt(se) + ", tolerance 0.02",
           t);
  } catch (const std::exception& e) {
    report_error(7, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 8. Figure-regime properties from the full preset suite at desk
//    scale, which must finish within 30 min: (a) chain and memoryless
//    models agree at (2, 4) to relative L2 0.15 over [0, 10]; (b) at
//    (0, 0.2) the chain correlation crosses zero while the memoryless
//    one does not, and error(bd) > error(order 1) > error(order 2).
void criterion_8() {
  Stopwatch timer;
  const std::string what = "preset suite reproduces the regime properties";
  try {
    ExperimentConfig config;
    config.outdir = "acceptance_out/presets";
    const auto result = run_preset("all", config);
    const double t = timer.seconds();

    const auto metric = [&](const std::string& key) {
      const auto it = result.metrics.find(key);
      if (it == result.metrics.end())
        throw NumericalError("missing metric " + key);
      return it->second;
    };
    const auto flag = [&](const std::string& key) {
      const auto it = result.flags.find(key);
      if (it == result.flags.end())
        throw NumericalError("missing flag " + key);
      return it->second;
    };

    const double agree = metric("fig1.error_bd");
    const bool chain_crosses = flag("fig7.K02.full_crosses_zero");
    const bool bd_crosses = flag("fig7.K02.bd_crosses_zero");
    const double eb = metric("fig7.K02.error_bd");
    const double e1 = metric("fig7.K02.error_n1");
    const double e2 = metric("fig7.K02.error_n2");
    const bool ordering = eb > e1 && e1 > e2;

    const bool pass = agree <= 0.15 && chain_crosses && !bd_crosses &&
                      ordering && t <= 1800.0;
    std::ostringstream detail;
    detail << "chain-vs-bd L2 " << fmt(agree)
           << " (tolerance 0.15); crossings chain=" << chain_crosses
           << " bd=" << bd_crosses << "; errors bd/n1/n2 " << fmt(eb) << "/"
           << fmt(e1) << "/" << fmt(e2);
    report(8, pass, what, detail.str(), t);
  } catch (const std::exception& e) {
    report_error(8, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 9. Kernel accuracy is strictly monotone in the order on every
//    scenario: L2 error against the inverted kernel over [0, 10]
//    decreases from order 1 to 2 to 3.
void criterion_9() {
  Stopwatch timer;
  const std::string what = "kernel error strictly decreases with the order";
  try {
    bool pass = true;
    std::ostringstream detail;
    std::vector<double> grid(501);
    for (int i = 0; i <= 500; ++i) grid[i] = 10.0 * i / 500.0;
    bool first_scenario = true;
    for (const auto& sc : kScenarios) {
      const auto kernel = adelman_doll_kernel(sc.gamma, sc.K);
      const auto exact = chi_exact_euler(kernel, grid);
      double prev = 0.0;
      if (!first_scenario) detail << "; ";
      first_scenario = false;
      detail << "(" << fmt(sc.gamma) << "," << fmt(sc.K) << "):";
      for (int n : {1, 2, 3}) {
        const auto sys =
            build_extended_system(fit_order(kernel, n), 1.0);
        const double err =
            kernel_error(exact, approx_kernel_curve(sys, grid), 10.0);
        detail << " " << fmt(err);
        if (n > 1 && err >= prev) pass = false;
        prev = err;
      }
    }
    report(9, pass, what, detail.str(), timer.seconds());
  } catch (const std::exception& e) {
    report_error(9, what, e.what(), timer.seconds());
  }
}

// ---------------------------------------------------------------
// 10. Determinism: rerunning a preset with an identical configuration
//     and seed yields identical numeric columns (comment headers may
//     differ by output directory).
void criterion_10() {
  Stopwatch timer;
  const std::string what = "identical rerun produces identical numbers";
  try {
    ExperimentConfig config;
    config.models = "bd,n1";
    config.reduced_ensemble = 512;
    config.bd_burnin_time = 10.0;
    config.bd_run_time = 50.0;
    config.embedded_burnin_time = 10.0;
    config.embedded_run_time = 50.0;
    config.max_lag = 5.0;
    config.horizon = 5.0;

    auto run_into = [&](const std::string& dir) {
      ExperimentConfig c = config;
      c.outdir = dir;
      return run_preset("custom", c);
    };
    const auto first = run_into("acceptance_out/rerun1");
    const auto second = run_into("acceptance_out/rerun2");

    bool pass = first.metrics.size() == second.metrics.size() &&
                first.files.size() == second.files.size();
    for (const auto& [key, value] : first.metrics) {
      const auto it = second.metrics.find(key);
      if (it == second.metrics.end() || it->second != value) pass = false;
    }
    // Numeric columns byte for byte, skipping metadata comments.
    std::size_t compared = 0;
    for (std::size_t i = 0; pass && i < first.files.size(); ++i) {
      if (first.files[i].size() < 4 ||
          first.files[i].substr(first.files[i].size() - 4) != ".csv")
        continue;
      const auto strip = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ValidationError("cannot reopen " + path);
        std::ostringstream kept;
        std::string line;
        while (std::getline(in, line))
          if (line.empty() || line[0] != '#') kept << line << '\n';
        return kept.str();
      };
      ++compared;
      if (strip(first.files[i]) != strip(second.files[i])) pass = false;
    }
    pass = pass && compared > 0;
    const double t = timer.seconds();
    report(10, pass, what,
           std::to_string(compared) + " csv files compared byte-exact", t);
  } catch (const std::exception& e) {
    report_error(10, what, e.what(), timer.seconds());
  }
}

}  // namespace

int main() {
  std::filesystem::create_directories("acceptance_out");
  Stopwatch total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed (total %.1f s)\n", 10 - g_failures,
              total.seconds());
  return g_failures;
}
