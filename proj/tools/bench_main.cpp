// Wall-clock comparison of the serial and OpenMP execution paths on
// the hot loops (chain ensemble, resolvent inversion, embedded
// ensemble, autocorrelation), with a bitwise identity check since the
// parallel path must reproduce the serial one exactly.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glebd/analysis.hpp"
#include "glebd/kernels.hpp"
#include "glebd/laplace.hpp"
#include "glebd/reduction.hpp"
#include "glebd/simulators.hpp"

namespace {

double seconds(const std::function<void()>& work) {
  const auto start = std::chrono::steady_clock::now();
  work();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial, double openmp, bool identical) {
  std::printf("%-18s serial %8.3fs  openmp %8.3fs  speedup %5.2fx  %s\n",
              name, serial, openmp, serial / openmp,
              identical ? "identical" : "MISMATCH");
}

bool same_series(const glebd::TrajectoryEnsemble& a,
                 const glebd::TrajectoryEnsemble& b) {
  return a.series == b.series;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP timing of the hot loops"};
  int natoms = 2048;
  int ntraj = 16;
  long long steps = 20000;
  app.add_option("--natoms", natoms, "chain length");
  app.add_option("--ntraj", ntraj, "ensemble size");
  app.add_option("--steps", steps, "steps per trajectory");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not compiled in; both columns run serially\n");
#endif

  using glebd::ExecutionPolicy;

  glebd::ChainConfig chain;
  chain.natoms = natoms;
  glebd::SimConfig sim;
  sim.dt = 2e-3;
  sim.steps = steps;
  sim.ntraj = ntraj;
  sim.stride = 10;
  sim.seed = 7;
  glebd::TrajectoryEnsemble chain_serial, chain_openmp;
  const double t1s = seconds([&] {
    sim.policy = ExecutionPolicy::serial;
    chain_serial = glebd::simulate_chain(chain, sim);
  });
  const double t1p = seconds([&] {
    sim.policy = ExecutionPolicy::openmp;
    chain_openmp = glebd::simulate_chain(chain, sim);
  });
  report("chain ensemble", t1s, t1p, same_series(chain_serial, chain_openmp));

  const auto kernel = glebd::adelman_doll_kernel(2.0, 4.0);
  std::vector<double> grid(2001);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 10.0 * i / 2000.0;
  glebd::KernelCurve inv_serial, inv_openmp;
  const double t2s = seconds([&] {
    inv_serial = glebd::chi_exact_euler(kernel, grid, {},
                                        ExecutionPolicy::serial);
  });
  const double t2p = seconds([&] {
    inv_openmp = glebd::chi_exact_euler(kernel, grid, {},
                                        ExecutionPolicy::openmp);
  });
  bool inv_same = inv_serial.t == inv_openmp.t;
  for (std::size_t i = 0; inv_same && i < inv_serial.value.size(); ++i)
    inv_same = inv_serial.value[i] == inv_openmp.value[i];
  report("inversion grid", t2s, t2p, inv_same);

  const auto system = glebd::build_extended_system(
      glebd::fit_order(kernel, 2), 1.0);
  const auto force = glebd::morse_force_field(1.0);
  glebd::SimConfig esim;
  esim.dt = 1e-3;
  esim.steps = steps;
  esim.ntraj = 8 * ntraj;
  esim.stride = 20;
  esim.seed = 8;
  glebd::TrajectoryEnsemble emb_serial, emb_openmp;
  const double t3s = seconds([&] {
    esim.policy = ExecutionPolicy::serial;
    emb_serial = glebd::simulate_embedded(system, force, esim);
  });
  const double t3p = seconds([&] {
    esim.policy = ExecutionPolicy::openmp;
    emb_openmp = glebd::simulate_embedded(system, force, esim);
  });
  report("embedded ensemble", t3s, t3p, same_series(emb_serial, emb_openmp));

  const double span = emb_serial.t.back();
  glebd::CorrelationSeries corr_serial, corr_openmp;
  const double t4s = seconds([&] {
    corr_serial = glebd::autocorrelation(emb_serial, span / 5.0, "x", true,
                                         ExecutionPolicy::serial);
  });
  const double t4p = seconds([&] {
    corr_openmp = glebd::autocorrelation(emb_serial, span / 5.0, "x", true,
                                         ExecutionPolicy::openmp);
  });
  report("autocorrelation", t4s, t4p,
         corr_serial.value == corr_openmp.value);

  const double atom_steps =
      static_cast<double>(natoms) * static_cast<double>(steps) * ntraj;
  std::printf("chain throughput: %.3g atom-steps/s serial, %.3g openmp\n",
              atom_steps / t1s, atom_steps / t1p);
  return 0;
}
