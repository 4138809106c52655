// Benchmark of the OpenMP sweep kernels against their serial reference
// implementations. The reference route recomputes every sample from a dense
// inverse or a dense matrix exponential; the production route uses the
// sigma_min shortcut, factored couplings, and the per-mode closed form for
// diagonal systems, parallelized across the grid.
//
// Usage: bench_sweeps [modes] [grid_points]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "polystab/block.hpp"
#include "polystab/grid.hpp"
#include "polystab/parallel.hpp"
#include "polystab/semigroup.hpp"
#include "polystab/spectral.hpp"
#include "polystab/sweeps.hpp"

using namespace polystab;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double max_rel_diff(const SweepSamples& a, const SweepSamples& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (!a.points[i].finite || !b.points[i].finite) continue;
    const double denom = std::max(std::abs(b.points[i].value), 1e-300);
    worst = std::max(worst, std::abs(a.points[i].value - b.points[i].value) / denom);
  }
  return worst;
}

void report(const char* kernel, double par_ms, double ser_ms, double rel) {
  std::printf("%-24s %10.1f %10.1f %8.2fx   %.2e\n", kernel, par_ms, ser_ms, ser_ms / par_ms,
              rel);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 96;
  const std::size_t points = argc > 2 ? static_cast<std::size_t>(std::atoi(argv[2])) : 48;
  if (n < 2 || points < 4) {
    std::fprintf(stderr, "usage: bench_sweeps [modes >= 2] [grid_points >= 4]\n");
    return 2;
  }

  std::vector<Complex> eigs;
  for (int k = 1; k <= n; ++k) eigs.emplace_back(-std::pow(double(k), -5.0 / 3.0), k);
  DiagonalGenerator gen = DiagonalGenerator::from_eigenvalues(eigs);
  Matrix a = gen.matrix();

  Matrix b = Matrix::Zero(n, 2);
  b(0, 0) = 1.0;
  b(n / 2, 1) = 0.5;
  Matrix c = Matrix::Zero(2, n);
  c(0, 1) = 1.0;
  c(1, n - 1) = 0.25;
  BlockSystem sys = assemble_triangular(a, a, OperatorMatrix{b, "modal"},
                                        OperatorMatrix{c, "modal"});

  const std::vector<double> omegas = logspace(2.0, 0.75 * n, points);
  const std::vector<double> ts = logspace(1.0, std::pow(double(n), 5.0 / 3.0) / 2.0, points);

  std::printf("modes=%d grid=%zu workers=%d\n", n, points, worker_count());
  std::printf("%-24s %10s %10s %9s   %s\n", "kernel", "omp ms", "serial ms", "speedup",
              "max rel diff");

  {
    auto t0 = Clock::now();
    SweepSamples par = resolvent_norm_sweep(a, omegas);
    double par_ms = ms_since(t0);
    t0 = Clock::now();
    SweepSamples ser = reference::resolvent_norm_sweep(a, omegas);
    report("resolvent_norm_sweep", par_ms, ms_since(t0), max_rel_diff(par, ser));
  }
  {
    auto t0 = Clock::now();
    SweepSamples par = decay_curve(a, gen, 1.0, ts);
    double par_ms = ms_since(t0);
    t0 = Clock::now();
    SweepSamples ser = reference::decay_curve(a, 1.0, ts);
    report("decay_curve", par_ms, ms_since(t0), max_rel_diff(par, ser));
  }
  {
    auto t0 = Clock::now();
    SweepSamples par = coupling_growth_product(sys, omegas);
    double par_ms = ms_since(t0);
    t0 = Clock::now();
    SweepSamples ser = reference::coupling_growth_product(sys, omegas);
    report("coupling_growth_product", par_ms, ms_since(t0), max_rel_diff(par, ser));
  }
  return 0;
}
