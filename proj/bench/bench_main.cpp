// Timing comparison between the OpenMP kernels and their serial reference
// implementations. Run with no arguments for the default sizes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rsl/orbits.hpp"
#include "rsl/rmt.hpp"
#include "rsl/zeros.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_once(F&& f) {
  double t0 = now_seconds();
  f();
  return now_seconds() - t0;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx\n", name,
              serial, parallel, parallel > 0.0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  double emax = 200.0;
  int rmt_n = 80;
  std::int64_t rmt_samples = 40;
  if (argc > 1) emax = std::stod(argv[1]);
  if (argc > 2) rmt_n = std::stoi(argv[2]);
  if (argc > 3) rmt_samples = std::stoll(argv[3]);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run the same serial code\n");
#endif

  {
    rsl::ZeroSearchOptions opts;
    std::vector<double> out;
    double ts = time_once([&] { out = rsl::find_zeros_serial(emax, opts).gammas; });
    std::size_t n_serial = out.size();
    double tp = time_once([&] { out = rsl::find_zeros(emax, opts).gammas; });
    if (out.size() != n_serial)
      std::printf("warning: zero counts differ (%zu serial, %zu parallel)\n",
                  n_serial, out.size());
    report("zero search", ts, tp);
  }

  {
    std::vector<double> grid;
    for (double e = 2.0; e <= 60.0; e += 0.002) grid.push_back(e);
    rsl::TruncationSpec trunc = rsl::TruncationSpec::rectangular(20000, 0, 3);
    std::vector<double> vs, vp;
    double ts = time_once([&] { vs = rsl::nosc_grid_serial(grid, trunc); });
    double tp = time_once([&] { vp = rsl::nosc_grid(grid, trunc, 0); });
    double worst = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      worst = std::max(worst, std::fabs(vs[i] - vp[i]));
    if (worst != 0.0)
      std::printf("warning: orbit-sum grids differ by up to %g\n", worst);
    report("prime orbit sum grid", ts, tp);
  }

  {
    rsl::EnsembleSpec spec;
    spec.ensemble = rsl::EnsembleClass::class_c;
    spec.base_dim = rmt_n;
    spec.seed = 42;
    std::vector<rsl::SpectrumSample> bs, bp;
    double ts = time_once([&] { bs = rsl::sample_batch_serial(spec, rmt_samples); });
    double tp = time_once([&] { bp = rsl::sample_batch(spec, rmt_samples, 0); });
    double worst = 0.0;
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t k = 0; k < bs[i].eigenvalues.size(); ++k)
        worst = std::max(worst,
                         std::fabs(bs[i].eigenvalues[k] - bp[i].eigenvalues[k]));
    if (worst != 0.0)
      std::printf("warning: ensemble batches differ by up to %g\n", worst);
    report("random-matrix batch", ts, tp);
  }

  return 0;
}
