#include "rsl/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rsl/kahan.hpp"
#include "rsl/lfunc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsl {

namespace {

constexpr double pi = std::numbers::pi;

void validate_common(const TruncationSpec& t) {
  if (t.prime_cutoff < 2)
    throw std::invalid_argument("TruncationSpec: prime_cutoff must be >= 2");
}

}  // namespace

TruncationSpec TruncationSpec::rectangular(std::int64_t prime_cutoff, int k_cutoff,
                                           int rep_cutoff) {
  TruncationSpec t;
  t.prime_cutoff = prime_cutoff;
  t.k_cutoff = k_cutoff;
  t.rep_cutoff = rep_cutoff;
  t.closed = false;
  t.n_max = 0;
  validate_common(t);
  if (k_cutoff < 0) throw std::invalid_argument("TruncationSpec: k_cutoff must be >= 0");
  if (rep_cutoff < 1) throw std::invalid_argument("TruncationSpec: rep_cutoff must be >= 1");
  return t;
}

TruncationSpec TruncationSpec::closed_set(std::int64_t prime_cutoff, std::int64_t n_max) {
  TruncationSpec t;
  t.prime_cutoff = prime_cutoff;
  t.closed = true;
  t.n_max = n_max;
  validate_common(t);
  if (n_max < 1) throw std::invalid_argument("TruncationSpec: n_max must be >= 1");
  int k = 0;
  while ((std::int64_t{1} << (k + 1)) <= n_max) ++k;
  t.k_cutoff = k;
  t.rep_cutoff = static_cast<int>(std::min<std::int64_t>(n_max, 1 << 30));
  return t;
}

namespace {

// Core of the prime sum, shared by the scalar entry point and the grid
// kernels so regrouping tests see identical arithmetic everywhere.
double nosc_at(double E, const std::vector<std::int64_t>& primes, int rep_cutoff) {
  KahanSum acc;
  for (std::int64_t p : primes) {
    double lp = std::log(static_cast<double>(p));
    double amp = 1.0 / std::sqrt(static_cast<double>(p));  // p^{-r/2} built up by r
    double x = E * lp;
    double a = amp;
    for (int r = 1; r <= rep_cutoff; ++r) {
      acc.add(std::sin(r * x) * a / r);
      a *= amp;
    }
  }
  return -acc.value() / pi;
}

}  // namespace

double nosc_prime_sum(double E, const TruncationSpec& trunc) {
  validate_common(trunc);
  PrimeTable table = sieve_primes(trunc.prime_cutoff);
  int reps = trunc.closed ? static_cast<int>(std::min<std::int64_t>(trunc.n_max, 1 << 30))
                          : trunc.rep_cutoff;
  return nosc_at(E, table.primes, reps);
}

double gutzwiller_sum(const std::vector<OrbitTerm>& orbits, double E,
                      int rep_cutoff, double hbar) {
  if (rep_cutoff < 1)
    throw std::invalid_argument("gutzwiller_sum: rep_cutoff must be >= 1");
  if (!(hbar > 0.0)) throw std::invalid_argument("gutzwiller_sum: hbar must be positive");
  KahanSum acc;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const OrbitTerm& po = orbits[i];
    double action = E * po.tau;
    for (int r = 1; r <= rep_cutoff; ++r) {
      double stab = po.stability ? po.stability(r) : 0.0;
      if (!(stab > 0.0))
        throw std::invalid_argument("gutzwiller_sum: orbit " + std::to_string(i) +
                                    " has nonpositive stability at r = " +
                                    std::to_string(r));
      double phase = r * action / hbar - r * po.maslov;
      acc.add(std::sin(phase) / (r * std::sqrt(stab)));
    }
  }
  return acc.value() / (pi * hbar);
}

double class_c_sum(const std::vector<OrbitTerm>& orbits, double E, int rep_cutoff) {
  if (rep_cutoff < 1)
    throw std::invalid_argument("class_c_sum: rep_cutoff must be >= 1");
  KahanSum acc;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const OrbitTerm& po = orbits[i];
    double x = E * po.tau;
    for (int r = 1; r <= rep_cutoff; ++r) {
      double stab = po.stability ? po.stability(r) : 0.0;
      if (!(stab > 0.0))
        throw std::invalid_argument("class_c_sum: orbit " + std::to_string(i) +
                                    " has nonpositive stability at r = " +
                                    std::to_string(r));
      double sign = (po.andreev_parity % 2 != 0) ? ((r % 2 != 0) ? -1.0 : 1.0) : 1.0;
      acc.add(sign * std::sin(r * x) / (r * stab));
    }
  }
  return acc.value() / pi;
}

std::vector<OrbitTerm> ansatz_orbits(const TruncationSpec& trunc) {
  validate_common(trunc);
  if (trunc.k_cutoff < 0)
    throw std::invalid_argument("ansatz_orbits: k_cutoff must be >= 0");
  PrimeTable table = sieve_primes(trunc.prime_cutoff);
  std::vector<OrbitTerm> orbits;
  for (std::int64_t p : table.primes) {
    double lp = std::log(static_cast<double>(p));
    for (int k = 0; k <= trunc.k_cutoff; ++k) {
      OrbitTerm po;
      po.prime = p;
      po.doubling = k;
      po.tau = std::ldexp(lp, k);  // 2^k log p
      po.maslov = 0.0;
      double tau = po.tau;
      po.stability = [tau](int r) { return std::exp(0.5 * r * tau); };
      po.andreev_parity = 1;
      orbits.push_back(std::move(po));
    }
  }
  return orbits;
}

DoublingCheck doubling_identity_check(const std::function<double(std::int64_t)>& f,
                                      double decay, double tol) {
  if (!(decay > 0.0 && decay < 1.0))
    throw std::invalid_argument("doubling_identity_check: decay must lie in (0, 1)");
  if (!(tol > 0.0))
    throw std::invalid_argument("doubling_identity_check: tol must be positive");
  constexpr std::int64_t budget = 100'000'000;
  std::int64_t spent = 0;

  // rhs = -sum_{r>=1} f(r)/r, stopped when the geometric tail bound
  // |f(R)| * decay/(1-decay) / (R+1) falls below tol/4.
  KahanSum rhs;
  {
    std::int64_t r = 1;
    while (true) {
      double fr = f(r);
      rhs.add(fr / static_cast<double>(r));
      double bound = std::fabs(fr) * decay / (1.0 - decay) / static_cast<double>(r + 1);
      if (bound < 0.25 * tol) break;
      if (++spent > budget)
        throw std::runtime_error(
            "doubling_identity_check: iteration budget exhausted (decay too close to 1)");
      ++r;
    }
  }

  // lhs = sum_{k>=0} sum_{r>=1} (-1)^r f(2^k r)/r; the k-th block is bounded
  // by |f(2^k)|/(1 - decay^{2^k}) and those bounds fall super-geometrically.
  KahanSum lhs;
  for (int k = 0; k < 62; ++k) {
    std::int64_t stride = std::int64_t{1} << k;
    double dk = std::pow(decay, static_cast<double>(stride));
    double first = std::fabs(f(stride));
    double block_bound = (dk < 1.0) ? first / (1.0 - dk) : first * 1e18;
    if (block_bound < 0.125 * tol) break;
    std::int64_t r = 1;
    while (true) {
      double fr = f(stride * r);
      double sign = (r % 2 != 0) ? -1.0 : 1.0;
      lhs.add(sign * fr / static_cast<double>(r));
      double bound = std::fabs(fr) * dk / (1.0 - dk) / static_cast<double>(r + 1);
      if (bound < 0.125 * tol) break;
      if (++spent > budget)
        throw std::runtime_error(
            "doubling_identity_check: iteration budget exhausted (decay too close to 1)");
      ++r;
    }
  }
  return DoublingCheck{lhs.value(), -rhs.value()};
}

EquivalenceResult equivalence_check(double E, const TruncationSpec& trunc) {
  if (!trunc.closed)
    throw std::invalid_argument(
        "equivalence_check: truncation must be a closed composite-index set");
  PrimeTable table = sieve_primes(trunc.prime_cutoff);
  std::int64_t n_max = trunc.n_max;

  // Regrouping coefficients c_n = sum_{2^k r = n} (-1)^r / r, reconstructed
  // from the preimages rather than assumed.
  std::vector<double> coeff(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    KahanSum c;
    for (std::int64_t stride = 1; stride <= n; stride <<= 1) {
      if (n % stride != 0) continue;
      std::int64_t r = n / stride;
      double sign = (r % 2 != 0) ? -1.0 : 1.0;
      c.add(sign / static_cast<double>(r));
    }
    coeff[static_cast<std::size_t>(n)] = c.value();
  }

  EquivalenceResult out;
  {
    KahanSum acc;  // orbit form: (p, k, r) with 2^k r <= n_max
    for (std::int64_t p : table.primes) {
      double lp = std::log(static_cast<double>(p));
      for (int k = 0; (std::int64_t{1} << k) <= n_max; ++k) {
        std::int64_t stride = std::int64_t{1} << k;
        double tau = std::ldexp(lp, k);
        for (std::int64_t r = 1; r * stride <= n_max; ++r) {
          double sign = (r % 2 != 0) ? -1.0 : 1.0;
          double stab = std::exp(0.5 * static_cast<double>(r) * tau);
          acc.add(sign * std::sin(static_cast<double>(r) * E * tau) /
                  (static_cast<double>(r) * stab));
        }
      }
    }
    out.orbit_form = acc.value() / pi;
  }
  {
    KahanSum acc;  // prime-power form: (p, n) with reconstructed c_n
    for (std::int64_t p : table.primes) {
      double lp = std::log(static_cast<double>(p));
      for (std::int64_t n = 1; n <= n_max; ++n) {
        double amp = std::exp(-0.5 * static_cast<double>(n) * lp);
        acc.add(coeff[static_cast<std::size_t>(n)] *
                std::sin(static_cast<double>(n) * E * lp) * amp);
      }
    }
    out.prime_form = acc.value() / pi;
  }
  return out;
}

namespace {

std::vector<double> nosc_grid_impl(const std::vector<double>& e_grid,
                                   const TruncationSpec& trunc, bool parallel,
                                   int threads) {
  validate_common(trunc);
  for (std::size_t i = 1; i < e_grid.size(); ++i)
    if (!(e_grid[i] > e_grid[i - 1]))
      throw std::invalid_argument("nosc_grid: grid must increase strictly");
  PrimeTable table = sieve_primes(trunc.prime_cutoff);
  int reps = trunc.closed ? static_cast<int>(std::min<std::int64_t>(trunc.n_max, 1 << 30))
                          : trunc.rep_cutoff;
  std::vector<double> out(e_grid.size(), 0.0);
  std::int64_t n = static_cast<std::int64_t>(e_grid.size());
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt) if (parallel)
#else
  (void)parallel;
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        nosc_at(e_grid[static_cast<std::size_t>(i)], table.primes, reps);
  return out;
}

std::vector<double> reconstruct_impl(const std::vector<double>& e_grid,
                                     const TruncationSpec& trunc,
                                     double smoothing_width, bool parallel) {
  if (e_grid.empty())
    throw std::invalid_argument("reconstruct_staircase: empty grid");
  for (std::size_t i = 1; i < e_grid.size(); ++i)
    if (!(e_grid[i] > e_grid[i - 1]))
      throw std::invalid_argument("reconstruct_staircase: grid must increase strictly");
  if (smoothing_width < 0.0)
    throw std::invalid_argument("reconstruct_staircase: width must be >= 0");

  std::vector<double> osc = nosc_grid_impl(e_grid, trunc, parallel, 0);
  std::vector<double> raw(e_grid.size());
  std::int64_t n = static_cast<std::int64_t>(e_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    std::size_t u = static_cast<std::size_t>(i);
    raw[u] = smooth_count(e_grid[u]).exact + osc[u];
  }
  if (smoothing_width == 0.0) return raw;

  // Normalized discrete Gaussian convolution, truncated at 4 sigma.
  std::vector<double> out(e_grid.size());
  double cut = 4.0 * smoothing_width;
  double inv2s2 = 1.0 / (2.0 * smoothing_width * smoothing_width);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    std::size_t u = static_cast<std::size_t>(i);
    double center = e_grid[u];
    auto lo = std::lower_bound(e_grid.begin(), e_grid.end(), center - cut);
    auto hi = std::upper_bound(e_grid.begin(), e_grid.end(), center + cut);
    KahanSum num, den;
    for (auto it = lo; it != hi; ++it) {
      double d = *it - center;
      double w = std::exp(-d * d * inv2s2);
      std::size_t j = static_cast<std::size_t>(it - e_grid.begin());
      num.add(w * raw[j]);
      den.add(w);
    }
    out[u] = num.value() / den.value();
  }
  return out;
}

}  // namespace

std::vector<double> nosc_grid(const std::vector<double>& e_grid,
                              const TruncationSpec& trunc, int threads) {
  return nosc_grid_impl(e_grid, trunc, true, threads);
}

std::vector<double> nosc_grid_serial(const std::vector<double>& e_grid,
                                     const TruncationSpec& trunc) {
  return nosc_grid_impl(e_grid, trunc, false, 0);
}

std::vector<double> reconstruct_staircase(const std::vector<double>& e_grid,
                                          const TruncationSpec& trunc,
                                          double smoothing_width) {
  return reconstruct_impl(e_grid, trunc, smoothing_width, true);
}

std::vector<double> reconstruct_staircase_serial(const std::vector<double>& e_grid,
                                                 const TruncationSpec& trunc,
                                                 double smoothing_width) {
  return reconstruct_impl(e_grid, trunc, smoothing_width, false);
}

}  // namespace rsl
