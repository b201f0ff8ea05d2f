#include "rsl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rsl/kahan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsl {

namespace {

constexpr double pi = std::numbers::pi;

// Rescale in place so the mean spacing is exactly 1 and the first value 0.
void renormalize(std::vector<double>& v) {
  std::size_t n = v.size();
  if (n < 2) return;
  double span = v.back() - v.front();
  if (!(span > 0.0))
    throw degenerate_fit_error("unfolding produced a zero-span sequence");
  double c = static_cast<double>(n - 1) / span;
  double v0 = v.front();
  for (double& x : v) x = (x - v0) * c;
}

}  // namespace

std::vector<double> UnfoldedSequence::spacings() const {
  std::vector<double> out;
  if (values.size() < 2) return out;
  out.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i)
    out.push_back(values[i] - values[i - 1]);
  return out;
}

UnfoldedSequence unfold_zeros(const ZeroList& zeros) {
  if (zeros.gammas.size() < 10)
    throw std::invalid_argument("unfold_zeros: need at least 10 zeros");
  UnfoldedSequence seq;
  seq.values.reserve(zeros.gammas.size());
  for (double g : zeros.gammas) seq.values.push_back(smooth_count(g).exact);
  for (std::size_t i = 1; i < seq.values.size(); ++i)
    if (!(seq.values[i] > seq.values[i - 1]))
      throw std::invalid_argument("unfold_zeros: ordinates not strictly increasing");
  seq.window_lo = zeros.gammas.front();
  seq.window_hi = zeros.gammas.back();
  renormalize(seq.values);
  return seq;
}

UnfoldedSequence unfold_ensemble(const SpectrumSample& sample, double bulk_fraction) {
  if (!(bulk_fraction > 0.0 && bulk_fraction <= 1.0))
    throw std::invalid_argument("unfold_ensemble: bulk_fraction must lie in (0, 1]");
  const std::vector<double>& ev = sample.eigenvalues;
  std::size_t n = ev.size();
  std::size_t drop = static_cast<std::size_t>(
      std::floor(0.5 * (1.0 - bulk_fraction) * static_cast<double>(n)));
  if (n < drop * 2 + 8)
    throw std::invalid_argument("unfold_ensemble: too few levels in the bulk window");
  std::size_t lo = drop, hi = n - 1 - drop;
  double a = ev[lo], b = ev[hi];
  if (!(b > a)) throw degenerate_fit_error("unfold_ensemble: bulk window has zero width");

  // Least-squares degree-5 fit of the staircase midpoints (lambda_k, k + 1/2)
  // on the Chebyshev-scaled variable u in [-1, 1]; normal equations are fine
  // at this degree.
  constexpr int deg = 5;
  double gram[deg + 1][deg + 1] = {};
  double rhs[deg + 1] = {};
  for (std::size_t k = lo; k <= hi; ++k) {
    double u = 2.0 * (ev[k] - a) / (b - a) - 1.0;
    double y = static_cast<double>(k) + 0.5;
    double pw[2 * deg + 1];
    pw[0] = 1.0;
    for (int i = 1; i <= 2 * deg; ++i) pw[i] = pw[i - 1] * u;
    for (int i = 0; i <= deg; ++i) {
      for (int j = 0; j <= deg; ++j) gram[i][j] += pw[i + j];
      rhs[i] += y * pw[i];
    }
  }
  // Cholesky solve.
  double chol[deg + 1][deg + 1] = {};
  for (int i = 0; i <= deg; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = gram[i][j];
      for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
      if (i == j) {
        if (!(s > 0.0))
          throw degenerate_fit_error("unfold_ensemble: singular staircase fit");
        chol[i][i] = std::sqrt(s);
      } else {
        chol[i][j] = s / chol[j][j];
      }
    }
  }
  double coef[deg + 1];
  for (int i = 0; i <= deg; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= chol[i][k] * coef[k];
    coef[i] = s / chol[i][i];
  }
  for (int i = deg; i >= 0; --i) {
    double s = coef[i];
    for (int k = i + 1; k <= deg; ++k) s -= chol[k][i] * coef[k];
    coef[i] = s / chol[i][i];
  }

  UnfoldedSequence seq;
  seq.values.reserve(hi - lo + 1);
  for (std::size_t k = lo; k <= hi; ++k) {
    double u = 2.0 * (ev[k] - a) / (b - a) - 1.0;
    double v = coef[deg];
    for (int i = deg - 1; i >= 0; --i) v = v * u + coef[i];
    seq.values.push_back(v);
  }
  for (std::size_t i = 1; i < seq.values.size(); ++i)
    if (!(seq.values[i] > seq.values[i - 1]))
      throw degenerate_fit_error(
          "unfold_ensemble: fitted staircase is not monotone over the window");
  seq.window_lo = a;
  seq.window_hi = b;
  renormalize(seq.values);
  return seq;
}

double gue_surmise_pdf(double s) {
  if (s < 0.0) return 0.0;
  return (32.0 / (pi * pi)) * s * s * std::exp(-4.0 * s * s / pi);
}

double gue_surmise_cdf(double s) {
  if (s <= 0.0) return 0.0;
  return std::erf(2.0 * s / std::sqrt(pi)) -
         (4.0 * s / pi) * std::exp(-4.0 * s * s / pi);
}

double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double spacing_reference_cdf(double s, SpacingReference ref) {
  return ref == SpacingReference::gue_surmise ? gue_surmise_cdf(s) : poisson_cdf(s);
}

double spacing_ks(const std::vector<double>& spacings, SpacingReference ref) {
  if (spacings.size() < 50)
    throw std::invalid_argument("spacing_ks: need at least 50 spacings");
  std::vector<double> s = spacings;
  std::sort(s.begin(), s.end());
  double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double f = spacing_reference_cdf(s[i], ref);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double spacing_ks(const UnfoldedSequence& seq, SpacingReference ref) {
  return spacing_ks(seq.spacings(), ref);
}

std::vector<double> pair_correlation(const std::vector<UnfoldedSequence>& seqs,
                                     const std::vector<double>& x_grid,
                                     double window_width) {
  if (seqs.empty()) throw std::invalid_argument("pair_correlation: no sequences");
  if (x_grid.empty()) throw std::invalid_argument("pair_correlation: empty grid");
  if (!(window_width > 0.0))
    throw std::invalid_argument("pair_correlation: window width must be positive");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0))
      throw std::invalid_argument("pair_correlation: grid points must be positive");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
      throw std::invalid_argument("pair_correlation: grid must increase strictly");
  }
  std::size_t pooled = 0;
  for (const UnfoldedSequence& s : seqs) pooled += s.values.size();
  if (pooled < 500)
    throw std::invalid_argument(
        "pair_correlation: need at least 500 points pooled for a meaningful estimate");
  double reach = x_grid.back() + 0.5 * window_width;
  std::vector<double> counts(x_grid.size(), 0.0);
  double total_refs = 0.0;
  for (const UnfoldedSequence& seq : seqs) {
    const std::vector<double>& v = seq.values;
    if (v.size() < 2) continue;
    // Reference points keep a full window to their right; the trailing edge
    // of each sequence is discarded rather than corrected.
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v.back() - v[i] < reach) break;
      total_refs += 1.0;
      for (std::size_t g = 0; g < x_grid.size(); ++g) {
        double lo = v[i] + x_grid[g] - 0.5 * window_width;
        double hi = v[i] + x_grid[g] + 0.5 * window_width;
        auto l = std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), lo);
        auto h = std::lower_bound(l, v.end(), hi);
        counts[g] += static_cast<double>(h - l);
      }
    }
  }
  if (total_refs < 1.0)
    throw std::invalid_argument(
        "pair_correlation: no reference points; window exceeds sequence span");
  for (double& c : counts) c /= total_refs * window_width;
  return counts;
}

std::vector<double> pair_correlation(const UnfoldedSequence& seq,
                                     const std::vector<double>& x_grid,
                                     double window_width) {
  return pair_correlation(std::vector<UnfoldedSequence>{seq}, x_grid, window_width);
}

double pair_correlation_reference(double x) {
  if (x == 0.0) return 0.0;
  double s = std::sin(pi * x) / (pi * x);
  return 1.0 - s * s;
}

NearZeroDensity near_zero_density(const std::vector<SpectrumSample>& samples,
                                  double bin_width) {
  if (samples.empty())
    throw std::invalid_argument("near_zero_density: no samples");
  if (!(bin_width > 0.0))
    throw std::invalid_argument("near_zero_density: bin width must be positive");
  double near_count = 0.0, bulk_count = 0.0;
  for (const SpectrumSample& s : samples) {
    for (double ev : s.eigenvalues) {
      if (ev < 0.0) continue;
      if (ev < bin_width) ++near_count;
      if (ev >= 4.0 * bin_width && ev < 20.0 * bin_width) ++bulk_count;
    }
  }
  double ns = static_cast<double>(samples.size());
  NearZeroDensity out;
  out.near_zero = near_count / (ns * bin_width);
  out.bulk = bulk_count / (ns * 16.0 * bin_width);
  return out;
}

double suggest_near_zero_bin(const std::vector<SpectrumSample>& samples) {
  if (samples.empty())
    throw std::invalid_argument("suggest_near_zero_bin: no samples");
  KahanSum est;
  double used = 0.0;
  for (const SpectrumSample& s : samples) {
    std::vector<double> pos;
    for (double ev : s.eigenvalues)
      if (ev > 0.0) pos.push_back(ev);
    if (pos.empty()) continue;
    std::sort(pos.begin(), pos.end());
    std::size_t idx = std::min<std::size_t>(pos.size(), 8) - 1;
    est.add(pos[idx] / static_cast<double>(idx + 1));
    used += 1.0;
  }
  if (used == 0.0)
    throw std::invalid_argument("suggest_near_zero_bin: no positive eigenvalues");
  return 0.25 * est.value() / used;
}

std::vector<std::int64_t> family_moduli(std::int64_t bound) {
  PrimeTable t = sieve_primes(bound);
  std::vector<std::int64_t> out;
  for (std::int64_t p : t.primes)
    if (p % 4 == 1) out.push_back(p);
  return out;
}

std::vector<FamilyLowZero> family_low_zeros(const std::vector<std::int64_t>& moduli,
                                            double window, int threads) {
  if (!(window > 0.0))
    throw std::invalid_argument("family_low_zeros: window must be positive");
  if (moduli.empty()) return {};
  std::vector<FamilyLowZero> out(moduli.size());
  std::exception_ptr first_error;
  std::int64_t n = static_cast<std::int64_t>(moduli.size());
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      std::int64_t d = moduli[static_cast<std::size_t>(i)];
      Character chi = real_primitive_character(d);
      if (!chi.is_even || !chi.is_real || !chi.is_primitive)
        throw std::invalid_argument(
            "family_low_zeros: modulus " + std::to_string(d) +
            " does not carry an even real primitive character");
      auto f = [&chi](double e) { return l_hardy_z(e, chi); };
      const double step = 0.05;
      double e = 1e-3;
      double fe = f(e);
      double found = -1.0;
      while (e < window) {
        double nx = std::min(e + step, window);
        double fn = f(nx);
        if (fe == 0.0) {
          found = e;
          break;
        }
        if (fn != 0.0 && ((fe > 0) != (fn > 0))) {
          double a = e, b = nx, za = fe;
          for (int it = 0; it < 80 && (b - a) > 1e-9; ++it) {
            double m = 0.5 * (a + b);
            double zm = f(m);
            if (zm == 0.0) {
              a = b = m;
              break;
            }
            if ((zm > 0) == (za > 0)) {
              a = m;
              za = zm;
            } else {
              b = m;
            }
          }
          found = 0.5 * (a + b);
          break;
        }
        e = nx;
        fe = fn;
      }
      if (found < 0.0)
        throw std::runtime_error("family_low_zeros: no zero below window " +
                                 std::to_string(window) + " for modulus " +
                                 std::to_string(d));
      FamilyLowZero row;
      row.modulus = d;
      row.gamma1 = found;
      row.scaled = found * std::log(static_cast<double>(d)) / (2.0 * pi);
      out[static_cast<std::size_t>(i)] = row;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace rsl
