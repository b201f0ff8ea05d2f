#pragma once

#include <cstdint>
#include <vector>

#include "rsl/rmt.hpp"
#include "rsl/zeros.hpp"

namespace rsl {

// A spectrum mapped to unit mean spacing.
struct UnfoldedSequence {
  std::vector<double> values;  // strictly increasing
  double window_lo = 0.0;      // raw-coordinate window the values came from
  double window_hi = 0.0;

  std::vector<double> spacings() const;
};

// The degree-5 staircase fit could not produce a monotone unfolding.
class degenerate_fit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unfold zeros through the smooth counting term x_k = theta(gamma_k)/pi + 1,
// then rescale so the retained window has mean spacing exactly 1.
UnfoldedSequence unfold_zeros(const ZeroList& zeros);

// Unfold one ensemble spectrum by a degree-5 polynomial fit to the staircase
// midpoints over the central bulk_fraction of levels (by rank).
UnfoldedSequence unfold_ensemble(const SpectrumSample& sample,
                                 double bulk_fraction = 0.6);

enum class SpacingReference { gue_surmise, poisson };

// Wigner surmise for unitary symmetry: p(s) = (32/pi^2) s^2 exp(-4 s^2/pi),
// with CDF F(s) = erf(2 s / sqrt(pi)) - (4 s / pi) exp(-4 s^2 / pi).
double gue_surmise_pdf(double s);
double gue_surmise_cdf(double s);
double poisson_cdf(double s);
double spacing_reference_cdf(double s, SpacingReference ref);

// Kolmogorov-Smirnov distance between the empirical spacing CDF and the
// reference.  Requires at least 50 spacings.
double spacing_ks(const std::vector<double>& spacings, SpacingReference ref);
double spacing_ks(const UnfoldedSequence& seq, SpacingReference ref);

// Pair correlation estimate on x_grid with a rectangular window of the
// given width; reference points near the sequence ends are discarded.
// Multi-sequence overload pools counts without forming cross-sequence pairs.
std::vector<double> pair_correlation(const UnfoldedSequence& seq,
                                     const std::vector<double>& x_grid,
                                     double window_width);
std::vector<double> pair_correlation(const std::vector<UnfoldedSequence>& seqs,
                                     const std::vector<double>& x_grid,
                                     double window_width);
// 1 - (sin(pi x)/(pi x))^2.
double pair_correlation_reference(double x);

// Pooled eigenvalue density right at zero versus in the nearby bulk.
// near_zero uses the bin [0, bin_width); bulk uses [4 bin_width, 20 bin_width).
struct NearZeroDensity {
  double near_zero = 0.0;
  double bulk = 0.0;
};
NearZeroDensity near_zero_density(const std::vector<SpectrumSample>& samples,
                                  double bin_width);
// A quarter of the local mean spacing at the origin, estimated from the
// pooled smallest positive eigenvalues.
double suggest_near_zero_bin(const std::vector<SpectrumSample>& samples);

// Lowest zero of L(s, chi_d) for each modulus, scaled by the conductor:
// scaled = gamma_1 * log(d) / (2 pi).
struct FamilyLowZero {
  std::int64_t modulus = 0;
  double gamma1 = 0.0;
  double scaled = 0.0;
};
std::vector<FamilyLowZero> family_low_zeros(const std::vector<std::int64_t>& moduli,
                                            double window, int threads = 0);

// Moduli d <= bound carrying an even real primitive character with d prime:
// the primes congruent to 1 mod 4.
std::vector<std::int64_t> family_moduli(std::int64_t bound);

}  // namespace rsl
