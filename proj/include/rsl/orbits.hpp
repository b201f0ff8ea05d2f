#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rsl/arith.hpp"

namespace rsl {

// One primitive periodic orbit with linear action S(E) = E * tau and a
// caller-supplied r-fold stability weight.
struct OrbitTerm {
  std::int64_t prime = 2;  // label when the orbit comes from the prime ansatz
  int doubling = 0;        // k in tau = 2^k log p (ansatz orbits)
  double tau = 0.0;
  double maslov = 0.0;
  std::function<double(int)> stability;  // r -> |det(M^r - 1)| style weight
  int andreev_parity = 1;                // parity of the Andreev reflection count
};

// Truncation of the double sum over primes/orbits and repetitions.
// rectangular: p <= prime_cutoff, k <= k_cutoff, r <= rep_cutoff.
// closed_set:  p <= prime_cutoff and composite index 2^k * r <= n_max, which
// makes the (k, r) index set exactly regroupable onto prime powers.
struct TruncationSpec {
  std::int64_t prime_cutoff = 2;
  int k_cutoff = 0;
  int rep_cutoff = 1;
  bool closed = false;
  std::int64_t n_max = 0;

  static TruncationSpec rectangular(std::int64_t prime_cutoff, int k_cutoff,
                                    int rep_cutoff);
  static TruncationSpec closed_set(std::int64_t prime_cutoff, std::int64_t n_max);
};

// Oscillatory part of the zero counting function as a truncated sum over
// primes and prime powers:
//   -(1/pi) sum_{p <= P} sum_{r <= R} sin(r E log p) / (r p^{r/2}).
// Deterministic order (p ascending, then r), compensated accumulation.
double nosc_prime_sum(double E, const TruncationSpec& trunc);

// Semiclassical density-style sum with Maslov phases,
//   (1/(pi*hbar)) sum_po sum_r sin(r S/hbar - r mu) / (r sqrt(stab(r))).
double gutzwiller_sum(const std::vector<OrbitTerm>& orbits, double E,
                      int rep_cutoff, double hbar = 1.0);

// Particle-hole symmetric counting sum: Andreev parity supplies (-1)^r and
// the stability weight enters unsquarerooted:
//   (1/pi) sum_po sum_r (-1)^r sin(r E tau) / (r * stab(r)).
double class_c_sum(const std::vector<OrbitTerm>& orbits, double E, int rep_cutoff);

// The orbit family {(p, k): p prime <= cutoff, 0 <= k <= k_cutoff} with
// tau = 2^k log p, stability exp(r tau / 2), zero Maslov index, odd Andreev
// parity.
std::vector<OrbitTerm> ansatz_orbits(const TruncationSpec& trunc);

// Both sides of sum_{k>=0} sum_{r>=1} (-1)^r f(2^k r)/r = -sum_{r>=1} f(r)/r
// evaluated with tail bounds below tol.  decay certifies the geometric
// envelope |f(n+1)| <= decay * |f(n)|.
struct DoublingCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
DoublingCheck doubling_identity_check(const std::function<double(std::int64_t)>& f,
                                      double decay, double tol = 1e-12);

// The class-C ansatz sum over (p, k, r) with 2^k r <= n_max, and the same
// sum regrouped over prime powers p^n with reconstructed coefficients.
// Requires a closed truncation.
struct EquivalenceResult {
  double orbit_form = 0.0;
  double prime_form = 0.0;
};
EquivalenceResult equivalence_check(double E, const TruncationSpec& trunc);

// Smooth term plus truncated oscillatory sum on a grid, optionally convolved
// with a Gaussian of the given width (0 disables smoothing).
std::vector<double> reconstruct_staircase(const std::vector<double>& e_grid,
                                          const TruncationSpec& trunc,
                                          double smoothing_width);
std::vector<double> reconstruct_staircase_serial(const std::vector<double>& e_grid,
                                                 const TruncationSpec& trunc,
                                                 double smoothing_width);

// Grid evaluation of nosc_prime_sum (parallel kernel + serial reference).
std::vector<double> nosc_grid(const std::vector<double>& e_grid,
                              const TruncationSpec& trunc, int threads = 0);
std::vector<double> nosc_grid_serial(const std::vector<double>& e_grid,
                                     const TruncationSpec& trunc);

}  // namespace rsl
