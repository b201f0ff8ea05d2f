#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsl/lfunc.hpp"

namespace rsl {

enum class ZeroSource { computed, ingested };

// Ordinates of zeros on the critical line, ascending.
struct ZeroList {
  std::vector<double> gammas;
  ZeroSource source = ZeroSource::computed;
  double tolerance = 0.0;  // bisection half-width; 0 for ingested data

  std::size_t count_below(double E) const;
};

// Completeness certification failed on [interval_lo, interval_hi]: the
// argument count and the sign-change tally disagree after refinement.
class certification_error : public std::runtime_error {
 public:
  certification_error(const std::string& msg, double lo, double hi)
      : std::runtime_error(msg), interval_lo(lo), interval_hi(hi) {}
  double interval_lo;
  double interval_hi;
};

// An argument-principle evaluation could not be completed because the path
// passes too close to a zero.
class too_close_to_zero : public std::runtime_error {
 public:
  too_close_to_zero(const std::string& msg, double E_) : std::runtime_error(msg), E(E_) {}
  double E;
};

// Malformed input table.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, int line_) : std::runtime_error(msg), line(line_) {}
  int line;
};

struct ZeroSearchOptions {
  double base_step = 0.05;  // scan step for E <= 100; shrinks with the mean gap above
  int max_refinements = 3;  // x10 grid refinements before certification fails
  int threads = 0;          // 0 = library default
};

// All zeros with 0 < gamma <= e_max (e_max <= 1e4), located by sign changes
// of the Hardy function, bisected to 1e-9, and certified complete against
// the argument count on each scan block.  The parallel version chunks the
// scan over fixed blocks; the serial reference walks one continuous grid.
ZeroList find_zeros(double e_max, const ZeroSearchOptions& opts = {});
ZeroList find_zeros_serial(double e_max, const ZeroSearchOptions& opts = {});

// N(E) by the argument principle: theta(E)/pi + 1 + (1/pi) * arg zeta
// transported along 2 -> 2+iE -> 1/2+iE.  Returns a real within 1e-6 of an
// integer away from zeros; throws too_close_to_zero when transport stalls.
double count_via_argument(double E);
double count_via_argument(const CriticalPoint& p);

// Same contour count for L(s, chi), chi real even primitive.  No +1 term:
// the completed L-function has no poles.
double l_count_via_argument(double E, const Character& chi);

// N(E) split into the smooth term and the oscillatory remainder.
struct CountDecomposition {
  double E = 0.0;
  long long n_exact = 0;
  double n_smooth = 0.0;
  double n_osc = 0.0;
};
CountDecomposition decompose(double E);

// Reads a zero table: either bare ordinates (one per line) or the cache
// format "k,gamma" with header.  Blank lines and '#' comments are skipped.
// Ordinates must be finite, positive, strictly increasing.
ZeroList ingest_zero_table(const std::string& path);

// Writes the cache format: header "k,gamma", 1-based index, 12 decimal
// places, LF line endings.  The write is atomic (temp file + rename).
void write_zero_table(const std::string& path, const ZeroList& zeros);

// Cache: zeros.csv plus a sidecar recording the certified upper edge.
// load returns an empty list when the cache is absent or certified below
// e_max.  store overwrites atomically.
ZeroList load_cached_zeros(const std::string& dir, double e_max);
void store_cached_zeros(const std::string& dir, const ZeroList& zeros, double e_max);

}  // namespace rsl
