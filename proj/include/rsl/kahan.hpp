#pragma once

#include <cmath>

namespace rsl {

// Neumaier-compensated accumulator. Keeps long alternating sums stable to
// ~1 ulp of the running total regardless of term count, which is what lets
// regrouped evaluations of the same series agree to 1e-12.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace rsl
