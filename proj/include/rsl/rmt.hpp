#pragma once

#include <cstdint>
#include <vector>

#include "rsl/linalg.hpp"

namespace rsl {

enum class EnsembleClass { gue, class_c, class_d };

// Ensemble description.  base_dim is N; class_c samples are 2N x 2N.
// sigma2 is the variance of each independent real parameter (for GUE the
// diagonal variance; off-diagonal components get sigma2/2).
struct EnsembleSpec {
  EnsembleClass ensemble = EnsembleClass::gue;
  int base_dim = 2;
  double sigma2 = 1.0;
  std::uint64_t seed = 0;
};

struct SpectrumSample {
  std::vector<double> eigenvalues;  // ascending
  EnsembleSpec spec;
  std::int64_t sample_index = 0;
};

// Matrix builders, addressable by (spec.seed, sample_index): bit-identical
// regardless of evaluation order.
HermitianMatrix gue_matrix(const EnsembleSpec& spec, std::int64_t sample_index);
// H = I (x) A + sum_i sigma_i (x) S_i with A = i*(real antisymmetric) and
// S_i real symmetric; anticommutes with charge conjugation by construction,
// so the spectrum pairs as {+lambda, -lambda}.
HermitianMatrix class_c_matrix(const EnsembleSpec& spec, std::int64_t sample_index);
// H = i*B with B real antisymmetric (dimension base_dim); a forced zero
// eigenvalue appears exactly when base_dim is odd.
HermitianMatrix class_d_matrix(const EnsembleSpec& spec, std::int64_t sample_index);

SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::int64_t sample_index);

// count spectra, sample_index = 0..count-1.  The parallel kernel and the
// serial reference produce bit-identical batches.
std::vector<SpectrumSample> sample_batch(const EnsembleSpec& spec, std::int64_t count,
                                         int threads = 0);
std::vector<SpectrumSample> sample_batch_serial(const EnsembleSpec& spec,
                                                std::int64_t count);

// max_k |lambda_k + lambda_{n-1-k}| over the sorted spectrum.
double pairing_residual(const SpectrumSample& sample);

// Semicircle radius 2 * sqrt(sigma2 * N) for the GUE normalization above.
double semicircle_radius(const EnsembleSpec& spec);

}  // namespace rsl
