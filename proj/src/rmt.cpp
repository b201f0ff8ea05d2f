#include "rsl/rmt.hpp"

#include <cmath>
#include <stdexcept>

#include "rsl/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsl {

namespace {

void validate(const EnsembleSpec& spec) {
  if (spec.base_dim < 1)
    throw std::invalid_argument("EnsembleSpec: base_dim must be >= 1");
  if (!(spec.sigma2 > 0.0))
    throw std::invalid_argument("EnsembleSpec: sigma2 must be positive");
}

// Entry-index layout per sample: a flat counter space carved into segments,
// one Gaussian per independent real parameter.
struct EntryCounter {
  std::uint64_t next = 0;
  std::uint64_t seed;
  std::uint64_t sample;
  double draw() { return gaussian_at(seed, sample, next++); }
};

}  // namespace

HermitianMatrix gue_matrix(const EnsembleSpec& spec, std::int64_t sample_index) {
  validate(spec);
  int n = spec.base_dim;
  double diag_sd = std::sqrt(spec.sigma2);
  double off_sd = std::sqrt(0.5 * spec.sigma2);
  EntryCounter ctr{0, spec.seed, static_cast<std::uint64_t>(sample_index)};
  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i) h.at(i, i) = diag_sd * ctr.draw();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double re = off_sd * ctr.draw();
      double im = off_sd * ctr.draw();
      h.at(i, j) = {re, im};
      h.at(j, i) = {re, -im};
    }
  }
  return h;
}

HermitianMatrix class_c_matrix(const EnsembleSpec& spec, std::int64_t sample_index) {
  validate(spec);
  int n = spec.base_dim;
  double sd = std::sqrt(spec.sigma2);
  EntryCounter ctr{0, spec.seed, static_cast<std::uint64_t>(sample_index)};

  // a: real antisymmetric (A = i a); s1, s2, s3: real symmetric.
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = sd * ctr.draw();
      a[static_cast<std::size_t>(i) * n + j] = v;
      a[static_cast<std::size_t>(j) * n + i] = -v;
    }
  std::vector<std::vector<double>> s(3);
  for (int c = 0; c < 3; ++c) {
    s[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n) * n, 0.0);
    auto& m = s[static_cast<std::size_t>(c)];
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = sd * ctr.draw();
        m[static_cast<std::size_t>(i) * n + j] = v;
        m[static_cast<std::size_t>(j) * n + i] = v;
      }
  }

  // Block form: [[A + S3, S1 - i S2], [S1 + i S2, A - S3]].
  HermitianMatrix h(2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::size_t ij = static_cast<std::size_t>(i) * n + j;
      std::complex<double> A{0.0, a[ij]};
      double s1 = s[0][ij], s2 = s[1][ij], s3 = s[2][ij];
      h.at(i, j) = A + s3;
      h.at(i, j + n) = {s1, -s2};
      h.at(i + n, j) = {s1, s2};
      h.at(i + n, j + n) = A - s3;
    }
  }
  return h;
}

HermitianMatrix class_d_matrix(const EnsembleSpec& spec, std::int64_t sample_index) {
  validate(spec);
  int n = spec.base_dim;
  double sd = std::sqrt(spec.sigma2);
  EntryCounter ctr{0, spec.seed, static_cast<std::uint64_t>(sample_index)};
  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = sd * ctr.draw();
      h.at(i, j) = {0.0, v};
      h.at(j, i) = {0.0, -v};
    }
  return h;
}

SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::int64_t sample_index) {
  HermitianMatrix h;
  switch (spec.ensemble) {
    case EnsembleClass::gue:
      h = gue_matrix(spec, sample_index);
      break;
    case EnsembleClass::class_c:
      h = class_c_matrix(spec, sample_index);
      break;
    case EnsembleClass::class_d:
      h = class_d_matrix(spec, sample_index);
      break;
  }
  SpectrumSample out;
  out.eigenvalues = eigenvalues_hermitian(h);
  out.spec = spec;
  out.sample_index = sample_index;
  return out;
}

std::vector<SpectrumSample> sample_batch(const EnsembleSpec& spec, std::int64_t count,
                                         int threads) {
  validate(spec);
  if (count < 0) throw std::invalid_argument("sample_batch: count must be >= 0");
  std::vector<SpectrumSample> out(static_cast<std::size_t>(count));
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#else
  (void)threads;
#endif
  for (std::int64_t k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = sample_spectrum(spec, k);
  return out;
}

std::vector<SpectrumSample> sample_batch_serial(const EnsembleSpec& spec,
                                                std::int64_t count) {
  validate(spec);
  if (count < 0) throw std::invalid_argument("sample_batch_serial: count must be >= 0");
  std::vector<SpectrumSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) out.push_back(sample_spectrum(spec, k));
  return out;
}

double pairing_residual(const SpectrumSample& sample) {
  const std::vector<double>& ev = sample.eigenvalues;
  std::size_t n = ev.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    worst = std::max(worst, std::fabs(ev[k] + ev[n - 1 - k]));
  return worst;
}

double semicircle_radius(const EnsembleSpec& spec) {
  return 2.0 * std::sqrt(spec.sigma2 * static_cast<double>(spec.base_dim));
}

}  // namespace rsl
