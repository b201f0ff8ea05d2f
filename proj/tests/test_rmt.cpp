#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rsl/linalg.hpp"
#include "rsl/rmt.hpp"

namespace {

rsl::EnsembleSpec make_spec(rsl::EnsembleClass cls, int n, std::uint64_t seed) {
  rsl::EnsembleSpec spec;
  spec.ensemble = cls;
  spec.base_dim = n;
  spec.seed = seed;
  return spec;
}

// max |(H + tau_y H^* tau_y)_{jk}| where tau_y swaps the two N-blocks with
// factors -i / +i; exactness of this relation is what forces +- pairing.
double particle_hole_residual(const rsl::HermitianMatrix& h) {
  int two_n = h.n;
  int n = two_n / 2;
  auto conj_rotated = [&](int j, int k) {
    // (tau_y H^* tau_y)_{jk} = sgn * conj(H_{j', k'}) with j' = (j+n) mod 2n,
    // sign -1 when j, k lie in different halves.
    int jp = (j + n) % two_n;
    int kp = (k + n) % two_n;
    double sgn = ((j < n) == (k < n)) ? 1.0 : -1.0;
    return sgn * std::conj(h.at(jp, kp));
  };
  double worst = 0.0;
  for (int j = 0; j < two_n; ++j)
    for (int k = 0; k < two_n; ++k)
      worst = std::max(worst, std::abs(h.at(j, k) + conj_rotated(j, k)));
  return worst;
}

}  // namespace

TEST_CASE("class C at base dimension 1 gives an exact +- pair") {
  auto s = rsl::sample_spectrum(make_spec(rsl::EnsembleClass::class_c, 1, 7), 0);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(std::fabs(s.eigenvalues[0] + s.eigenvalues[1]) < 1e-12);
  CHECK(s.eigenvalues[1] > 0.0);
}

TEST_CASE("class C matrices satisfy the particle-hole relation exactly") {
  for (int n : {2, 3, 10, 50}) {
    rsl::HermitianMatrix h =
        rsl::class_c_matrix(make_spec(rsl::EnsembleClass::class_c, n, 99), 5);
    CHECK(rsl::max_asymmetry(h) == 0.0);
    CHECK(particle_hole_residual(h) < 1e-13);
  }
}

TEST_CASE("class C spectra pair to +- within 1e-10 of the spectral radius") {
  for (int n : {2, 5, 25, 100}) {
    auto s = rsl::sample_spectrum(make_spec(rsl::EnsembleClass::class_c, n, 31), 2);
    REQUIRE(s.eigenvalues.size() == static_cast<std::size_t>(2 * n));
    double radius = std::max(std::fabs(s.eigenvalues.front()),
                             std::fabs(s.eigenvalues.back()));
    CHECK(rsl::pairing_residual(s) < 1e-10 * radius);
  }
}

TEST_CASE("class C eigenvalues agree with the characteristic polynomial oracle") {
  auto spec = make_spec(rsl::EnsembleClass::class_c, 4, 17);
  rsl::HermitianMatrix h = rsl::class_c_matrix(spec, 0);
  auto ev = rsl::eigenvalues_hermitian(h);
  auto ref = oracle::charpoly_eigenvalues(h.a, 8);
  REQUIRE(ev.size() == ref.size());
  for (std::size_t i = 0; i < ev.size(); ++i)
    CHECK(ev[i] == doctest::Approx(ref[i]).epsilon(1e-8));
}

TEST_CASE("class D has a zero eigenvalue exactly when the dimension is odd") {
  auto odd = rsl::sample_spectrum(make_spec(rsl::EnsembleClass::class_d, 3, 5), 1);
  double closest = 1e300;
  for (double v : odd.eigenvalues) closest = std::min(closest, std::fabs(v));
  CHECK(closest < 1e-12);

  auto even = rsl::sample_spectrum(make_spec(rsl::EnsembleClass::class_d, 4, 5), 1);
  closest = 1e300;
  for (double v : even.eigenvalues) closest = std::min(closest, std::fabs(v));
  CHECK(closest > 1e-6);  // no symmetry forces zero at even dimension
}

TEST_CASE("class D spectra pair to +-") {
  auto s = rsl::sample_spectrum(make_spec(rsl::EnsembleClass::class_d, 20, 13), 3);
  double radius = std::max(std::fabs(s.eigenvalues.front()),
                           std::fabs(s.eigenvalues.back()));
  CHECK(rsl::pairing_residual(s) < 1e-10 * radius);
}

TEST_CASE("GUE eigenvalues stay inside a loose semicircle bound") {
  auto spec = make_spec(rsl::EnsembleClass::gue, 80, 23);
  auto s = rsl::sample_spectrum(spec, 0);
  double radius = rsl::semicircle_radius(spec);
  CHECK(s.eigenvalues.front() > -1.3 * radius);
  CHECK(s.eigenvalues.back() < 1.3 * radius);
  // Bulk fill: at least half the levels inside half the radius.
  int inside = 0;
  for (double v : s.eigenvalues)
    if (std::fabs(v) < 0.6 * radius) ++inside;
  CHECK(inside > 40);
}

TEST_CASE("batch sampling is deterministic and order-independent") {
  auto spec = make_spec(rsl::EnsembleClass::class_c, 6, 2024);
  auto serial = rsl::sample_batch_serial(spec, 8);
  auto parallel = rsl::sample_batch(spec, 8, 2);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].eigenvalues.size() == parallel[i].eigenvalues.size());
    for (std::size_t k = 0; k < serial[i].eigenvalues.size(); ++k)
      CHECK(serial[i].eigenvalues[k] == parallel[i].eigenvalues[k]);
  }
}

TEST_CASE("eigenvalue sums match matrix traces for every ensemble") {
  for (auto cls : {rsl::EnsembleClass::gue, rsl::EnsembleClass::class_c,
                   rsl::EnsembleClass::class_d}) {
    auto spec = make_spec(cls, 30, 77);
    rsl::HermitianMatrix h;
    switch (cls) {
      case rsl::EnsembleClass::gue: h = rsl::gue_matrix(spec, 4); break;
      case rsl::EnsembleClass::class_c: h = rsl::class_c_matrix(spec, 4); break;
      case rsl::EnsembleClass::class_d: h = rsl::class_d_matrix(spec, 4); break;
    }
    auto ev = rsl::eigenvalues_hermitian(h);
    double tr = 0.0, fro2 = 0.0;
    for (int i = 0; i < h.n; ++i) tr += h.at(i, i).real();
    for (const auto& v : h.a) fro2 += std::norm(v);
    double s1 = 0.0, s2 = 0.0;
    for (double v : ev) {
      s1 += v;
      s2 += v * v;
    }
    CHECK(s1 == doctest::Approx(tr).epsilon(1e-9));
    CHECK(s2 == doctest::Approx(fro2).epsilon(1e-9));
  }
}

TEST_CASE("invalid ensemble parameters are rejected") {
  auto spec = make_spec(rsl::EnsembleClass::gue, 0, 1);
  CHECK_THROWS_AS(rsl::sample_spectrum(spec, 0), std::invalid_argument);
  spec.base_dim = 4;
  spec.sigma2 = 0.0;
  CHECK_THROWS_AS(rsl::sample_spectrum(spec, 0), std::invalid_argument);
}
