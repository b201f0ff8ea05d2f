#include "rsl/lfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rsl {

namespace {

constexpr double pi = std::numbers::pi;
const cplx iu{0.0, 1.0};

// Lanczos coefficients, g = 7, n = 9.  ~1e-14 relative accuracy on the
// right half-plane.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log(sin(pi z)) up to a multiple of 2*pi*i, computed without overflow for
// large |Im z|.  Only used inside the reflection formula.
cplx log_sin_pi(cplx z) {
  if (z.imag() >= 0.0) {
    // sin(pi z) = exp(-i pi z) (exp(2 i pi z) - 1) / (2i); |exp(2 i pi z)| <= 1
    cplx w = std::exp(2.0 * iu * pi * z) - 1.0;
    return -iu * pi * z + std::log(w) - std::log(2.0 * iu);
  }
  return std::conj(log_sin_pi(std::conj(z)));
}

cplx log_gamma_raw(cplx z) {
  // Requires Re z >= 0.5.
  cplx x = lanczos_c[0];
  for (int k = 1; k < 9; ++k) x += lanczos_c[k] / (z - 1.0 + static_cast<double>(k));
  cplx t = z + lanczos_g - 0.5;
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return log_gamma_raw(z);
  // Reflection: log Gamma(z) = log(pi) - log sin(pi z) - log Gamma(1 - z).
  // Poles at z = 0, -1, -2, ...
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw pole_error("log_gamma: pole at nonpositive integer " +
                     std::to_string(z.real()));
  return std::log(pi) - log_sin_pi(z) - log_gamma_raw(1.0 - z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx gamma_inf(cplx s) { return std::exp(log_gamma_inf(s)); }

cplx log_gamma_inf(cplx s) {
  return -0.5 * s * std::log(pi) + log_gamma(0.5 * s);
}

std::vector<cplx> log_gamma_inf_path(const std::vector<cplx>& path) {
  std::vector<cplx> out;
  out.reserve(path.size());
  double shift = 0.0;  // accumulated multiple of 2*pi
  for (std::size_t k = 0; k < path.size(); ++k) {
    cplx v = log_gamma_inf(path[k]);
    if (k > 0) {
      double prev = out.back().imag();
      double cur = v.imag() + shift;
      shift += 2.0 * pi * std::round((prev - cur) / (2.0 * pi));
    }
    out.push_back(v + iu * shift);
  }
  return out;
}

namespace {

// Bernoulli numbers B_2 .. B_16 for the Euler-Maclaurin tail.
constexpr double bernoulli[8] = {
    1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

int em_cutoff(cplx s) {
  double t = std::fabs(s.imag());
  double n = std::max(20.0, 2.0 * t);
  return static_cast<int>(std::ceil(n));
}

// Euler-Maclaurin pieces of zeta(s, q) with the pole term left out:
//   regular = sum_{n<N} (n+q)^{-s} + (N+q)^{-s}/2 + correction terms
//   log_nq  = log(N+q), so the omitted pole term is exp((1-s) log_nq)/(s-1).
struct EmParts {
  cplx regular;
  double log_nq;
};

EmParts em_parts(cplx s, double q, int n_terms) {
  EmParts parts;
  cplx main_sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    double base = n + q;
    main_sum += std::exp(-s * std::log(base));
  }
  double nq = n_terms + q;
  double log_nq = std::log(nq);
  cplx nq_minus_s = std::exp(-s * std::log(nq));
  cplx sum = main_sum + 0.5 * nq_minus_s;

  // Tail: sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (N+q)^{-s-2j+1}
  cplx poch = s;                       // rising product s(s+1)...(s+2j-2)
  cplx pw = nq_minus_s / nq;           // (N+q)^{-s-1}
  double fact_ratio = 1.0 / 2.0;       // 1/(2j)! built incrementally
  for (int j = 1; j <= 8; ++j) {
    if (j > 1) {
      poch *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
      pw /= nq * nq;
      fact_ratio /= static_cast<double>(2 * j) * static_cast<double>(2 * j - 1);
    }
    sum += bernoulli[j - 1] * fact_ratio * poch * pw;
  }
  parts.regular = sum;
  parts.log_nq = log_nq;
  return parts;
}

// (exp(z) - 1)/z, stable near z = 0.
cplx phi1(cplx z) {
  if (std::abs(z) < 1e-3) {
    // series 1 + z/2 + z^2/6 + z^3/24 + z^4/120
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  return (std::exp(z) - 1.0) / z;
}

cplx zeta_em(cplx s) {
  int n = em_cutoff(s);
  EmParts parts = em_parts(s, 1.0, n);
  cplx pole = std::exp((1.0 - s) * parts.log_nq) / (s - 1.0);
  return parts.regular + pole;
}

}  // namespace

cplx zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-10) throw pole_error("zeta: pole at s = 1");
  if (s.real() >= 0.0) return zeta_em(s);
  // Functional equation zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s),
  // assembled in log form so the sin/Gamma growth cancels before exponentiating.
  cplx one_minus_s = 1.0 - s;
  cplx log_chi = s * std::log(2.0) + (s - 1.0) * std::log(pi) +
                 log_sin_pi(0.5 * s) + log_gamma(one_minus_s);
  return std::exp(log_chi) * zeta_em(one_minus_s);
}

cplx hurwitz_zeta(cplx s, double q) {
  if (!(q > 0.0 && q <= 1.0))
    throw std::invalid_argument("hurwitz_zeta: q must lie in (0, 1]");
  if (std::abs(s - 1.0) < 1e-10) throw pole_error("hurwitz_zeta: pole at s = 1");
  if (s.real() < 0.0)
    throw std::invalid_argument("hurwitz_zeta: Re s < 0 not supported");
  int n = em_cutoff(s);
  EmParts parts = em_parts(s, q, n);
  cplx pole = std::exp((1.0 - s) * parts.log_nq) / (s - 1.0);
  return parts.regular + pole;
}

cplx l_function(cplx s, const Character& chi) {
  if (chi.is_principal()) return zeta(s);
  if (s.real() < 0.0)
    throw std::invalid_argument("l_function: Re s < 0 not supported");
  std::int64_t d = chi.modulus;
  int n = em_cutoff(s);
  cplx acc = 0.0;
  // L(s, chi) = d^{-s} sum_a chi(a) zeta(s, a/d).  The per-class pole terms
  // exp((1-s)L_a)/(s-1) are summed as -L_a * phi1((1-s) L_a), exact for all
  // s != 1 because sum_a chi(a) = 0, and continuous through s = 1.
  for (std::int64_t a = 1; a < d; ++a) {
    cplx cv = chi.value(a);
    if (cv == cplx{0.0, 0.0}) continue;
    EmParts parts = em_parts(s, static_cast<double>(a) / static_cast<double>(d), n);
    cplx pole_piece = -parts.log_nq * phi1((1.0 - s) * parts.log_nq);
    acc += cv * (parts.regular + pole_piece);
  }
  return std::exp(-s * std::log(static_cast<double>(d))) * acc;
}

cplx lambda(cplx s) {
  if (std::abs(s) < 1e-10) throw pole_error("lambda: pole at s = 0");
  if (std::abs(s - 1.0) < 1e-10) throw pole_error("lambda: pole at s = 1");
  // For Re s < 0, Gamma(s/2) has poles that cancel against trivial zeros of
  // zeta; evaluate the reflected point instead (Lambda(s) = Lambda(1-s)).
  if (s.real() < 0.0) s = 1.0 - s;
  return gamma_inf(s) * zeta(s);
}

cplx lambda(cplx s, const Character& chi) {
  if (chi.is_principal()) return lambda(s);
  if (!chi.is_real || !chi.is_even || !chi.is_primitive)
    throw std::invalid_argument(
        "lambda: completed L requires a real even primitive character");
  if (s.real() < 0.0 || std::abs(s) < 1e-10) s = 1.0 - s;
  double d = static_cast<double>(chi.modulus);
  cplx arch = std::exp(0.5 * s * std::log(d / pi) + log_gamma(0.5 * s));
  return arch * l_function(s, chi);
}

double theta(double E) {
  cplx lg = log_gamma(cplx{0.25, 0.5 * E});
  return lg.imag() - 0.5 * E * std::log(pi);
}

double theta_asymptotic(double E) {
  if (!(E > 0.0))
    throw std::invalid_argument("theta_asymptotic: E must be positive");
  double x = E / (2.0 * pi);
  return 0.5 * E * std::log(x) - 0.5 * E - pi / 8.0 + 1.0 / (48.0 * E) +
         7.0 / (5760.0 * E * E * E);
}

SmoothCount smooth_count(double E) {
  SmoothCount out;
  out.E = E;
  out.exact = theta(E) / pi + 1.0;
  double x = E / (2.0 * pi);
  out.asymptotic = x * std::log(x) - x + 7.0 / 8.0;
  return out;
}

double hardy_z(double E) {
  double th = theta(E);
  cplx z = std::exp(iu * th) * zeta(cplx{0.5, E});
  return z.real();
}

double l_theta(double E, const Character& chi) {
  if (!chi.is_real || !chi.is_even || !chi.is_primitive)
    throw std::invalid_argument(
        "l_theta: requires a real even primitive character");
  cplx lg = log_gamma(cplx{0.25, 0.5 * E});
  double d = static_cast<double>(chi.modulus);
  return lg.imag() + 0.5 * E * std::log(d / pi);
}

double l_hardy_z(double E, const Character& chi) {
  double th = l_theta(E, chi);
  cplx z = std::exp(iu * th) * l_function(cplx{0.5, E}, chi);
  return z.real();
}

CriticalPoint::CriticalPoint(double E_, double epsilon_) : E(E_), epsilon(epsilon_) {
  if (!(epsilon >= 0.0 && epsilon <= 1e-3))
    throw std::invalid_argument("CriticalPoint: epsilon must lie in [0, 1e-3]");
}

}  // namespace rsl
