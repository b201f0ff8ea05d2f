#include "rsl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsl {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

PrimeTable sieve_primes(std::int64_t limit) {
  if (limit > 100'000'000)
    throw std::invalid_argument("sieve_primes: limit " + std::to_string(limit) +
                                " exceeds supported bound 1e8");
  PrimeTable table;
  table.limit = limit;
  if (limit < 2) return table;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i * i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i * i; j <= limit; j += i)
      composite[static_cast<std::size_t>(j)] = true;
  }
  for (std::int64_t i = 2; i <= limit; ++i)
    if (!composite[static_cast<std::size_t>(i)]) table.primes.push_back(i);
  return table;
}

std::int64_t totient(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("totient: argument must be positive");
  std::int64_t result = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::complex<double> Character::value(std::int64_t n) const {
  std::int64_t r = n % modulus;
  if (r < 0) r += modulus;
  int e = exponents[static_cast<std::size_t>(r)];
  if (e < 0) return {0.0, 0.0};
  if (order == 1) return {1.0, 0.0};
  if (order == 2) return {e == 0 ? 1.0 : -1.0, 0.0};
  double ang = 2.0 * std::numbers::pi * static_cast<double>(e) / order;
  return {std::cos(ang), std::sin(ang)};
}

int Character::real_value(std::int64_t n) const {
  if (!is_real)
    throw std::invalid_argument("Character::real_value: character is not real");
  std::int64_t r = n % modulus;
  if (r < 0) r += modulus;
  int e = exponents[static_cast<std::size_t>(r)];
  if (e < 0) return 0;
  return e == 0 ? 1 : -1;
}

namespace {

// chi is induced by some character mod e | d, e < d, iff chi is constant on
// every residue class mod e intersected with the units mod d.
bool induced_by_divisor(const Character& chi, std::int64_t e) {
  std::int64_t d = chi.modulus;
  for (std::int64_t c = 0; c < e; ++c) {
    int seen = -2;  // sentinel: no unit in this class yet
    for (std::int64_t n = c; n < d; n += e) {
      int v = chi.exponents[static_cast<std::size_t>(n)];
      if (v < 0) continue;
      if (seen == -2) {
        seen = v;
      } else if (seen != v) {
        return false;  // two units in the same class mod e disagree
      }
    }
  }
  return true;
}

}  // namespace

bool verify_primitive(const Character& chi) {
  std::int64_t d = chi.modulus;
  if (d == 1) return true;
  for (std::int64_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    if (induced_by_divisor(chi, e)) return false;
  }
  return true;
}

namespace {

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = (result * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return result;
}

bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  // Factor p-1, then test candidates g by checking g^((p-1)/q) != 1.
  std::int64_t m = p - 1;
  std::vector<std::int64_t> qs;
  std::int64_t t = m;
  for (std::int64_t q = 2; q * q <= t; ++q) {
    if (t % q != 0) continue;
    qs.push_back(q);
    while (t % q == 0) t /= q;
  }
  if (t > 1) qs.push_back(t);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t q : qs) {
      if (pow_mod(g, m / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("smallest_primitive_root: none found (input not prime?)");
}

void finish_character(Character& chi) {
  chi.is_real = chi.order <= 2;
  if (chi.modulus == 1) {
    chi.is_even = true;
  } else {
    int e = chi.exponents[static_cast<std::size_t>(chi.modulus - 1)];
    chi.is_even = (e == 0);
  }
  chi.is_primitive = verify_primitive(chi);
}

}  // namespace

Character character_mod_prime(std::int64_t p, int index) {
  if (p < 3 || !is_prime_small(p) || p % 2 == 0)
    throw std::invalid_argument("character_mod_prime: modulus must be an odd prime");
  std::int64_t m = p - 1;
  if (index < 0 || index >= m)
    throw std::invalid_argument("character_mod_prime: index out of range [0, p-2]");
  Character chi;
  chi.modulus = p;
  chi.exponents.assign(static_cast<std::size_t>(p), -1);
  std::int64_t g = smallest_primitive_root(p);
  std::int64_t gcd_jm = gcd64(index == 0 ? m : index, m);
  std::int64_t ord = m / gcd_jm;              // order of chi
  std::int64_t t = index / gcd_jm;            // chi(g^a) = exp(2 pi i a t / ord)
  chi.order = static_cast<int>(ord);
  std::int64_t pw = 1;
  for (std::int64_t a = 0; a < m; ++a) {
    chi.exponents[static_cast<std::size_t>(pw)] =
        static_cast<int>((a % ord) * t % ord);
    pw = (pw * g) % p;
  }
  finish_character(chi);
  return chi;
}

Character real_primitive_character(std::int64_t d) {
  Character chi;
  if (d == 1) {
    chi.modulus = 1;
    chi.order = 1;
    chi.exponents = {0};
    finish_character(chi);
    return chi;
  }
  if (d == 4) {
    chi.modulus = 4;
    chi.order = 2;
    chi.exponents = {-1, 0, -1, 1};  // chi(1)=1, chi(3)=-1
    finish_character(chi);
    return chi;
  }
  if (d == 8) {
    // The even real primitive character mod 8: chi(1)=chi(7)=1, chi(3)=chi(5)=-1.
    chi.modulus = 8;
    chi.order = 2;
    chi.exponents = {-1, 0, -1, 1, -1, 1, -1, 0};
    finish_character(chi);
    return chi;
  }
  if (d >= 3 && d % 2 == 1 && is_prime_small(d)) {
    // Legendre symbol: chi(n) = +1 for quadratic residues, -1 otherwise.
    chi.modulus = d;
    chi.order = 2;
    chi.exponents.assign(static_cast<std::size_t>(d), -1);
    for (std::int64_t n = 1; n < d; ++n) {
      std::int64_t ls = pow_mod(n, (d - 1) / 2, d);
      chi.exponents[static_cast<std::size_t>(n)] = (ls == 1) ? 0 : 1;
    }
    finish_character(chi);
    return chi;
  }
  throw std::invalid_argument("real_primitive_character: modulus " + std::to_string(d) +
                              " is not 1, 4, 8, or an odd prime");
}

std::int64_t prime_count_progression(std::int64_t a, std::int64_t d, double x) {
  if (d < 2) throw std::invalid_argument("prime_count_progression: modulus must be >= 2");
  if (a < 1 || a >= d)
    throw std::invalid_argument("prime_count_progression: residue out of range [1, d)");
  if (gcd64(a, d) != 1)
    throw std::invalid_argument("prime_count_progression: residue not coprime to modulus");
  if (!(x >= 0.0))
    throw std::invalid_argument("prime_count_progression: bound must be nonnegative");
  std::int64_t limit = static_cast<std::int64_t>(std::floor(x));
  PrimeTable table = sieve_primes(limit);
  std::int64_t count = 0;
  for (std::int64_t p : table.primes)
    if (p % d == a) ++count;
  return count;
}

double log_integral(double x) {
  if (!(x > 1.0))
    throw std::invalid_argument("log_integral: argument must exceed 1");
  // li(x) = gamma + log(log x) + sum_{k>=1} (log x)^k / (k * k!), valid for
  // x > 1; all terms are positive so there is no cancellation.
  constexpr double euler_gamma = 0.57721566490153286060651209008240243;
  double u = std::log(x);
  double sum = 0.0;
  double term = 1.0;  // u^k / k!
  for (int k = 1; k < 1000; ++k) {
    term *= u / k;
    double add = term / k;
    sum += add;
    if (k > u && add < 1e-16 * (1.0 + std::fabs(sum))) break;
  }
  return euler_gamma + std::log(u) + sum;
}

}  // namespace rsl
