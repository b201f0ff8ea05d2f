#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rsl {

// Primes up to a fixed limit, ascending.
struct PrimeTable {
  std::int64_t limit = 0;
  std::vector<std::int64_t> primes;
};

// Sieve of Eratosthenes. A limit below 2 yields an empty table; limits
// beyond 1e8 are rejected rather than silently thrashing memory.
PrimeTable sieve_primes(std::int64_t limit);

// Euler totient, by trial-division factorization.
std::int64_t totient(std::int64_t n);

// Dirichlet character mod d.  Values are roots of unity stored as exponent
// indices: value(n) = exp(2*pi*i * exponents[n % d] / order), or 0 when the
// stored index is negative (gcd(n, d) > 1).  Storing exponents rather than
// floating-point values keeps multiplicativity chi(mn) = chi(m)chi(n) exact.
struct Character {
  std::int64_t modulus = 1;
  int order = 1;
  std::vector<int> exponents;  // size == modulus; -1 marks chi(n) = 0
  bool is_primitive = false;
  bool is_real = false;
  bool is_even = false;  // chi(-1) == +1

  std::complex<double> value(std::int64_t n) const;
  int real_value(std::int64_t n) const;  // {-1, 0, +1}; requires is_real
  bool is_principal() const { return modulus == 1; }
};

// The real primitive character mod d, for d = 1, 4, 8, or an odd prime.
// d = 1 is the trivial character; d = 4 gives the odd character of period 4;
// d = 8 returns the even one of the two real primitive characters mod 8;
// an odd prime gives the Legendre symbol.  Other moduli are rejected.
Character real_primitive_character(std::int64_t d);

// Character mod an odd prime p with chi(g^a) = exp(2*pi*i*a*index/(p-1))
// for a fixed primitive root g (the smallest one).  index = 0 is principal.
Character character_mod_prime(std::int64_t p, int index);

// True iff chi is not induced by a character of any proper divisor modulus.
bool verify_primitive(const Character& chi);

// Number of primes p <= x with p = a (mod d).  Requires d >= 2,
// 1 <= a < d, gcd(a, d) = 1, and x small enough to sieve (<= 1e8).
std::int64_t prime_count_progression(std::int64_t a, std::int64_t d, double x);

// Logarithmic integral li(x) = PV int_0^x dt/log t, for x > 1.
double log_integral(double x);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace rsl
