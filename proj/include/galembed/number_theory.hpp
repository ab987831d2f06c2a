#pragma once

#include <cstdint>

namespace galembed {

// Least non-negative residue of a mod m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t base, int exp);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
// Negative exponents use the modular inverse of base.
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

bool is_prime(std::int64_t n);

// Inverse of x modulo m; throws DataError when gcd(x, m) != 1.
std::int64_t mod_inverse(std::int64_t x, std::int64_t m);

std::int64_t smallest_nonresidue(std::int64_t p);
std::int64_t smallest_primitive_root(std::int64_t p);
std::int64_t multiplicative_order(std::int64_t x, std::int64_t p);

// Exponent e in [0, p-1) with base^e = target (mod p), by exhaustive search.
// Throws DataError if target is not a power of base.
std::int64_t discrete_log_mod_p(std::int64_t base, std::int64_t target, std::int64_t p);

// Largest k with p^k | x (x != 0).
int p_valuation(std::int64_t x, std::int64_t p);

// The constants attached to an odd prime: the smallest quadratic
// non-residue nu and the smallest primitive root g.
struct PrimeContext {
  std::int64_t p = 0;
  std::int64_t nu = 0;
  std::int64_t g = 0;

  // Throws DataError unless p is an odd prime.
  static PrimeContext make(std::int64_t p);

  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;
};

}  // namespace galembed
