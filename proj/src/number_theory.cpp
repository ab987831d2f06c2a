#include "galembed/number_theory.hpp"

#include <string>

#include "galembed/error.hpp"

namespace galembed {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  if (exp < 0) {
    base = mod_inverse(base, m);
    exp = -exp;
  }
  std::int64_t result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod_inverse(std::int64_t x, std::int64_t m) {
  std::int64_t old_r = mod(x, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw DataError(std::to_string(x) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

std::int64_t multiplicative_order(std::int64_t x, std::int64_t p) {
  x = mod(x, p);
  if (x == 0) throw DataError("0 has no multiplicative order");
  std::int64_t order = 1;
  std::int64_t y = x;
  while (y != 1) {
    y = mul_mod(y, x, p);
    ++order;
  }
  return order;
}

std::int64_t smallest_nonresidue(std::int64_t p) {
  for (std::int64_t x = 2; x < p; ++x) {
    if (pow_mod(x, (p - 1) / 2, p) == p - 1) return x;
  }
  throw DataError("no quadratic non-residue modulo " + std::to_string(p));
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  for (std::int64_t x = 2; x < p; ++x) {
    if (multiplicative_order(x, p) == p - 1) return x;
  }
  throw DataError("no primitive root modulo " + std::to_string(p));
}

std::int64_t discrete_log_mod_p(std::int64_t base, std::int64_t target, std::int64_t p) {
  target = mod(target, p);
  std::int64_t y = 1;
  for (std::int64_t e = 0; e < p - 1; ++e) {
    if (y == target) return e;
    y = mul_mod(y, base, p);
  }
  throw DataError(std::to_string(target) + " is not a power of " + std::to_string(base) +
                  " modulo " + std::to_string(p));
}

int p_valuation(std::int64_t x, std::int64_t p) {
  int v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

PrimeContext PrimeContext::make(std::int64_t p) {
  if (p == 2) throw DataError("p = 2 is not supported; the prime must be odd");
  if (!is_prime(p)) throw DataError(std::to_string(p) + " is not a prime");
  return PrimeContext{p, smallest_nonresidue(p), smallest_primitive_root(p)};
}

}  // namespace galembed
