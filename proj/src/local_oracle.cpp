#include "galembed/local_oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "galembed/error.hpp"
#include "galembed/number_theory.hpp"

namespace galembed {

namespace {

std::int64_t isqrt_ceil(std::int64_t n) {
  std::int64_t r = 0;
  while (r * r < n) ++r;
  return r;
}

std::int64_t primitive_root_mod(std::int64_t ell) {
  // Factor ell - 1 once, then test candidates against each prime factor.
  std::vector<std::int64_t> factors;
  std::int64_t m = ell - 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    factors.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) factors.push_back(m);
  for (std::int64_t x = 2; x < ell; ++x) {
    bool ok = true;
    for (std::int64_t q : factors) {
      if (pow_mod(x, (ell - 1) / q, ell) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw DataError("no primitive root modulo " + std::to_string(ell));
}

std::int64_t order_of(std::int64_t x, std::int64_t candidate_order, std::int64_t p, std::int64_t ell) {
  // Exact order of x given that it divides candidate_order, a power of p.
  std::int64_t ord = candidate_order;
  while (ord % p == 0 && pow_mod(x, ord / p, ell) == 1) ord /= p;
  return pow_mod(x, ord, ell) == 1 ? ord : -1;
}

}  // namespace

void LocalAssignment::validate() const {
  if (!is_prime(ell)) throw DataError("ell must be prime");
  const std::int64_t pn = ipow(p, torsion_level);
  const std::int64_t pN = ipow(p, root_level);
  if ((ell - 1) % pN != 0) throw DataError("ell must be 1 mod p^N");
  if (order_of(mod(zeta_base, ell), pn, p, ell) != pn) throw DataError("zeta_base must have order p^n");
  if (values.empty()) throw DataError("assignment has no values");
  for (const LocalValue& v : values) {
    if (mod(v.residue, ell) == 0) throw DataError("degenerate assignment: zero residue");
  }
  if (values[0].valuation != 0 || order_of(mod(values[0].residue, ell), pN, p, ell) != pN) {
    throw DataError("the root symbol must be a unit of order p^N");
  }
}

std::int64_t bsgs_log(std::int64_t base, std::int64_t target, std::int64_t order, std::int64_t ell) {
  base = mod(base, ell);
  target = mod(target, ell);
  const std::int64_t m = isqrt_ceil(order);
  std::unordered_map<std::int64_t, std::int64_t> baby;
  std::int64_t cur = 1;
  for (std::int64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, base, ell);
  }
  const std::int64_t giant = pow_mod(base, order - m, ell);  // base^{-m}
  std::int64_t gamma = target;
  for (std::int64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return mod(i * m + it->second, order);
    gamma = mul_mod(gamma, giant, ell);
  }
  throw DataError("bsgs_log: target is not in the subgroup generated by base");
}

std::vector<std::int64_t> find_suitable_ell(std::int64_t p, int level, std::size_t count, std::int64_t search_bound) {
  const std::int64_t step = ipow(p, level);
  std::vector<std::int64_t> out;
  for (std::int64_t ell = step + 1; ell <= search_bound && out.size() < count; ell += step) {
    if (is_prime(ell)) out.push_back(ell);
  }
  if (out.size() < count) throw DataError("not enough primes = 1 mod p^" + std::to_string(level) + " below the search bound");
  return out;
}

std::vector<std::int64_t> find_exact_ell(std::int64_t p, int level, std::size_t count, std::int64_t search_bound) {
  const std::int64_t step = ipow(p, level);
  std::vector<std::int64_t> out;
  for (std::int64_t ell = step + 1; ell <= search_bound && out.size() < count; ell += step) {
    if ((ell - 1) % (step * p) != 0 && is_prime(ell)) out.push_back(ell);
  }
  if (out.size() < count) throw DataError("not enough primes with exact p^" + std::to_string(level) + " | ell - 1");
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  // splitmix64 finalizer
  std::uint64_t z = master ^ (trial + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LocalAssignment random_assignment(const SymbolBasis& basis, std::int64_t ell, std::uint64_t seed) {
  basis.validate();
  const std::int64_t pN = ipow(basis.p, basis.root_level);
  if (!is_prime(ell) || (ell - 1) % pN != 0) throw DataError("ell must be a prime = 1 mod p^N");
  std::mt19937_64 rng(seed);
  LocalAssignment a;
  a.p = basis.p;
  a.torsion_level = basis.torsion_level;
  a.root_level = basis.root_level;
  a.ell = ell;

  const std::int64_t h = primitive_root_mod(ell);
  std::uniform_int_distribution<std::int64_t> unit_exp(1, pN - 1);
  std::int64_t u = unit_exp(rng);
  while (u % basis.p == 0) u = unit_exp(rng);
  const std::int64_t root = pow_mod(h, (ell - 1) / pN * u, ell);
  a.zeta_base = pow_mod(root, ipow(basis.p, basis.root_level - basis.torsion_level), ell);
  a.values.push_back({0, root});

  std::uniform_int_distribution<std::int64_t> valuation(-1, 2);
  std::uniform_int_distribution<std::int64_t> residue(1, ell - 1);
  for (int i = 1; i <= basis.labels; ++i) {
    const std::int64_t v = valuation(rng);
    a.values.push_back({v, residue(rng)});
  }
  return a;
}

LocalValue eval_monomial(const Monomial& m, const LocalAssignment& a) {
  if (m.exps.size() != a.values.size()) throw DataError("monomial does not match the assignment");
  LocalValue out{0, 1};
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (mod(a.values[i].residue, a.ell) == 0) throw DataError("degenerate assignment: zero residue");
    out.valuation += m.exps[i] * a.values[i].valuation;
    out.residue = mul_mod(out.residue, pow_mod(a.values[i].residue, m.exps[i], a.ell), a.ell);
  }
  return out;
}

namespace {

std::int64_t tame(const LocalValue& x, const LocalValue& y, const LocalAssignment& a) {
  const std::int64_t ell = a.ell;
  std::int64_t c = (x.valuation * y.valuation) % 2 == 0 ? 1 : ell - 1;
  c = mul_mod(c, pow_mod(x.residue, y.valuation, ell), ell);
  c = mul_mod(c, pow_mod(y.residue, -x.valuation, ell), ell);
  const std::int64_t pn = ipow(a.p, a.torsion_level);
  return bsgs_log(a.zeta_base, pow_mod(c, (ell - 1) / pn, ell), pn, ell);
}

}  // namespace

std::int64_t eval_symbol(const Monomial& left, const Monomial& right, const LocalAssignment& a) {
  return tame(eval_monomial(left, a), eval_monomial(right, a), a);
}

std::int64_t eval_expression(const BrauerExpression& expr, const LocalAssignment& a) {
  const std::int64_t pn = ipow(a.p, a.torsion_level);
  std::int64_t total = 0;
  for (const SymbolFactor& f : expr.factors) {
    total = mod(total + mul_mod(f.exponent, eval_symbol(f.left, f.right, a), pn), pn);
  }
  return total;
}

std::int64_t eval_normal_form(const NormalForm& nf, const LocalAssignment& a) {
  const std::int64_t pn = ipow(a.p, a.torsion_level);
  const std::size_t n = nf.basis().size();
  if (n != a.values.size()) throw DataError("normal form does not match the assignment");
  std::int64_t total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::int64_t e = nf.entry(u, v);
      if (e != 0) total = mod(total + mul_mod(e, tame(a.values[u], a.values[v], a), pn), pn);
    }
  }
  return total;
}

EquivalenceVerdict check_equivalence(const BrauerExpression& e1, const BrauerExpression& e2, const SymbolBasis& basis,
                                     std::size_t trials, std::uint64_t seed, std::size_t ell_count) {
  const auto ells = find_exact_ell(basis.p, basis.root_level, std::max<std::size_t>(1, ell_count));
  EquivalenceVerdict verdict;
  for (std::size_t k = 0; k < trials; ++k) {
    const LocalAssignment a = random_assignment(basis, ells[k % ells.size()], trial_seed(seed, k));
    ++verdict.trials;
    if (eval_expression(e1, a) != eval_expression(e2, a)) {
      verdict.agree = false;
      verdict.counterexample = a;
      break;
    }
  }
  return verdict;
}

std::optional<LocalAssignment> witness_nontrivial(const BrauerExpression& expr, const SymbolBasis& basis,
                                                  std::size_t trials, std::uint64_t seed, std::size_t ell_count) {
  const auto ells = find_exact_ell(basis.p, basis.root_level, std::max<std::size_t>(1, ell_count));
  for (std::size_t k = 0; k < trials; ++k) {
    LocalAssignment a = random_assignment(basis, ells[k % ells.size()], trial_seed(seed, k));
    if (eval_expression(expr, a) != 0) return a;
  }
  return std::nullopt;
}

}  // namespace galembed
