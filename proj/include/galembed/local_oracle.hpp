#pragma once

// Numeric evaluation of symbol products through tame symbols over Q_ell,
// ell = 1 (mod p^N). An element of Q_ell^x is modelled by its valuation and
// the residue of its unit part; the symbol (x, y) of degree p^n is
//   c = (-1)^{v(x)v(y)} u_x^{v(y)} u_y^{-v(x)} mod ell,
//   value = log_{zeta_base} c^{(ell-1)/p^n}  in Z/p^n.

#include <cstdint>
#include <optional>
#include <vector>

#include "galembed/brauer.hpp"

namespace galembed {

struct LocalValue {
  std::int64_t valuation = 0;
  std::int64_t residue = 1;  // nonzero mod ell
};

struct LocalAssignment {
  std::int64_t p = 3;
  int torsion_level = 1;
  int root_level = 1;
  std::int64_t ell = 7;
  std::int64_t zeta_base = 1;     // order exactly p^n mod ell
  std::vector<LocalValue> values;  // per basis index; index 0 is the root

  // Throws DataError when the invariants fail.
  void validate() const;
};

// Baby-step giant-step: e in [0, order) with base^e = target (mod ell).
std::int64_t bsgs_log(std::int64_t base, std::int64_t target, std::int64_t order, std::int64_t ell);

// The first count primes ell = 1 (mod p^level), ascending. Throws
// DataError if fewer exist below search_bound.
std::vector<std::int64_t> find_suitable_ell(std::int64_t p, int level, std::size_t count,
                                            std::int64_t search_bound = 100'000'000);

// As above but with p^{level+1} not dividing ell - 1, so that zeta_{p^level}
// is not a p-th power in Q_ell.
std::vector<std::int64_t> find_exact_ell(std::int64_t p, int level, std::size_t count,
                                         std::int64_t search_bound = 100'000'000);

// Deterministic in (basis, ell, seed). The root gets valuation 0 and a
// residue of exact order p^N; labels get valuations in [-1, 2] and
// uniform nonzero residues.
LocalAssignment random_assignment(const SymbolBasis& basis, std::int64_t ell, std::uint64_t seed);

// Seed for trial i derived from a master seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

LocalValue eval_monomial(const Monomial& m, const LocalAssignment& a);
std::int64_t eval_symbol(const Monomial& left, const Monomial& right, const LocalAssignment& a);
std::int64_t eval_expression(const BrauerExpression& expr, const LocalAssignment& a);
// Sum over the matrix entries of entry(u, v) * (b_u, b_v).
std::int64_t eval_normal_form(const NormalForm& nf, const LocalAssignment& a);

struct EquivalenceVerdict {
  bool agree = true;
  std::size_t trials = 0;
  std::optional<LocalAssignment> counterexample;
};

// Compares the two expressions on trials assignments spread round-robin
// over ell_count primes.
EquivalenceVerdict check_equivalence(const BrauerExpression& e1, const BrauerExpression& e2,
                                     const SymbolBasis& basis, std::size_t trials, std::uint64_t seed,
                                     std::size_t ell_count = 3);

// An assignment on which expr evaluates to a nonzero value, if one is
// found within trials attempts.
std::optional<LocalAssignment> witness_nontrivial(const BrauerExpression& expr, const SymbolBasis& basis,
                                                  std::size_t trials, std::uint64_t seed,
                                                  std::size_t ell_count = 3);

}  // namespace galembed
