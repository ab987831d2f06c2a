#include <doctest.h>

#include <algorithm>
#include <random>

#include "galembed/error.hpp"
#include "galembed/local_oracle.hpp"
#include "galembed/number_theory.hpp"

using namespace galembed;

namespace {

LocalAssignment two_symbols(std::int64_t ell, std::int64_t zeta, LocalValue x, LocalValue y) {
  LocalAssignment a;
  a.p = 3;
  a.torsion_level = 1;
  a.root_level = 1;
  a.ell = ell;
  a.zeta_base = zeta;
  a.values = {{0, zeta}, x, y};
  return a;
}

}  // namespace

TEST_SUITE("local_oracle") {
  TEST_CASE("tame symbol by hand") {
    const SymbolBasis b{3, 2, 1, 1};
    const LocalAssignment a = two_symbols(7, 2, {1, 1}, {0, 3});
    CHECK_NOTHROW(a.validate());
    // c = 3^-1 = 5 mod 7, 5^2 = 4 = 2^2
    CHECK(eval_symbol(Monomial::label(b, 1), Monomial::label(b, 2), a) == 2);
    CHECK(eval_symbol(Monomial::label(b, 2), Monomial::label(b, 1), a) == 1);
    const LocalAssignment units = two_symbols(7, 2, {0, 3}, {0, 5});
    CHECK(eval_symbol(Monomial::label(b, 1), Monomial::label(b, 2), units) == 0);
    CHECK(eval_expression(BrauerExpression{}, a) == 0);
  }

  TEST_CASE("bsgs") {
    for (std::int64_t e = 0; e < 81; ++e) CHECK(bsgs_log(4, pow_mod(4, e, 163), 81, 163) == e);
    CHECK_THROWS_AS(bsgs_log(pow_mod(2, 2, 7), 3, 3, 7), DataError);
  }

  TEST_CASE("suitable primes") {
    const auto e = find_suitable_ell(3, 1, 3);
    CHECK(e == std::vector<std::int64_t>{7, 13, 19});
    CHECK(find_suitable_ell(3, 4, 1) == std::vector<std::int64_t>{163});
    for (std::int64_t ell : find_exact_ell(5, 2, 4)) {
      CHECK(is_prime(ell));
      CHECK(p_valuation(ell - 1, 5) == 2);
    }
    CHECK_THROWS_AS(find_suitable_ell(3, 4, 5, 200), DataError);
  }

  TEST_CASE("validation") {
    LocalAssignment a = two_symbols(7, 2, {1, 0}, {0, 3});
    CHECK_THROWS_AS(a.validate(), DataError);
    const SymbolBasis b{3, 2, 1, 1};
    CHECK_THROWS_AS(eval_symbol(Monomial::label(b, 1), Monomial::label(b, 2), a), DataError);
    CHECK_THROWS_AS(random_assignment(b, 11, 1), DataError);  // 11 != 1 mod 3
    CHECK_NOTHROW(random_assignment(b, 7, 1).validate());
  }

  TEST_CASE("bilinear and alternating on random assignments") {
    std::mt19937_64 rng(42);
    for (std::int64_t p : {3, 5}) {
      for (int N : {1, 2}) {
        const SymbolBasis b{p, 3, N, N};
        const auto ells = find_exact_ell(p, N, 3);
        std::uniform_int_distribution<std::int64_t> ex(0, b.torsion() - 1);
        auto mono = [&] {
          Monomial m = Monomial::zero(b);
          for (auto& e : m.exps) e = ex(rng);
          return m;
        };
        for (int k = 0; k < 1250; ++k) {
          const LocalAssignment a = random_assignment(b, ells[k % 3], rng());
          const Monomial x = mono(), x2 = mono(), y = mono();
          Monomial xx = x;
          xx *= x2;
          const std::int64_t T = b.torsion();
          CHECK(eval_symbol(xx, y, a) == mod(eval_symbol(x, y, a) + eval_symbol(x2, y, a), T));
          CHECK(eval_symbol(x, x, a) == 0);
          CHECK(mod(eval_symbol(x, y, a) + eval_symbol(y, x, a), T) == 0);
        }
      }
    }
  }

  TEST_CASE("merged and unmerged forms agree") {
    for (std::int64_t p : {3, 5}) {
      const SymbolBasis b{p, 2, 3, 1};
      const auto v = check_equivalence(parse("(z3^-1*a1, a2; z)", b), parse("(a1,a2;z)(a2,z3;z)", b), b, 200, 9);
      CHECK(v.agree);
      CHECK(v.trials == 200);
      const auto w = check_equivalence(parse("(a1, a2; z)", b), parse("(a2,a1;z)", b), b, 200, 9);
      CHECK_FALSE(w.agree);
      CHECK(w.counterexample.has_value());
    }
  }

  TEST_CASE("witnesses and determinism") {
    const SymbolBasis b{3, 2, 1, 1};
    CHECK(witness_nontrivial(parse("(a1, a2; z)", b), b, 10, 3).has_value());
    CHECK_FALSE(witness_nontrivial(parse("(a1, a1; z)", b), b, 50, 3).has_value());
    const LocalAssignment x = random_assignment(b, 13, 77), y = random_assignment(b, 13, 77);
    CHECK(x.zeta_base == y.zeta_base);
    CHECK(std::equal(x.values.begin(), x.values.end(), y.values.begin(), [](const LocalValue& u, const LocalValue& v) {
      return u.valuation == v.valuation && u.residue == v.residue;
    }));
    CHECK(trial_seed(5, 1) != trial_seed(5, 2));
  }
}
