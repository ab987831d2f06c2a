#include <doctest.h>

#include <random>

#include "galembed/catalog.hpp"
#include "galembed/error.hpp"
#include "galembed/group.hpp"

using namespace galembed;

namespace {

const PrimeContext P3 = PrimeContext::make(3);

Presentation group(const char* label, const PrimeContext& ctx = P3) { return instantiate(parse_id(label, ctx), ctx); }

GroupElement repeated(const Presentation& P, const GroupElement& x, int times) {
  GroupElement y = P.identity();
  for (int i = 0; i < times; ++i) y = P.mul(y, x);
  return y;
}

// Inverse by search over the whole group.
GroupElement search_inverse(const Presentation& P, const GroupElement& x) {
  for (const GroupElement& y : enumerate(P)) {
    if (P.mul(x, y).is_identity()) return y;
  }
  FAIL("no inverse");
  return {};
}

GroupElement random_element(const Presentation& P, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(P.rank());
  for (std::size_t i = 0; i < P.rank(); ++i) c[i] = std::uniform_int_distribution<std::int64_t>(0, P.relative_order(i) - 1)(rng);
  return GroupElement{c};
}

}  // namespace

TEST_SUITE("group_engine") {
  TEST_CASE("Phi2(41) multiplication") {
    const Presentation P = group("Phi2(41)");
    REQUIRE(P.rank() == 3);
    const GroupElement alpha = P.generator_element("alpha"), alpha1 = P.generator_element("alpha1");
    CHECK(P.mul(alpha1, alpha).coords == std::vector<std::int64_t>{1, 1, 1});
    CHECK(P.mul(alpha, alpha1).coords == std::vector<std::int64_t>{1, 1, 0});
    CHECK(repeated(P, alpha, 27).coords == std::vector<std::int64_t>{0, 0, 1});
    CHECK(P.pow(alpha, 27) == repeated(P, alpha, 27));
    CHECK(P.pow(P.mul(alpha, alpha1), 3).coords == std::vector<std::int64_t>{3, 0, 0});
    CHECK(P.pow(P.mul(alpha, alpha1), 3) == repeated(P, P.mul(alpha, alpha1), 3));
    CHECK(P.commutator(alpha1, alpha) == P.generator_element("alpha2"));
    CHECK(P.element_order(alpha) == 81);
    CHECK(P.group_order() == 243);
    CHECK(enumerate(P).size() == 243);
  }

  TEST_CASE("identity and inverses") {
    const Presentation P = group("Phi2(41)");
    std::mt19937_64 rng(7);
    CHECK(P.inv(P.identity()).is_identity());
    const GroupElement a = P.generator_element("alpha");
    CHECK(P.inv(a) == search_inverse(P, a));
    CHECK(P.inv(a).coords[0] == 26);
    for (int i = 0; i < 100; ++i) {
      const GroupElement x = random_element(P, rng);
      CHECK(P.mul(x, P.identity()) == x);
      CHECK(P.mul(P.identity(), x) == x);
      CHECK(P.inv(P.inv(x)) == x);
      CHECK(P.mul(x, P.inv(x)).is_identity());
      CHECK(P.pow(x, 0).is_identity());
      CHECK(P.commutator(x, x).is_identity());
      CHECK(P.pow(x, -1) == P.inv(x));
    }
  }

  TEST_CASE("commutators match the definition") {
    const Presentation P = group("Phi4(221)a");
    const GroupElement alpha = P.generator_element("alpha"), alpha2 = P.generator_element("alpha2");
    const GroupElement c = P.commutator(alpha, alpha2);
    CHECK(c == P.generator_element("beta2", 2));
    CHECK(c == P.mul(P.mul(search_inverse(P, alpha), search_inverse(P, alpha2)), P.mul(alpha, alpha2)));
  }

  TEST_CASE("derived subgroup and center") {
    const Presentation P = group("Phi2(41)");
    const auto DP = subgroup_closure(P, derived_subgroup(P));
    CHECK(DP.size() == 3);
    CHECK(in_subgroup(DP, P.generator_element("alpha2")));
    const Presentation Q = group("Phi4(221)a");
    const auto D = subgroup_closure(Q, derived_subgroup(Q));
    CHECK(D.size() == 9);
    CHECK(is_abelian_quotient(Q, {Q.generator_element("beta1"), Q.generator_element("beta2")}));
    CHECK_FALSE(is_abelian_quotient(Q, {Q.generator_element("beta1")}));

    const Presentation A(P3, {{"x", 2, false}, {"y", 1, true}}, {GroupElement{{0, 0}}, GroupElement{{0, 0}}}, {});
    CHECK(subgroup_closure(A, derived_subgroup(A)).size() == 1);
    CHECK(subgroup_closure(A, center(A)).size() == 27);
  }

  TEST_CASE("central_log") {
    const Presentation P = group("Phi2(41)");
    const GroupElement a2 = P.generator_element("alpha2");
    CHECK(central_log(P, P.identity(), a2) == 0);
    CHECK(central_log(P, P.pow(P.generator_element("alpha"), 27), a2) == 1);
    const Presentation Q = group("Phi4(221)a");
    const GroupElement b1 = Q.generator_element("beta1"), b2 = Q.generator_element("beta2");
    CHECK(central_log(Q, Q.commutator(Q.generator_element("alpha"), Q.generator_element("alpha1")), b1, {b2}) == 2);
    CHECK_THROWS_AS(central_log(Q, Q.generator_element("alpha"), b1, {b2}), DataError);
  }

  TEST_CASE("enumeration and bounds") {
    CHECK(enumerate(group("Phi14(42)")).size() == 729);
    CHECK_THROWS_AS(enumerate(group("Phi14(42)"), 100), BoundExceeded);
    const Presentation T(P3, {}, {}, {});
    CHECK(enumerate(T).size() == 1);
  }

  TEST_CASE("presentation validation") {
    // A tail on a non-central generator is rejected.
    CHECK_THROWS_AS(Presentation(P3, {{"x", 1, false}, {"y", 1, false}}, {GroupElement{{0, 1}}, GroupElement{{0, 0}}}, {}),
                    DataError);
    CHECK_THROWS_AS(group("Phi2(41)").element({1, 2}), DataError);
  }

  TEST_CASE("associativity check") {
    const auto small = check_associativity(group("Phi2(41)"), 0, 1);
    CHECK(small.ok);
    CHECK(small.exhaustive);
    CHECK(small.triples == 243ull * 243 * 243);
    const auto big = check_associativity(group("Phi14(42)"), 2000, 1);
    CHECK(big.ok);
    CHECK_FALSE(big.exhaustive);
  }
}
