#include <doctest.h>

#include "galembed/catalog.hpp"
#include "galembed/error.hpp"
#include "galembed/extension.hpp"

using namespace galembed;

namespace {

EmbeddingProblemSpec spec_of(const char* label, std::int64_t p, int root_level = 1) {
  const PrimeContext ctx = PrimeContext::make(p);
  return EmbeddingProblemSpec::from_record(make_record(parse_id(label, ctx), ctx), root_level);
}

// Order of s modulo K by search over powers and the enumerated kernel.
int brute_n(const EmbeddingProblemSpec& s, const GroupElement& x) {
  const auto K = subgroup_closure(s.presentation, s.kernel_elements());
  const std::int64_t p = s.presentation.p();
  std::int64_t e = 1;
  while (!in_subgroup(K, s.presentation.pow(x, e))) ++e;
  return p_valuation(e, p);
}

// m with x = eps^m * c for c in the complement, by search.
std::int64_t brute_log(const EmbeddingProblemSpec& s, const GroupElement& x, std::size_t k) {
  const Presentation& P = s.presentation;
  std::vector<GroupElement> comp;
  for (std::size_t j = 0; j < s.kernel_gens.size(); ++j) {
    if (j != k) comp.push_back(s.kernel_element(j));
  }
  const auto C = subgroup_closure(P, comp);
  const GroupElement eps = s.kernel_element(k);
  for (std::int64_t m = 0; m < P.element_order(eps); ++m) {
    for (const GroupElement& c : C) {
      if (P.mul(P.pow(eps, m), c) == x) return m;
    }
  }
  FAIL("not in the kernel");
  return -1;
}

}  // namespace

TEST_SUITE("extension_analysis") {
  TEST_CASE("quotient structure") {
    CHECK(quotient_structure(spec_of("Phi2(41)", 3)) == std::vector<int>{1, 3});
    CHECK(quotient_structure(spec_of("Phi5(1^5)", 5)) == std::vector<int>{1, 1, 1, 1});
    const auto s33 = spec_of("Phi2(33)", 3);
    const auto n33 = quotient_structure(s33);
    CHECK(n33 == std::vector<int>{3, 2});
    for (std::size_t i = 0; i < s33.preimages.size(); ++i) CHECK(n33[i] == brute_n(s33, s33.preimages[i]));
    CHECK_THROWS_AS(quotient_structure(spec_of("Phi14(42)", 3), 10), BoundExceeded);
  }

  TEST_CASE("bad pre-images are rejected") {
    auto s = spec_of("Phi2(41)", 3);
    s.preimages[1] = s.preimages[0];
    CHECK_THROWS_AS(quotient_structure(s), DataError);
    auto t = spec_of("Phi4(221)a", 3);
    t.kernel_gens = {"beta1"};
    CHECK_THROWS_AS(quotient_structure(t), DataError);  // quotient not abelian
  }

  TEST_CASE("Phi2(41) parameters") {
    for (std::int64_t p : {3, 5, 7, 11}) {
      const auto s = spec_of("Phi2(41)", p);
      const ExtensionParams e = extract_params(s, 0);
      CHECK(e.n == std::vector<int>{1, 3});
      CHECK(e.m == std::vector<std::int64_t>{0, 1});
      CHECK(e.d[0][1] == p - 1);
      if (p <= 5) {
        const Presentation& P = s.presentation;
        CHECK(e.d[0][1] == brute_log(s, P.commutator(s.preimages[1], s.preimages[0]), 0));
        CHECK(e.m[1] == brute_log(s, P.pow(s.preimages[1], ipow(p, 3)), 0));
      }
    }
  }

  TEST_CASE("Phi4(221)a parameters per kernel") {
    for (std::int64_t p : {3, 5}) {
      const auto s = spec_of("Phi4(221)a", p);
      const Presentation& P = s.presentation;
      for (std::size_t k = 0; k < 2; ++k) {
        const ExtensionParams e = extract_params(s, k);
        CHECK(e.t == 3);
        for (std::size_t i = 0; i < 3; ++i) {
          CHECK(e.m[i] == brute_log(s, P.pow(s.preimages[i], p), k));
          for (std::size_t j = i + 1; j < 3; ++j) {
            CHECK(e.d[i][j] == brute_log(s, P.commutator(s.preimages[j], s.preimages[i]), k));
          }
        }
      }
      // kernel beta2 first, then beta1
      const ExtensionParams e2 = extract_params(s, 0), e1 = extract_params(s, 1);
      CHECK(e2.m == std::vector<std::int64_t>{0, 0, 1});
      CHECK(e2.d[1][2] == p - 1);
      CHECK(e1.m == std::vector<std::int64_t>{1, 0, 0});
      CHECK(e1.d[0][2] == p - 1);
    }
  }

  TEST_CASE("central kernel candidates") {
    const PrimeContext ctx = PrimeContext::make(3);
    const Presentation P = instantiate(parse_id("Phi2(41)", ctx), ctx);
    const auto c = find_central_kernels(P);
    std::size_t order_p = 0;
    for (const auto& k : c) {
      if (k.kind != KernelCandidate::Kind::order_p) continue;
      ++order_p;
      CHECK(subgroup_closure(P, k.generators) == subgroup_closure(P, {P.generator_element("alpha2")}));
    }
    CHECK(order_p == 1);
    CHECK(kernel_among(P, c, {P.generator_element("alpha2")}));

    const Presentation Q = instantiate(parse_id("Phi4(1^5)", ctx), ctx);
    CHECK(kernel_among(Q, find_central_kernels(Q), {Q.generator_element("beta1"), Q.generator_element("beta2")}));

    const Presentation A(ctx, {{"x", 1, false}, {"y", 1, true}}, {GroupElement{{0, 0}}, GroupElement{{0, 0}}}, {});
    std::size_t count = 0;
    for (const auto& k : find_central_kernels(A)) count += k.kind == KernelCandidate::Kind::order_p;
    CHECK(count == 4);  // every line in F_3^2
  }

  TEST_CASE("Frattini subgroup") {
    const PrimeContext ctx = PrimeContext::make(3);
    const Presentation P = instantiate(parse_id("Phi14(42)", ctx), ctx);
    CHECK(frattini_contains_kernel(P, {P.generator_element("beta")}));
    const Presentation Q = instantiate(parse_id("Phi2(41)", ctx), ctx);
    CHECK(frattini_contains_kernel(Q, {Q.generator_element("alpha2")}));
    const Presentation A(ctx, {{"x", 1, false}, {"y", 1, true}}, {GroupElement{{0, 0}}, GroupElement{{0, 0}}}, {});
    CHECK(frattini_subgroup(A).size() == 1);
    CHECK_FALSE(frattini_contains_kernel(A, {A.generator_element("y")}));
  }

  TEST_CASE("minimal root level") {
    for (std::int64_t p : {3, 5}) {
      CHECK(minimal_root_level(spec_of("Phi2(41)", p)) == 3);
      CHECK(minimal_root_level(spec_of("Phi5(1^5)", p)) == 1);
      CHECK(minimal_root_level(spec_of("Phi2(32)a2", p)) == 2);
      CHECK(minimal_root_level(spec_of("Phi14(222)", p)) == 2);
    }
  }

  TEST_CASE("group checks") {
    const PrimeContext ctx = PrimeContext::make(3);
    const GroupCheck c = check_group(parse_id("Phi4(221)a", ctx), ctx, 100, 1);
    CHECK(c.ok());
    CHECK(c.invariants == std::vector<int>{1, 1, 1});
  }
}
