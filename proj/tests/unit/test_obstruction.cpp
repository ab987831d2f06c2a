#include <doctest.h>

#include "galembed/catalog.hpp"
#include "galembed/error.hpp"
#include "galembed/extension.hpp"
#include "galembed/obstruction.hpp"

using namespace galembed;

namespace {

EmbeddingProblemSpec spec_of(const char* label, std::int64_t p, int root_level) {
  const PrimeContext ctx = PrimeContext::make(p);
  return EmbeddingProblemSpec::from_record(make_record(parse_id(label, ctx), ctx), root_level);
}

std::vector<NormalForm> nfs(const std::vector<const char*>& texts, const SymbolBasis& b) {
  std::vector<NormalForm> out;
  for (const char* t : texts) out.push_back(normalize(parse(t, b), b));
  return out;
}

bool same_set(const std::vector<NormalForm>& a, const std::vector<NormalForm>& b) {
  return compare_conditions(a, b) == Verdict::exact;
}

}  // namespace

TEST_SUITE("obstruction_engine") {
  TEST_CASE("cyclic-by-cyclic quotient") {
    for (std::int64_t p : {3, 5, 7}) {
      const ObstructionResult r = obstruction_abelian(spec_of("Phi2(41)", p, 3));
      CHECK(r.rendered() == std::vector<std::string>{"(z3^-1*a1, a2; z)"});
      const ObstructionResult r2 = obstruction_abelian(spec_of("Phi2(32)a2", p, 2));
      CHECK(same_set(r2.normal_forms, nfs({"(a2, z2; z)", "(a1, a2; z)"}, r2.basis)));
      CHECK(r.kind == SolvabilityKind::proper);
    }
  }

  TEST_CASE("root level below the requirement is rejected") {
    CHECK_THROWS_AS(obstruction_abelian(spec_of("Phi2(41)", 3, 1)), DataError);
  }

  TEST_CASE("pullbacks") {
    for (std::int64_t p : {3, 5}) {
      const ObstructionResult a = obstruction_pullback(spec_of("Phi4(221)a", p, 1));
      CHECK(same_set(a.normal_forms, nfs({"(z^-1*a2, a3; z)", "(a1, z*a3; z)"}, a.basis)));
      const ObstructionResult b = obstruction_pullback(spec_of("Phi4(1^5)", p, 1));
      CHECK(same_set(b.normal_forms, nfs({"(a2, a3; z)", "(a1, a3; z)"}, b.basis)));
      // massy agrees per kernel
      CHECK(same_set(massy(spec_of("Phi4(1^5)", p, 1)).normal_forms, b.normal_forms));
    }
  }

  TEST_CASE("cyclic kernel of order p^2") {
    for (std::int64_t p : {3, 5}) {
      const ObstructionResult a = obstruction_mu_pn(spec_of("Phi14(42)", p, 2));
      CHECK(a.rendered() == std::vector<std::string>{"(a1, z2*a2; z2)"});
      const ObstructionResult b = obstruction_mu_pn(spec_of("Phi14(321)", p, 2));
      CHECK(b.rendered() == std::vector<std::string>{"(a1, z*a2; z2)"});
      CHECK(obstruction(spec_of("Phi14(222)", p, 2)).rendered() == std::vector<std::string>{"(a1, a2; z2)"});
    }
  }

  TEST_CASE("kernel formula edge cases") {
    ExtensionParams zero;
    zero.t = 2;
    zero.n = {1, 1};
    zero.m = {0, 0};
    zero.d = {{0, 0}, {0, 0}};
    const SymbolBasis b{3, 2, 1, 1};
    CHECK(normalize(kernel_formula(zero, b), b).is_trivial());
    ExtensionParams high = zero;
    high.n = {1, 3};
    high.m = {0, 1};
    CHECK_THROWS_AS(kernel_formula(high, b), DataError);
  }

  TEST_CASE("splitting") {
    const auto s = spec_of("Phi5(1^5)", 3, 1);
    const SplitResult f = split_direct_factor(s, 3);
    const SymbolBasis b{3, 4, 1, 1};
    CHECK(equal(f.symbol, parse("(a4, a3^-1; z)", b), b));
    REQUIRE(f.residuals.size() == 1);
    CHECK(f.residuals[0].factors == std::vector<std::size_t>{0, 1, 2});

    const auto s2 = spec_of("Phi5(2111)", 3, 1);
    const SplitResult d = split_direct_product(s2, {0, 1}, {2, 3});
    CHECK(normalize(d.symbol, b).is_trivial());
    CHECK(d.residuals.size() == 2);
    CHECK_THROWS_AS(split_direct_product(s2, {0, 1}, {1, 3}), DataError);

    for (std::int64_t p : {3, 5}) {
      const auto s41 = spec_of("Phi2(41)", p, 3);
      const BrauerExpression rec = recursive_split(s41);
      const ObstructionResult direct = obstruction_abelian(s41);
      CHECK(normalize(rec, direct.basis) == direct.normal_forms.at(0));
    }
  }

  TEST_CASE("massy on elementary abelian quotients") {
    const ObstructionResult m = massy(spec_of("Phi5(1^5)", 5, 1));
    CHECK(m.rendered() == std::vector<std::string>{"(a1, a2; z)(a3, a4; z)"});
    CHECK_THROWS_AS(massy(spec_of("Phi2(41)", 3, 3)), DataError);
  }

  TEST_CASE("table generation and comparison") {
    const PrimeContext c5 = PrimeContext::make(5);
    CHECK(generate_table(1, c5).size() == 9);
    for (const RowComparison& r : compare_gold(6, PrimeContext::make(3))) {
      CHECK(r.verdict == Verdict::exact);
      CHECK(r.ok());
    }
    for (const RowComparison& r : compare_gold(2, PrimeContext::make(7))) {
      CHECK_MESSAGE(r.ok(), r.group.label());
    }
  }

  TEST_CASE("verdicts") {
    const SymbolBasis b{3, 3, 1, 1};
    const auto x = nfs({"(a1,a2;z)", "(a1,a3;z)"}, b);
    CHECK(compare_conditions(x, nfs({"(a1,a3;z)", "(a1,a2;z)"}, b)) == Verdict::exact);
    CHECK(compare_conditions(x, nfs({"(a1,a2*a3;z)", "(a1,a3;z)"}, b)) == Verdict::equivalent);
    CHECK(compare_conditions(x, nfs({"(a1,a2;z)"}, b)) == Verdict::mismatch);

    // A gold file with a deliberately wrong row is reported as a mismatch.
    const GoldTable bad = GoldTable::parse(
        "Phi14(42) | 6 | 2 | (a1, a2; z2)\nPhi14(321) | 6 | 2 | (a1, z*a2; z2)\nPhi14(222) | 6 | 2 | (a1, a2; z2)\n");
    const auto rows = compare_gold(6, PrimeContext::make(3), bad);
    CHECK_FALSE(rows.at(0).ok());
    CHECK(rows.at(1).ok());
  }
}
