#include <doctest.h>

#include "galembed/brauer.hpp"
#include "galembed/error.hpp"

using namespace galembed;

namespace {

SymbolBasis basis(std::int64_t p, int t, int N, int n = 1) { return SymbolBasis{p, t, N, n}; }

}  // namespace

TEST_SUITE("brauer_symbols") {
  TEST_CASE("exponent grammar") {
    std::size_t pos = 0;
    const ExponentExpr e = parse_exponent("-1/4", pos);
    CHECK(pos == 4);
    CHECK(e.bind({}, 7) == 5);
    pos = 0;
    CHECK(parse_exponent("k", pos).bind({{"k", 3}}, 7) == 3);
    pos = 0;
    CHECK_THROWS_AS(parse_exponent("q", pos).bind({}, 7), DataError);
  }

  TEST_CASE("merging a root factor") {
    for (std::int64_t p : {3, 5, 7}) {
      const SymbolBasis b = basis(p, 2, 3);
      const NormalForm nf = normalize(parse("(a1,a2;z)(a2,z3;z)", b), b);
      CHECK(nf.entry(1, 2) == 1);
      CHECK(nf.entry(0, 2) == p - 1);
      CHECK(render(nf) == "(z3^-1*a1, a2; z)");
      CHECK(equal(parse("(z3^-1*a1, a2; z)", b), parse("(a1,a2;z)(a2,z3;z)", b), b));
    }
  }

  TEST_CASE("alternating and antisymmetric") {
    const SymbolBasis b = basis(5, 2, 1);
    CHECK(normalize(parse("(a1,a1;z)", b), b).is_trivial());
    CHECK(equal(parse("(a1,a2;z)(a2,a1;z)", b), parse("1", b), b));
    CHECK_FALSE(equal(parse("(a1,a2;z)", b), parse("(a2,a1;z)", b), b));
    CHECK(normalize(parse("(a2,a1;z)", b), b).entry(1, 2) == 4);
    CHECK(render(normalize(parse("1", b), b)) == "1");
  }

  TEST_CASE("root rescaling") {
    // zeta = zeta_{p^2}^p is a p-th power.
    const SymbolBasis b = basis(3, 1, 2);
    CHECK(normalize(parse("(a1,z;z)", b), b).is_trivial());
    CHECK_FALSE(normalize(parse("(a1,z2;z)", b), b).is_trivial());
    const SymbolBasis c = basis(3, 2, 2, 2);
    CHECK(normalize(parse("(a1,z;z2)", c), c).entry(0, 1) == 6);
  }

  TEST_CASE("bilinearity") {
    const SymbolBasis b = basis(3, 3, 1);
    CHECK(equal(parse("(a1, z*a3; z)", b), parse("(a1,a3;z)(a1,z;z)", b), b));
    CHECK(equal(parse("(a1^2*a2, a3; z)", b), parse("(a1,a3;z)^2(a2,a3;z)", b), b));
    CHECK(equal(parse("(a1, a2; z)^3", b), parse("1", b), b));
  }

  TEST_CASE("parse") {
    const SymbolBasis b = basis(3, 2, 3);
    const BrauerExpression e = parse("(z3^-1*a1, a2; z)", b);
    REQUIRE(e.factors.size() == 1);
    Monomial expected = Monomial::label(b, 1);
    expected *= Monomial::root(b, 3, -1);
    CHECK(e.factors[0].left == expected);
    CHECK(e.factors[0].right == Monomial::label(b, 2));
    CHECK_THROWS_AS(parse("(a1, a2 z)", b), ParseError);
    CHECK_THROWS_AS(parse("(a1, a3; z)", b), DataError);  // a3 not in the basis
    CHECK_THROWS_AS(parse("(a1, a2; z2)", b), DataError);  // torsion level differs from the basis
    CHECK_THROWS_AS(parse("(a1, z4; z)", b), DataError);   // root above N
    CHECK(split_conditions("(a1, z*a2; z), (a2,a3;z)") ==
          std::vector<std::string>{"(a1, z*a2; z)", "(a2,a3;z)"});
  }

  TEST_CASE("render round trip") {
    const SymbolBasis b = basis(5, 4, 2);
    for (const char* text : {"(a1, z2*a2; z)", "(a1,a2;z)(a3,a4;z)", "(a1, z; z)(a2, z*a3; z)", "(a4, z2^3; z)"}) {
      const NormalForm nf = normalize(parse(text, b), b);
      CHECK(normalize(parse(render(nf), b), b) == nf);
    }
  }

  TEST_CASE("same span") {
    const SymbolBasis b = basis(3, 3, 1);
    auto nf = [&](const char* t) { return normalize(parse(t, b), b); };
    CHECK(same_span({nf("(a1,a2;z)"), nf("(a1,a3;z)")}, {nf("(a1,a2*a3;z)"), nf("(a1,a3;z)")}));
    CHECK_FALSE(same_span({nf("(a1,a2;z)")}, {nf("(a1,a3;z)")}));
    const SymbolBasis c = basis(3, 2, 2, 2);
    auto nf2 = [&](const char* t) { return normalize(parse(t, c), c); };
    // Over Z/9: p*(a1,a2) lies in the span of (a1,a2) but not conversely.
    CHECK_FALSE(same_span({nf2("(a1,a2;z2)^3")}, {nf2("(a1,a2;z2)")}));
    CHECK(same_span({nf2("(a1,a2;z2)^2")}, {nf2("(a1,a2;z2)")}));
  }
}
