#include <doctest.h>

#include <algorithm>
#include <set>

#include "galembed/catalog.hpp"
#include "galembed/error.hpp"

using namespace galembed;

namespace {

std::size_t count_family(const std::vector<GroupId>& ids, int family) {
  return static_cast<std::size_t>(std::count_if(ids.begin(), ids.end(), [&](const GroupId& id) { return id.family == family; }));
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("Phi2(41) instance") {
    const PrimeContext ctx = PrimeContext::make(3);
    const Presentation P = instantiate(parse_id("Phi2(41)", ctx), ctx);
    REQUIRE(P.rank() == 3);
    CHECK(P.relative_order(0) == 27);
    CHECK(P.relative_order(1) == 3);
    CHECK(P.relative_order(2) == 3);
    CHECK(P.comm_table().at({1, 0}) == P.generator_element("alpha2"));
    CHECK(P.power_tail(0) == P.generator_element("alpha2"));
    CHECK(P.group_order() == 243);
  }

  TEST_CASE("Phi5(1^5) has no tails") {
    for (std::int64_t p : {3, 5, 7}) {
      const PrimeContext ctx = PrimeContext::make(p);
      const Presentation P = instantiate(parse_id("Phi5(1^5)", ctx), ctx);
      for (std::size_t i = 0; i < P.rank(); ++i) CHECK(P.power_tail(i).is_identity());
      CHECK(P.comm_table().size() == 2);
      CHECK(P.group_order() == ipow(p, 5));
    }
  }

  TEST_CASE("parameter arithmetic") {
    const PrimeContext ctx = PrimeContext::make(7);
    const Presentation P = instantiate(parse_id("Phi4(221)e", ctx), ctx);
    // -1/4 mod 7: 4 * 5 = 20 = -1
    CHECK(P.power_tail(P.require_index("alpha1")) == P.generator_element("beta2", 5));
    CHECK(mod(4 * 5, 7) == 6);
  }

  TEST_CASE("expansion counts") {
    for (std::int64_t p : {3, 5, 7, 11}) {
      const PrimeContext ctx = PrimeContext::make(p);
      const auto five = enumerate_ids(5, ctx);
      CHECK(count_family(five, 2) == 7);
      CHECK(table_ids(1, ctx).size() == 9);
      const auto t2 = table_ids(2, ctx);
      const auto d = std::count_if(t2.begin(), t2.end(), [](const GroupId& id) { return id.template_label == "Phi4(221)d_r"; });
      CHECK(d == (p - 1) / 2);
      CHECK(table_ids(6, ctx).size() == 3);
      std::set<std::string> labels;
      for (const GroupId& id : enumerate_ids(0, ctx)) labels.insert(id.label());
      CHECK(labels.size() == enumerate_ids(0, ctx).size());
    }
    const PrimeContext ctx3 = PrimeContext::make(3);
    CHECK(enumerate_ids(5, ctx3).size() == 20);
  }

  TEST_CASE("Phi15 subscripts") {
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
      const PrimeContext ctx = PrimeContext::make(p);
      for (std::int64_t r = 1; r <= (p - 1) / 2; ++r) {
        const std::int64_t n = phi15_n(ctx, r);
        CHECK(n >= 1);
        CHECK(n <= p - 1);
        const std::int64_t target = mod(ctx.g * ctx.g % p * mod(ctx.g - r * r, p), p);
        if (target != 0) CHECK(pow_mod(ctx.g, n, p) == target);
        CHECK(phi15_s_max(ctx, r) == (p - 3) / 2 + n);
      }
    }
  }

  TEST_CASE("id parsing") {
    const PrimeContext ctx = PrimeContext::make(5);
    const GroupId id = parse_id("Phi4(221)d_r[r=2]", ctx);
    CHECK(id.r == 2);
    CHECK(id.label() == "Phi4(221)d_r[r=2]");
    CHECK(parse_id(id.label(), ctx) == id);
    CHECK_THROWS_AS(parse_id("Phi4(221)d_r[r=3]", ctx), DataError);
    CHECK_THROWS_AS(parse_id("Phi4(221)d_r", ctx), DataError);
    CHECK_THROWS_AS(parse_id("Phi2(41)[r=1]", ctx), DataError);
    CHECK_THROWS_AS(parse_id("Phi99", ctx), DataError);
  }

  TEST_CASE("gold rows") {
    const PrimeContext ctx = PrimeContext::make(5);
    const TableRow r41 = gold_row(parse_id("Phi2(41)", ctx), ctx);
    CHECK(r41.root_level == 3);
    REQUIRE(r41.obstructions.size() == 1);
    CHECK(render(normalize(r41.obstructions[0], r41.basis)) == "(z3^-1*a1, a2; z)");
    const TableRow r14 = gold_row(parse_id("Phi14(222)", ctx), ctx);
    CHECK(r14.basis.torsion_level == 2);
    CHECK(render(normalize(r14.obstructions[0], r14.basis)) == "(a1, a2; z2)");
    CHECK_THROWS_AS(GoldTable::parse("Phi2(41) | 5 | x | (a1,a2;z)"), DataError);
    CHECK_THROWS_AS(GoldTable::load("/nonexistent/gold.txt"), DataError);
  }
}
