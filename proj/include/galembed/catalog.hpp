#pragma once

// The class-2 groups of order p^5 and p^6 with an abelian quotient by a
// central subgroup of order p or p^2, indexed by isoclinism-family label and
// parameterized by the prime (and the subscripts r, s where present).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "galembed/brauer.hpp"
#include "galembed/group.hpp"
#include "galembed/number_theory.hpp"

namespace galembed {

enum class ParamKind {
  none,
  r_half,    // r = 1..(p-1)/2
  r_full,    // r = 1..p-1
  r_one_nu,  // r in {1, nu}
  r_s,       // r = 1..(p-1)/2, s = 0..m(r)
};

// Static description of one list entry. Generators are written
// "name[^e][*]" (relative order p^e, '*' marks a central generator);
// relations are "[x,y]=word" or "x^pE=word" separated by ';', where pE is
// p^E and words are products of central generators with exponents in the
// expression exponent grammar.
struct GroupTemplate {
  int family = 0;
  std::string label;
  int order_exp = 5;
  int table = 1;
  ParamKind params = ParamKind::none;
  std::string generators;
  std::string relations;
  std::vector<std::string> kernels;
  int kernel_level = 1;
  std::vector<std::string> preimages;
};

const std::vector<GroupTemplate>& templates();
const GroupTemplate& find_template(std::string_view label);

struct GroupId {
  int family = 0;
  std::string template_label;
  int order_exp = 5;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;

  // Template label followed by "[r=..]" or "[r=..,s=..]" when parameterized.
  std::string label() const;
  std::string params_text() const;
  const GroupTemplate& group_template() const { return find_template(template_label); }

  friend bool operator==(const GroupId&, const GroupId&) = default;
};

// For Phi15(2211)b_rs: the exponent n with g^n = g^2 (g - r^2), taken in
// [1, p-1], and the upper bound m of s.
std::int64_t phi15_n(const PrimeContext& ctx, std::int64_t r);
std::int64_t phi15_s_max(const PrimeContext& ctx, std::int64_t r);

// order_exp 5 or 6, or 0 for both. Catalog order.
std::vector<GroupId> enumerate_ids(int order_exp, const PrimeContext& ctx);
std::vector<GroupId> table_ids(int table, const PrimeContext& ctx);

// Accepts "Phi4(221)d_r[r=2]"; throws DataError for unknown labels and
// out-of-range or missing parameters.
GroupId parse_id(std::string_view text, const PrimeContext& ctx);
void validate_params(const GroupId& id, const PrimeContext& ctx);

// p, nu, g and, where defined, r, s and kappa (bound as "k").
Bindings bindings_for(const GroupId& id, const PrimeContext& ctx);

Presentation instantiate(const GroupId& id, const PrimeContext& ctx);

struct GroupRecord {
  GroupId id;
  Presentation presentation;
  std::vector<std::string> kernels;
  int kernel_level = 1;
  std::vector<std::string> preimages;
  Bindings bindings;
};

GroupRecord make_record(const GroupId& id, const PrimeContext& ctx);

struct GoldRow {
  std::string label;
  int order_exp = 5;
  int root_level = 1;
  std::vector<std::string> conditions;
};

class GoldTable {
 public:
  static GoldTable parse(std::string_view text);
  static GoldTable load(const std::string& path);
  static const GoldTable& embedded();

  const GoldRow& row(std::string_view template_label) const;
  bool contains(std::string_view template_label) const;
  const std::vector<GoldRow>& rows() const { return rows_; }

 private:
  std::vector<GoldRow> rows_;
};

struct TableRow {
  GroupId group;
  int independents = 0;
  int root_level = 1;
  SymbolBasis basis;
  std::vector<BrauerExpression> obstructions;
};

// The gold row for an instance, bound at the given prime.
TableRow gold_row(const GroupId& id, const PrimeContext& ctx,
                  const GoldTable& gold = GoldTable::embedded());

}  // namespace galembed
