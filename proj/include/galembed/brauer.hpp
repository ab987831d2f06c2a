#pragma once

// Formal products of cyclic-algebra classes (x, y; zeta_{p^n}) over a basis
// {zeta_{p^N}, a_1, ..., a_t}. The classes are bilinear and alternating in
// their two slots and have exponent p^n, so every product is determined by
// an alternating matrix over Z/p^n; that matrix is the normal form.
//
// Text grammar (whitespace is insignificant):
//   expr     := "1" | term+
//   term     := "(" mono "," mono ";" root ")" ["^" exponent]
//   mono     := factor ("*" factor)*
//   factor   := ("a" int | root) ["^" exponent]
//   root     := "z" | "z" int          z = zeta_p, zK = zeta_{p^K}
//   exponent := ["-"] (int ["/" int] | name)
// Names (k, nu, g, r, s, p) are parameters bound per group instance.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace galembed {

using Bindings = std::map<std::string, std::int64_t>;

// num/den, optionally times a named parameter.
struct ExponentExpr {
  std::int64_t num = 1;
  std::int64_t den = 1;
  std::string symbol;

  std::int64_t bind(const Bindings& bindings, std::int64_t modulus) const;
  std::string text() const;
};

// Parses an exponent starting at pos and advances pos past it.
ExponentExpr parse_exponent(std::string_view text, std::size_t& pos);

struct SymbolBasis {
  std::int64_t p = 3;
  int labels = 1;         // t: basis symbols a_1..a_t
  int root_level = 1;     // N: the root symbol is zeta_{p^N}
  int torsion_level = 1;  // n: symbols have degree p^n

  std::int64_t torsion() const;
  std::size_t size() const { return static_cast<std::size_t>(labels) + 1; }
  // Basis index 0 is the root symbol, index i >= 1 is a_i.
  std::string name(std::size_t index) const;
  void validate() const;

  friend bool operator==(const SymbolBasis&, const SymbolBasis&) = default;
};

// Exponent vector over the basis, entries reduced mod p^n.
struct Monomial {
  std::vector<std::int64_t> exps;

  static Monomial zero(const SymbolBasis& basis);
  static Monomial label(const SymbolBasis& basis, int i, std::int64_t e = 1);
  // zeta_{p^level}^e rewritten as a power of zeta_{p^N}.
  static Monomial root(const SymbolBasis& basis, int level, std::int64_t e = 1);

  Monomial& operator*=(const Monomial& other);
  bool is_zero() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct SymbolFactor {
  Monomial left;
  Monomial right;
  std::int64_t exponent = 1;
};

struct BrauerExpression {
  std::vector<SymbolFactor> factors;

  BrauerExpression& operator*=(const BrauerExpression& other);
};

class NormalForm {
 public:
  explicit NormalForm(SymbolBasis basis);

  const SymbolBasis& basis() const { return basis_; }
  // Net exponent of (basis_u, basis_v) for u < v.
  std::int64_t entry(std::size_t u, std::size_t v) const;
  void add(std::size_t u, std::size_t v, std::int64_t value);
  bool is_trivial() const;
  // Upper-triangular entries in row-major order.
  std::vector<std::int64_t> flat() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  SymbolBasis basis_;
  std::vector<std::int64_t> entries_;
};

namespace ast {

struct Factor {
  bool is_root = false;
  int index = 0;  // label index for a_i, level K for zK
  ExponentExpr exponent;
};

struct Term {
  std::vector<Factor> left;
  std::vector<Factor> right;
  int torsion_level = 1;
  ExponentExpr exponent;
};

struct Expression {
  std::vector<Term> terms;
};

}  // namespace ast

ast::Expression parse_symbolic(std::string_view text);
// Resolves labels, roots and parameter exponents against the basis.
BrauerExpression bind(const ast::Expression& expr, const SymbolBasis& basis,
                      const Bindings& bindings = {});
BrauerExpression parse(std::string_view text, const SymbolBasis& basis,
                       const Bindings& bindings = {});

NormalForm normalize(const BrauerExpression& expr, const SymbolBasis& basis);
bool equal(const BrauerExpression& a, const BrauerExpression& b, const SymbolBasis& basis);

std::string render(const NormalForm& nf);
// Factor-by-factor text without normalization.
std::string render_raw(const BrauerExpression& expr, const SymbolBasis& basis);
std::string render_monomial(const Monomial& m, const SymbolBasis& basis);

// Splits "e1, e2, ..." at commas outside parentheses.
std::vector<std::string> split_conditions(std::string_view text);

// Whether two families of normal forms generate the same Z/p^n-submodule.
bool same_span(const std::vector<NormalForm>& a, const std::vector<NormalForm>& b);

}  // namespace galembed
