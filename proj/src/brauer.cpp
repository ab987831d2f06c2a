#include "galembed/brauer.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "galembed/error.hpp"
#include "galembed/number_theory.hpp"

namespace galembed {

namespace {

std::int64_t symmetric(std::int64_t e, std::int64_t modulus) {
  std::int64_t r = mod(e, modulus);
  if (r > modulus / 2) r -= modulus;
  return r;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  bool digit_next() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  ExponentExpr exponent() {
    skip_ws();
    return parse_exponent(text_, pos_);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  std::size_t& pos() { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

ast::Factor parse_factor(Lexer& lex) {
  ast::Factor f;
  const char c = lex.peek();
  if (c == 'a') {
    ++lex.pos();
    f.index = lex.integer();
  } else if (c == 'z') {
    ++lex.pos();
    f.is_root = true;
    f.index = lex.digit_next() ? lex.integer() : 1;
  } else {
    lex.fail("expected a label 'a<i>' or a root 'z'");
  }
  if (lex.accept('^')) f.exponent = lex.exponent();
  return f;
}

std::vector<ast::Factor> parse_monomial(Lexer& lex) {
  std::vector<ast::Factor> out{parse_factor(lex)};
  while (lex.accept('*')) out.push_back(parse_factor(lex));
  return out;
}

}  // namespace

std::int64_t ExponentExpr::bind(const Bindings& bindings, std::int64_t modulus) const {
  std::int64_t value = mod(num, modulus);
  if (!symbol.empty()) {
    auto it = bindings.find(symbol);
    if (it == bindings.end()) throw DataError("unbound exponent parameter '" + symbol + "'");
    value = mul_mod(value, it->second, modulus);
  }
  if (den != 1) value = mul_mod(value, mod_inverse(den, modulus), modulus);
  return value;
}

std::string ExponentExpr::text() const {
  std::ostringstream out;
  if (symbol.empty()) {
    out << num;
  } else {
    if (num == -1) {
      out << '-';
    } else if (num != 1) {
      out << num;
    }
    out << symbol;
  }
  if (den != 1) out << '/' << den;
  return out.str();
}

ExponentExpr parse_exponent(std::string_view text, std::size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  ExponentExpr e;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
    skip();
  }
  if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    e.num = std::stoll(std::string(text.substr(start, pos - start)));
    skip();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      skip();
      const std::size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (dstart == pos) throw ParseError("expected denominator", pos);
      e.den = std::stoll(std::string(text.substr(dstart, pos - dstart)));
      if (e.den == 0) throw ParseError("zero denominator", dstart);
    }
  } else if (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) {
    const std::size_t start = pos;
    while (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) ++pos;
    e.symbol = std::string(text.substr(start, pos - start));
  } else {
    throw ParseError("expected exponent", pos);
  }
  if (negative) e.num = -e.num;
  return e;
}

std::int64_t SymbolBasis::torsion() const { return ipow(p, torsion_level); }

std::string SymbolBasis::name(std::size_t index) const {
  if (index == 0) return root_level == 1 ? "z" : "z" + std::to_string(root_level);
  return "a" + std::to_string(index);
}

void SymbolBasis::validate() const {
  if (p < 3 || p % 2 == 0) throw DataError("symbol basis needs an odd prime");
  if (labels < 1) throw DataError("symbol basis needs at least one label");
  if (torsion_level < 1 || root_level < torsion_level) {
    throw DataError("symbol basis needs root level >= torsion level >= 1");
  }
}

Monomial Monomial::zero(const SymbolBasis& basis) { return Monomial{std::vector<std::int64_t>(basis.size(), 0)}; }

Monomial Monomial::label(const SymbolBasis& basis, int i, std::int64_t e) {
  if (i < 1 || i > basis.labels) throw DataError("unknown label a" + std::to_string(i));
  Monomial m = zero(basis);
  m.exps[static_cast<std::size_t>(i)] = mod(e, basis.torsion());
  return m;
}

Monomial Monomial::root(const SymbolBasis& basis, int level, std::int64_t e) {
  if (level < 1 || level > basis.root_level) {
    throw DataError("root z" + std::to_string(level) + " is above the basis root level " +
                    std::to_string(basis.root_level));
  }
  Monomial m = zero(basis);
  const std::int64_t scale = ipow(basis.p, basis.root_level - level) % basis.torsion();
  m.exps[0] = mul_mod(e, scale, basis.torsion());
  return m;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  if (other.exps.size() != exps.size()) throw DataError("monomial basis mismatch");
  // Entries are reduced by the caller's torsion; sums stay small.
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += other.exps[i];
  return *this;
}

bool Monomial::is_zero() const {
  return std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; });
}

BrauerExpression& BrauerExpression::operator*=(const BrauerExpression& other) {
  factors.insert(factors.end(), other.factors.begin(), other.factors.end());
  return *this;
}

NormalForm::NormalForm(SymbolBasis basis) : basis_(basis), entries_(basis.size() * basis.size(), 0) {}

std::int64_t NormalForm::entry(std::size_t u, std::size_t v) const {
  if (u >= v || v >= basis_.size()) throw DataError("normal form entries are indexed by u < v");
  return entries_[u * basis_.size() + v];
}

void NormalForm::add(std::size_t u, std::size_t v, std::int64_t value) {
  if (u == v) return;
  if (u > v) {
    std::swap(u, v);
    value = -value;
  }
  auto& e = entries_[u * basis_.size() + v];
  e = mod(e + mod(value, basis_.torsion()), basis_.torsion());
}

bool NormalForm::is_trivial() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t e) { return e == 0; });
}

std::vector<std::int64_t> NormalForm::flat() const {
  std::vector<std::int64_t> out;
  for (std::size_t u = 0; u < basis_.size(); ++u) {
    for (std::size_t v = u + 1; v < basis_.size(); ++v) out.push_back(entry(u, v));
  }
  return out;
}

ast::Expression parse_symbolic(std::string_view text) {
  Lexer lex(text);
  ast::Expression expr;
  if (lex.peek() == '1') {
    ++lex.pos();
    if (!lex.at_end()) lex.fail("unexpected text after '1'");
    return expr;
  }
  if (lex.at_end()) lex.fail("empty expression");
  while (!lex.at_end()) {
    ast::Term term;
    lex.expect('(');
    term.left = parse_monomial(lex);
    lex.expect(',');
    term.right = parse_monomial(lex);
    lex.expect(';');
    if (lex.peek() != 'z') lex.fail("expected root 'z' or 'zK' after ';'");
    ++lex.pos();
    term.torsion_level = lex.digit_next() ? lex.integer() : 1;
    lex.expect(')');
    if (lex.accept('^')) term.exponent = lex.exponent();
    expr.terms.push_back(std::move(term));
  }
  return expr;
}

namespace {

Monomial bind_monomial(const std::vector<ast::Factor>& factors, const SymbolBasis& basis,
                       const Bindings& bindings) {
  Monomial m = Monomial::zero(basis);
  const std::int64_t T = basis.torsion();
  for (const ast::Factor& f : factors) {
    const std::int64_t e = f.exponent.bind(bindings, T);
    m *= f.is_root ? Monomial::root(basis, f.index, e) : Monomial::label(basis, f.index, e);
  }
  for (auto& e : m.exps) e = mod(e, T);
  return m;
}

}  // namespace

BrauerExpression bind(const ast::Expression& expr, const SymbolBasis& basis, const Bindings& bindings) {
  basis.validate();
  Bindings full = bindings;
  full.emplace("p", basis.p);
  BrauerExpression out;
  for (const ast::Term& term : expr.terms) {
    if (term.torsion_level != basis.torsion_level) {
      throw DataError("torsion mismatch: symbol of degree p^" + std::to_string(term.torsion_level) +
                      " in a basis of degree p^" + std::to_string(basis.torsion_level));
    }
    out.factors.push_back(SymbolFactor{bind_monomial(term.left, basis, full),
                                       bind_monomial(term.right, basis, full),
                                       term.exponent.bind(full, basis.torsion())});
  }
  return out;
}

BrauerExpression parse(std::string_view text, const SymbolBasis& basis, const Bindings& bindings) {
  return galembed::bind(parse_symbolic(text), basis, bindings);
}

NormalForm normalize(const BrauerExpression& expr, const SymbolBasis& basis) {
  basis.validate();
  NormalForm nf(basis);
  const std::int64_t T = basis.torsion();
  const std::size_t n = basis.size();
  for (const SymbolFactor& f : expr.factors) {
    if (f.left.exps.size() != n || f.right.exps.size() != n) throw DataError("symbol basis mismatch");
    // (x, y) = prod_{u<v} (b_u, b_v)^{x_u y_v - x_v y_u}
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const std::int64_t det = mod(mul_mod(f.left.exps[u], f.right.exps[v], T) -
                                         mul_mod(f.left.exps[v], f.right.exps[u], T),
                                     T);
        if (det != 0) nf.add(u, v, mul_mod(det, f.exponent, T));
      }
    }
  }
  return nf;
}

bool equal(const BrauerExpression& a, const BrauerExpression& b, const SymbolBasis& basis) {
  return normalize(a, basis) == normalize(b, basis);
}

std::string render_monomial(const Monomial& m, const SymbolBasis& basis) {
  const std::int64_t T = basis.torsion();
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const std::string& name, std::int64_t e) {
    if (!first) out << '*';
    first = false;
    out << name;
    if (e != 1) out << '^' << e;
  };
  if (std::int64_t s = symmetric(m.exps[0], T); s != 0) {
    // Prefer the lowest root: zeta_{p^N}^{p c} = zeta_{p^{N-1}}^c.
    int level = basis.root_level;
    while (level > 1 && s % basis.p == 0) {
      s /= basis.p;
      --level;
    }
    emit(level == 1 ? "z" : "z" + std::to_string(level), s);
  }
  for (std::size_t i = 1; i < basis.size(); ++i) {
    if (std::int64_t s = symmetric(m.exps[i], T); s != 0) emit(basis.name(i), s);
  }
  if (first) out << '1';
  return out.str();
}

namespace {

std::string torsion_root(const SymbolBasis& basis) {
  return basis.torsion_level == 1 ? "z" : "z" + std::to_string(basis.torsion_level);
}

}  // namespace

std::string render(const NormalForm& nf) {
  const SymbolBasis& basis = nf.basis();
  struct Piece {
    Monomial left, right;
    bool flipped = false;
  };
  std::vector<Piece> pieces;
  for (std::size_t v = 1; v < basis.size(); ++v) {
    Monomial left = Monomial::zero(basis);
    for (std::size_t u = 0; u < v; ++u) left.exps[u] = nf.entry(u, v);
    if (left.is_zero()) continue;
    const bool root_only = std::all_of(left.exps.begin() + 1, left.exps.end(), [](std::int64_t e) { return e == 0; });
    if (root_only) {
      // (z^c, a_v) = (a_v, z^-c)
      Monomial right = Monomial::zero(basis);
      right.exps[0] = mod(-left.exps[0], basis.torsion());
      pieces.push_back({Monomial::label(basis, static_cast<int>(v)), right, true});
    } else {
      pieces.push_back({left, Monomial::label(basis, static_cast<int>(v)), false});
    }
  }
  // (a_v, z^c)(a_v, a_w) is written (a_v, z^c*a_w).
  for (std::size_t i = 0; i < pieces.size();) {
    auto host = std::find_if(pieces.begin(), pieces.end(), [&](const Piece& q) {
      return !q.flipped && q.left == pieces[i].left;
    });
    if (pieces[i].flipped && host != pieces.end()) {
      host->right *= pieces[i].right;
      pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (pieces.empty()) return "1";
  std::ostringstream out;
  for (const Piece& q : pieces) {
    out << '(' << render_monomial(q.left, basis) << ", " << render_monomial(q.right, basis) << "; "
        << torsion_root(basis) << ')';
  }
  return out.str();
}

std::string render_raw(const BrauerExpression& expr, const SymbolBasis& basis) {
  if (expr.factors.empty()) return "1";
  std::ostringstream out;
  for (const SymbolFactor& f : expr.factors) {
    out << '(' << render_monomial(f.left, basis) << ", " << render_monomial(f.right, basis) << "; "
        << torsion_root(basis) << ')';
    if (f.exponent != 1) out << '^' << f.exponent;
  }
  return out.str();
}

std::vector<std::string> split_conditions(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  out.push_back(current);
  for (std::string& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  std::erase_if(out, [](const std::string& s) { return s.empty(); });
  return out;
}

namespace {

// Echelon form over the chain ring Z/p^n, closed under multiplication by p
// (each pivot row contributes p^{n-v} times itself), so that membership can
// be decided by forward reduction.
class ChainRingEchelon {
 public:
  ChainRingEchelon(std::int64_t p, int n, std::vector<std::vector<std::int64_t>> rows)
      : p_(p), n_(n), T_(ipow(p, n)) {
    if (rows.empty()) return;
    const std::size_t dim = rows.front().size();
    for (std::size_t c = 0; c < dim; ++c) {
      std::optional<std::size_t> best;
      int best_v = n_;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const int v = p_valuation(rows[r][c], p_);
        if (!best || v < best_v) {
          best = r;
          best_v = v;
        }
      }
      if (!best) continue;
      std::vector<std::int64_t> pivot = rows[*best];
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*best));
      const std::int64_t pv = ipow(p_, best_v);
      const std::int64_t unit = mod_inverse(pivot[c] / pv, T_);
      for (auto& e : pivot) e = mul_mod(e, unit, T_);
      for (auto& row : rows) {
        if (row[c] == 0) continue;
        const std::int64_t q = row[c] / pv;
        for (std::size_t k = 0; k < dim; ++k) row[k] = mod(row[k] - mul_mod(q, pivot[k], T_), T_);
      }
      std::vector<std::int64_t> annihilated = pivot;
      const std::int64_t scale = ipow(p_, n_ - best_v);
      for (auto& e : annihilated) e = mul_mod(e, scale, T_);
      if (std::any_of(annihilated.begin(), annihilated.end(), [](std::int64_t e) { return e != 0; })) {
        rows.push_back(std::move(annihilated));
      }
      pivots_.push_back({c, pv, std::move(pivot)});
    }
  }

  bool contains(std::vector<std::int64_t> b) const {
    for (const Pivot& piv : pivots_) {
      const std::int64_t entry = mod(b[piv.col], T_);
      if (entry % piv.value != 0) return false;
      const std::int64_t q = entry / piv.value;
      for (std::size_t k = 0; k < b.size(); ++k) b[k] = mod(b[k] - mul_mod(q, piv.row[k], T_), T_);
    }
    return std::all_of(b.begin(), b.end(), [&](std::int64_t e) { return mod(e, T_) == 0; });
  }

 private:
  struct Pivot {
    std::size_t col;
    std::int64_t value;
    std::vector<std::int64_t> row;
  };
  std::int64_t p_;
  int n_;
  std::int64_t T_;
  std::vector<Pivot> pivots_;
};

bool spans_contain(const std::vector<NormalForm>& gens, const std::vector<NormalForm>& targets,
                   const SymbolBasis& basis) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const NormalForm& g : gens) rows.push_back(g.flat());
  ChainRingEchelon ech(basis.p, basis.torsion_level, std::move(rows));
  return std::all_of(targets.begin(), targets.end(), [&](const NormalForm& t) { return ech.contains(t.flat()); });
}

}  // namespace

bool same_span(const std::vector<NormalForm>& a, const std::vector<NormalForm>& b) {
  if (a.empty() && b.empty()) return true;
  const SymbolBasis basis = a.empty() ? b.front().basis() : a.front().basis();
  for (const auto* family : {&a, &b}) {
    for (const NormalForm& nf : *family) {
      if (!(nf.basis() == basis)) throw DataError("same_span: basis mismatch");
    }
  }
  return spans_contain(a, b, basis) && spans_contain(b, a, basis);
}

}  // namespace galembed
