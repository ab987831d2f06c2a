#include "galembed/group.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "galembed/error.hpp"

namespace galembed {

bool GroupElement::is_identity() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

Presentation::Presentation(PrimeContext ctx, std::vector<Generator> generators,
                           std::vector<GroupElement> power_tails,
                           std::map<CommKey, GroupElement> comm)
    : ctx_(ctx), gens_(std::move(generators)), tails_(std::move(power_tails)), comm_(std::move(comm)) {
  const std::size_t k = gens_.size();
  if (tails_.size() != k) throw DataError("power tail count does not match generator count");
  std::set<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    const Generator& g = gens_[i];
    if (g.rel_exp < 1) throw DataError("generator " + g.name + " needs relative exponent >= 1");
    if (!names.insert(g.name).second) throw DataError("duplicate generator " + g.name);
    rel_order_.push_back(ipow(ctx_.p, g.rel_exp));
    (g.central ? central_idx_ : noncentral_idx_).push_back(i);
  }

  auto check_central_word = [&](const GroupElement& w, const std::string& what) {
    if (w.coords.size() != k) throw DataError(what + ": dimension mismatch");
    for (std::size_t t = 0; t < k; ++t) {
      if (w.coords[t] < 0 || w.coords[t] >= rel_order_[t]) {
        throw DataError(what + ": coordinate out of range");
      }
      if (w.coords[t] != 0 && !gens_[t].central) {
        throw DataError(what + " involves non-central generator " + gens_[t].name +
                        " (presentation is not of class 2)");
      }
    }
  };

  for (std::size_t i = 0; i < k; ++i) {
    check_central_word(tails_[i], "power relation of " + gens_[i].name);
    if (gens_[i].central && !tails_[i].is_identity()) {
      throw DataError("central generator " + gens_[i].name + " must have a trivial power relation");
    }
  }
  for (auto it = comm_.begin(); it != comm_.end();) {
    const auto [j, i] = it->first;
    if (j >= k || i >= j) throw DataError("commutator keys must be (j, i) with j > i");
    check_central_word(it->second, "commutator [" + gens_[j].name + "," + gens_[i].name + "]");
    if ((gens_[j].central || gens_[i].central) && !it->second.is_identity()) {
      throw DataError("central generator has a non-trivial commutator");
    }
    if (it->second.is_identity()) {
      it = comm_.erase(it);
    } else {
      ++it;
    }
  }
}

std::optional<std::size_t> Presentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Presentation::require_index(const std::string& name) const {
  if (auto idx = index_of(name)) return *idx;
  throw DataError("unknown generator " + name);
}

GroupElement Presentation::identity() const {
  return GroupElement{std::vector<std::int64_t>(rank(), 0)};
}

GroupElement Presentation::generator_element(std::size_t i, std::int64_t power) const {
  if (i >= rank()) throw DataError("generator index out of range");
  GroupElement e = identity();
  e.coords[i] = 1;
  return this->pow(e, power);
}

GroupElement Presentation::generator_element(const std::string& name, std::int64_t power) const {
  return generator_element(require_index(name), power);
}

GroupElement Presentation::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank()) throw DataError("element dimension does not match presentation");
  // Reduce by multiplying out generator powers so that carries pick up tails.
  GroupElement result = identity();
  for (std::size_t i = 0; i < rank(); ++i) {
    if (coords[i] != 0) result = mul(result, generator_element(i, coords[i]));
  }
  return result;
}

bool Presentation::is_valid(const GroupElement& x) const {
  if (x.coords.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x.coords[i] < 0 || x.coords[i] >= rel_order_[i]) return false;
  }
  return true;
}

void Presentation::check(const GroupElement& x) const {
  if (x.coords.size() != rank()) throw DataError("element dimension does not match presentation");
}

GroupElement Presentation::mul(const GroupElement& x, const GroupElement& y) const {
  check(x);
  check(y);
  const std::size_t k = rank();
  std::vector<std::int64_t> z(k);
  for (std::size_t i = 0; i < k; ++i) z[i] = x.coords[i] + y.coords[i];

  // Moving y's low generators left past x's high generators produces
  // [g_j, g_i]^{x_j y_i}; commutator values are central.
  for (const auto& [key, value] : comm_) {
    const std::int64_t c = x.coords[key.first] * y.coords[key.second];
    if (c == 0) continue;
    for (std::size_t t : central_idx_) {
      if (value.coords[t] != 0) z[t] = mod(z[t] + mul_mod(c, value.coords[t], rel_order_[t]), rel_order_[t]);
    }
  }
  // A coordinate at or beyond p^{e_i} releases power tails, which land on
  // central generators with trivial tails, so one pass suffices.
  for (std::size_t i : noncentral_idx_) {
    if (z[i] < rel_order_[i]) continue;
    const std::int64_t q = z[i] / rel_order_[i];
    z[i] %= rel_order_[i];
    for (std::size_t t : central_idx_) {
      if (tails_[i].coords[t] != 0) z[t] = mod(z[t] + mul_mod(q, tails_[i].coords[t], rel_order_[t]), rel_order_[t]);
    }
  }
  for (std::size_t t : central_idx_) z[t] = mod(z[t], rel_order_[t]);
  return GroupElement{std::move(z)};
}

GroupElement Presentation::inv(const GroupElement& x) const {
  check(x);
  GroupElement y = identity();
  for (std::size_t i : noncentral_idx_) y.coords[i] = mod(-x.coords[i], rel_order_[i]);
  for (std::size_t t : central_idx_) y.coords[t] = 0;
  // x * y is supported on central generators; cancel it.
  const GroupElement z = mul(x, y);
  for (std::size_t t : central_idx_) y.coords[t] = mod(-z.coords[t], rel_order_[t]);
  return y;
}

GroupElement Presentation::pow(const GroupElement& x, std::int64_t n) const {
  check(x);
  if (n < 0) return pow(inv(x), -n);
  GroupElement result = identity();
  GroupElement base = x;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

GroupElement Presentation::commutator(const GroupElement& x, const GroupElement& y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

std::int64_t Presentation::element_order(const GroupElement& x) const {
  check(x);
  std::int64_t order = 1;
  GroupElement y = x;
  while (!y.is_identity()) {
    y = pow(y, ctx_.p);
    order *= ctx_.p;
  }
  return order;
}

std::int64_t Presentation::group_order() const {
  std::int64_t order = 1;
  for (std::int64_t r : rel_order_) order *= r;
  return order;
}

std::string Presentation::format(const GroupElement& x) const {
  check(x);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x.coords[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << gens_[i].name;
    if (x.coords[i] != 1) out << '^' << x.coords[i];
  }
  if (first) out << '1';
  return out.str();
}

std::vector<GroupElement> enumerate(const Presentation& P, std::size_t bound) {
  const std::int64_t order = P.group_order();
  if (order < 0 || static_cast<std::uint64_t>(order) > bound) {
    throw BoundExceeded("group of order " + std::to_string(order) + " exceeds enumeration bound " +
                        std::to_string(bound));
  }
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order));
  GroupElement x = P.identity();
  const std::size_t k = P.rank();
  while (true) {
    out.push_back(x);
    if (k == 0) return out;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++x.coords[i] < P.relative_order(i)) break;
      x.coords[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<GroupElement> subgroup_closure(const Presentation& P,
                                           const std::vector<GroupElement>& gens,
                                           std::size_t bound) {
  std::set<GroupElement> seen{P.identity()};
  std::deque<GroupElement> frontier{P.identity()};
  while (!frontier.empty()) {
    const GroupElement x = std::move(frontier.front());
    frontier.pop_front();
    for (const GroupElement& g : gens) {
      GroupElement y = P.mul(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > bound) throw BoundExceeded("subgroup closure exceeds bound " + std::to_string(bound));
        frontier.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool in_subgroup(const std::vector<GroupElement>& sorted_elements, const GroupElement& x) {
  return std::binary_search(sorted_elements.begin(), sorted_elements.end(), x);
}

std::vector<GroupElement> reduce_generators(const Presentation& P,
                                            const std::vector<GroupElement>& candidates,
                                            std::size_t bound) {
  std::vector<GroupElement> gens;
  std::vector<GroupElement> span{P.identity()};
  for (const GroupElement& c : candidates) {
    if (in_subgroup(span, c)) continue;
    gens.push_back(c);
    span = subgroup_closure(P, gens, bound);
  }
  return gens;
}

bool is_central(const Presentation& P, const GroupElement& x) {
  for (std::size_t i = 0; i < P.rank(); ++i) {
    if (!P.commutator(x, P.generator_element(i)).is_identity()) return false;
  }
  return true;
}

std::vector<GroupElement> center(const Presentation& P, std::size_t bound) {
  std::vector<GroupElement> central;
  for (GroupElement& x : enumerate(P, bound)) {
    if (is_central(P, x)) central.push_back(std::move(x));
  }
  return reduce_generators(P, central, bound);
}

std::vector<GroupElement> derived_subgroup(const Presentation& P, std::size_t bound) {
  std::vector<GroupElement> values;
  for (const auto& [key, value] : P.comm_table()) values.push_back(value);
  return reduce_generators(P, values, bound);
}

bool is_abelian_quotient(const Presentation& P, const std::vector<GroupElement>& N, std::size_t bound) {
  for (const GroupElement& n : N) {
    if (!is_central(P, n)) throw DataError("subgroup generator " + P.format(n) + " is not central");
  }
  const std::vector<GroupElement> span = subgroup_closure(P, N, bound);
  for (const auto& [key, value] : P.comm_table()) {
    if (!in_subgroup(span, value)) return false;
  }
  return true;
}

namespace {

std::optional<std::size_t> unit_index(const GroupElement& x) {
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] == 0) continue;
    if (x.coords[i] != 1 || idx) return std::nullopt;
    idx = i;
  }
  return idx;
}

}  // namespace

std::int64_t central_log(const Presentation& P, const GroupElement& x, const GroupElement& eps,
                         const std::vector<GroupElement>& complement, std::size_t bound) {
  if (!P.is_valid(x) || !P.is_valid(eps)) throw DataError("central_log: invalid element");

  // Catalog kernels are single central generators: read off the coordinate.
  std::vector<bool> allowed(P.rank(), false);
  bool fast = true;
  std::size_t eps_idx = 0;
  if (auto idx = unit_index(eps); idx && P.generator(*idx).central) {
    eps_idx = *idx;
    allowed[eps_idx] = true;
  } else {
    fast = false;
  }
  for (const GroupElement& c : complement) {
    auto idx = unit_index(c);
    if (!idx || !P.generator(*idx).central) {
      fast = false;
      break;
    }
    allowed[*idx] = true;
  }
  if (fast) {
    for (std::size_t i = 0; i < P.rank(); ++i) {
      if (x.coords[i] != 0 && !allowed[i]) {
        throw DataError("central_log: " + P.format(x) + " is outside <" + P.format(eps) + "> times the complement");
      }
    }
    return x.coords[eps_idx];
  }

  const std::vector<GroupElement> comp = subgroup_closure(P, complement, bound);
  const std::int64_t order = P.element_order(eps);
  const GroupElement eps_inv = P.inv(eps);
  GroupElement y = x;
  for (std::int64_t m = 0; m < order; ++m) {
    if (in_subgroup(comp, y)) return m;
    y = P.mul(y, eps_inv);
  }
  throw DataError("central_log: " + P.format(x) + " is outside <" + P.format(eps) + "> times the complement");
}

}  // namespace galembed

namespace galembed {

std::size_t element_index(const Presentation& P, const GroupElement& x) {
  if (!P.is_valid(x)) throw DataError("element_index: invalid element");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < P.rank(); ++i) {
    idx = idx * static_cast<std::size_t>(P.relative_order(i)) + static_cast<std::size_t>(x.coords[i]);
  }
  return idx;
}

AssociativityReport check_associativity(const Presentation& P, std::uint64_t samples, std::uint64_t seed,
                                        std::size_t exhaustive_limit) {
  AssociativityReport report;
  const auto order = static_cast<std::size_t>(P.group_order());
  if (order <= exhaustive_limit) {
    const auto elems = enumerate(P, order);
    std::vector<std::uint32_t> table(order * order);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        table[a * order + b] = static_cast<std::uint32_t>(element_index(P, P.mul(elems[a], elems[b])));
      }
    }
    report.exhaustive = true;
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        const std::size_t ab = table[a * order + b];
        for (std::size_t c = 0; c < order; ++c) {
          ++report.triples;
          if (table[ab * order + c] != table[a * order + table[b * order + c]]) {
            report.ok = false;
            report.counterexample = std::array<GroupElement, 3>{elems[a], elems[b], elems[c]};
            return report;
          }
        }
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  auto random_element = [&] {
    std::vector<std::int64_t> coords(P.rank());
    for (std::size_t i = 0; i < P.rank(); ++i) {
      coords[i] = std::uniform_int_distribution<std::int64_t>(0, P.relative_order(i) - 1)(rng);
    }
    return GroupElement{std::move(coords)};
  };
  for (std::uint64_t k = 0; k < samples; ++k) {
    const GroupElement x = random_element(), y = random_element(), z = random_element();
    ++report.triples;
    if (P.mul(P.mul(x, y), z) != P.mul(x, P.mul(y, z))) {
      report.ok = false;
      report.counterexample = std::array<GroupElement, 3>{x, y, z};
      break;
    }
  }
  return report;
}

}  // namespace galembed
