#pragma once

// Finite p-groups of nilpotency class <= 2 given by power-commutator
// presentations. Elements are kept in the normal form
//   g_0^{x_0} g_1^{x_1} ... g_{k-1}^{x_{k-1}},   0 <= x_i < p^{e_i},
// with generators in presentation order.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galembed/number_theory.hpp"

namespace galembed {

inline constexpr std::size_t kDefaultEnumerationBound = 1'000'000;

struct GroupElement {
  std::vector<std::int64_t> coords;

  bool is_identity() const;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct Generator {
  std::string name;
  int rel_exp = 1;       // relative order p^rel_exp
  bool central = false;  // target of power tails and commutator values
};

class Presentation {
 public:
  using CommKey = std::pair<std::size_t, std::size_t>;  // (j, i) with j > i

  // Validates the class-2 invariants and throws DataError on violation:
  // every tail and commutator value is supported on central generators, and
  // central generators carry no tail and no commutator entry.
  Presentation(PrimeContext ctx, std::vector<Generator> generators,
               std::vector<GroupElement> power_tails, std::map<CommKey, GroupElement> comm);

  const PrimeContext& ctx() const { return ctx_; }
  std::int64_t p() const { return ctx_.p; }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  std::int64_t relative_order(std::size_t i) const { return rel_order_.at(i); }
  const GroupElement& power_tail(std::size_t i) const { return tails_.at(i); }
  const std::map<CommKey, GroupElement>& comm_table() const { return comm_; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  // Throws DataError for unknown names.
  std::size_t require_index(const std::string& name) const;

  GroupElement identity() const;
  GroupElement generator_element(std::size_t i, std::int64_t power = 1) const;
  GroupElement generator_element(const std::string& name, std::int64_t power = 1) const;
  // Reduces coordinates into range; throws on dimension mismatch.
  GroupElement element(std::vector<std::int64_t> coords) const;

  GroupElement mul(const GroupElement& x, const GroupElement& y) const;
  GroupElement inv(const GroupElement& x) const;
  GroupElement pow(const GroupElement& x, std::int64_t n) const;
  // [x, y] = x^-1 y^-1 x y
  GroupElement commutator(const GroupElement& x, const GroupElement& y) const;
  std::int64_t element_order(const GroupElement& x) const;
  std::int64_t group_order() const;

  bool is_valid(const GroupElement& x) const;
  std::string format(const GroupElement& x) const;

 private:
  void check(const GroupElement& x) const;

  PrimeContext ctx_;
  std::vector<Generator> gens_;
  std::vector<std::int64_t> rel_order_;
  std::vector<GroupElement> tails_;
  std::map<CommKey, GroupElement> comm_;
  std::vector<std::size_t> central_idx_;
  std::vector<std::size_t> noncentral_idx_;
};

// All elements in lexicographic coordinate order (first coordinate most
// significant). Throws BoundExceeded when the group order exceeds bound.
std::vector<GroupElement> enumerate(const Presentation& P,
                                    std::size_t bound = kDefaultEnumerationBound);

// Sorted element list of the subgroup generated by gens.
std::vector<GroupElement> subgroup_closure(const Presentation& P,
                                           const std::vector<GroupElement>& gens,
                                           std::size_t bound = kDefaultEnumerationBound);

bool in_subgroup(const std::vector<GroupElement>& sorted_elements, const GroupElement& x);

// A small generating set for the subgroup generated by the candidates,
// picked greedily in the given order.
std::vector<GroupElement> reduce_generators(const Presentation& P,
                                            const std::vector<GroupElement>& candidates,
                                            std::size_t bound = kDefaultEnumerationBound);

bool is_central(const Presentation& P, const GroupElement& x);

// Generating sets, not element lists; see subgroup_closure.
std::vector<GroupElement> center(const Presentation& P,
                                 std::size_t bound = kDefaultEnumerationBound);
std::vector<GroupElement> derived_subgroup(const Presentation& P,
                                           std::size_t bound = kDefaultEnumerationBound);

// True iff every commutator value lies in the subgroup generated by N.
// Throws DataError if some generator of N is not central.
bool is_abelian_quotient(const Presentation& P, const std::vector<GroupElement>& N,
                         std::size_t bound = kDefaultEnumerationBound);

// The exponent m (mod order of eps) with x = eps^m modulo <complement>.
// Throws DataError when x is not in <eps> * <complement>.
std::int64_t central_log(const Presentation& P, const GroupElement& x, const GroupElement& eps,
                         const std::vector<GroupElement>& complement = {},
                         std::size_t bound = kDefaultEnumerationBound);

// Position of x in the enumerate() order.
std::size_t element_index(const Presentation& P, const GroupElement& x);

struct AssociativityReport {
  bool ok = true;
  bool exhaustive = false;
  std::uint64_t triples = 0;
  std::optional<std::array<GroupElement, 3>> counterexample;
};

// (xy)z = x(yz). Groups of order at most exhaustive_limit are checked on
// every triple through a Cayley table; larger ones on samples random
// triples drawn from seed.
AssociativityReport check_associativity(const Presentation& P, std::uint64_t samples, std::uint64_t seed,
                                        std::size_t exhaustive_limit = 243);

}  // namespace galembed
