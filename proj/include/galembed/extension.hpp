#pragma once

// Central extensions 1 -> K -> G -> Q -> 1 with Q abelian: the cyclic
// structure of Q in terms of chosen pre-images s_1..s_t, and the data
//   s_i^{p^{n_i}} = eps^{m_i},   [s_j, s_i] = eps^{d_ij}  (i < j)
// read off against a kernel generator eps.

#include <cstdint>
#include <string>
#include <vector>

#include "galembed/catalog.hpp"
#include "galembed/group.hpp"

namespace galembed {

struct EmbeddingProblemSpec {
  Presentation presentation;
  std::vector<std::string> kernel_gens;  // one, or two for a pullback
  int kernel_level = 1;                  // kernel generators have order p^n
  std::vector<GroupElement> preimages;
  std::vector<std::string> preimage_names;
  int root_level = 1;  // zeta_{p^N} assumed in k

  static EmbeddingProblemSpec from_record(const GroupRecord& record, int root_level = 1);

  GroupElement kernel_element(std::size_t index) const;
  std::vector<GroupElement> kernel_elements() const;
  // Throws DataError if a kernel generator is not a central generator of
  // order p^n, or the two kernels coincide.
  void validate() const;
};

struct ExtensionParams {
  std::size_t t = 0;
  std::vector<int> n;
  std::vector<std::int64_t> m;
  // d[i][j] for i < j; zero elsewhere.
  std::vector<std::vector<std::int64_t>> d;
  std::size_t kernel_index = 0;
  int kernel_level = 1;
};

// n_i: the order of the image of s_i in G/K is p^{n_i}. Checks that G/K is
// abelian and that the images form a basis of it (the product of the
// cyclic orders is |G/K| and distinct exponent vectors give distinct
// images). Throws DataError otherwise, BoundExceeded if |G/K| > bound.
std::vector<int> quotient_structure(const EmbeddingProblemSpec& spec,
                                    std::size_t bound = kDefaultEnumerationBound);

// m and d projected onto the selected kernel generator, modulo the other.
ExtensionParams extract_params(const EmbeddingProblemSpec& spec, std::size_t kernel_index,
                               std::size_t bound = kDefaultEnumerationBound);

struct KernelCandidate {
  enum class Kind { order_p, pair, cyclic_p2 };
  Kind kind = Kind::order_p;
  std::vector<GroupElement> generators;
};

// Central subgroups of order p, pairs of them, and central cyclic
// subgroups of order p^2, each with abelian quotient.
std::vector<KernelCandidate> find_central_kernels(const Presentation& P,
                                                  std::size_t bound = kDefaultEnumerationBound);

// Whether the subgroup generated by kernel matches one of the candidates.
bool kernel_among(const Presentation& P, const std::vector<KernelCandidate>& candidates,
                  const std::vector<GroupElement>& kernel, std::size_t bound = kDefaultEnumerationBound);

// Sorted elements of G^p [G, G].
std::vector<GroupElement> frattini_subgroup(const Presentation& P,
                                            std::size_t bound = kDefaultEnumerationBound);
bool frattini_contains_kernel(const Presentation& P, const std::vector<GroupElement>& kernel,
                              std::size_t bound = kDefaultEnumerationBound);

// The smallest N for which every kernel term and every cyclic
// realizability term can be written over zeta_{p^N}.
int minimal_root_level(const EmbeddingProblemSpec& spec, std::size_t bound = kDefaultEnumerationBound);

// Consistency checks on one catalog instance.
struct GroupCheck {
  GroupId id;
  std::int64_t order = 0;
  bool order_ok = false;          // |G| = p^order_exp
  AssociativityReport associativity;
  bool kernels_central = false;   // of the declared order p^kernel_level
  bool kernel_found = false;      // among find_central_kernels
  bool quotient_ok = false;       // abelian, pre-images a cyclic basis
  std::vector<int> invariants;    // n_i
  std::string error;              // first failure message, if any

  bool ok() const;
};

GroupCheck check_group(const GroupId& id, const PrimeContext& ctx, std::uint64_t samples, std::uint64_t seed,
                       std::size_t bound = kDefaultEnumerationBound);

}  // namespace galembed
