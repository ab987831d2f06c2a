#pragma once

// Obstructions to central embedding problems with abelian quotient,
// expressed as products of cyclic-algebra symbols that must all vanish.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galembed/brauer.hpp"
#include "galembed/catalog.hpp"
#include "galembed/extension.hpp"

namespace galembed {

enum class SolvabilityKind { proper, weak };

std::string to_string(SolvabilityKind kind);

// A restricted embedding problem left unevaluated by a splitting step:
// the pre-image indices (0-based) of the factor it lives on.
struct ResidualHandle {
  std::vector<std::size_t> factors;
  std::string description;
};

struct ObstructionResult {
  SymbolBasis basis;
  int root_level = 1;
  // Formula products as emitted, one per condition.
  std::vector<BrauerExpression> conditions;
  // Their normal forms, same order; never trivial and pairwise distinct.
  std::vector<NormalForm> normal_forms;
  SolvabilityKind kind = SolvabilityKind::proper;
  std::vector<ResidualHandle> residuals;

  std::vector<std::string> rendered() const;
};

SymbolBasis basis_for(const EmbeddingProblemSpec& spec, std::size_t labels);

// Kernel formula for one kernel of exponent p:
//   prod_i (a_i, zeta_{p^{n_i}}^{m_i}; z) * prod_{i<j} (a_j, a_i; z)^{d_ij}.
BrauerExpression kernel_formula(const ExtensionParams& params, const SymbolBasis& basis);

// Single kernel of order p: the kernel formula and one cyclic
// realizability term (a_i, zeta_{p^N}; z) per factor with n_i = N + 1.
ObstructionResult obstruction_abelian(const EmbeddingProblemSpec& spec,
                                      std::size_t bound = kDefaultEnumerationBound);
// Two kernels of order p: the union of both projected problems.
ObstructionResult obstruction_pullback(const EmbeddingProblemSpec& spec,
                                       std::size_t bound = kDefaultEnumerationBound);
// Cyclic kernel of order p^n, n >= 2, quotient (C_{p^n})^t.
ObstructionResult obstruction_mu_pn(const EmbeddingProblemSpec& spec,
                                    std::size_t bound = kDefaultEnumerationBound);
// Dispatches on the number and level of kernels.
ObstructionResult obstruction(const EmbeddingProblemSpec& spec, std::size_t bound = kDefaultEnumerationBound);

// Elementary abelian quotient: prod (a_i, z; z)^{d_i} prod (a_j, a_i; z)^{d_ij}
// with s_i^p = eps^{d_i}, computed directly from powers and commutators.
ObstructionResult massy(const EmbeddingProblemSpec& spec, std::size_t bound = kDefaultEnumerationBound);

struct SplitResult {
  BrauerExpression symbol;
  std::vector<ResidualHandle> residuals;
};

// Quotient H x C_p with C_p generated by the image of s_t (n_t = 1):
// (a_t, zeta^j prod_{i != t} a_i^{d_i}; z) with t^p = eps^j, [t, s_i] = eps^{d_i}.
SplitResult split_direct_factor(const EmbeddingProblemSpec& spec, std::size_t t, std::size_t kernel_index = 0,
                                std::size_t bound = kDefaultEnumerationBound);
// Quotient N x H given by disjoint sets of pre-image indices:
// prod_{i in N, j in H} (a_j, a_i; z)^{e_ij} with [s_j, s_i] = eps^{e_ij}.
SplitResult split_direct_product(const EmbeddingProblemSpec& spec, const std::vector<std::size_t>& left,
                                 const std::vector<std::size_t>& right, std::size_t kernel_index = 0,
                                 std::size_t bound = kDefaultEnumerationBound);
// Halves the factor list recursively, evaluating cyclic residuals as
// (a_i, zeta_{p^{n_i}}^{m_i}; z). Must agree with kernel_formula.
BrauerExpression recursive_split(const EmbeddingProblemSpec& spec, std::size_t kernel_index = 0,
                                 std::size_t bound = kDefaultEnumerationBound);

struct GeneratedRow {
  GroupId group;
  int independents = 0;
  int root_level = 1;
  int minimal_root_level = 1;
  ObstructionResult result;
};

GeneratedRow generate_row(const GroupId& id, const PrimeContext& ctx, const GoldTable& gold = GoldTable::embedded(),
                          std::size_t bound = kDefaultEnumerationBound);
std::vector<GeneratedRow> generate_table(int table, const PrimeContext& ctx,
                                         const GoldTable& gold = GoldTable::embedded(),
                                         std::size_t bound = kDefaultEnumerationBound);

enum class Verdict {
  exact,       // same set of nonzero normal forms
  equivalent,  // different sets generating the same subgroup
  mismatch,
};

std::string to_string(Verdict v);

struct RowComparison {
  GroupId group;
  Verdict verdict = Verdict::mismatch;
  bool root_level_agrees = false;
  bool flagged = false;  // mismatch on a row whose reproduction is not claimed
  std::vector<std::string> engine;
  std::vector<std::string> gold;
  int engine_root_level = 0;
  int gold_root_level = 0;

  bool ok() const { return flagged || (verdict != Verdict::mismatch && root_level_agrees); }
};

Verdict compare_conditions(const std::vector<NormalForm>& engine, const std::vector<NormalForm>& gold);
RowComparison compare_row(const GeneratedRow& row, const PrimeContext& ctx, const GoldTable& gold);
std::vector<RowComparison> compare_gold(int table, const PrimeContext& ctx,
                                        const GoldTable& gold = GoldTable::embedded(),
                                        std::size_t bound = kDefaultEnumerationBound);

}  // namespace galembed
