#include "galembed/obstruction.hpp"

#include <algorithm>

#include "galembed/error.hpp"

namespace galembed {

std::string to_string(SolvabilityKind kind) { return kind == SolvabilityKind::proper ? "proper" : "weak"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::exact:
      return "exact";
    case Verdict::equivalent:
      return "equivalent";
    case Verdict::mismatch:
      return "mismatch";
  }
  return "mismatch";
}

std::vector<std::string> ObstructionResult::rendered() const {
  std::vector<std::string> out;
  for (const NormalForm& nf : normal_forms) out.push_back(render(nf));
  return out;
}

SymbolBasis basis_for(const EmbeddingProblemSpec& spec, std::size_t labels) {
  SymbolBasis basis{spec.presentation.p(), static_cast<int>(labels), spec.root_level, spec.kernel_level};
  basis.validate();
  return basis;
}

namespace {

SymbolFactor symbol(Monomial left, Monomial right, std::int64_t exponent = 1) {
  return SymbolFactor{std::move(left), std::move(right), exponent};
}

// (a_i, zeta_{p^level}^e; z), or nothing when e = 0.
void add_cyclic_term(BrauerExpression& expr, const SymbolBasis& basis, std::size_t i, int level, std::int64_t e) {
  if (e == 0) return;
  if (level > basis.root_level) {
    throw DataError("root level " + std::to_string(basis.root_level) + " is too small: factor a" +
                    std::to_string(i + 1) + " needs zeta_{p^" + std::to_string(level) + "}");
  }
  expr.factors.push_back(symbol(Monomial::label(basis, static_cast<int>(i + 1)), Monomial::root(basis, level, e)));
}

void add_condition(ObstructionResult& result, BrauerExpression expr) {
  NormalForm nf = normalize(expr, result.basis);
  if (nf.is_trivial()) return;
  if (std::find(result.normal_forms.begin(), result.normal_forms.end(), nf) != result.normal_forms.end()) return;
  result.conditions.push_back(std::move(expr));
  result.normal_forms.push_back(std::move(nf));
}

// Cyclic realizability: the factor of order p^{N+1} needs (a_i, zeta_{p^N}; z) = 1.
std::vector<BrauerExpression> realizability_terms(const std::vector<int>& n, const SymbolBasis& basis) {
  std::vector<BrauerExpression> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] > basis.root_level + 1) {
      throw DataError("root level " + std::to_string(basis.root_level) + " is too small for a cyclic factor of order p^" +
                      std::to_string(n[i]));
    }
    if (n[i] == basis.root_level + 1) {
      BrauerExpression e;
      e.factors.push_back(symbol(Monomial::label(basis, static_cast<int>(i + 1)), Monomial::root(basis, basis.root_level)));
      out.push_back(std::move(e));
    }
  }
  return out;
}

SolvabilityKind kind_of(const EmbeddingProblemSpec& spec, std::size_t bound) {
  return frattini_contains_kernel(spec.presentation, spec.kernel_elements(), bound) ? SolvabilityKind::proper
                                                                                    : SolvabilityKind::weak;
}

ObstructionResult order_p_kernels(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_level != 1) throw DataError("expected kernels of order p");
  ObstructionResult result;
  std::vector<int> n;
  for (std::size_t k = 0; k < spec.kernel_gens.size(); ++k) {
    const ExtensionParams params = extract_params(spec, k, bound);
    if (k == 0) {
      result.basis = basis_for(spec, params.t);
      n = params.n;
    }
    add_condition(result, kernel_formula(params, result.basis));
  }
  for (BrauerExpression& e : realizability_terms(n, result.basis)) add_condition(result, std::move(e));
  result.root_level = spec.root_level;
  result.kind = kind_of(spec, bound);
  return result;
}

std::int64_t log_against(const EmbeddingProblemSpec& spec, const GroupElement& x, std::size_t kernel_index,
                         std::size_t bound) {
  std::vector<GroupElement> complement;
  for (std::size_t k = 0; k < spec.kernel_gens.size(); ++k) {
    if (k != kernel_index) complement.push_back(spec.kernel_element(k));
  }
  return central_log(spec.presentation, x, spec.kernel_element(kernel_index), complement, bound);
}

}  // namespace

BrauerExpression kernel_formula(const ExtensionParams& params, const SymbolBasis& basis) {
  if (params.t != static_cast<std::size_t>(basis.labels)) throw DataError("parameter count does not match the basis");
  BrauerExpression expr;
  for (std::size_t i = 0; i < params.t; ++i) add_cyclic_term(expr, basis, i, params.n[i], params.m[i]);
  for (std::size_t i = 0; i < params.t; ++i) {
    for (std::size_t j = i + 1; j < params.t; ++j) {
      if (params.d[i][j] == 0) continue;
      expr.factors.push_back(symbol(Monomial::label(basis, static_cast<int>(j + 1)),
                                    Monomial::label(basis, static_cast<int>(i + 1)), params.d[i][j]));
    }
  }
  return expr;
}

ObstructionResult obstruction_abelian(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_gens.size() != 1) throw DataError("obstruction_abelian expects a single kernel");
  return order_p_kernels(spec, bound);
}

ObstructionResult obstruction_pullback(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_gens.size() != 2) throw DataError("obstruction_pullback expects two kernels");
  return order_p_kernels(spec, bound);
}

ObstructionResult obstruction_mu_pn(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_gens.size() != 1 || spec.kernel_level < 2) {
    throw DataError("obstruction_mu_pn expects one cyclic kernel of order p^n with n >= 2");
  }
  const ExtensionParams params = extract_params(spec, 0, bound);
  for (int e : params.n) {
    if (e != spec.kernel_level) throw DataError("the quotient is not homocyclic of exponent p^" + std::to_string(spec.kernel_level));
  }
  ObstructionResult result;
  result.basis = basis_for(spec, params.t);
  result.root_level = spec.root_level;
  add_condition(result, kernel_formula(params, result.basis));
  result.kind = kind_of(spec, bound);
  return result;
}

ObstructionResult obstruction(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_level >= 2) return obstruction_mu_pn(spec, bound);
  if (spec.kernel_gens.size() == 2) return obstruction_pullback(spec, bound);
  return obstruction_abelian(spec, bound);
}

ObstructionResult massy(const EmbeddingProblemSpec& spec, std::size_t bound) {
  if (spec.kernel_level != 1) throw DataError("massy expects kernels of order p");
  const std::vector<int> n = quotient_structure(spec, bound);
  if (std::any_of(n.begin(), n.end(), [](int e) { return e != 1; })) {
    throw DataError("massy expects an elementary abelian quotient");
  }
  const Presentation& P = spec.presentation;
  ObstructionResult result;
  result.basis = basis_for(spec, n.size());
  result.root_level = spec.root_level;
  const std::size_t t = n.size();
  for (std::size_t k = 0; k < spec.kernel_gens.size(); ++k) {
    BrauerExpression expr;
    for (std::size_t i = 0; i < t; ++i) {
      const std::int64_t di = log_against(spec, P.pow(spec.preimages[i], P.p()), k, bound);
      if (di != 0) {
        expr.factors.push_back(symbol(Monomial::label(result.basis, static_cast<int>(i + 1)),
                                      Monomial::root(result.basis, 1), di));
      }
    }
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = i + 1; j < t; ++j) {
        const std::int64_t dij = log_against(spec, P.commutator(spec.preimages[j], spec.preimages[i]), k, bound);
        if (dij != 0) {
          expr.factors.push_back(symbol(Monomial::label(result.basis, static_cast<int>(j + 1)),
                                        Monomial::label(result.basis, static_cast<int>(i + 1)), dij));
        }
      }
    }
    add_condition(result, std::move(expr));
  }
  result.kind = kind_of(spec, bound);
  return result;
}

SplitResult split_direct_factor(const EmbeddingProblemSpec& spec, std::size_t t, std::size_t kernel_index,
                                std::size_t bound) {
  if (spec.kernel_level != 1) throw DataError("split_direct_factor expects a kernel of order p");
  const std::vector<int> n = quotient_structure(spec, bound);
  if (t >= n.size()) throw DataError("split_direct_factor: factor index out of range");
  if (n[t] != 1) throw DataError("split_direct_factor: the chosen factor is not of order p");
  const Presentation& P = spec.presentation;
  const SymbolBasis basis = basis_for(spec, n.size());

  const GroupElement& s_t = spec.preimages[t];
  const std::int64_t j = log_against(spec, P.pow(s_t, P.p()), kernel_index, bound);
  Monomial right = Monomial::root(basis, 1, j);
  SplitResult out;
  ResidualHandle rest;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i == t) continue;
    const std::int64_t di = log_against(spec, P.commutator(s_t, spec.preimages[i]), kernel_index, bound);
    right *= Monomial::label(basis, static_cast<int>(i + 1), di);
    rest.factors.push_back(i);
  }
  for (auto& e : right.exps) e = mod(e, basis.torsion());
  out.symbol.factors.push_back(symbol(Monomial::label(basis, static_cast<int>(t + 1)), std::move(right)));
  rest.description = "restricted problem on the complement of factor " + std::to_string(t + 1);
  out.residuals.push_back(std::move(rest));
  return out;
}

SplitResult split_direct_product(const EmbeddingProblemSpec& spec, const std::vector<std::size_t>& left,
                                 const std::vector<std::size_t>& right, std::size_t kernel_index, std::size_t bound) {
  if (spec.kernel_level != 1) throw DataError("split_direct_product expects a kernel of order p");
  const std::size_t t = spec.preimages.size();
  std::vector<bool> used(t, false);
  for (const auto* part : {&left, &right}) {
    for (std::size_t i : *part) {
      if (i >= t || used[i]) throw DataError("split_direct_product: malformed decomposition");
      used[i] = true;
    }
  }
  const Presentation& P = spec.presentation;
  const SymbolBasis basis = basis_for(spec, t);
  SplitResult out;
  for (std::size_t i : left) {
    for (std::size_t j : right) {
      const std::int64_t e = log_against(spec, P.commutator(spec.preimages[j], spec.preimages[i]), kernel_index, bound);
      if (e == 0) continue;
      out.symbol.factors.push_back(symbol(Monomial::label(basis, static_cast<int>(j + 1)),
                                          Monomial::label(basis, static_cast<int>(i + 1)), e));
    }
  }
  out.residuals.push_back({left, "restricted problem on the first factor group"});
  out.residuals.push_back({right, "restricted problem on the second factor group"});
  return out;
}

BrauerExpression recursive_split(const EmbeddingProblemSpec& spec, std::size_t kernel_index, std::size_t bound) {
  const ExtensionParams params = extract_params(spec, kernel_index, bound);
  const SymbolBasis basis = basis_for(spec, params.t);
  BrauerExpression out;
  auto rec = [&](auto&& self, std::vector<std::size_t> idx) -> void {
    if (idx.size() == 1) {
      const std::size_t i = idx.front();
      add_cyclic_term(out, basis, i, params.n[i], params.m[i]);
      return;
    }
    const auto mid = idx.begin() + static_cast<std::ptrdiff_t>(idx.size() / 2);
    std::vector<std::size_t> lo(idx.begin(), mid);
    std::vector<std::size_t> hi(mid, idx.end());
    out *= split_direct_product(spec, lo, hi, kernel_index, bound).symbol;
    self(self, std::move(lo));
    self(self, std::move(hi));
  };
  std::vector<std::size_t> all(params.t);
  for (std::size_t i = 0; i < params.t; ++i) all[i] = i;
  rec(rec, all);
  return out;
}

GeneratedRow generate_row(const GroupId& id, const PrimeContext& ctx, const GoldTable& gold, std::size_t bound) {
  const GroupRecord record = make_record(id, ctx);
  EmbeddingProblemSpec spec = EmbeddingProblemSpec::from_record(record, 1);
  GeneratedRow row;
  row.group = id;
  row.independents = static_cast<int>(record.preimages.size());
  row.minimal_root_level = minimal_root_level(spec, bound);
  row.root_level = gold.contains(id.template_label) ? gold.row(id.template_label).root_level : row.minimal_root_level;
  spec.root_level = row.root_level;
  row.result = obstruction(spec, bound);
  return row;
}

std::vector<GeneratedRow> generate_table(int table, const PrimeContext& ctx, const GoldTable& gold, std::size_t bound) {
  std::vector<GeneratedRow> out;
  for (const GroupId& id : table_ids(table, ctx)) out.push_back(generate_row(id, ctx, gold, bound));
  return out;
}

Verdict compare_conditions(const std::vector<NormalForm>& engine, const std::vector<NormalForm>& gold) {
  auto contains_all = [](const std::vector<NormalForm>& a, const std::vector<NormalForm>& b) {
    return std::all_of(b.begin(), b.end(), [&](const NormalForm& x) { return std::find(a.begin(), a.end(), x) != a.end(); });
  };
  if (contains_all(engine, gold) && contains_all(gold, engine)) return Verdict::exact;
  if (same_span(engine, gold)) return Verdict::equivalent;
  return Verdict::mismatch;
}

RowComparison compare_row(const GeneratedRow& row, const PrimeContext& ctx, const GoldTable& gold) {
  RowComparison cmp;
  cmp.group = row.group;
  cmp.engine = row.result.rendered();
  cmp.engine_root_level = row.minimal_root_level;
  const TableRow expected = gold_row(row.group, ctx, gold);
  cmp.gold_root_level = expected.root_level;
  cmp.root_level_agrees = expected.root_level == row.minimal_root_level;
  std::vector<NormalForm> gold_nf;
  for (const BrauerExpression& e : expected.obstructions) {
    NormalForm nf = normalize(e, expected.basis);
    if (nf.is_trivial() || std::find(gold_nf.begin(), gold_nf.end(), nf) != gold_nf.end()) continue;
    cmp.gold.push_back(render(nf));
    gold_nf.push_back(std::move(nf));
  }
  if (!(expected.basis == row.result.basis)) {
    cmp.verdict = Verdict::mismatch;
  } else {
    cmp.verdict = compare_conditions(row.result.normal_forms, gold_nf);
  }
  cmp.flagged = cmp.verdict == Verdict::mismatch && row.group.template_label == "Phi15(2211)b_rs";
  return cmp;
}

std::vector<RowComparison> compare_gold(int table, const PrimeContext& ctx, const GoldTable& gold, std::size_t bound) {
  std::vector<RowComparison> out;
  for (const GroupId& id : table_ids(table, ctx)) {
    try {
      out.push_back(compare_row(generate_row(id, ctx, gold, bound), ctx, gold));
    } catch (const DataError& e) {
      RowComparison cmp;
      cmp.group = id;
      cmp.verdict = Verdict::mismatch;
      cmp.engine = {std::string("error: ") + e.what()};
      cmp.flagged = id.template_label == "Phi15(2211)b_rs";
      out.push_back(std::move(cmp));
    }
  }
  return out;
}

}  // namespace galembed
