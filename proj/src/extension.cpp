#include "galembed/extension.hpp"

#include <algorithm>
#include <set>

#include "galembed/error.hpp"

namespace galembed {

namespace {

// Whether x is supported on the kernel coordinates only. For kernels
// generated by central presentation generators this is membership in K.
bool in_kernel(const GroupElement& x, const std::vector<bool>& kernel_coord) {
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] != 0 && !kernel_coord[i]) return false;
  }
  return true;
}

std::vector<bool> kernel_mask(const EmbeddingProblemSpec& spec) {
  std::vector<bool> mask(spec.presentation.rank(), false);
  for (const std::string& name : spec.kernel_gens) mask[spec.presentation.require_index(name)] = true;
  return mask;
}

}  // namespace

EmbeddingProblemSpec EmbeddingProblemSpec::from_record(const GroupRecord& record, int root_level) {
  EmbeddingProblemSpec spec{record.presentation, record.kernels, record.kernel_level, {}, record.preimages, root_level};
  for (const std::string& name : record.preimages) {
    spec.preimages.push_back(record.presentation.generator_element(name));
  }
  spec.validate();
  return spec;
}

GroupElement EmbeddingProblemSpec::kernel_element(std::size_t index) const {
  return presentation.generator_element(kernel_gens.at(index));
}

std::vector<GroupElement> EmbeddingProblemSpec::kernel_elements() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < kernel_gens.size(); ++i) out.push_back(kernel_element(i));
  return out;
}

void EmbeddingProblemSpec::validate() const {
  if (kernel_gens.empty() || kernel_gens.size() > 2) throw DataError("expected one or two kernel generators");
  if (kernel_gens.size() == 2 && kernel_gens[0] == kernel_gens[1]) {
    throw DataError("the two kernels of a pullback must be distinct");
  }
  if (kernel_level < 1) throw DataError("kernel level must be at least 1");
  for (const std::string& name : kernel_gens) {
    const std::size_t i = presentation.require_index(name);
    if (!presentation.generator(i).central) throw DataError("kernel generator " + name + " is not central");
    if (presentation.generator(i).rel_exp != kernel_level) {
      throw DataError("kernel generator " + name + " does not have order p^" + std::to_string(kernel_level));
    }
  }
  if (preimages.empty()) throw DataError("no pre-images given");
  if (!preimage_names.empty() && preimage_names.size() != preimages.size()) {
    throw DataError("pre-image names do not match the pre-images");
  }
  for (const GroupElement& s : preimages) {
    if (!presentation.is_valid(s)) throw DataError("invalid pre-image element");
  }
  if (root_level < 1) throw DataError("root level must be at least 1");
}

std::vector<int> quotient_structure(const EmbeddingProblemSpec& spec, std::size_t bound) {
  spec.validate();
  const Presentation& P = spec.presentation;
  if (!is_abelian_quotient(P, spec.kernel_elements(), bound)) {
    throw DataError("the quotient by the kernel is not abelian");
  }
  const std::vector<bool> mask = kernel_mask(spec);

  std::vector<int> n;
  for (const GroupElement& s : spec.preimages) {
    int e = 0;
    GroupElement y = s;
    while (!in_kernel(y, mask)) {
      y = P.pow(y, P.p());
      ++e;
    }
    if (e == 0) throw DataError("a pre-image lies in the kernel");
    n.push_back(e);
  }

  std::int64_t kernel_order = 1;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) kernel_order *= P.relative_order(i);
  }
  std::int64_t box = 1;
  for (int e : n) box *= ipow(P.p(), e);
  if (box * kernel_order != P.group_order()) {
    throw DataError("pre-images do not give a cyclic decomposition of the quotient");
  }
  if (static_cast<std::uint64_t>(box) > bound) {
    throw BoundExceeded("quotient of order " + std::to_string(box) + " exceeds bound " + std::to_string(bound));
  }

  // Elements agree modulo K iff their non-kernel coordinates agree.
  auto project = [&](GroupElement x) {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) x.coords[i] = 0;
    }
    return x;
  };
  std::set<GroupElement> images;
  std::vector<std::int64_t> digits(n.size(), 0);
  std::vector<GroupElement> partial(n.size() + 1, P.identity());
  // Mixed-radix walk over prod s_i^{c_i}; partial[i+1] = partial[i] * s_i^{c_i}.
  while (true) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      partial[i + 1] = P.mul(partial[i], P.pow(spec.preimages[i], digits[i]));
    }
    if (!images.insert(project(partial.back())).second) {
      throw DataError("pre-images are not independent modulo the kernel");
    }
    std::size_t i = n.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++digits[i] < ipow(P.p(), n[i])) {
        done = false;
        break;
      }
      digits[i] = 0;
    }
    if (done) break;
  }
  return n;
}

ExtensionParams extract_params(const EmbeddingProblemSpec& spec, std::size_t kernel_index, std::size_t bound) {
  if (kernel_index >= spec.kernel_gens.size()) throw DataError("kernel index out of range");
  const Presentation& P = spec.presentation;
  ExtensionParams out;
  out.n = quotient_structure(spec, bound);
  out.t = out.n.size();
  out.kernel_index = kernel_index;
  out.kernel_level = spec.kernel_level;
  out.d.assign(out.t, std::vector<std::int64_t>(out.t, 0));

  const GroupElement eps = spec.kernel_element(kernel_index);
  std::vector<GroupElement> complement;
  for (std::size_t k = 0; k < spec.kernel_gens.size(); ++k) {
    if (k != kernel_index) complement.push_back(spec.kernel_element(k));
  }
  for (std::size_t i = 0; i < out.t; ++i) {
    const GroupElement power = P.pow(spec.preimages[i], ipow(P.p(), out.n[i]));
    out.m.push_back(central_log(P, power, eps, complement, bound));
  }
  for (std::size_t i = 0; i < out.t; ++i) {
    for (std::size_t j = i + 1; j < out.t; ++j) {
      out.d[i][j] = central_log(P, P.commutator(spec.preimages[j], spec.preimages[i]), eps, complement, bound);
    }
  }
  return out;
}

std::vector<KernelCandidate> find_central_kernels(const Presentation& P, std::size_t bound) {
  std::vector<GroupElement> central;
  for (GroupElement& x : enumerate(P, bound)) {
    if (!x.is_identity() && is_central(P, x)) central.push_back(std::move(x));
  }
  const std::int64_t p = P.p();

  // Order-p subgroups, keyed by their sorted element list.
  std::vector<std::vector<GroupElement>> order_p;
  std::set<std::vector<GroupElement>> seen;
  std::vector<GroupElement> cyclic_p2;
  std::set<std::vector<GroupElement>> seen_p2;
  for (const GroupElement& z : central) {
    const std::int64_t ord = P.element_order(z);
    if (ord == p) {
      auto span = subgroup_closure(P, {z}, bound);
      if (seen.insert(span).second) order_p.push_back(std::move(span));
    } else if (ord == p * p) {
      auto span = subgroup_closure(P, {z}, bound);
      if (seen_p2.insert(span).second) cyclic_p2.push_back(z);
    }
  }

  std::vector<KernelCandidate> out;
  for (const auto& span : order_p) {
    const GroupElement& gen = span[1];  // span[0] is the identity
    if (is_abelian_quotient(P, {gen}, bound)) out.push_back({KernelCandidate::Kind::order_p, {gen}});
  }
  for (std::size_t a = 0; a < order_p.size(); ++a) {
    for (std::size_t b = a + 1; b < order_p.size(); ++b) {
      const std::vector<GroupElement> pair{order_p[a][1], order_p[b][1]};
      if (is_abelian_quotient(P, pair, bound)) out.push_back({KernelCandidate::Kind::pair, pair});
    }
  }
  for (const GroupElement& z : cyclic_p2) {
    if (is_abelian_quotient(P, {z}, bound)) out.push_back({KernelCandidate::Kind::cyclic_p2, {z}});
  }
  return out;
}

bool kernel_among(const Presentation& P, const std::vector<KernelCandidate>& candidates,
                  const std::vector<GroupElement>& kernel, std::size_t bound) {
  const auto target = subgroup_closure(P, kernel, bound);
  return std::any_of(candidates.begin(), candidates.end(), [&](const KernelCandidate& c) {
    return subgroup_closure(P, c.generators, bound) == target;
  });
}

std::vector<GroupElement> frattini_subgroup(const Presentation& P, std::size_t bound) {
  // For class 2 and odd p, G^p [G,G] is generated by the p-th powers of
  // the generators together with the commutator values.
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < P.rank(); ++i) gens.push_back(P.pow(P.generator_element(i), P.p()));
  for (std::size_t i = 0; i < P.rank(); ++i) {
    for (std::size_t j = i + 1; j < P.rank(); ++j) {
      gens.push_back(P.commutator(P.generator_element(j), P.generator_element(i)));
    }
  }
  return subgroup_closure(P, gens, bound);
}

bool frattini_contains_kernel(const Presentation& P, const std::vector<GroupElement>& kernel, std::size_t bound) {
  const auto phi = frattini_subgroup(P, bound);
  return std::all_of(kernel.begin(), kernel.end(), [&](const GroupElement& k) { return in_subgroup(phi, k); });
}

int minimal_root_level(const EmbeddingProblemSpec& spec, std::size_t bound) {
  int level = std::max(1, spec.kernel_level);
  for (std::size_t k = 0; k < spec.kernel_gens.size(); ++k) {
    const ExtensionParams params = extract_params(spec, k, bound);
    for (std::size_t i = 0; i < params.t; ++i) {
      if (params.m[i] != 0) level = std::max(level, params.n[i]);
      level = std::max(level, params.n[i] - 1);
    }
  }
  return level;
}

}  // namespace galembed

namespace galembed {

bool GroupCheck::ok() const {
  return order_ok && associativity.ok && kernels_central && kernel_found && quotient_ok && error.empty();
}

GroupCheck check_group(const GroupId& id, const PrimeContext& ctx, std::uint64_t samples, std::uint64_t seed,
                       std::size_t bound) {
  GroupCheck out;
  out.id = id;
  try {
    const GroupRecord record = make_record(id, ctx);
    const Presentation& P = record.presentation;
    out.order = P.group_order();
    out.order_ok = out.order == ipow(ctx.p, id.order_exp);
    out.associativity = check_associativity(P, samples, seed);

    const EmbeddingProblemSpec spec = EmbeddingProblemSpec::from_record(record);
    const auto kernel = spec.kernel_elements();
    out.kernels_central = std::all_of(kernel.begin(), kernel.end(), [&](const GroupElement& k) {
      return is_central(P, k) && P.element_order(k) == ipow(ctx.p, record.kernel_level);
    });
    out.kernel_found = kernel_among(P, find_central_kernels(P, bound), kernel, bound);

    out.invariants = quotient_structure(spec, bound);
    int total = 0;
    for (int e : out.invariants) total += e;
    out.quotient_ok = total + record.kernel_level * static_cast<int>(kernel.size()) == id.order_exp;
  } catch (const DataError& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace galembed
