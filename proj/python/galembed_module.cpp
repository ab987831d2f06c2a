#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "galembed/brauer.hpp"
#include "galembed/catalog.hpp"
#include "galembed/error.hpp"
#include "galembed/extension.hpp"
#include "galembed/local_oracle.hpp"
#include "galembed/obstruction.hpp"

namespace py = pybind11;
using namespace galembed;

namespace {

py::dict row_dict(const GeneratedRow& row, std::int64_t p) {
  py::dict d;
  d["group"] = row.group.label();
  d["p"] = p;
  d["params"] = row.group.params_text();
  d["independents"] = row.independents;
  d["root_level"] = row.root_level;
  d["minimal_root_level"] = row.minimal_root_level;
  d["conditions"] = row.result.rendered();
  d["kind"] = to_string(row.result.kind);
  return d;
}

SymbolBasis basis_of(std::int64_t p, int labels, int root_level, int torsion_level) {
  SymbolBasis b{p, labels, root_level, torsion_level};
  b.validate();
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Obstructions to central embedding problems for p-groups of order p^5 and p^6";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def("list_ids", [](std::int64_t p, int order_exp) {
    std::vector<std::string> out;
    for (const GroupId& id : enumerate_ids(order_exp, PrimeContext::make(p))) out.push_back(id.label());
    return out;
  }, py::arg("p"), py::arg("order_exp") = 0, "Instance ids in catalog order; order_exp 5, 6 or 0 for both.");

  m.def("group_order", [](const std::string& id, std::int64_t p) {
    const PrimeContext ctx = PrimeContext::make(p);
    return instantiate(parse_id(id, ctx), ctx).group_order();
  }, py::arg("id"), py::arg("p"));

  m.def("obstruct", [](const std::string& id, std::int64_t p) {
    const PrimeContext ctx = PrimeContext::make(p);
    return row_dict(generate_row(parse_id(id, ctx), ctx), p);
  }, py::arg("id"), py::arg("p"), "Obstruction row of one instance.");

  m.def("table", [](int table, std::int64_t p) {
    const PrimeContext ctx = PrimeContext::make(p);
    py::list out;
    for (const GeneratedRow& row : generate_table(table, ctx)) out.append(row_dict(row, p));
    return out;
  }, py::arg("table"), py::arg("p"));

  m.def("check_table", [](int table, std::int64_t p) {
    py::list out;
    for (const RowComparison& r : compare_gold(table, PrimeContext::make(p))) {
      py::dict d;
      d["group"] = r.group.label();
      d["verdict"] = to_string(r.verdict);
      d["ok"] = r.ok();
      d["flagged"] = r.flagged;
      d["root_level_agrees"] = r.root_level_agrees;
      d["engine"] = r.engine;
      d["gold"] = r.gold;
      out.append(d);
    }
    return out;
  }, py::arg("table"), py::arg("p"), "Row-by-row comparison against the built-in gold rows.");

  m.def("extension_params", [](const std::string& id, std::int64_t p, std::size_t kernel_index) {
    const PrimeContext ctx = PrimeContext::make(p);
    const auto spec = EmbeddingProblemSpec::from_record(make_record(parse_id(id, ctx), ctx));
    const ExtensionParams e = extract_params(spec, kernel_index);
    py::dict d;
    d["n"] = e.n;
    d["m"] = e.m;
    d["d"] = e.d;
    return d;
  }, py::arg("id"), py::arg("p"), py::arg("kernel_index") = 0);

  m.def("normalize", [](const std::string& expr, std::int64_t p, int labels, int root_level, int torsion_level) {
    const SymbolBasis b = basis_of(p, labels, root_level, torsion_level);
    return render(normalize(parse(expr, b), b));
  }, py::arg("expr"), py::arg("p"), py::arg("labels"), py::arg("root_level") = 1, py::arg("torsion_level") = 1,
     "Canonical rendering of a symbol product.");

  m.def("equivalent", [](const std::string& a, const std::string& b, std::int64_t p, int labels, int root_level,
                         int torsion_level, std::size_t trials, std::uint64_t seed) {
    const SymbolBasis basis = basis_of(p, labels, root_level, torsion_level);
    const BrauerExpression x = parse(a, basis), y = parse(b, basis);
    py::dict d;
    d["formal"] = equal(x, y, basis);
    d["numeric"] = check_equivalence(x, y, basis, trials, seed).agree;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("labels"), py::arg("root_level") = 1,
     py::arg("torsion_level") = 1, py::arg("trials") = 200, py::arg("seed") = 1,
     "Formal equality and agreement under the local oracle.");

  m.def("find_suitable_ell", &find_suitable_ell, py::arg("p"), py::arg("level"), py::arg("count"),
        py::arg("search_bound") = 100'000'000);

  m.def("selfcheck", [](const std::string& id, std::int64_t p, std::uint64_t samples, std::uint64_t seed) {
    const PrimeContext ctx = PrimeContext::make(p);
    const GroupCheck c = check_group(parse_id(id, ctx), ctx, samples, seed);
    py::dict d;
    d["ok"] = c.ok();
    d["order"] = c.order;
    d["associative"] = c.associativity.ok;
    d["triples"] = c.associativity.triples;
    d["invariants"] = c.invariants;
    d["error"] = c.error;
    return d;
  }, py::arg("id"), py::arg("p"), py::arg("samples") = 10000, py::arg("seed") = 1);
}
