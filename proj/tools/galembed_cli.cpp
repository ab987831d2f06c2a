// Command-line front end: catalog listing, obstructions, table
// regeneration and diffing, group self-checks and oracle evaluation.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 mismatch or failed check.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "galembed/brauer.hpp"
#include "galembed/catalog.hpp"
#include "galembed/error.hpp"
#include "galembed/extension.hpp"
#include "galembed/local_oracle.hpp"
#include "galembed/obstruction.hpp"

using namespace galembed;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitMismatch = 3;

struct RunConfig {
  std::vector<std::int64_t> primes;
  std::string order = "both";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  bool trials_set = false;
  std::size_t bound = kDefaultEnumerationBound;
  std::string gold_path;

  int order_exp() const { return order == "5" ? 5 : order == "6" ? 6 : 0; }
};

const GoldTable& gold_of(const RunConfig& cfg) {
  static std::optional<GoldTable> loaded;
  if (cfg.gold_path.empty()) return GoldTable::embedded();
  if (!loaded) loaded = GoldTable::load(cfg.gold_path);
  return *loaded;
}

std::vector<std::int64_t> primes_or(const RunConfig& cfg, std::vector<std::int64_t> fallback) {
  return cfg.primes.empty() ? fallback : cfg.primes;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string conditions_text(const std::vector<std::string>& conds) {
  return conds.empty() ? "1" : join(conds, ", ");
}

std::string root_text(int level) { return level == 1 ? "p" : "p^" + std::to_string(level); }

void print_row_header(const RunConfig& cfg) {
  if (cfg.format == "csv") std::cout << "group,p,params,independents,root_level,conditions,kind\n";
}

void print_row(const GeneratedRow& row, std::int64_t p, const RunConfig& cfg) {
  const auto conds = row.result.rendered();
  const std::string params = row.group.params_text().empty() ? "-" : row.group.params_text();
  if (cfg.format == "machine") {
    std::cout << row.group.label() << " | " << p << " | " << params << " | " << row.root_level << " | "
              << conditions_text(conds) << " | " << to_string(row.result.kind) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << csv_field(row.group.label()) << "," << p << "," << csv_field(params) << "," << row.independents
              << "," << row.root_level << "," << csv_field(conditions_text(conds)) << ","
              << to_string(row.result.kind) << "\n";
  } else {
    std::printf("%-28s %2d   zeta_%-5s %s\n", row.group.label().c_str(), row.independents,
                root_text(row.root_level).c_str(), conditions_text(conds).c_str());
  }
}

int cmd_list(const RunConfig& cfg) {
  for (std::int64_t p : primes_or(cfg, {3})) {
    const PrimeContext ctx = PrimeContext::make(p);
    if (cfg.format == "csv") std::cout << "id,p,order_exp,table\n";
    for (const GroupId& id : enumerate_ids(cfg.order_exp(), ctx)) {
      const int table = id.group_template().table;
      if (cfg.format == "machine") {
        std::cout << id.label() << " | " << p << " | " << id.order_exp << " | " << table << "\n";
      } else if (cfg.format == "csv") {
        std::cout << csv_field(id.label()) << "," << p << "," << id.order_exp << "," << table << "\n";
      } else {
        std::cout << id.label() << "\n";
      }
    }
  }
  return 0;
}

int cmd_show(const std::string& text, const RunConfig& cfg) {
  for (std::int64_t p : primes_or(cfg, {3})) {
    const PrimeContext ctx = PrimeContext::make(p);
    const GroupRecord rec = make_record(parse_id(text, ctx), ctx);
    const Presentation& P = rec.presentation;
    std::cout << rec.id.label() << " at p = " << p << ", order " << p << "^" << rec.id.order_exp << "\n";
    std::cout << "generators:";
    for (const Generator& g : P.generators()) {
      std::cout << " " << g.name << " (p^" << g.rel_exp << (g.central ? ", central" : "") << ")";
    }
    std::cout << "\npowers:\n";
    for (std::size_t i = 0; i < P.rank(); ++i) {
      if (P.power_tail(i).is_identity()) continue;
      std::cout << "  " << P.generator(i).name << "^" << P.relative_order(i) << " = " << P.format(P.power_tail(i))
                << "\n";
    }
    std::cout << "commutators:\n";
    for (const auto& [key, value] : P.comm_table()) {
      std::cout << "  [" << P.generator(key.first).name << ", " << P.generator(key.second).name
                << "] = " << P.format(value) << "\n";
    }
    std::cout << "kernel: " << join(rec.kernels, ", ") << " (order p^" << rec.kernel_level << " each)\n";
    std::cout << "pre-images: " << join(rec.preimages, ", ") << "\n";
  }
  return 0;
}

int cmd_obstruct(const std::string& text, const RunConfig& cfg) {
  print_row_header(cfg);
  for (std::int64_t p : primes_or(cfg, {3})) {
    const PrimeContext ctx = PrimeContext::make(p);
    const GeneratedRow row = generate_row(parse_id(text, ctx), ctx, gold_of(cfg), cfg.bound);
    if (cfg.format != "text") {
      print_row(row, p, cfg);
      continue;
    }
    std::cout << "group: " << row.group.label() << "  p = " << p << "\n";
    std::cout << "independents: " << row.independents << "\n";
    std::cout << "root level: " << root_text(row.root_level) << "\n";
    std::cout << "minimal root level: " << root_text(row.minimal_root_level) << "\n";
    std::cout << "conditions: " << conditions_text(row.result.rendered()) << "\n";
    std::cout << "raw:";
    for (const BrauerExpression& e : row.result.conditions) std::cout << " " << render_raw(e, row.result.basis) << ";";
    std::cout << "\nsolvability: " << to_string(row.result.kind) << "\n";
  }
  return 0;
}

int cmd_table(int table, const RunConfig& cfg) {
  if (table < 1 || table > 6) throw DataError("table must be 1..6");
  print_row_header(cfg);
  for (std::int64_t p : primes_or(cfg, {3})) {
    const PrimeContext ctx = PrimeContext::make(p);
    if (cfg.format == "text") std::cout << "Table " << table << ", p = " << p << "\n";
    for (const GeneratedRow& row : generate_table(table, ctx, gold_of(cfg), cfg.bound)) print_row(row, p, cfg);
  }
  return 0;
}

int cmd_check_tables(const std::vector<int>& tables, const RunConfig& cfg) {
  std::map<Verdict, int> counts;
  int flagged = 0, root_disagree = 0, failed = 0, total = 0;
  for (std::int64_t p : primes_or(cfg, {3, 5, 7})) {
    const PrimeContext ctx = PrimeContext::make(p);
    const auto t0 = std::chrono::steady_clock::now();
    for (int table : tables) {
      for (const RowComparison& cmp : compare_gold(table, ctx, gold_of(cfg), cfg.bound)) {
        ++total;
        ++counts[cmp.verdict];
        if (cmp.flagged) ++flagged;
        if (!cmp.root_level_agrees) ++root_disagree;
        if (!cmp.ok()) ++failed;
        const std::string status = cmp.ok() ? (cmp.flagged ? "FLAGGED" : "OK") : "FAIL";
        std::cout << status << " p=" << p << " table=" << table << " " << cmp.group.label() << " "
                  << to_string(cmp.verdict);
        if (!cmp.root_level_agrees) {
          std::cout << " root " << root_text(cmp.engine_root_level) << " vs " << root_text(cmp.gold_root_level);
        }
        std::cout << "\n";
        if (cmp.verdict != Verdict::exact) {
          std::cout << "  engine: " << conditions_text(cmp.engine) << "\n";
          std::cout << "  gold:   " << conditions_text(cmp.gold) << "\n";
        }
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "p=" << p << " checked in " << secs << " s\n";
  }
  std::cout << "rows " << total << ", exact " << counts[Verdict::exact] << ", equivalent "
            << counts[Verdict::equivalent] << ", mismatch " << counts[Verdict::mismatch] << " (flagged " << flagged
            << "), root disagreements " << root_disagree << ", failures " << failed << "\n";
  return failed == 0 ? 0 : kExitMismatch;
}

int cmd_selfcheck(const RunConfig& cfg) {
  const std::uint64_t samples = cfg.trials_set ? cfg.trials : 100000;
  int failed = 0, total = 0;
  for (std::int64_t p : primes_or(cfg, {3})) {
    const PrimeContext ctx = PrimeContext::make(p);
    for (const GroupId& id : enumerate_ids(cfg.order_exp(), ctx)) {
      const GroupCheck chk = check_group(id, ctx, samples, cfg.seed, cfg.bound);
      ++total;
      if (!chk.ok()) ++failed;
      std::vector<std::string> inv;
      for (int e : chk.invariants) inv.push_back(std::to_string(e));
      std::cout << (chk.ok() ? "OK" : "FAIL") << " p=" << p << " " << id.label() << " order=" << chk.order
                << " assoc=" << (chk.associativity.ok ? "ok" : "FAILED") << "("
                << (chk.associativity.exhaustive ? "exhaustive " : "sampled ") << chk.associativity.triples
                << ") kernel=" << (chk.kernels_central && chk.kernel_found ? "ok" : "FAILED")
                << " quotient=(" << join(inv, ",") << ")";
      if (!chk.error.empty()) std::cout << " error: " << chk.error;
      std::cout << "\n";
    }
  }
  std::cout << "groups " << total << ", failures " << failed << "\n";
  return failed == 0 ? 0 : kExitMismatch;
}

// Basis large enough for every label and root mentioned in the text.
SymbolBasis infer_basis(const ast::Expression& expr, std::int64_t p, std::optional<int> root_level) {
  int labels = 1, level = 1, torsion = 1;
  for (const ast::Term& t : expr.terms) {
    torsion = std::max(torsion, t.torsion_level);
    for (const auto* side : {&t.left, &t.right}) {
      for (const ast::Factor& f : *side) {
        if (f.is_root) {
          level = std::max(level, f.index);
        } else {
          labels = std::max(labels, f.index);
        }
      }
    }
  }
  SymbolBasis basis{p, labels, std::max(root_level.value_or(1), std::max(level, torsion)), torsion};
  basis.validate();
  return basis;
}

int cmd_eval(const std::string& text, std::optional<int> root_level, const RunConfig& cfg) {
  const ast::Expression parsed = parse_symbolic(text);
  int status = 0;
  for (std::int64_t p : primes_or(cfg, {3})) {
    const SymbolBasis basis = infer_basis(parsed, p, root_level);
    const BrauerExpression expr = galembed::bind(parsed, basis, {{"p", p}});
    const NormalForm nf = normalize(expr, basis);
    const auto ells = find_exact_ell(p, basis.root_level, 3);
    std::size_t agree = 0, nonzero = 0;
    std::vector<std::string> values;
    for (std::size_t k = 0; k < cfg.trials; ++k) {
      const LocalAssignment a = random_assignment(basis, ells[k % ells.size()], trial_seed(cfg.seed, k));
      const std::int64_t raw = eval_expression(expr, a);
      if (raw == eval_normal_form(nf, a)) ++agree;
      if (raw != 0) ++nonzero;
      values.push_back(std::to_string(raw));
    }
    std::vector<std::string> ell_text;
    for (std::int64_t ell : ells) ell_text.push_back(std::to_string(ell));
    if (cfg.format == "machine") {
      std::cout << p << " | " << render(nf) << " | " << join(ell_text, ",") << " | " << join(values, ",") << "\n";
    } else {
      std::cout << "p = " << p << ", root zeta_" << root_text(basis.root_level) << ", degree "
                << root_text(basis.torsion_level) << "\n";
      std::cout << "normal form: " << render(nf) << "\n";
      std::cout << "primes: " << join(ell_text, ", ") << "\n";
      std::cout << "trials: " << cfg.trials << ", raw = normal form on " << agree << ", nonzero on " << nonzero
                << "\n";
    }
    if (agree != cfg.trials) status = kExitMismatch;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstructions to central embedding problems for groups of order p^5 and p^6"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--p", cfg.primes, "Odd prime (repeatable)")->check(CLI::PositiveNumber);
  app.add_option("--order", cfg.order, "Group order exponent")->check(CLI::IsMember({"5", "6", "both"}));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "machine"}));
  app.add_option("--seed", cfg.seed, "Master seed");
  auto* trials_opt = app.add_option("--trials", cfg.trials, "Trial count")->check(CLI::PositiveNumber);
  app.add_option("--bound", cfg.bound, "Enumeration bound")->check(CLI::PositiveNumber);
  app.add_option("--gold", cfg.gold_path, "Gold table file overriding the built-in one")->check(CLI::ExistingFile);

  std::string id_text, expr_text;
  int table = 0;
  std::vector<int> tables;
  std::optional<int> root_level;

  auto* list = app.add_subcommand("list", "List catalog instances");
  auto* show = app.add_subcommand("show", "Print an instance's presentation");
  show->add_option("id", id_text, "Instance id, e.g. Phi4(221)d_r[r=1]")->required();
  auto* obstruct = app.add_subcommand("obstruct", "Compute the obstruction of one instance");
  obstruct->add_option("id", id_text, "Instance id")->required();
  auto* table_cmd = app.add_subcommand("table", "Regenerate a table");
  table_cmd->add_option("n", table, "Table number")->required()->check(CLI::Range(1, 6));
  auto* check = app.add_subcommand("check-tables", "Diff regenerated tables against the gold rows");
  check->add_option("--table", tables, "Restrict to these tables")->check(CLI::Range(1, 6));
  auto* selfcheck = app.add_subcommand("selfcheck", "Verify the group engine on every instance");
  auto* eval = app.add_subcommand("eval", "Normalize an expression and evaluate it with the local oracle");
  eval->add_option("expr", expr_text, "Expression, e.g. \"(a1, z*a2; z)\"")->required();
  eval->add_option("--root", root_level, "Root level N")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  cfg.trials_set = trials_opt->count() > 0;
  if (tables.empty()) tables = {1, 2, 3, 4, 5, 6};

  try {
    for (std::int64_t p : cfg.primes) PrimeContext::make(p);
    if (list->parsed()) return cmd_list(cfg);
    if (show->parsed()) return cmd_show(id_text, cfg);
    if (obstruct->parsed()) return cmd_obstruct(id_text, cfg);
    if (table_cmd->parsed()) return cmd_table(table, cfg);
    if (check->parsed()) return cmd_check_tables(tables, cfg);
    if (selfcheck->parsed()) return cmd_selfcheck(cfg);
    if (eval->parsed()) return cmd_eval(expr_text, root_level, cfg);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
