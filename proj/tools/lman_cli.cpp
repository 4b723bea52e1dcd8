#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lman/cohft.hpp"
#include "lman/docs.hpp"
#include "lman/formal.hpp"
#include "lman/graphcx.hpp"
#include "lman/treespace.hpp"

using namespace lman;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int size_budget() {
  if (const char* s = std::getenv("LMAN_BUDGET")) {
    try {
      return std::max(0, std::stoi(s));
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return 8;
}

bool over_budget(std::initializer_list<int> sizes) {
  int b = size_budget();
  for (int s : sizes)
    if (s > b) return true;
  return false;
}

int refuse_budget() {
  std::cerr << "size budget exceeded (current budget " << size_budget()
            << "); set LMAN_BUDGET to raise it\n";
  return kExitUsage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Deterministic fan-out: cells are computed by a small pool but assembled in
// index order, so the output never depends on scheduling.
std::vector<std::string> run_cells(
    std::size_t count, int jobs,
    const std::function<std::string(std::size_t)>& cell) {
  std::vector<std::string> out(count);
  if (jobs < 2 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = cell(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) out[i] = cell(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

struct TableRow {
  std::vector<std::pair<std::string, std::string>> cells;  // column -> value
};

void emit_table(const std::vector<std::string>& columns,
                const std::vector<TableRow>& rows, const std::string& format) {
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json obj;
      for (const auto& [k, v] : r.cells) obj[k] = v;
      out.push_back(std::move(obj));
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
    std::cout << (i ? "\t" : "") << columns[i];
  std::cout << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.cells.size(); ++i)
      std::cout << (i ? "\t" : "") << r.cells[i].second;
    std::cout << "\n";
  }
}

int cmd_verify(const std::string& path, int truncation) {
  std::string text = read_file(path);
  if (document_kind(text) == DocKind::Algebra) {
    auto doc = parse_algebra(text);
    auto l = to_structure(doc);
    auto rep = validate_structure(l);
    auto jac = check_all_jacobi(l);
    rep.violations.insert(rep.violations.end(), jac.violations.begin(),
                          jac.violations.end());
    if (!rep.ok()) {
      std::cout << "FAIL " << doc.name << "\n" << rep.to_string();
      return kExitFail;
    }
    std::cout << "OK " << doc.name << "\n";
    return 0;
  }
  auto doc = parse_potential(text);
  if (truncation > 0) doc.truncation = truncation;
  auto m = to_manifold(doc);
  auto lie = lie_condition_residual(m);
  if (!lie.ok) {
    std::cout << "FAIL " << doc.name << ": Lie condition residual nonzero\n";
    for (std::size_t k = 0; k < lie.residuals.size(); ++k)
      if (!lie.residuals[k].is_zero())
        std::cout << "  residual[" << k << "] = "
                  << lie.residuals[k].to_string() << "\n";
    return kExitFail;
  }
  std::cout << "OK " << doc.name << " (certified through degree "
            << lie.truncation_certified << ", omega(Q,Q) = "
            << scalar_to_string(lie.constant_value) << ")\n";
  return 0;
}

int cmd_convert(const std::string& path, const std::string& to, int truncation,
                int max_arity, bool roundtrip) {
  std::string text = read_file(path);
  DocKind kind = document_kind(text);
  if (to == "ops") {
    if (kind != DocKind::Potential) {
      std::cerr << "convert --to ops expects a potential document\n";
      return kExitUsage;
    }
    auto doc = parse_potential(text);
    auto m = to_manifold(doc);
    int n = (max_arity > 0) ? max_arity : doc.truncation - 1;
    if (doc.truncation < n + 1) {
      std::cerr << "insufficient truncation " << doc.truncation
                << " for max arity " << n << "; need at least " << n + 1
                << "\n";
      return kExitUsage;
    }
    auto l = potential_to_operations(m, n);
    auto out = algebra_document(doc.name, l);
    if (roundtrip) {
      auto back = potential_document(
          doc.name, operations_to_potential(l, doc.truncation));
      if (serialize(back) != serialize(doc)) {
        std::cout << "roundtrip FAILED\n";
        return kExitFail;
      }
      std::cout << "roundtrip ok\n";
      return 0;
    }
    std::cout << serialize(out);
    return 0;
  }
  if (to == "potential") {
    if (kind != DocKind::Algebra) {
      std::cerr << "convert --to potential expects an algebra document\n";
      return kExitUsage;
    }
    auto doc = parse_algebra(text);
    auto l = to_structure(doc);
    int d = (truncation > 0) ? truncation : doc.max_arity + 1;
    if (d < doc.max_arity + 1) {
      std::cerr << "insufficient truncation " << d << "; need at least "
                << doc.max_arity + 1 << "\n";
      return kExitUsage;
    }
    auto m = operations_to_potential(l, d);
    auto out = potential_document(doc.name, m);
    if (roundtrip) {
      auto back =
          algebra_document(doc.name, potential_to_operations(m, doc.max_arity));
      if (serialize(back) != serialize(doc)) {
        std::cout << "roundtrip FAILED\n";
        return kExitFail;
      }
      std::cout << "roundtrip ok\n";
      return 0;
    }
    std::cout << serialize(out);
    return 0;
  }
  std::cerr << "unknown conversion target '" << to << "'\n";
  return kExitUsage;
}

int cmd_hdim_table(int max_n, int max_p, bool metric, const std::string& format,
                   int jobs) {
  if (over_budget({max_n, max_p})) return refuse_budget();
  struct Cell {
    int n, p;
  };
  std::vector<Cell> cells;
  for (int n = 0; n <= max_n; ++n)
    for (int p = 0; p <= max_p; ++p) cells.push_back({n, p});
  auto values = run_cells(cells.size(), jobs, [&](std::size_t i) {
    auto labels = standard_labels(cells[i].n);
    std::string v = std::to_string(h_dimension(labels, cells[i].p));
    if (metric && cells[i].n >= 3)
      v += "\t" + std::to_string(metric_stable_tree_count(labels, cells[i].p));
    return v;
  });
  std::vector<std::string> columns = {"n", "p", "hdim"};
  if (metric) columns.push_back("metric");
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    TableRow r;
    r.cells.emplace_back("n", std::to_string(cells[i].n));
    r.cells.emplace_back("p", std::to_string(cells[i].p));
    auto tab = values[i].find('\t');
    r.cells.emplace_back("hdim", values[i].substr(0, tab));
    if (metric)
      r.cells.emplace_back(
          "metric", tab == std::string::npos ? "-" : values[i].substr(tab + 1));
    rows.push_back(std::move(r));
  }
  emit_table(columns, rows, format);
  return 0;
}

int cmd_graph_table(int max_n, int max_w, const std::string& format, int jobs) {
  if (over_budget({max_n, max_w})) return refuse_budget();
  struct Cell {
    int n, w, p;
  };
  std::vector<Cell> cells;
  for (int n = 0; n <= max_n; ++n)
    for (int w = 1; w <= max_w; ++w)
      for (int p = 0; p <= w - 1; ++p) cells.push_back({n, w, p});
  auto values = run_cells(cells.size(), jobs, [&](std::size_t i) {
    return std::to_string(
        cohomology_dimension(cells[i].n, cells[i].w, cells[i].p));
  });
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    TableRow r;
    r.cells.emplace_back("n", std::to_string(cells[i].n));
    r.cells.emplace_back("w", std::to_string(cells[i].w));
    r.cells.emplace_back("p", std::to_string(cells[i].p));
    r.cells.emplace_back("dim", values[i]);
    rows.push_back(std::move(r));
  }
  emit_table({"n", "w", "p", "dim"}, rows, format);
  return 0;
}

int cmd_presentation(int n, int max_p, const std::string& format) {
  if (over_budget({n, max_p})) return refuse_budget();
  auto rep = presentation_check(standard_labels(n), max_p);
  std::vector<TableRow> rows;
  for (std::size_t p = 0; p < rep.fs_dims.size(); ++p) {
    TableRow r;
    r.cells.emplace_back("p", std::to_string(p));
    r.cells.emplace_back("fs_dim", std::to_string(rep.fs_dims[p]));
    r.cells.emplace_back("h_dim", std::to_string(rep.h_dims[p]));
    rows.push_back(std::move(r));
  }
  emit_table({"p", "fs_dim", "h_dim"}, rows, format);
  for (const auto& note : rep.notes) std::cout << "# " << note << "\n";
  if (!rep.dims_ok || !rep.ring_ok) {
    std::cout << "# presentation check FAILED\n";
    return kExitFail;
  }
  return 0;
}

int cmd_cohft(const std::string& path, int arity, int max_degree) {
  if (over_budget({arity, max_degree})) return refuse_budget();
  std::string text = read_file(path);
  if (document_kind(text) != DocKind::Algebra) {
    std::cerr << "cohft-check expects an algebra document\n";
    return kExitUsage;
  }
  auto doc = parse_algebra(text);
  auto l = to_structure(doc);
  auto rep = check_axioms(build_I(l, arity, max_degree));
  if (!rep.ok()) {
    std::cout << "FAIL " << doc.name << " at arity " << arity << "\n"
              << rep.to_string();
    return kExitFail;
  }
  std::cout << "OK " << doc.name << " at arity " << arity << ", tree degree <= "
            << max_degree << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for curved cyclic L-infinity structures, tree "
               "spaces, and weighted graph complexes"};
  app.require_subcommand(1);

  std::string path, to = "ops", format = "tsv";
  int truncation = 0, max_arity = 0, jobs = 1;
  int max_n = 2, max_p = 3, max_w = 3, arity = 2, max_degree = 2, npres = 2;
  bool roundtrip = false, metric = false;

  auto* verify = app.add_subcommand("verify", "check a bundled document");
  verify->add_option("file", path)->required();
  verify->add_option("--truncation", truncation);

  auto* convert =
      app.add_subcommand("convert", "move between potential and operations");
  convert->add_option("file", path)->required();
  convert->add_option("--to", to)->check(CLI::IsMember({"ops", "potential"}));
  convert->add_option("--truncation", truncation);
  convert->add_option("--max-arity", max_arity);
  convert->add_flag("--roundtrip", roundtrip);

  auto* hdim = app.add_subcommand("hdim-table", "tree space dimensions");
  hdim->add_option("--max-n", max_n);
  hdim->add_option("--max-degree", max_p);
  hdim->add_flag("--metric", metric);
  hdim->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  hdim->add_option("--jobs", jobs);

  auto* graph = app.add_subcommand("graph-table", "graph complex cohomology");
  graph->add_option("--max-n", max_n);
  graph->add_option("--max-weight", max_w);
  graph->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  graph->add_option("--jobs", jobs);

  auto* pres =
      app.add_subcommand("presentation-check", "generators and relations");
  pres->add_option("--n", npres);
  pres->add_option("--max-degree", max_p);
  pres->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));

  auto* cohft = app.add_subcommand("cohft-check", "field theory axioms");
  cohft->add_option("file", path)->required();
  cohft->add_option("--arity", arity);
  cohft->add_option("--max-degree", max_degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(path, truncation);
    if (convert->parsed())
      return cmd_convert(path, to, truncation, max_arity, roundtrip);
    if (hdim->parsed()) return cmd_hdim_table(max_n, max_p, metric, format, jobs);
    if (graph->parsed()) return cmd_graph_table(max_n, max_w, format, jobs);
    if (pres->parsed()) return cmd_presentation(npres, max_p, format);
    if (cohft->parsed()) return cmd_cohft(path, arity, max_degree);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
