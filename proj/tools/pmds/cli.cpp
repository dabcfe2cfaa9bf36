#include "pmds/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "pmds/errors.hpp"
#include "pmds/exact.hpp"
#include "pmds/families.hpp"
#include "pmds/graph.hpp"
#include "pmds/metrics.hpp"
#include "pmds/peel.hpp"

namespace pmds::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string p_text = "1";
  std::string p_list_text;
  std::string algo = "gen";
  std::string method = "submodular";
  std::optional<double> tol;
  std::size_t brute_cap = kDefaultBruteForceCap;
  std::string output_format = "json";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool deterministic = false;
  bool emit_trace = false;
  std::size_t trace_max_nodes = 100000;
  bool emit_core_numbers = false;
  std::string nodes_path;
  std::string output_path;

  // generate
  std::string family;
  std::size_t size = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t d = 0;
  std::size_t D = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t copies = 0;
  double prob = 0.0;
  double family_p = 2.0;
};

// Errors in user input (bad flags, unreadable files) map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double elapsed(Clock::time_point start, const RunConfig& cfg) {
  if (cfg.deterministic) return 0.0;
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json p_json(PValue p) {
  if (p.is_finite()) return p.value();
  return p.to_string();
}

json optional_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : "";
}

std::vector<PValue> parse_p_list(const std::string& text) {
  std::vector<PValue> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    out.push_back(PValue::parse(item));
  }
  if (out.empty()) throw std::invalid_argument("p list is empty");
  return out;
}

Graph load_graph(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw InputError("--input is required");
  std::ifstream in(cfg.input_path);
  if (!in) throw InputError("cannot open '" + cfg.input_path + "'");
  try {
    return parse_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(cfg.input_path + ": " + e.what(), e.line());
  }
}

json labels_json(const Graph& g, const NodeSet& s) {
  json out = json::array();
  for (NodeId v : s.members()) out.push_back(g.label(v));
  return out;
}

json metrics_json(const DensityReport& r) {
  return {{"size", r.set_size},
          {"edges", r.edge_count},
          {"edge_density", r.edge_density},
          {"avg_degree", r.avg_degree},
          {"avg_squared_degree", r.avg_squared_degree},
          {"avg_pth_power_degree", optional_json(r.avg_pth_power_degree)},
          {"max_degree", r.max_degree},
          {"min_degree", r.min_degree},
          {"m_p", optional_json(r.m_p)}};
}

json config_echo(const RunConfig& cfg) {
  json out = {{"command", cfg.command}};
  if (!cfg.input_path.empty()) out["input"] = cfg.input_path;
  if (cfg.command == "peel" || cfg.command == "exact" || cfg.command == "stats") {
    out["p"] = cfg.p_text;
  }
  if (cfg.command == "peel" || cfg.command == "sweep") out["algo"] = cfg.algo;
  if (cfg.command == "sweep") {
    out["p_list"] = cfg.p_list_text;
    out["threads"] = cfg.threads;
  }
  if (cfg.command == "exact") {
    out["method"] = cfg.method;
    out["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  }
  if (cfg.command == "stats" && !cfg.nodes_path.empty()) {
    out["nodes"] = cfg.nodes_path;
  }
  out["format"] = cfg.output_format;
  out["seed"] = cfg.seed;
  return out;
}

// Table-1 style row shared by peel --format csv and sweep.
struct SweepRow {
  PValue p = PValue::finite(1.0);
  std::string algo;
  DensityReport report;
  double seconds = 0.0;
};

const char* kCsvHeader =
    "p,algo,size,edge_density,avg_degree,avg_squared_degree,max_degree,"
    "min_degree,fp,mp,seconds";

void write_csv_row(std::ostream& out, const SweepRow& row) {
  const auto& r = row.report;
  out << row.p.to_string() << ',' << row.algo << ',' << r.set_size << ','
      << format_number(r.edge_density) << ',' << format_number(r.avg_degree)
      << ',' << format_number(r.avg_squared_degree) << ',' << r.max_degree
      << ',' << r.min_degree << ',' << format_optional(r.avg_pth_power_degree)
      << ',' << format_optional(r.m_p) << ',' << format_number(row.seconds)
      << '\n';
}

json row_json(const SweepRow& row) {
  json out = {{"p", p_json(row.p)}, {"algo", row.algo}};
  out["metrics"] = metrics_json(row.report);
  out["seconds"] = row.seconds;
  return out;
}

// Infinite p is handled by simple peeling: S_0 = V is optimal for +inf and
// the min-degree order contains the maxcore for -inf.
struct PeelOutcome {
  PeelTrace trace;
  std::string algo;
};

PeelOutcome run_peel(const Graph& g, PValue p, const std::string& algo) {
  if (algo == "simple" || !p.is_finite()) {
    return {simple_peel(g, p), "simple"};
  }
  if (algo == "gen") return {gen_peel(g, p.value()), "gen"};
  throw InputError("unknown algorithm '" + algo + "' (expected gen or simple)");
}

SweepRow sweep_one(const Graph& g, PValue p, const std::string& algo,
                   const RunConfig& cfg) {
  const auto start = Clock::now();
  auto outcome = run_peel(g, p, algo);
  SweepRow row;
  row.p = p;
  row.algo = outcome.algo;
  row.report = density_report(g, outcome.trace.best_set, p);
  row.seconds = elapsed(start, cfg);
  return row;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_peel(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const PValue p = PValue::parse(cfg.p_text);
  const auto start = Clock::now();
  auto outcome = run_peel(g, p, cfg.algo);
  const double seconds = elapsed(start, cfg);
  const auto& trace = outcome.trace;
  const auto report = density_report(g, trace.best_set, p);

  if (cfg.output_format == "csv") {
    out << kCsvHeader << '\n';
    write_csv_row(out, {p, outcome.algo, report, seconds});
    return kExitOk;
  }

  json doc = {{"command", "peel"}, {"p", p_json(p)}, {"algo", outcome.algo}};
  doc["set_labels"] = labels_json(g, trace.best_set);
  doc["metrics"] = metrics_json(report);
  doc["objective"] = trace.best_objective();
  doc["objective_kind"] = ranks_by_fp(p) ? "f_p" : "M_p";
  doc["best_index"] = trace.best_index;
  doc["order_length"] = trace.order.size();
  if (outcome.algo == "simple" && p.is_finite() && p.value() == 1.0) {
    // The maxcore is another stopping point of the same removal order.
    const auto core = best_prefix(g, trace, PValue::neg_inf());
    json maxcore = {{"degeneracy", static_cast<std::uint32_t>(core.objective)},
                    {"prefix_index", core.index},
                    {"set_labels", labels_json(g, core.set)}};
    maxcore["metrics"] = metrics_json(density_report(g, core.set, p));
    doc["maxcore"] = std::move(maxcore);
  }
  if (cfg.emit_trace) {
    if (g.num_nodes() <= cfg.trace_max_nodes) {
      json order = json::array();
      for (NodeId v : trace.order) order.push_back(g.label(v));
      json objective = json::array();
      for (double v : trace.prefix_objective) {
        objective.push_back(std::isfinite(v) ? json(v) : json(nullptr));
      }
      doc["trace"] = {{"order", std::move(order)},
                      {"prefix_objective", std::move(objective)}};
    } else {
      doc["trace"] = {{"truncated", true}, {"length", trace.order.size()}};
    }
  }
  doc["seconds"] = seconds;
  doc["config_echo"] = config_echo(cfg);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const PValue p = PValue::parse(cfg.p_text);
  ExactOptions options;
  options.tolerance = cfg.tol;
  options.brute_force_cap = cfg.brute_cap;
  const auto start = Clock::now();
  ExactResult result;
  if (cfg.method == "bruteforce") {
    options.method = ExactMethod::BruteForce;
    result = brute_force_opt(g, p, cfg.brute_cap);
  } else if (cfg.method == "submodular") {
    if (!p.is_finite()) throw InputError("submodular method needs finite p >= 1");
    result = exact_pmean(g, p.value(), options);
  } else {
    throw InputError("unknown method '" + cfg.method +
                     "' (expected bruteforce or submodular)");
  }
  const double seconds = elapsed(start, cfg);
  const auto report = density_report(g, result.best_set, p);

  if (cfg.output_format == "csv") {
    out << kCsvHeader << '\n';
    write_csv_row(out, {p, cfg.method, report, seconds});
    return kExitOk;
  }
  json doc = {{"command", "exact"}, {"p", p_json(p)}, {"method", cfg.method}};
  doc["set_labels"] = labels_json(g, result.best_set);
  doc["metrics"] = metrics_json(report);
  doc["best_fp"] = result.best_fp;
  doc["iterations"] = result.iterations;
  json steps = json::array();
  for (const auto& s : result.alpha_trace) {
    steps.push_back({{"alpha", s.alpha},
                     {"feasible", s.feasible},
                     {"minimizer_size", s.minimizer_size}});
  }
  doc["alpha_trace"] = std::move(steps);
  doc["seconds"] = seconds;
  doc["config_echo"] = config_echo(cfg);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// Connected components of the subgraph induced by s, each sorted by index,
// ordered by smallest member.
std::vector<std::vector<NodeId>> components(const Graph& g, const NodeSet& s) {
  std::vector<std::uint8_t> seen(g.num_nodes(), 0);
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> stack;
  for (NodeId root : s.members()) {
    if (seen[root]) continue;
    std::vector<NodeId> comp;
    stack.push_back(root);
    seen[root] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId u : g.neighbors(v)) {
        if (s.contains(u) && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

int cmd_kcore(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const auto start = Clock::now();
  const auto cores = core_decomposition(g);
  const double seconds = elapsed(start, cfg);

  json doc = {{"command", "kcore"}, {"degeneracy", cores.degeneracy}};
  doc["set_labels"] = labels_json(g, cores.maxcore_set);
  doc["metrics"] =
      metrics_json(density_report(g, cores.maxcore_set, PValue::neg_inf()));
  json comps = json::array();
  for (const auto& comp : components(g, cores.maxcore_set)) {
    json labels = json::array();
    for (NodeId v : comp) labels.push_back(g.label(v));
    comps.push_back(std::move(labels));
  }
  doc["maxcore_components"] = std::move(comps);
  std::map<std::uint32_t, std::size_t> histogram;
  for (auto c : cores.core_number) ++histogram[c];
  json hist = json::object();
  for (const auto& [c, count] : histogram) hist[std::to_string(c)] = count;
  doc["core_histogram"] = std::move(hist);
  if (cfg.emit_core_numbers) {
    json numbers = json::object();
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      numbers[g.label(v)] = cores.core_number[v];
    }
    doc["core_numbers"] = std::move(numbers);
  }
  doc["seconds"] = seconds;
  doc["config_echo"] = config_echo(cfg);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

NodeSet read_node_set(const Graph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<NodeId> members;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    const std::string label = line.substr(first, last - first + 1);
    if (!g.has_label(label)) {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": unknown node label '" + label + "'");
    }
    members.push_back(g.index_of(label));
  }
  if (members.empty()) throw InputError(path + ": node set is empty");
  return NodeSet(g.num_nodes(), members);
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const PValue p = PValue::parse(cfg.p_text);
  const NodeSet s = cfg.nodes_path.empty() ? NodeSet::all(g.num_nodes())
                                           : read_node_set(g, cfg.nodes_path);
  const auto report = density_report(g, s, p);
  if (cfg.output_format == "csv") {
    out << kCsvHeader << '\n';
    write_csv_row(out, {p, "stats", report, 0.0});
    return kExitOk;
  }
  json doc = {{"command", "stats"},
              {"p", p_json(p)},
              {"graph", {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}}}};
  doc["set_labels"] = labels_json(g, s);
  doc["metrics"] = metrics_json(report);
  doc["seconds"] = 0.0;
  doc["config_echo"] = config_echo(cfg);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

FamilySpec family_from_config(const RunConfig& cfg) {
  const std::string& f = cfg.family;
  if (f == "clique") return family::Clique{cfg.size};
  if (f == "bipartite") return family::CompleteBipartite{cfg.a, cfg.b};
  if (f == "lemma4") return family::Lemma4{cfg.d, cfg.D};
  if (f == "banded") return family::Banded{cfg.n, cfg.k};
  if (f == "tightness") {
    return family::Tightness{cfg.family_p, cfg.k, cfg.n, cfg.copies};
  }
  if (f == "er") return family::ErdosRenyi{cfg.n, cfg.prob, cfg.seed};
  throw InputError("unknown family '" + f +
                   "' (expected clique, bipartite, lemma4, banded, tightness or er)");
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const FamilySpec spec = family_from_config(cfg);
  const Graph g = generate(spec);
  if (cfg.output_path.empty()) {
    write_canonical_edge_list(g, out);
    return kExitOk;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw InputError("cannot write '" + cfg.output_path + "'");
  file << "# " << describe(spec) << ": " << g.num_nodes() << " nodes, "
       << g.num_edges() << " edges\n";
  write_canonical_edge_list(g, file);
  json doc = {{"command", "generate"},
              {"family", describe(spec)},
              {"nodes", g.num_nodes()},
              {"edges", g.num_edges()},
              {"output", cfg.output_path}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const auto ps = parse_p_list(cfg.p_list_text);
  if (cfg.algo != "gen" && cfg.algo != "simple") {
    throw InputError("unknown algorithm '" + cfg.algo + "' (expected gen or simple)");
  }

  // Runs share only the immutable graph; each row is written to its own slot.
  std::vector<std::optional<SweepRow>> rows(ps.size());
  std::vector<std::exception_ptr> errors(ps.size());
  unsigned workers = cfg.threads > 0 ? cfg.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ps.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ps.size(); i = next++) {
      try {
        rows[i] = sweep_one(g, ps[i], cfg.algo, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (cfg.output_format == "json") {
    json doc = {{"command", "sweep"}};
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(*r));
    doc["rows"] = std::move(arr);
    doc["config_echo"] = config_echo(cfg);
    out << doc.dump(2) << '\n';
  } else {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) write_csv_row(out, *r);
  }
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_input) {
  auto* input = sub->add_option("-i,--input", cfg.input_path, "Edge-list file");
  if (needs_input) input->required();
  sub->add_option("--format", cfg.output_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_flag("--deterministic", cfg.deterministic,
                "Report zero timings so identical runs give identical bytes");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generalized-mean densest subgraph discovery", "pmds"};
  app.require_subcommand(1);

  auto* peel = app.add_subcommand("peel", "Greedy peeling (GenPeel or SimplePeel)");
  add_common(peel, cfg, true);
  peel->add_option("-p,--p", cfg.p_text, "Power-mean exponent (number, inf, -inf)");
  peel->add_option("--algo", cfg.algo, "Peeling rule")
      ->check(CLI::IsMember({"gen", "simple"}));
  peel->add_flag("--emit-trace", cfg.emit_trace, "Include the full removal order");
  peel->add_option("--trace-max-nodes", cfg.trace_max_nodes,
                   "Largest graph for which --emit-trace lists every prefix");

  auto* exact = app.add_subcommand("exact", "Exact p-mean densest subgraph");
  add_common(exact, cfg, true);
  exact->add_option("-p,--p", cfg.p_text, "Power-mean exponent");
  exact->add_option("--method", cfg.method, "Solver")
      ->check(CLI::IsMember({"bruteforce", "submodular"}));
  exact->add_option("--tol", cfg.tol, "Binary-search interval tolerance")
      ->check(CLI::PositiveNumber);
  exact->add_option("--brute-cap", cfg.brute_cap, "Largest n for brute force");

  auto* kcore = app.add_subcommand("kcore", "Core decomposition and maxcore");
  add_common(kcore, cfg, true);
  kcore->add_flag("--emit-core-numbers", cfg.emit_core_numbers,
                  "Include the core number of every node");

  auto* stats = app.add_subcommand("stats", "Density report for a node set");
  add_common(stats, cfg, true);
  stats->add_option("-p,--p", cfg.p_text, "Power-mean exponent");
  stats->add_option("--nodes", cfg.nodes_path, "File with one node label per line");

  auto* gen = app.add_subcommand("generate", "Emit a generated graph family");
  add_common(gen, cfg, false);
  gen->add_option("--family", cfg.family, "clique|bipartite|lemma4|banded|tightness|er")
      ->required();
  gen->add_option("--size", cfg.size, "Clique size");
  gen->add_option("--a", cfg.a, "Bipartite side A");
  gen->add_option("--b", cfg.b, "Bipartite side B");
  gen->add_option("--d", cfg.d, "Lemma4 small side / clique size - 2");
  gen->add_option("--D", cfg.D, "Lemma4 large side / clique count");
  gen->add_option("--n", cfg.n, "Node count (banded, tightness, er)");
  gen->add_option("--k", cfg.k, "Band half-width");
  gen->add_option("--p", cfg.family_p, "Tightness exponent");
  gen->add_option("--copies", cfg.copies, "Tightness clique copies (0 = n)");
  gen->add_option("--prob", cfg.prob, "Edge probability (er)");
  gen->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Peel at several p; Table-1 CSV rows");
  add_common(sweep, cfg, true);
  sweep->add_option("--p-list", cfg.p_list_text, "Comma-separated p values")
      ->required();
  sweep->add_option("--algo", cfg.algo, "Peeling rule for finite p")
      ->check(CLI::IsMember({"gen", "simple"}));
  sweep->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (sweep->parsed() && !sweep->count("--format")) cfg.output_format = "csv";

  try {
    if (peel->parsed()) {
      cfg.command = "peel";
      return cmd_peel(cfg, out);
    }
    if (exact->parsed()) {
      cfg.command = "exact";
      return cmd_exact(cfg, out);
    }
    if (kcore->parsed()) {
      cfg.command = "kcore";
      return cmd_kcore(cfg, out);
    }
    if (stats->parsed()) {
      cfg.command = "stats";
      return cmd_stats(cfg, out);
    }
    if (gen->parsed()) {
      cfg.command = "generate";
      return cmd_generate(cfg, out);
    }
    if (sweep->parsed()) {
      cfg.command = "sweep";
      return cmd_sweep(cfg, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitInputError;
}

}  // namespace pmds::cli
