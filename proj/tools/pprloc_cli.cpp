// pprloc command-line front end. Talks to the library exclusively through the
// C interface in pprloc.h.

#include "pprloc/pprloc.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ordered_json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Carries a failed C API status out of the command handlers.
struct ApiFailure {
  pprloc_status status;
  std::string tag;
  std::string message;
  double value;
};

void check(pprloc_status status) {
  if (status != PPRLOC_OK)
    throw ApiFailure{status, pprloc_last_error_tag(), pprloc_last_error_message(), pprloc_last_error_value()};
}

struct UsageError {
  std::string message;
};

struct Options {
  std::string input;
  std::string config;
  std::optional<double> alpha;
  std::string u_spec;
  std::string v_spec;
  std::string format = "auto";
  std::string output = "csv";
  std::string node;
  std::string pair;
  std::optional<double> target;
  double tol = 1e-6;
  double epsilon = 0.01;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 10000;
};

struct GraphDeleter {
  void operator()(pprloc_graph* g) const { pprloc_graph_free(g); }
};
struct ContextDeleter {
  void operator()(pprloc_context* c) const { pprloc_context_free(c); }
};
using GraphHandle = std::unique_ptr<pprloc_graph, GraphDeleter>;
using ContextHandle = std::unique_ptr<pprloc_context, ContextDeleter>;

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  // Avoid "-0.000000" for values that round to zero.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

double round6(double value) {
  const double r = std::round(value * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

/// "uniform" (or empty) -> nullopt; otherwise a file with one float per line.
std::optional<std::vector<double>> read_vector(const std::string& spec) {
  if (spec.empty() || spec == "uniform") return std::nullopt;
  std::ifstream in(spec);
  if (!in) throw UsageError{"cannot open vector file '" + spec + "'"};
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double v = 0.0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest))
      throw UsageError{spec + ":" + std::to_string(line_no) + ": expected one number per line"};
    values.push_back(v);
  }
  return values;
}

std::optional<std::vector<double>> config_vector(const ordered_json& cfg, const char* key) {
  if (!cfg.contains(key)) return std::nullopt;
  const auto& v = cfg[key];
  if (v.is_string() && v.get<std::string>() == "uniform") return std::nullopt;
  if (!v.is_array()) throw UsageError{std::string("config \"") + key + "\" must be \"uniform\" or an array"};
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw UsageError{std::string("config \"") + key + "\" must hold numbers"};
    out.push_back(x.get<double>());
  }
  return out;
}

struct Run {
  Options opt;
  GraphHandle graph;
  ContextHandle ctx;
  std::optional<std::vector<double>> v;
  std::size_t n = 0;

  explicit Run(const Options& o) : opt(o) {
    double alpha = 0.85;
    std::optional<std::vector<double>> u;
    if (!opt.config.empty()) {
      std::ifstream in(opt.config);
      if (!in) throw UsageError{"cannot open config '" + opt.config + "'"};
      ordered_json cfg;
      try {
        cfg = ordered_json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError{"invalid config JSON: " + std::string(e.what())};
      }
      if (!cfg.is_object()) throw UsageError{"config must be a JSON object"};
      if (cfg.contains("alpha")) {
        if (!cfg["alpha"].is_number()) throw UsageError{"config \"alpha\" must be a number"};
        alpha = cfg["alpha"].get<double>();
      }
      u = config_vector(cfg, "u");
      v = config_vector(cfg, "v");
    }
    if (opt.alpha) alpha = *opt.alpha;
    if (!opt.u_spec.empty()) u = read_vector(opt.u_spec);
    if (!opt.v_spec.empty()) v = read_vector(opt.v_spec);

    pprloc_graph_format fmt = PPRLOC_FORMAT_AUTO;
    if (opt.format == "edgelist") fmt = PPRLOC_FORMAT_EDGELIST;
    if (opt.format == "json") fmt = PPRLOC_FORMAT_JSON;
    pprloc_graph* g = nullptr;
    check(pprloc_graph_load(opt.input.c_str(), fmt, &g));
    graph.reset(g);
    n = pprloc_graph_node_count(g);

    pprloc_context* c = nullptr;
    check(pprloc_context_create(g, alpha, u ? u->data() : nullptr, u ? u->size() : 0, &c));
    ctx.reset(c);
  }

  std::string label(std::size_t i) const { return pprloc_graph_label(graph.get(), i); }

  std::size_t index(const std::string& l) const {
    std::size_t i = 0;
    check(pprloc_graph_find(graph.get(), l.c_str(), &i));
    return i;
  }

  bool json() const { return opt.output == "json"; }
};

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

int cmd_pagerank(Run& run) {
  std::vector<double> pi(run.n);
  check(pprloc_pagerank_solve(run.ctx.get(), run.v ? run.v->data() : nullptr, run.v ? run.v->size() : 0,
                              pi.data(), pi.size()));
  if (run.json()) {
    ordered_json doc;
    doc["alpha"] = round6(pprloc_context_alpha(run.ctx.get()));
    ordered_json ranks = ordered_json::object();
    for (std::size_t i = 0; i < run.n; ++i) ranks[run.label(i)] = round6(pi[i]);
    doc["pagerank"] = std::move(ranks);
    emit(doc);
    return kOk;
  }
  std::cout << "node,pagerank\n";
  for (std::size_t i = 0; i < run.n; ++i) std::cout << run.label(i) << ',' << fixed6(pi[i]) << '\n';
  return kOk;
}

int cmd_xmatrix(Run& run) {
  std::vector<double> x(run.n * run.n);
  check(pprloc_fundamental_matrix(run.ctx.get(), x.data(), x.size()));
  if (run.json()) {
    ordered_json doc;
    ordered_json labels = ordered_json::array();
    for (std::size_t i = 0; i < run.n; ++i) labels.push_back(run.label(i));
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < run.n; ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < run.n; ++c) row.push_back(round6(x[r * run.n + c]));
      rows.push_back(std::move(row));
    }
    doc["nodes"] = std::move(labels);
    doc["x"] = std::move(rows);
    emit(doc);
    return kOk;
  }
  std::cout << "node";
  for (std::size_t c = 0; c < run.n; ++c) std::cout << ',' << run.label(c);
  std::cout << '\n';
  for (std::size_t r = 0; r < run.n; ++r) {
    std::cout << run.label(r);
    for (std::size_t c = 0; c < run.n; ++c) std::cout << ',' << fixed6(x[r * run.n + c]);
    std::cout << '\n';
  }
  return kOk;
}

int cmd_intervals(Run& run) {
  std::vector<pprloc_pr_interval> rows;
  if (!run.opt.node.empty()) {
    rows.emplace_back();
    check(pprloc_interval(run.ctx.get(), run.index(run.opt.node), &rows.back()));
  } else {
    for (std::size_t i = 0; i < run.n; ++i) {
      rows.emplace_back();
      check(pprloc_interval(run.ctx.get(), i, &rows.back()));
    }
  }
  if (run.json()) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows)
      doc.push_back({{"node", run.label(r.node)}, {"lo", round6(r.lo)}, {"hi", round6(r.hi)},
                     {"lo_witness", run.label(r.lo_witness)}});
    emit(doc);
    return kOk;
  }
  std::cout << "node,lo,hi,lo_witness\n";
  for (const auto& r : rows)
    std::cout << run.label(r.node) << ',' << fixed6(r.lo) << ',' << fixed6(r.hi) << ','
              << run.label(r.lo_witness) << '\n';
  return kOk;
}

std::pair<std::string, std::string> split_pair(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos || spec.find(',', comma + 1) != std::string::npos)
    throw UsageError{"--pair expects two labels separated by a comma, got '" + spec + "'"};
  return {spec.substr(0, comma), spec.substr(comma + 1)};
}

int cmd_competitors(Run& run) {
  std::vector<pprloc_verdict> verdicts;
  if (!run.opt.pair.empty()) {
    const auto [a, b] = split_pair(run.opt.pair);
    verdicts.emplace_back();
    check(pprloc_competitors(run.ctx.get(), run.index(a), run.index(b), &verdicts.back()));
  } else {
    for (std::size_t i = 0; i < run.n; ++i)
      for (std::size_t j = i + 1; j < run.n; ++j) {
        verdicts.emplace_back();
        check(pprloc_competitors(run.ctx.get(), i, j, &verdicts.back()));
      }
  }
  auto witness = [&](int64_t w) { return w < 0 ? std::string() : run.label(static_cast<std::size_t>(w)); };
  if (run.json()) {
    ordered_json doc = ordered_json::array();
    for (const auto& v : verdicts) {
      ordered_json row{{"i", run.label(v.i)}, {"j", run.label(v.j)}, {"competes", v.competes != 0}};
      row["witness_k"] = v.witness_k < 0 ? ordered_json() : ordered_json(witness(v.witness_k));
      row["witness_l"] = v.witness_l < 0 ? ordered_json() : ordered_json(witness(v.witness_l));
      doc.push_back(std::move(row));
    }
    emit(doc);
    return kOk;
  }
  std::cout << "i,j,competes,witness_k,witness_l\n";
  for (const auto& v : verdicts) {
    // Witnesses are only reported for competing pairs.
    const bool c = v.competes != 0;
    std::cout << run.label(v.i) << ',' << run.label(v.j) << ',' << (c ? "true" : "false") << ','
              << (c ? witness(v.witness_k) : "") << ',' << (c ? witness(v.witness_l) : "") << '\n';
  }
  return kOk;
}

int cmd_leaders(Run& run) {
  std::size_t count = 0;
  check(pprloc_leaders(run.ctx.get(), nullptr, 0, &count));
  std::vector<pprloc_leader> leaders(count);
  check(pprloc_leaders(run.ctx.get(), leaders.data(), leaders.size(), &count));
  if (run.json()) {
    ordered_json doc = ordered_json::array();
    for (const auto& l : leaders)
      doc.push_back({{"leader", run.label(l.leader)}, {"witness_row", run.label(l.witness_row)}});
    emit(doc);
    return kOk;
  }
  std::cout << "leader,witness_row\n";
  for (const auto& l : leaders) std::cout << run.label(l.leader) << ',' << run.label(l.witness_row) << '\n';
  return kOk;
}

int cmd_sc_interval(Run& run) {
  std::vector<pprloc_competitivity_interval> rows;
  auto add = [&](std::size_t i) {
    rows.emplace_back();
    check(pprloc_sc_interval(run.ctx.get(), i, run.opt.epsilon, &rows.back()));
  };
  if (!run.opt.node.empty()) {
    add(run.index(run.opt.node));
  } else {
    for (std::size_t i = 0; i < run.n; ++i) add(i);
  }
  if (run.json()) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows)
      doc.push_back({{"node", run.label(r.node)}, {"epsilon", round6(r.epsilon)}, {"lo", round6(r.lo)},
                     {"hi", round6(r.hi)}});
    emit(doc);
    return kOk;
  }
  std::cout << "node,epsilon,lo,hi\n";
  for (const auto& r : rows)
    std::cout << run.label(r.node) << ',' << fixed6(r.epsilon) << ',' << fixed6(r.lo) << ',' << fixed6(r.hi)
              << '\n';
  return kOk;
}

int cmd_achieve(Run& run) {
  if (run.opt.node.empty()) throw UsageError{"achieve requires --node"};
  if (!run.opt.target) throw UsageError{"achieve requires --target"};
  const auto i = run.index(run.opt.node);
  pprloc_achievement a{};
  std::vector<double> v(run.n);
  check(pprloc_achieve(run.ctx.get(), i, *run.opt.target, run.opt.tol, &a, v.data(), v.size()));
  if (run.json()) {
    ordered_json doc{{"node", run.label(i)},       {"target", round6(*run.opt.target)},
                     {"lambda", round6(a.lambda)}, {"epsilon", round6(a.epsilon)},
                     {"achieved", round6(a.achieved)}};
    ordered_json pv = ordered_json::object();
    for (std::size_t k = 0; k < run.n; ++k) pv[run.label(k)] = round6(v[k]);
    doc["personalization"] = std::move(pv);
    emit(doc);
    return kOk;
  }
  std::cout << "node,target,lambda,epsilon,achieved\n"
            << run.label(i) << ',' << fixed6(*run.opt.target) << ',' << fixed6(a.lambda) << ','
            << fixed6(a.epsilon) << ',' << fixed6(a.achieved) << '\n';
  return kOk;
}

int cmd_verify(Run& run) {
  if (!run.opt.seed) throw UsageError{"verify requires --seed"};
  static constexpr double kSchedule[] = {1.0, 0.1, 0.01};
  std::vector<pprloc_sample_report> reports(run.n);
  check(pprloc_monte_carlo(run.ctx.get(), run.opt.samples, *run.opt.seed, kSchedule, std::size(kSchedule),
                           reports.data(), reports.size()));
  bool pass = true;
  ordered_json nodes = ordered_json::object();
  for (const auto& r : reports) {
    pass = pass && r.violations == 0;
    nodes[run.label(r.node)] = {{"samples", r.samples},
                                {"observed_min", round6(r.observed_min)},
                                {"observed_max", round6(r.observed_max)},
                                {"lo", round6(r.lo)},
                                {"hi", round6(r.hi)},
                                {"violations", r.violations}};
  }
  ordered_json doc;
  doc["pass"] = pass;
  doc["seed"] = *run.opt.seed;
  doc["samples"] = run.opt.samples;
  doc["nodes"] = std::move(nodes);
  if (run.n <= 10) {
    double deviation = 0.0;
    const auto status = pprloc_explicit_inverse_check(run.ctx.get(), 10, &deviation);
    if (status != PPRLOC_OK && status != PPRLOC_ERR_NUMERICAL) check(status);
    const bool ok = status == PPRLOC_OK;
    if (!ok) deviation = pprloc_last_error_value();
    pass = pass && ok;
    doc["pass"] = pass;
    doc["explicit_inverse"] = {{"pass", ok}, {"deviation", deviation}};
  }
  emit(doc);
  return pass ? kOk : kNumerical;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("graph", opt.input, "Graph file (edge list or JSON)")->required();
  sub->add_option("--alpha", opt.alpha, "Damping factor in (0, 1); default 0.85");
  sub->add_option("--u", opt.u_spec, "Dangling distribution: 'uniform' or a file with one float per line");
  sub->add_option("--v", opt.v_spec, "Personalization vector: 'uniform' or a file with one float per line");
  sub->add_option("--config", opt.config, "JSON config {\"alpha\", \"u\", \"v\"}; flags override it");
  sub->add_option("--format", opt.format, "Graph format")->check(CLI::IsMember({"auto", "edgelist", "json"}));
  sub->add_option("--output", opt.output, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void print_failure(const ApiFailure& f) {
  if (f.status == PPRLOC_ERR_NUMERICAL) {
    ordered_json diag{{"error", "numerical"}, {"kind", f.tag}, {"message", f.message}, {"value", f.value}};
    std::cerr << diag.dump() << '\n';
  } else {
    std::cerr << "error: " << f.message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personalized PageRank localization: attainable intervals, competitors and leaders"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(Run&);
  };
  const Command commands[] = {
      {"pagerank", "PageRank vector for a personalization", cmd_pagerank},
      {"xmatrix", "Fundamental matrix X", cmd_xmatrix},
      {"intervals", "Attainable PageRank interval of each node", cmd_intervals},
      {"competitors", "Effective-competitor verdicts", cmd_competitors},
      {"leaders", "Leadership group with witness rows", cmd_leaders},
      {"sc-interval", "Competitivity interval over the basis family", cmd_sc_interval},
      {"achieve", "Personalization realising a target PageRank", cmd_achieve},
      {"verify", "Monte-Carlo and explicit-inverse verification", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, opt);
    subs.emplace_back(sub, &c);
  }
  for (auto& [sub, c] : subs) {
    const std::string name = c->name;
    if (name == "intervals" || name == "sc-interval" || name == "achieve")
      sub->add_option("--node", opt.node, "Node label");
    if (name == "competitors") sub->add_option("--pair", opt.pair, "Two node labels 'i,j'");
    if (name == "sc-interval") sub->add_option("--epsilon", opt.epsilon, "Mass parameter in (0, 1); default 0.01");
    if (name == "achieve") {
      sub->add_option("--target", opt.target, "Target PageRank value");
      sub->add_option("--tol", opt.tol, "Absolute tolerance; default 1e-6");
    }
    if (name == "verify") {
      sub->add_option("--seed", opt.seed, "Random seed (required)");
      sub->add_option("--samples", opt.samples, "Samples per run; default 10000");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  for (auto& [sub, c] : subs) {
    if (!sub->parsed()) continue;
    try {
      Run run(opt);
      return c->fn(run);
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.message << '\n';
      return kUsage;
    } catch (const ApiFailure& f) {
      print_failure(f);
      return f.status == PPRLOC_ERR_NUMERICAL ? kNumerical : kUsage;
    }
  }
  return kUsage;
}
