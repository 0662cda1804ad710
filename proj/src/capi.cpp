#include "pprloc/pprloc.h"

#include "pprloc/competition.hpp"
#include "pprloc/error.hpp"
#include "pprloc/graph.hpp"
#include "pprloc/localization.hpp"
#include "pprloc/oracle.hpp"

#include <new>
#include <string>

struct pprloc_graph {
  pprloc::DirectedGraph graph;
};

struct pprloc_context {
  pprloc::PageRankContext ctx;
};

namespace {

struct LastError {
  std::string message;
  std::string tag;
  double value = 0.0;
};

thread_local LastError last_error;

pprloc_status fail(pprloc_status status, const char* tag, const std::string& message, double value = 0.0) {
  last_error.message = message;
  last_error.tag = tag;
  last_error.value = value;
  return status;
}

template <class F>
pprloc_status guarded(F&& body) {
  try {
    return body();
  } catch (const pprloc::NumericalError& e) {
    return fail(PPRLOC_ERR_NUMERICAL, e.tag().c_str(), e.what(), e.value());
  } catch (const pprloc::Error& e) {
    switch (e.kind()) {
      case pprloc::ErrorKind::Parse: return fail(PPRLOC_ERR_PARSE, "parse", e.what());
      case pprloc::ErrorKind::Domain: return fail(PPRLOC_ERR_DOMAIN, "domain", e.what());
      case pprloc::ErrorKind::Contract: return fail(PPRLOC_ERR_CONTRACT, "contract", e.what());
      case pprloc::ErrorKind::Io: return fail(PPRLOC_ERR_IO, "io", e.what());
      case pprloc::ErrorKind::Numerical: return fail(PPRLOC_ERR_NUMERICAL, "numerical", e.what());
    }
    return fail(PPRLOC_ERR_INTERNAL, "internal", e.what());
  } catch (const std::bad_alloc&) {
    return fail(PPRLOC_ERR_INTERNAL, "internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(PPRLOC_ERR_INTERNAL, "internal", e.what());
  } catch (...) {
    return fail(PPRLOC_ERR_INTERNAL, "internal", "unknown exception");
  }
}

pprloc_status null_arg(const char* name) {
  return fail(PPRLOC_ERR_NULL, "null", std::string("argument '") + name + "' is NULL");
}

pprloc_status short_buffer(std::size_t need, std::size_t have) {
  return fail(PPRLOC_ERR_BUFFER, "buffer",
              "output buffer holds " + std::to_string(have) + " entries, " + std::to_string(need) +
                  " needed");
}

void copy_out(const Eigen::VectorXd& v, double* out) {
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v[k];
}

Eigen::VectorXd copy_in(const double* data, std::size_t len) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(len));
  for (std::size_t k = 0; k < len; ++k) v[static_cast<Eigen::Index>(k)] = data[k];
  return v;
}

pprloc::PersonalizationVector personalization(const pprloc_context* c, const double* v, std::size_t v_len) {
  const auto n = c->ctx.size();
  if (!v) return pprloc::PersonalizationVector::uniform(n);
  if (v_len != n)
    throw pprloc::DomainError("personalization vector has " + std::to_string(v_len) + " entries, graph has " +
                              std::to_string(n) + " nodes");
  return pprloc::PersonalizationVector(copy_in(v, v_len));
}

template <class Make>
pprloc_status make_graph(pprloc_graph** out, Make&& make) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new pprloc_graph{make()};
    return PPRLOC_OK;
  });
}

}  // namespace

extern "C" {

const char* pprloc_version(void) { return "1.0.0"; }

const char* pprloc_status_string(pprloc_status status) {
  switch (status) {
    case PPRLOC_OK: return "ok";
    case PPRLOC_ERR_PARSE: return "parse error";
    case PPRLOC_ERR_DOMAIN: return "domain error";
    case PPRLOC_ERR_CONTRACT: return "contract violation";
    case PPRLOC_ERR_NUMERICAL: return "numerical failure";
    case PPRLOC_ERR_IO: return "i/o error";
    case PPRLOC_ERR_BUFFER: return "buffer too small";
    case PPRLOC_ERR_NULL: return "null argument";
    case PPRLOC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pprloc_last_error_message(void) { return last_error.message.c_str(); }
const char* pprloc_last_error_tag(void) { return last_error.tag.c_str(); }
double pprloc_last_error_value(void) { return last_error.value; }

pprloc_status pprloc_graph_parse_edge_list(const char* text, pprloc_graph** out) {
  if (!text) return null_arg("text");
  return make_graph(out, [&] { return pprloc::parse_edge_list(text); });
}

pprloc_status pprloc_graph_parse_json(const char* text, pprloc_graph** out) {
  if (!text) return null_arg("text");
  return make_graph(out, [&] { return pprloc::parse_graph_json(text); });
}

pprloc_status pprloc_graph_load(const char* path, pprloc_graph_format format, pprloc_graph** out) {
  if (!path) return null_arg("path");
  pprloc::GraphFormat f = pprloc::GraphFormat::Auto;
  if (format == PPRLOC_FORMAT_EDGELIST) f = pprloc::GraphFormat::EdgeList;
  if (format == PPRLOC_FORMAT_JSON) f = pprloc::GraphFormat::Json;
  return make_graph(out, [&] { return pprloc::load_graph(path, f); });
}

void pprloc_graph_free(pprloc_graph* graph) { delete graph; }

size_t pprloc_graph_node_count(const pprloc_graph* graph) { return graph ? graph->graph.node_count() : 0; }
size_t pprloc_graph_edge_count(const pprloc_graph* graph) { return graph ? graph->graph.edge_count() : 0; }

const char* pprloc_graph_label(const pprloc_graph* graph, size_t i) {
  if (!graph || i >= graph->graph.node_count()) return nullptr;
  return graph->graph.label(i).c_str();
}

pprloc_status pprloc_graph_find(const pprloc_graph* graph, const char* label, size_t* index) {
  if (!graph) return null_arg("graph");
  if (!label) return null_arg("label");
  if (!index) return null_arg("index");
  auto found = graph->graph.find(label);
  if (!found) return fail(PPRLOC_ERR_DOMAIN, "domain", std::string("unknown node '") + label + "'");
  *index = *found;
  return PPRLOC_OK;
}

pprloc_status pprloc_graph_dangling(const pprloc_graph* graph, unsigned char* d, size_t len) {
  if (!graph) return null_arg("graph");
  if (!d) return null_arg("d");
  const auto ind = graph->graph.dangling_indicator();
  if (len < ind.d.size()) return short_buffer(ind.d.size(), len);
  std::copy(ind.d.begin(), ind.d.end(), d);
  return PPRLOC_OK;
}

pprloc_status pprloc_context_create(const pprloc_graph* graph, double alpha, const double* u, size_t u_len,
                                    pprloc_context** out) {
  if (!graph) return null_arg("graph");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::optional<pprloc::DanglingDistribution> dist;
    if (u) {
      if (u_len != graph->graph.node_count())
        throw pprloc::DomainError("dangling distribution has " + std::to_string(u_len) +
                                  " entries, graph has " + std::to_string(graph->graph.node_count()) +
                                  " nodes");
      dist.emplace(copy_in(u, u_len));
    }
    *out = new pprloc_context{pprloc::PageRankContext(graph->graph, pprloc::Damping(alpha), std::move(dist))};
    return PPRLOC_OK;
  });
}

void pprloc_context_free(pprloc_context* ctx) { delete ctx; }

size_t pprloc_context_node_count(const pprloc_context* ctx) { return ctx ? ctx->ctx.size() : 0; }
double pprloc_context_alpha(const pprloc_context* ctx) { return ctx ? ctx->ctx.alpha().value() : 0.0; }

pprloc_status pprloc_pagerank_solve(const pprloc_context* ctx, const double* v, size_t v_len, double* pi,
                                    size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!pi) return null_arg("pi");
  if (len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    copy_out(pprloc::pagerank_solve(ctx->ctx.system(), personalization(ctx, v, v_len)).pi, pi);
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_pagerank_power(const pprloc_context* ctx, const double* v, size_t v_len, double tol,
                                    size_t max_iter, double* pi, size_t len, size_t* iterations) {
  if (!ctx) return null_arg("ctx");
  if (!pi) return null_arg("pi");
  if (len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    const auto gm = pprloc::google_matrix(ctx->ctx.alpha(), ctx->ctx.patched(), personalization(ctx, v, v_len));
    const auto result = pprloc::pagerank_power(gm, tol, max_iter);
    copy_out(result.pi, pi);
    if (iterations) *iterations = result.iterations;
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_fundamental_matrix(const pprloc_context* ctx, double* x, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!x) return null_arg("x");
  const auto n = ctx->ctx.size();
  if (len < n * n) return short_buffer(n * n, len);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) x[r * n + c] = ctx->ctx.x()(r, c);
  return PPRLOC_OK;
}

pprloc_status pprloc_structure_margins(const pprloc_context* ctx, double* margins, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!margins) return null_arg("margins");
  const auto& m = ctx->ctx.structure().margins;
  if (len < m.size()) return short_buffer(m.size(), len);
  std::copy(m.begin(), m.end(), margins);
  return PPRLOC_OK;
}

pprloc_status pprloc_interval(const pprloc_context* ctx, size_t i, pprloc_pr_interval* out) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto in = pprloc::pr_interval(ctx->ctx.x(), i);
    *out = pprloc_pr_interval{in.node, in.lo, in.hi, in.lo_witness};
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_achieve(const pprloc_context* ctx, size_t i, double target, double tol,
                             pprloc_achievement* out, double* v_out, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  if (v_out && len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    const auto a = pprloc::achieve_value(ctx->ctx, i, target, tol);
    *out = pprloc_achievement{a.lambda, a.epsilon, a.achieved};
    if (v_out) copy_out(a.v, v_out);
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_competitors(const pprloc_context* ctx, size_t i, size_t j, pprloc_verdict* out) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto v = pprloc::effective_competitors(ctx->ctx.x(), i, j);
    out->i = v.i;
    out->j = v.j;
    out->competes = v.competes ? 1 : 0;
    out->witness_k = v.witness_k ? static_cast<int64_t>(*v.witness_k) : -1;
    out->witness_l = v.witness_l ? static_cast<int64_t>(*v.witness_l) : -1;
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_competitivity_graph(const pprloc_context* ctx, pprloc_pair* out, size_t capacity,
                                         size_t* count) {
  if (!ctx) return null_arg("ctx");
  if (!count) return null_arg("count");
  return guarded([&] {
    const auto pairs = pprloc::competitivity_graph(ctx->ctx.x());
    *count = pairs.size();
    if (!out) return PPRLOC_OK;
    if (capacity < pairs.size()) return short_buffer(pairs.size(), capacity);
    for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = pprloc_pair{pairs[k].first, pairs[k].second};
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_leaders(const pprloc_context* ctx, pprloc_leader* out, size_t capacity, size_t* count) {
  if (!ctx) return null_arg("ctx");
  if (!count) return null_arg("count");
  return guarded([&] {
    const auto group = pprloc::leadership_group(ctx->ctx.x());
    *count = group.leaders.size();
    if (!out) return PPRLOC_OK;
    if (capacity < group.leaders.size()) return short_buffer(group.leaders.size(), capacity);
    std::size_t k = 0;
    for (const auto& [leader, row] : group.witness_rows) out[k++] = pprloc_leader{leader, row};
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_sc_interval(const pprloc_context* ctx, size_t i, double epsilon, pprloc_competitivity_interval* out) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto s = pprloc::competitivity_interval(ctx->ctx, i, epsilon);
    *out = pprloc_competitivity_interval{s.node, s.epsilon, s.lo, s.hi};
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_witness_epsilon(const pprloc_context* ctx, size_t i, size_t j, double* epsilon,
                                     double* rank_high, double* rank_low, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!epsilon) return null_arg("epsilon");
  if ((rank_high || rank_low) && len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    const auto verdict = pprloc::effective_competitors(ctx->ctx.x(), i, j);
    const auto cert = pprloc::witness_epsilon(ctx->ctx, verdict);
    *epsilon = cert.epsilon;
    if (rank_high) copy_out(cert.rank_high, rank_high);
    if (rank_low) copy_out(cert.rank_low, rank_low);
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_leadership_certificate(const pprloc_context* ctx, size_t leader, size_t row,
                                            double* epsilon, double* pi, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!epsilon) return null_arg("epsilon");
  if (pi && len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    const auto cert = pprloc::leadership_certificate(ctx->ctx, leader, row);
    *epsilon = cert.epsilon;
    if (pi) copy_out(cert.pagerank, pi);
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_sample_personalization(uint64_t seed, size_t n, double concentration, double* v) {
  if (!v) return null_arg("v");
  return guarded([&] {
    copy_out(pprloc::sample_personalization(seed, n, concentration).values(), v);
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_monte_carlo(const pprloc_context* ctx, size_t samples, uint64_t seed,
                                 const double* concentrations, size_t concentration_count,
                                 pprloc_sample_report* out, size_t len) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  if (len < ctx->ctx.size()) return short_buffer(ctx->ctx.size(), len);
  return guarded([&] {
    std::span<const double> schedule = pprloc::kUniformConcentration;
    if (concentrations) schedule = std::span<const double>(concentrations, concentration_count);
    const auto reports = pprloc::monte_carlo_intervals(ctx->ctx, samples, seed, schedule);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& r = reports[k];
      out[k] = pprloc_sample_report{r.node, r.samples, r.observed_min, r.observed_max, r.lo, r.hi, r.violations};
    }
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_observe_rank_swaps(const pprloc_context* ctx, size_t i, size_t j, size_t samples,
                                        uint64_t seed, int* swapped) {
  if (!ctx) return null_arg("ctx");
  if (!swapped) return null_arg("swapped");
  return guarded([&] {
    *swapped = pprloc::observe_rank_swaps(ctx->ctx, i, j, samples, seed) ? 1 : 0;
    return PPRLOC_OK;
  });
}

pprloc_status pprloc_explicit_inverse_check(const pprloc_context* ctx, size_t n_cap, double* deviation) {
  if (!ctx) return null_arg("ctx");
  if (!deviation) return null_arg("deviation");
  return guarded([&] {
    *deviation = pprloc::explicit_inverse_check(ctx->ctx.x(), ctx->ctx.patched(), n_cap);
    return PPRLOC_OK;
  });
}

}  // extern "C"
