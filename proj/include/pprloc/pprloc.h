/*
 * pprloc C interface.
 *
 * Opaque handles own their C++ objects; every handle created by a
 * pprloc_*_create / pprloc_graph_* constructor must be released with the
 * matching *_free function. Functions return a pprloc_status; on failure a
 * thread-local diagnostic is available through pprloc_last_error_*.
 *
 * Node indices are 0-based positions in the graph's canonical label order.
 * Matrices are written row-major. Output buffers are caller-allocated and
 * their length is passed alongside; a short buffer yields
 * PPRLOC_ERR_BUFFER.
 */
#ifndef PPRLOC_PPRLOC_H
#define PPRLOC_PPRLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPRLOC_BUILDING)
#    define PPRLOC_API __declspec(dllexport)
#  else
#    define PPRLOC_API __declspec(dllimport)
#  endif
#else
#  define PPRLOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pprloc_status {
  PPRLOC_OK = 0,
  PPRLOC_ERR_PARSE = 1,
  PPRLOC_ERR_DOMAIN = 2,
  PPRLOC_ERR_CONTRACT = 3,
  PPRLOC_ERR_NUMERICAL = 4,
  PPRLOC_ERR_IO = 5,
  PPRLOC_ERR_BUFFER = 6,
  PPRLOC_ERR_NULL = 7,
  PPRLOC_ERR_INTERNAL = 8
} pprloc_status;

typedef enum pprloc_graph_format {
  PPRLOC_FORMAT_AUTO = 0,
  PPRLOC_FORMAT_EDGELIST = 1,
  PPRLOC_FORMAT_JSON = 2
} pprloc_graph_format;

typedef struct pprloc_graph pprloc_graph;
typedef struct pprloc_context pprloc_context;

typedef struct pprloc_pr_interval {
  size_t node;
  double lo;
  double hi;
  size_t lo_witness;
} pprloc_pr_interval;

typedef struct pprloc_verdict {
  size_t i;
  size_t j;
  int competes;
  /* -1 when absent */
  int64_t witness_k;
  int64_t witness_l;
} pprloc_verdict;

typedef struct pprloc_pair {
  size_t i;
  size_t j;
} pprloc_pair;

typedef struct pprloc_leader {
  size_t leader;
  size_t witness_row;
} pprloc_leader;

typedef struct pprloc_competitivity_interval {
  size_t node;
  double epsilon;
  double lo;
  double hi;
} pprloc_competitivity_interval;

typedef struct pprloc_achievement {
  double lambda;
  double epsilon;
  double achieved;
} pprloc_achievement;

typedef struct pprloc_sample_report {
  size_t node;
  size_t samples;
  double observed_min;
  double observed_max;
  double lo;
  double hi;
  size_t violations;
} pprloc_sample_report;

PPRLOC_API const char* pprloc_version(void);
PPRLOC_API const char* pprloc_status_string(pprloc_status status);

/* Diagnostics for the last failing call on this thread. The tag is one of
 * "parse", "domain", "contract", "io", "buffer", "null", "internal" or, for
 * numerical failures, "non_convergence", "solver_residual", "structure",
 * "oracle_mismatch", "unreachable", "margin", "singular". */
PPRLOC_API const char* pprloc_last_error_message(void);
PPRLOC_API const char* pprloc_last_error_tag(void);
/* Residual, deviation or closest value attached to numerical failures. */
PPRLOC_API double pprloc_last_error_value(void);

/* ---- graphs ---------------------------------------------------------- */

PPRLOC_API pprloc_status pprloc_graph_parse_edge_list(const char* text, pprloc_graph** out);
PPRLOC_API pprloc_status pprloc_graph_parse_json(const char* text, pprloc_graph** out);
PPRLOC_API pprloc_status pprloc_graph_load(const char* path, pprloc_graph_format format,
                                           pprloc_graph** out);
PPRLOC_API void pprloc_graph_free(pprloc_graph* graph);

PPRLOC_API size_t pprloc_graph_node_count(const pprloc_graph* graph);
PPRLOC_API size_t pprloc_graph_edge_count(const pprloc_graph* graph);
/* NULL if i is out of range. The pointer lives as long as the graph. */
PPRLOC_API const char* pprloc_graph_label(const pprloc_graph* graph, size_t i);
PPRLOC_API pprloc_status pprloc_graph_find(const pprloc_graph* graph, const char* label,
                                           size_t* index);
PPRLOC_API pprloc_status pprloc_graph_dangling(const pprloc_graph* graph, unsigned char* d,
                                               size_t len);

/* ---- analysis context ------------------------------------------------ */

/* u may be NULL (uniform dangling distribution). Builds P + d u^T, factors
 * the linear system and computes and verifies the fundamental matrix. */
PPRLOC_API pprloc_status pprloc_context_create(const pprloc_graph* graph, double alpha,
                                               const double* u, size_t u_len,
                                               pprloc_context** out);
PPRLOC_API void pprloc_context_free(pprloc_context* ctx);
PPRLOC_API size_t pprloc_context_node_count(const pprloc_context* ctx);
PPRLOC_API double pprloc_context_alpha(const pprloc_context* ctx);

/* v may be NULL (uniform personalization). */
PPRLOC_API pprloc_status pprloc_pagerank_solve(const pprloc_context* ctx, const double* v,
                                               size_t v_len, double* pi, size_t len);
/* max_iter = 0 selects the default cap. iterations may be NULL. */
PPRLOC_API pprloc_status pprloc_pagerank_power(const pprloc_context* ctx, const double* v,
                                               size_t v_len, double tol, size_t max_iter,
                                               double* pi, size_t len, size_t* iterations);

/* n*n entries, row-major. */
PPRLOC_API pprloc_status pprloc_fundamental_matrix(const pprloc_context* ctx, double* x,
                                                   size_t len);
/* Per-column diagonal dominance margins. */
PPRLOC_API pprloc_status pprloc_structure_margins(const pprloc_context* ctx, double* margins,
                                                  size_t len);

PPRLOC_API pprloc_status pprloc_interval(const pprloc_context* ctx, size_t i,
                                         pprloc_pr_interval* out);
/* v_out may be NULL; otherwise receives the personalization (len = n). */
PPRLOC_API pprloc_status pprloc_achieve(const pprloc_context* ctx, size_t i, double target,
                                        double tol, pprloc_achievement* out, double* v_out,
                                        size_t len);

/* ---- competition ----------------------------------------------------- */

PPRLOC_API pprloc_status pprloc_competitors(const pprloc_context* ctx, size_t i, size_t j,
                                            pprloc_verdict* out);
/* out may be NULL to query the count only. */
PPRLOC_API pprloc_status pprloc_competitivity_graph(const pprloc_context* ctx, pprloc_pair* out,
                                                    size_t capacity, size_t* count);
PPRLOC_API pprloc_status pprloc_leaders(const pprloc_context* ctx, pprloc_leader* out,
                                        size_t capacity, size_t* count);
PPRLOC_API pprloc_status pprloc_sc_interval(const pprloc_context* ctx, size_t i, double epsilon,
                                            pprloc_competitivity_interval* out);
/* Rank-swap certificate for a competing pair. rank_high / rank_low may be
 * NULL; otherwise each needs len = n. */
PPRLOC_API pprloc_status pprloc_witness_epsilon(const pprloc_context* ctx, size_t i, size_t j,
                                                double* epsilon, double* rank_high,
                                                double* rank_low, size_t len);
PPRLOC_API pprloc_status pprloc_leadership_certificate(const pprloc_context* ctx, size_t leader,
                                                       size_t row, double* epsilon, double* pi,
                                                       size_t len);

/* ---- verification oracle --------------------------------------------- */

PPRLOC_API pprloc_status pprloc_sample_personalization(uint64_t seed, size_t n,
                                                       double concentration, double* v);
/* concentrations may be NULL (uniform-like draws only); sample s uses
 * concentrations[s % count]. out needs one report per node. */
PPRLOC_API pprloc_status pprloc_monte_carlo(const pprloc_context* ctx, size_t samples,
                                            uint64_t seed, const double* concentrations,
                                            size_t concentration_count,
                                            pprloc_sample_report* out, size_t len);
PPRLOC_API pprloc_status pprloc_observe_rank_swaps(const pprloc_context* ctx, size_t i, size_t j,
                                                   size_t samples, uint64_t seed, int* swapped);
PPRLOC_API pprloc_status pprloc_explicit_inverse_check(const pprloc_context* ctx, size_t n_cap,
                                                       double* deviation);

#ifdef __cplusplus
}
#endif

#endif /* PPRLOC_PPRLOC_H */
