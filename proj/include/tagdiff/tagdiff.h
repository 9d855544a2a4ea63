/* C interface to the tagdiff library.
 *
 * Every object is an opaque handle created by a *_create / *_read style call
 * and released with the matching *_free. Functions returning td_status
 * report failures through the code and leave a message retrievable with
 * td_last_error() on the calling thread. Output pointers are untouched on
 * failure.
 */
#ifndef TAGDIFF_TAGDIFF_H
#define TAGDIFF_TAGDIFF_H

#include <stddef.h>
#include <stdint.h>

#ifndef TAGDIFF_API
#  if defined(_WIN32) && defined(TAGDIFF_BUILDING)
#    define TAGDIFF_API __declspec(dllexport)
#  elif defined(_WIN32)
#    define TAGDIFF_API __declspec(dllimport)
#  else
#    define TAGDIFF_API __attribute__((visibility("default")))
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Codes 1-3 double as the command line exit codes. */
typedef enum td_status {
  TD_OK = 0,
  TD_ERR_CONFIG = 1,   /* invalid parameter */
  TD_ERR_DATA = 2,     /* unusable or malformed data, unknown label */
  TD_ERR_INTERNAL = 3, /* invariant violation */
  TD_ERR_IO = 4        /* file could not be read or written */
} td_status;

typedef struct td_records td_records;
typedef struct td_graph td_graph;
typedef struct td_split td_split;
typedef struct td_recommendation td_recommendation;
typedef struct td_sweep td_sweep;

TAGDIFF_API const char* td_version(void);
/* Message of the last failure on this thread; empty if none. */
TAGDIFF_API const char* td_last_error(void);

/* ---- records ---------------------------------------------------------- */

TAGDIFF_API td_status td_records_read(const char* path, td_records** out);
TAGDIFF_API td_status td_records_write(const td_records* records, const char* path);
TAGDIFF_API size_t td_records_count(const td_records* records);
TAGDIFF_API void td_records_free(td_records* records);

typedef struct td_purify_policy {
  uint32_t min_users_per_item;
  uint32_t min_items_per_user;
  uint32_t min_tags_per_item;
  int drop_singleton_tags;
} td_purify_policy;

typedef struct td_purify_stats {
  size_t passes;
  size_t removed_users;
  size_t removed_items;
  size_t removed_tags;
  size_t removed_records;
} td_purify_stats;

TAGDIFF_API void td_purify_policy_default(td_purify_policy* policy);
/* Purifies in place. `stats` may be NULL. */
TAGDIFF_API td_status td_records_purify(td_records* records,
                                        const td_purify_policy* policy,
                                        td_purify_stats* stats);

typedef struct td_synth_config {
  size_t users;
  size_t items;
  size_t tags;
  size_t topics;
  double mean_profile;
  double topic_affinity;
  double popularity_exponent;
  size_t max_tags_per_collection;
  double signal;
  uint64_t seed;
} td_synth_config;

TAGDIFF_API void td_synth_config_default(td_synth_config* config);
/* Generates records; purified with the default policy unless `raw` != 0. */
TAGDIFF_API td_status td_synth_generate(const td_synth_config* config, int raw,
                                        td_records** out);

/* ---- split ------------------------------------------------------------ */

typedef struct td_split_stats {
  size_t pairs;
  size_t held_out;
  size_t retained_test_pairs;
  size_t orphan_pairs;
  size_t users_with_tests;
  uint64_t digest;
} td_split_stats;

TAGDIFF_API td_status td_split_create(const td_records* records, double test_fraction,
                                      uint64_t seed, td_split** out);
TAGDIFF_API void td_split_get_stats(const td_split* split, td_split_stats* stats);
TAGDIFF_API td_status td_split_write_manifest(const td_split* split, const char* path);
TAGDIFF_API void td_split_free(td_split* split);

/* ---- graph and scoring ------------------------------------------------ */

TAGDIFF_API td_status td_graph_build(const td_records* records, td_graph** out);
TAGDIFF_API size_t td_graph_users(const td_graph* graph);
TAGDIFF_API size_t td_graph_items(const td_graph* graph);
TAGDIFF_API size_t td_graph_tags(const td_graph* graph);
/* Label of item `index`, or NULL when out of range. Valid while the graph lives. */
TAGDIFF_API const char* td_graph_item_label(const td_graph* graph, size_t index);
TAGDIFF_API void td_graph_free(td_graph* graph);

/* Sparse blended scores of every item for the user. `scores` must hold
 * td_graph_items() values. */
TAGDIFF_API td_status td_score_user(const td_graph* graph, const char* user_label,
                                    double lambda, double* scores, size_t capacity);
/* The same scores from explicit dense transition matrices; refuses graphs
 * with more than 2000 items (TD_ERR_DATA). */
TAGDIFF_API td_status td_dense_scores(const td_graph* graph, const char* user_label,
                                      double lambda, double* scores, size_t capacity);

TAGDIFF_API td_status td_recommend(const td_graph* graph, const char* user_label,
                                   double lambda, size_t length,
                                   td_recommendation** out);
TAGDIFF_API size_t td_recommendation_size(const td_recommendation* rec);
/* Nonzero when fewer than `length` uncollected items existed. */
TAGDIFF_API int td_recommendation_is_short(const td_recommendation* rec);
TAGDIFF_API td_status td_recommendation_at(const td_recommendation* rec, size_t rank,
                                           const char** item_label, double* score);
/* Tab-separated `user<TAB>rank<TAB>item<TAB>score` lines. Free with td_string_free. */
TAGDIFF_API td_status td_recommendation_format(const td_recommendation* rec, char** out);
TAGDIFF_API void td_recommendation_free(td_recommendation* rec);

TAGDIFF_API void td_string_free(char* text);

/* ---- experiments ------------------------------------------------------ */

/* Fills `out` with lo, lo + step, ..., hi. `count` receives the number of
 * points; TD_ERR_CONFIG when `capacity` is too small. */
TAGDIFF_API td_status td_lambda_grid(double lo, double hi, double step, double* out,
                                     size_t capacity, size_t* count);

typedef struct td_sweep_config {
  const double* lambdas;
  size_t lambda_count;
  const size_t* lengths;
  size_t length_count;
  size_t runs;
  double test_fraction;
  uint64_t master_seed;
  size_t pair_sampling_threshold; /* 0: always exact */
  size_t pair_sampling_size;
  unsigned workers;               /* 0: one per hardware thread */
  int fine_opt;
} td_sweep_config;

TAGDIFF_API void td_sweep_config_default(td_sweep_config* config);
TAGDIFF_API td_status td_sweep_run(const td_records* records,
                                   const td_sweep_config* config, td_sweep** out);
TAGDIFF_API double td_sweep_lambda_opt(const td_sweep* sweep);
TAGDIFF_API double td_sweep_best_auc(const td_sweep* sweep);
/* Mean AUC at lambda; NaN when lambda was not evaluated. */
TAGDIFF_API double td_sweep_mean_auc(const td_sweep* sweep, double lambda);
TAGDIFF_API td_status td_sweep_write(const td_sweep* sweep, const char* directory);
TAGDIFF_API void td_sweep_free(td_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* TAGDIFF_TAGDIFF_H */
