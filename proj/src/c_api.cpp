#include "tagdiff/tagdiff.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>

#include "tagdiff/dense_reference.hpp"
#include "tagdiff/diffusion.hpp"
#include "tagdiff/error.hpp"
#include "tagdiff/experiment.hpp"
#include "tagdiff/graph.hpp"
#include "tagdiff/ingestion.hpp"
#include "tagdiff/recommender.hpp"
#include "tagdiff/splitter.hpp"
#include "tagdiff/synth.hpp"

struct td_records {
  tagdiff::RecordSet records;
};
struct td_graph {
  tagdiff::TripartiteGraph graph;
};
struct td_split {
  tagdiff::SplitDataset split;
};
struct td_recommendation {
  const td_graph* graph;
  tagdiff::RecommendationList list;
};
struct td_sweep {
  tagdiff::SweepResult result;
};

namespace {

thread_local std::string last_error;

td_status status_of(tagdiff::ErrorKind kind) {
  using tagdiff::ErrorKind;
  switch (kind) {
    case ErrorKind::kConfig: return TD_ERR_CONFIG;
    case ErrorKind::kData:
    case ErrorKind::kParse:
    case ErrorKind::kUnscorable: return TD_ERR_DATA;
    case ErrorKind::kIo: return TD_ERR_IO;
    case ErrorKind::kContract:
    case ErrorKind::kBounds:
    case ErrorKind::kInternal: return TD_ERR_INTERNAL;
  }
  return TD_ERR_INTERNAL;
}

template <class F>
td_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return TD_OK;
  } catch (const tagdiff::Error& e) {
    last_error = std::string(tagdiff::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TD_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) tagdiff::fail(tagdiff::ErrorKind::kConfig, what);
}

tagdiff::UserId lookup_user(const tagdiff::TripartiteGraph& g, const char* label) {
  require(label != nullptr, "user label is NULL");
  const auto u = g.users().find(label);
  if (!u) tagdiff::fail(tagdiff::ErrorKind::kData, std::string("unknown user '") + label + "'");
  return tagdiff::UserId{*u};
}

void copy_scores(const std::vector<double>& values, double* out, std::size_t capacity) {
  require(out != nullptr && capacity >= values.size(), "score buffer too small");
  std::memcpy(out, values.data(), values.size() * sizeof(double));
}

}  // namespace

extern "C" {

const char* td_version(void) { return "1.0.0"; }
const char* td_last_error(void) { return last_error.c_str(); }

td_status td_records_read(const char* path, td_records** out) {
  return guarded([&] {
    require(path && out, "NULL argument");
    auto r = std::make_unique<td_records>();
    r->records = tagdiff::read_interactions(path);
    *out = r.release();
  });
}

td_status td_records_write(const td_records* records, const char* path) {
  return guarded([&] {
    require(records && path, "NULL argument");
    tagdiff::write_interactions(std::filesystem::path(path), records->records);
  });
}

size_t td_records_count(const td_records* records) {
  return records ? records->records.size() : 0;
}

void td_records_free(td_records* records) { delete records; }

void td_purify_policy_default(td_purify_policy* policy) {
  const tagdiff::PurificationPolicy d;
  policy->min_users_per_item = static_cast<uint32_t>(d.min_users_per_item);
  policy->min_items_per_user = static_cast<uint32_t>(d.min_items_per_user);
  policy->min_tags_per_item = static_cast<uint32_t>(d.min_tags_per_item);
  policy->drop_singleton_tags = d.drop_singleton_tags;
}

td_status td_records_purify(td_records* records, const td_purify_policy* policy,
                            td_purify_stats* stats) {
  return guarded([&] {
    require(records && policy, "NULL argument");
    tagdiff::PurificationPolicy p;
    p.min_users_per_item = policy->min_users_per_item;
    p.min_items_per_user = policy->min_items_per_user;
    p.min_tags_per_item = policy->min_tags_per_item;
    p.drop_singleton_tags = policy->drop_singleton_tags != 0;
    auto result = tagdiff::purify(records->records, p);
    if (stats) {
      const auto total = result.stats.total();
      *stats = {result.stats.passes.size(), total.removed_users, total.removed_items,
                total.removed_tags, total.removed_records};
    }
    records->records = std::move(result.records);
  });
}

void td_synth_config_default(td_synth_config* config) {
  const tagdiff::SynthConfig d;
  *config = {d.users, d.items, d.tags, d.topics, d.mean_profile, d.topic_affinity,
             d.popularity_exponent, d.max_tags_per_collection, d.signal, d.seed};
}

td_status td_synth_generate(const td_synth_config* config, int raw, td_records** out) {
  return guarded([&] {
    require(config && out, "NULL argument");
    tagdiff::SynthConfig c;
    c.users = config->users;
    c.items = config->items;
    c.tags = config->tags;
    c.topics = config->topics;
    c.mean_profile = config->mean_profile;
    c.topic_affinity = config->topic_affinity;
    c.popularity_exponent = config->popularity_exponent;
    c.max_tags_per_collection = config->max_tags_per_collection;
    c.signal = config->signal;
    c.seed = config->seed;
    auto r = std::make_unique<td_records>();
    r->records = raw ? tagdiff::synth_generate_raw(c) : tagdiff::synth_generate(c);
    *out = r.release();
  });
}

td_status td_split_create(const td_records* records, double test_fraction, uint64_t seed,
                          td_split** out) {
  return guarded([&] {
    require(records && out, "NULL argument");
    auto s = std::make_unique<td_split>(
        td_split{tagdiff::split(records->records, test_fraction, seed)});
    *out = s.release();
  });
}

void td_split_get_stats(const td_split* split, td_split_stats* stats) {
  const auto& s = split->split;
  *stats = {s.pairs.size(), s.held_out, s.retained_test_pairs(),
            s.orphans.dropped_pairs, s.users_with_tests(), s.digest()};
}

td_status td_split_write_manifest(const td_split* split, const char* path) {
  return guarded([&] {
    require(split && path, "NULL argument");
    tagdiff::write_manifest(std::filesystem::path(path), split->split);
  });
}

void td_split_free(td_split* split) { delete split; }

td_status td_graph_build(const td_records* records, td_graph** out) {
  return guarded([&] {
    require(records && out, "NULL argument");
    auto g = std::make_unique<td_graph>(td_graph{tagdiff::build_graph(records->records)});
    *out = g.release();
  });
}

size_t td_graph_users(const td_graph* graph) { return graph->graph.n_users(); }
size_t td_graph_items(const td_graph* graph) { return graph->graph.n_items(); }
size_t td_graph_tags(const td_graph* graph) { return graph->graph.n_tags(); }

const char* td_graph_item_label(const td_graph* graph, size_t index) {
  if (!graph || index >= graph->graph.n_items()) return nullptr;
  return graph->graph.items().labels()[index].c_str();
}

void td_graph_free(td_graph* graph) { delete graph; }

td_status td_score_user(const td_graph* graph, const char* user_label, double lambda,
                        double* scores, size_t capacity) {
  return guarded([&] {
    require(graph != nullptr, "NULL graph");
    const auto& g = graph->graph;
    const auto s = tagdiff::score_user(g, lookup_user(g, user_label),
                                       tagdiff::BlendParameter(lambda));
    copy_scores({s.values().begin(), s.values().end()}, scores, capacity);
  });
}

td_status td_dense_scores(const td_graph* graph, const char* user_label, double lambda,
                          double* scores, size_t capacity) {
  return guarded([&] {
    require(graph != nullptr, "NULL graph");
    const auto& g = graph->graph;
    copy_scores(tagdiff::dense_scores(g, lookup_user(g, user_label), lambda), scores,
                capacity);
  });
}

td_status td_recommend(const td_graph* graph, const char* user_label, double lambda,
                       size_t length, td_recommendation** out) {
  return guarded([&] {
    require(graph && out, "NULL argument");
    const auto& g = graph->graph;
    auto rec = std::make_unique<td_recommendation>(td_recommendation{
        graph, tagdiff::recommend(g, lookup_user(g, user_label),
                                  tagdiff::BlendParameter(lambda), length)});
    *out = rec.release();
  });
}

size_t td_recommendation_size(const td_recommendation* rec) {
  return rec->list.items.size();
}

int td_recommendation_is_short(const td_recommendation* rec) {
  return rec->list.short_list ? 1 : 0;
}

td_status td_recommendation_at(const td_recommendation* rec, size_t rank,
                               const char** item_label, double* score) {
  return guarded([&] {
    require(rec != nullptr, "NULL recommendation");
    if (rank >= rec->list.items.size())
      tagdiff::fail(tagdiff::ErrorKind::kConfig, "rank out of range");
    if (item_label)
      *item_label = rec->graph->graph.items().labels()[rec->list.items[rank]].c_str();
    if (score) *score = rec->list.scores[rank];
  });
}

td_status td_recommendation_format(const td_recommendation* rec, char** out) {
  return guarded([&] {
    require(rec && out, "NULL argument");
    std::ostringstream text;
    tagdiff::write_recommendations(text, rec->graph->graph, {&rec->list, 1});
    const auto s = text.str();
    char* buffer = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, s.c_str(), s.size() + 1);
    *out = buffer;
  });
}

void td_recommendation_free(td_recommendation* rec) { delete rec; }

void td_string_free(char* text) { std::free(text); }

td_status td_lambda_grid(double lo, double hi, double step, double* out, size_t capacity,
                         size_t* count) {
  return guarded([&] {
    require(count != nullptr, "NULL argument");
    const auto grid = tagdiff::lambda_grid(lo, hi, step);
    *count = grid.size();
    require(out != nullptr && capacity >= grid.size(), "lambda buffer too small");
    std::memcpy(out, grid.data(), grid.size() * sizeof(double));
  });
}

void td_sweep_config_default(td_sweep_config* config) {
  static const tagdiff::ExperimentConfig d;
  config->lambdas = d.lambdas.data();
  config->lambda_count = d.lambdas.size();
  config->lengths = d.list_lengths.data();
  config->length_count = d.list_lengths.size();
  config->runs = d.runs;
  config->test_fraction = d.test_fraction;
  config->master_seed = d.master_seed;
  config->pair_sampling_threshold = 0;
  config->pair_sampling_size = d.pair_sampling_size;
  config->workers = d.workers;
  config->fine_opt = d.fine_opt;
}

td_status td_sweep_run(const td_records* records, const td_sweep_config* config,
                       td_sweep** out) {
  return guarded([&] {
    require(records && config && out, "NULL argument");
    require(config->lambdas && config->lengths, "NULL lambda or length array");
    tagdiff::ExperimentConfig c;
    c.lambdas.assign(config->lambdas, config->lambdas + config->lambda_count);
    c.list_lengths.assign(config->lengths, config->lengths + config->length_count);
    c.runs = config->runs;
    c.test_fraction = config->test_fraction;
    c.master_seed = config->master_seed;
    c.pair_sampling_threshold = config->pair_sampling_threshold == 0
                                    ? std::numeric_limits<std::size_t>::max()
                                    : config->pair_sampling_threshold;
    c.pair_sampling_size = config->pair_sampling_size;
    c.workers = config->workers;
    c.fine_opt = config->fine_opt != 0;
    auto s = std::make_unique<td_sweep>(td_sweep{tagdiff::sweep(records->records, c)});
    *out = s.release();
  });
}

double td_sweep_lambda_opt(const td_sweep* sweep) { return sweep->result.lambda_opt; }
double td_sweep_best_auc(const td_sweep* sweep) { return sweep->result.best_auc; }

double td_sweep_mean_auc(const td_sweep* sweep, double lambda) {
  const auto& r = sweep->result;
  for (const auto& row : r.aggregate)
    if (std::abs(row.lambda - lambda) < 1e-9) return row.auc.mean;
  return std::numeric_limits<double>::quiet_NaN();
}

td_status td_sweep_write(const td_sweep* sweep, const char* directory) {
  return guarded([&] {
    require(sweep && directory, "NULL argument");
    tagdiff::emit_report(sweep->result, directory);
  });
}

void td_sweep_free(td_sweep* sweep) { delete sweep; }

}  // extern "C"
