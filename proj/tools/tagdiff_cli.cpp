// Command line front end. Talks to the library only through tagdiff.h.

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tagdiff/tagdiff.h"

namespace {

// Exit codes: 0 ok, 1 usage/config, 2 data (including I/O), 3 internal.
int exit_code(td_status s) {
  switch (s) {
    case TD_OK: return 0;
    case TD_ERR_CONFIG: return 1;
    case TD_ERR_DATA:
    case TD_ERR_IO: return 2;
    case TD_ERR_INTERNAL: return 3;
  }
  return 3;
}

struct Failure {
  td_status status;
};

void check(td_status s) {
  if (s != TD_OK) {
    std::fprintf(stderr, "tagdiff: %s\n", td_last_error());
    throw Failure{s};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Records = std::unique_ptr<td_records, Deleter<td_records, td_records_free>>;
using Graph = std::unique_ptr<td_graph, Deleter<td_graph, td_graph_free>>;
using Split = std::unique_ptr<td_split, Deleter<td_split, td_split_free>>;
using Recommendation =
    std::unique_ptr<td_recommendation, Deleter<td_recommendation, td_recommendation_free>>;
using Sweep = std::unique_ptr<td_sweep, Deleter<td_sweep, td_sweep_free>>;

Records read_records(const std::string& path) {
  td_records* r = nullptr;
  check(td_records_read(path.c_str(), &r));
  return Records(r);
}

Graph build_graph(const td_records* records) {
  td_graph* g = nullptr;
  check(td_graph_build(records, &g));
  return Graph(g);
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream in(spec);
  std::string field;
  while (std::getline(in, field, ':')) parts.push_back(std::stod(field));
  if (parts.size() != 3) {
    std::fprintf(stderr, "tagdiff: --grid expects lo:hi:step, got '%s'\n", spec.c_str());
    throw Failure{TD_ERR_CONFIG};
  }
  size_t count = 0;
  td_lambda_grid(parts[0], parts[1], parts[2], nullptr, 0, &count);
  std::vector<double> grid(count);
  check(td_lambda_grid(parts[0], parts[1], parts[2], grid.data(), grid.size(), &count));
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tag-aware diffusion recommender and evaluation harness"};
  app.require_subcommand(1);

  std::string input, output, manifest, user, out_dir;
  std::string grid = "0:1:0.05", lengths = "10,20,50";
  double fraction = 0.05, lambda = 0.5, signal = 0.9, mean_profile = 10.0;
  std::uint64_t seed = 0;
  std::size_t top = 10, runs = 50, users = 100, items = 500, tags = 200, topics = 10;
  std::uint32_t min_item_users = 2;
  unsigned workers = 0;
  bool no_singleton_drop = false, fine_opt = false, raw = false;

  auto* ingest = app.add_subcommand("ingest", "parse and purify an interaction file");
  ingest->add_option("--input", input, "raw interaction TSV")->required();
  ingest->add_option("--output", output, "purified TSV")->required();
  ingest->add_flag("--no-singleton-tag-drop", no_singleton_drop,
                   "keep tags attached to a single item");
  ingest->add_option("--min-item-users", min_item_users, "minimum users per item")
      ->capture_default_str();

  auto* split = app.add_subcommand("split", "write a seeded train/test manifest");
  split->add_option("--input", input)->required();
  split->add_option("--fraction", fraction)->capture_default_str();
  split->add_option("--seed", seed)->required();
  split->add_option("--manifest", manifest)->required();

  auto* rec = app.add_subcommand("recommend", "print one user's top-L list");
  rec->add_option("--input", input)->required();
  rec->add_option("--user", user)->required();
  rec->add_option("--lambda", lambda)->capture_default_str();
  rec->add_option("--top", top)->capture_default_str();

  auto* sw = app.add_subcommand("sweep", "run the repeated-split lambda sweep");
  sw->add_option("--input", input)->required();
  sw->add_option("--grid", grid, "lo:hi:step")->capture_default_str();
  sw->add_option("--runs", runs)->capture_default_str();
  sw->add_option("--lengths", lengths, "comma-separated list lengths")->capture_default_str();
  sw->add_option("--seed", seed)->required();
  sw->add_option("--out", out_dir, "report directory")->required();
  sw->add_option("--fraction", fraction)->capture_default_str();
  sw->add_option("--workers", workers, "0 = all hardware threads")->capture_default_str();
  sw->add_flag("--fine-opt", fine_opt, "refine the AUC optimum on a 0.01 grid");

  auto* syn = app.add_subcommand("synth", "generate a latent-topic surrogate dataset");
  syn->add_option("--users", users)->capture_default_str();
  syn->add_option("--items", items)->capture_default_str();
  syn->add_option("--tags", tags)->capture_default_str();
  syn->add_option("--topics", topics)->capture_default_str();
  syn->add_option("--signal", signal)->capture_default_str();
  syn->add_option("--mean-profile", mean_profile)->capture_default_str();
  syn->add_option("--seed", seed)->required();
  syn->add_option("--output", output)->required();
  syn->add_flag("--raw", raw, "skip purification");

  auto* oracle = app.add_subcommand("oracle", "dense-matrix reference scores (m <= 2000)");
  oracle->add_option("--input", input)->required();
  oracle->add_option("--user", user)->required();
  oracle->add_option("--lambda", lambda)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ingest) {
      auto records = read_records(input);
      td_purify_policy policy;
      td_purify_policy_default(&policy);
      policy.min_users_per_item = min_item_users;
      policy.drop_singleton_tags = !no_singleton_drop;
      td_purify_stats stats{};
      const size_t before = td_records_count(records.get());
      check(td_records_purify(records.get(), &policy, &stats));
      check(td_records_write(records.get(), output.c_str()));
      std::fprintf(stderr,
                   "records %zu -> %zu; removed users %zu, items %zu, tags %zu "
                   "in %zu passes\n",
                   before, td_records_count(records.get()), stats.removed_users,
                   stats.removed_items, stats.removed_tags, stats.passes);
    } else if (*split) {
      auto records = read_records(input);
      td_split* s = nullptr;
      check(td_split_create(records.get(), fraction, seed, &s));
      Split owned(s);
      check(td_split_write_manifest(s, manifest.c_str()));
      td_split_stats st;
      td_split_get_stats(s, &st);
      std::fprintf(stderr, "pairs %zu, held out %zu, retained %zu, orphans %zu\n",
                   st.pairs, st.held_out, st.retained_test_pairs, st.orphan_pairs);
    } else if (*rec) {
      auto records = read_records(input);
      auto graph = build_graph(records.get());
      td_recommendation* r = nullptr;
      check(td_recommend(graph.get(), user.c_str(), lambda, top, &r));
      Recommendation owned(r);
      char* text = nullptr;
      check(td_recommendation_format(r, &text));
      std::fputs(text, stdout);
      td_string_free(text);
      if (td_recommendation_is_short(r))
        std::fprintf(stderr, "note: only %zu uncollected items available\n",
                     td_recommendation_size(r));
    } else if (*sw) {
      auto records = read_records(input);
      const auto lambdas = parse_grid(grid);
      std::vector<size_t> ls;
      std::stringstream in(lengths);
      for (std::string f; std::getline(in, f, ',');) ls.push_back(std::stoul(f));
      td_sweep_config config;
      td_sweep_config_default(&config);
      config.lambdas = lambdas.data();
      config.lambda_count = lambdas.size();
      config.lengths = ls.data();
      config.length_count = ls.size();
      config.runs = runs;
      config.test_fraction = fraction;
      config.master_seed = seed;
      config.workers = workers;
      config.fine_opt = fine_opt;
      td_sweep* s = nullptr;
      check(td_sweep_run(records.get(), &config, &s));
      Sweep owned(s);
      check(td_sweep_write(s, out_dir.c_str()));
      std::printf("lambda_opt\t%s\tauc\t%s\n", shortest(td_sweep_lambda_opt(s)).c_str(),
                  shortest(td_sweep_best_auc(s)).c_str());
    } else if (*syn) {
      td_synth_config config;
      td_synth_config_default(&config);
      config.users = users;
      config.items = items;
      config.tags = tags;
      config.topics = topics;
      config.signal = signal;
      config.mean_profile = mean_profile;
      config.seed = seed;
      td_records* r = nullptr;
      check(td_synth_generate(&config, raw ? 1 : 0, &r));
      Records owned(r);
      check(td_records_write(r, output.c_str()));
    } else if (*oracle) {
      auto records = read_records(input);
      auto graph = build_graph(records.get());
      std::vector<double> scores(td_graph_items(graph.get()));
      check(td_dense_scores(graph.get(), user.c_str(), lambda, scores.data(), scores.size()));
      for (size_t j = 0; j < scores.size(); ++j)
        std::printf("%s\t%s\n", td_graph_item_label(graph.get(), j),
                    shortest(scores[j]).c_str());
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tagdiff: %s\n", e.what());
    return 1;
  }
  return 0;
}
