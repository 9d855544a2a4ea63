#include "tagdiff/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>

#include "tagdiff/error.hpp"
#include "tagdiff/format.hpp"
#include "tagdiff/parallel.hpp"
#include "tagdiff/random.hpp"

namespace tagdiff {
namespace {

double snap(double x) { return std::round(x * 1e9) / 1e9; }

bool contains(std::span<const double> grid, double x) {
  return std::any_of(grid.begin(), grid.end(),
                     [x](double g) { return std::abs(g - x) < 1e-9; });
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace

std::vector<double> lambda_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi) || lo < 0.0 || hi > 1.0)
    fail(ErrorKind::kConfig, "lambda grid needs 0 <= lo <= hi <= 1 and step > 0");
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i)
    grid.push_back(snap(lo + static_cast<double>(i) * step));
  if (grid.back() < hi - 1e-9) grid.push_back(hi);
  grid.back() = std::min(grid.back(), hi);
  return grid;
}

std::vector<double> recall_preset_lambdas() { return {0.0, 0.5, 1.0}; }

void ExperimentConfig::validate() const {
  if (lambdas.empty()) fail(ErrorKind::kConfig, "lambda grid is empty");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] >= 0.0 && lambdas[k] <= 1.0))
      fail(ErrorKind::kConfig, "lambda grid point outside [0, 1]");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
      fail(ErrorKind::kConfig, "lambda grid must be strictly ascending");
  }
  if (lambdas.front() != 0.0 || lambdas.back() != 1.0)
    fail(ErrorKind::kConfig, "lambda grid must contain 0 and 1");
  if (runs == 0) fail(ErrorKind::kConfig, "runs must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    fail(ErrorKind::kConfig, "test fraction must lie in (0, 1)");
  if (list_lengths.empty()) fail(ErrorKind::kConfig, "no list lengths given");
  for (auto L : list_lengths)
    if (L == 0) fail(ErrorKind::kConfig, "list length must be >= 1");
  if (pair_sampling_size < 2)
    fail(ErrorKind::kConfig, "pair sampling size must be >= 2");
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index) {
  return derive_seed(master_seed, run_index);
}

std::vector<MetricsReport> evaluate_split(const SplitDataset& split,
                                          std::span<const double> lambdas,
                                          std::span<const std::size_t> lengths,
                                          const ExperimentConfig& config) {
  for (double l : lambdas) BlendParameter{l};
  if (lengths.empty()) fail(ErrorKind::kConfig, "no list lengths given");
  for (auto L : lengths)
    if (L == 0) fail(ErrorKind::kConfig, "list length must be >= 1");
  const std::size_t max_length = *std::max_element(lengths.begin(), lengths.end());

  const auto& g = split.training;
  std::vector<Index> users;
  for (Index u = 0; u < split.test_sets.size(); ++u)
    if (!split.test_sets[u].empty()) users.push_back(u);
  if (users.empty())
    fail(ErrorKind::kData, "split has no user with retained test items");

  struct UserResult {
    std::vector<std::optional<double>> auc;  // per lambda
    std::vector<RecommendationList> lists;   // per lambda, empty when skipped
  };
  std::vector<UserResult> results(users.size());
  const unsigned workers = worker_count(users.size(), config.workers);
  std::vector<std::unique_ptr<SparseScorer>> scorers(workers);

  parallel_for(users.size(), workers, [&](std::size_t k, unsigned w) {
    if (!scorers[w]) scorers[w] = std::make_unique<SparseScorer>(g);
    auto& scorer = *scorers[w];
    const Index u = users[k];
    const auto profile = g.user_items(u);
    const auto& test = split.test_sets[u];
    const std::size_t others = g.n_items() - profile.size() - test.size();
    auto& out = results[k];
    out.auc.assign(lambdas.size(), std::nullopt);
    out.lists.resize(lambdas.size());
    if (others == 0) return;

    scorer.diffuse(u);
    std::vector<double> h(test.size()), z;
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      const double lambda = lambdas[li];
      for (std::size_t t = 0; t < test.size(); ++t) h[t] = scorer.blended(test[t], lambda);
      z.clear();
      auto p = profile.begin();
      auto q = test.begin();
      for (Index j : scorer.reached()) {
        while (p != profile.end() && *p < j) ++p;
        while (q != test.end() && *q < j) ++q;
        if ((p != profile.end() && *p == j) || (q != test.end() && *q == j)) continue;
        const double s = scorer.blended(j, lambda);
        if (s > 0.0) z.push_back(s);
      }
      out.auc[li] = auc_user(h, z, others - z.size());
      out.lists[li] = recommend(scorer, u, lambda, max_length);
    }
  });

  std::vector<MetricsReport> reports;
  std::vector<std::optional<double>> per_user(users.size());
  std::vector<RecommendationList> lists;
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    lists.clear();
    for (std::size_t k = 0; k < users.size(); ++k) {
      per_user[k] = results[k].auc[li];
      if (per_user[k]) lists.push_back(results[k].lists[li]);
    }
    const auto summary = summarize_auc(per_user);
    for (std::size_t Li = 0; Li < lengths.size(); ++Li) {
      const std::size_t L = lengths[Li];
      MetricsReport r;
      r.lambda = lambdas[li];
      r.length = L;
      r.auc = summary.auc;
      r.evaluated_users = summary.evaluated_users;
      r.skipped_users = summary.skipped_users;
      r.seed = split.seed;
      r.recall = recall(lists, split.test_sets, L);
      r.novelty = novelty(lists, g, L);
      PairSampling sampling{config.pair_sampling_threshold, config.pair_sampling_size,
                            derive_seed(split.seed, li * 1009 + Li + 1)};
      if (auto d = diversification(lists, L, sampling)) {
        r.diversification = d->value;
        r.diversification_pairs = d->pairs;
        r.diversification_stderr = d->standard_error;
      }
      r.short_lists = static_cast<std::size_t>(std::count_if(
          lists.begin(), lists.end(), [L](const auto& l) { return l.items.size() < L; }));
      reports.push_back(r);
    }
  }
  return reports;
}

std::vector<MetricsReport> run_once(const RecordSet& records,
                                    const ExperimentConfig& config,
                                    double lambda, std::size_t run_index) {
  if (config.list_lengths.empty()) fail(ErrorKind::kConfig, "no list lengths given");
  const auto s = split(records, config.test_fraction,
                       run_seed(config.master_seed, run_index));
  const double lambdas[] = {lambda};
  return evaluate_split(s, lambdas, config.list_lengths, config);
}

const AggregateRow& SweepResult::at(double lambda, std::size_t length) const {
  for (const auto& row : aggregate)
    if (std::abs(row.lambda - lambda) < 1e-9 && row.length == length) return row;
  fail(ErrorKind::kContract, "no aggregate row for lambda " +
                                 format_shortest(lambda) + ", L " +
                                 std::to_string(length));
}

SweepResult sweep(const RecordSet& records, const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  const auto& lengths = config.list_lengths;

  // per run: reports keyed by (lambda, length index)
  std::vector<std::map<std::pair<double, std::size_t>, MetricsReport>> per_run(config.runs);
  auto evaluate = [&](std::span<const double> lambdas, bool first_pass) {
    for (std::size_t run = 0; run < config.runs; ++run) {
      const auto s = split(records, config.test_fraction,
                           run_seed(config.master_seed, run));
      if (first_pass) {
        result.split_digests.push_back(s.digest());
      } else if (result.split_digests[run] != s.digest()) {
        fail(ErrorKind::kInternal, "split of run " + std::to_string(run) +
                                       " is not reproducible");
      }
      const auto reports = evaluate_split(s, lambdas, lengths, config);
      for (std::size_t k = 0; k < reports.size(); ++k)
        per_run[run].emplace(std::pair{reports[k].lambda, k % lengths.size()},
                             reports[k]);
    }
  };

  auto aggregate = [&] {
    result.lambdas.clear();
    for (const auto& [key, r] : per_run[0])
      if (!contains(result.lambdas, key.first)) result.lambdas.push_back(key.first);
    result.aggregate.clear();
    for (double lambda : result.lambdas) {
      for (std::size_t Li = 0; Li < lengths.size(); ++Li) {
        std::vector<double> auc, rec, div, nov;
        for (const auto& run : per_run) {
          const auto& r = run.at({lambda, Li});
          auc.push_back(r.auc);
          rec.push_back(r.recall);
          div.push_back(r.diversification);
          nov.push_back(r.novelty);
        }
        result.aggregate.push_back({lambda, lengths[Li], summarize(auc),
                                    summarize(rec), summarize(div), summarize(nov)});
      }
    }
    // Strict comparisons while scanning ascending lambda give ties to the
    // smaller lambda.
    result.lambda_opt = result.lambdas.front();
    result.best_auc = result.at(result.lambda_opt, lengths[0]).auc.mean;
    for (double lambda : result.lambdas) {
      const double v = result.at(lambda, lengths[0]).auc.mean;
      if (v > result.best_auc) {
        result.best_auc = v;
        result.lambda_opt = lambda;
      }
    }
    result.optima.clear();
    for (auto L : lengths) {
      LengthOptimum opt{L, result.lambdas.front(), result.lambdas.front(),
                        result.lambdas.front()};
      const auto& first = result.at(result.lambdas.front(), L);
      double rec = first.recall.mean, div = first.diversification.mean,
             nov = first.novelty.mean;
      for (double lambda : result.lambdas) {
        const auto& row = result.at(lambda, L);
        if (row.recall.mean > rec) { rec = row.recall.mean; opt.recall_lambda = lambda; }
        if (row.diversification.mean > div) {
          div = row.diversification.mean;
          opt.diversification_lambda = lambda;
        }
        if (row.novelty.mean < nov) { nov = row.novelty.mean; opt.novelty_lambda = lambda; }
      }
      result.optima.push_back(opt);
    }
  };

  evaluate(config.lambdas, true);
  aggregate();

  if (config.fine_opt) {
    std::vector<double> fine;
    for (int k = -5; k <= 5; ++k) {
      const double x = snap(result.lambda_opt + 0.01 * k);
      if (x >= 0.0 && x <= 1.0 && !contains(result.lambdas, x)) fine.push_back(x);
    }
    if (!fine.empty()) {
      evaluate(fine, false);
      aggregate();
    }
  }

  for (const auto& run : per_run)
    for (const auto& [key, r] : run) result.raw.push_back(r);
  return result;
}

void emit_report(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  auto metric = [](double v) {
    return std::isnan(v) ? std::string("NA") : format_shortest(v);
  };
  std::string report = std::string(kReportHeader) + '\n';
  for (const auto& r : result.raw) report += format_report_row(r) + '\n';
  for (const auto& a : result.aggregate)
    report += format_shortest(a.lambda) + '\t' + std::to_string(a.length) + '\t' +
              metric(a.auc.mean) + '\t' + metric(a.recall.mean) + '\t' +
              metric(a.diversification.mean) + '\t' + metric(a.novelty.mean) +
              "\t-\t-\tmean\n";
  write_file(dir / "report.tsv", report);

  struct Curve {
    const char* name;
    MetricSummary AggregateRow::*field;
  };
  const Curve curves[] = {{"auc", &AggregateRow::auc},
                          {"recall", &AggregateRow::recall},
                          {"diversification", &AggregateRow::diversification},
                          {"novelty", &AggregateRow::novelty}};
  for (const auto& c : curves) {
    for (auto L : result.config.list_lengths) {
      std::string text;
      for (const auto& a : result.aggregate) {
        if (a.length != L) continue;
        const auto& s = a.*(c.field);
        text += format_fixed(a.lambda, 4) + '\t' + metric(s.mean) + '\t' +
                metric(s.std) + '\n';
      }
      write_file(dir / ("curve_" + std::string(c.name) + "_L" + std::to_string(L) + ".tsv"),
                 text);
    }
  }

  std::string optimum = "metric\tL\tlambda_opt\tvalue\n";
  optimum += "auc\t-\t" + format_shortest(result.lambda_opt) + '\t' +
             metric(result.best_auc) + '\n';
  for (const auto& o : result.optima) {
    const auto L = std::to_string(o.length);
    optimum += "recall\t" + L + '\t' + format_shortest(o.recall_lambda) + '\t' +
               metric(result.at(o.recall_lambda, o.length).recall.mean) + '\n';
    optimum += "diversification\t" + L + '\t' + format_shortest(o.diversification_lambda) +
               '\t' + metric(result.at(o.diversification_lambda, o.length).diversification.mean) +
               '\n';
    optimum += "novelty\t" + L + '\t' + format_shortest(o.novelty_lambda) + '\t' +
               metric(result.at(o.novelty_lambda, o.length).novelty.mean) + '\n';
  }
  write_file(dir / "optimum.tsv", optimum);
}

}  // namespace tagdiff
