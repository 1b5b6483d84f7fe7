#include "forgetbench/comparison.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>
#include <tuple>

#include "forgetbench/errors.hpp"
#include "forgetbench/protocol.hpp"

namespace forgetbench {

namespace {

struct TaskSlot {
  std::size_t strategy_index = 0;
  std::size_t variant_index = 0;
  std::size_t seed_index = 0;
  StrategySpec spec;
  std::uint64_t seed = 0;
};

void run_tasks(const ExperimentConfig& config,
               const std::vector<TaskSlot>& tasks,
               std::vector<RunRecord>& records,
               std::vector<std::string>& errors) {
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        records[i] = run_protocol(config, tasks[i].spec, tasks[i].seed);
      } catch (const Error& e) {
        errors[i] = std::string(e.category()) + ": " + e.what();
      } catch (const std::exception& e) {
        errors[i] = std::string("internal: ") + e.what();
      }
    }
  };

  std::size_t n_threads = config.threads;
  if (n_threads == 0) {
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  }
  n_threads = std::min(n_threads, tasks.size());
  if (n_threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace

bool VariantResult::complete() const {
  for (const std::string& e : errors) {
    if (!e.empty()) return false;
  }
  return !runs.empty();
}

std::vector<StrategySpec> expand_sweep(const ExperimentConfig& config,
                                       const StrategySpec& entry) {
  std::vector<StrategySpec> variants;
  switch (entry.kind) {
    case StrategyKind::kL2:
      for (double l : config.lambda_sweep) variants.push_back(StrategySpec::l2(l));
      break;
    case StrategyKind::kEwc:
      for (double l : config.effective_ewc_sweep()) {
        variants.push_back(StrategySpec::ewc(l, config.fisher_samples));
      }
      break;
    case StrategyKind::kRehearsalPlusEwc:
      for (double l : config.effective_ewc_sweep()) {
        variants.push_back(StrategySpec::rehearsal_plus_ewc(
            entry.rehearsal_p, entry.epoch_mode, l, config.fisher_samples));
      }
      break;
    case StrategyKind::kRehearsal:
      for (double p : config.rehearsal_sweep) {
        variants.push_back(StrategySpec::rehearsal(p, entry.epoch_mode));
      }
      break;
    default:
      variants.push_back(entry);
      break;
  }
  return variants;
}

std::vector<std::uint64_t> comparison_seeds(const ExperimentConfig& config) {
  std::vector<std::uint64_t> seeds(config.n_seeds);
  for (std::size_t i = 0; i < config.n_seeds; ++i) {
    seeds[i] = config.train.seed + i;
  }
  return seeds;
}

ComparisonReport run_comparison(const ExperimentConfig& config) {
  config.validate();
  if (config.strategies.empty()) {
    throw ConfigError("run_comparison needs at least one strategy");
  }
  const std::vector<std::uint64_t> seeds = comparison_seeds(config);

  ComparisonReport report;
  std::vector<TaskSlot> tasks;
  for (std::size_t s = 0; s < config.strategies.size(); ++s) {
    StrategyComparison comparison;
    comparison.entry = config.strategies[s];
    for (const StrategySpec& spec :
         expand_sweep(config, config.strategies[s])) {
      VariantResult variant;
      variant.spec = spec;
      variant.runs.resize(seeds.size());
      variant.errors.resize(seeds.size());
      comparison.variants.push_back(std::move(variant));
    }
    report.strategies.push_back(std::move(comparison));
    for (std::size_t v = 0; v < report.strategies[s].variants.size(); ++v) {
      for (std::size_t k = 0; k < seeds.size(); ++k) {
        tasks.push_back(
            {s, v, k, report.strategies[s].variants[v].spec, seeds[k]});
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::vector<std::string> errors(tasks.size());
  run_tasks(config, tasks, records, errors);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const TaskSlot& task = tasks[i];
    VariantResult& variant =
        report.strategies[task.strategy_index].variants[task.variant_index];
    variant.runs[task.seed_index] = std::move(records[i]);
    variant.errors[task.seed_index] = std::move(errors[i]);
  }

  for (StrategyComparison& comparison : report.strategies) {
    double best_score = -1.0;
    for (std::size_t v = 0; v < comparison.variants.size(); ++v) {
      VariantResult& variant = comparison.variants[v];
      if (!variant.complete()) continue;
      double sum = 0.0;
      for (const RunRecord& run : variant.runs) sum += run.update_val_mean;
      variant.mean_update_val = sum / static_cast<double>(variant.runs.size());
      if (variant.mean_update_val > best_score) {
        best_score = variant.mean_update_val;
        comparison.chosen = static_cast<std::ptrdiff_t>(v);
      }
    }
    if (comparison.failed()) {
      for (const VariantResult& variant : comparison.variants) {
        for (const std::string& e : variant.errors) {
          if (!e.empty()) {
            comparison.failure_message = e;
            break;
          }
        }
        if (!comparison.failure_message.empty()) break;
      }
      continue;
    }
    std::vector<EvalReport> finals;
    for (const RunRecord& run : comparison.chosen_variant().runs) {
      finals.push_back(run.final_report());
    }
    comparison.median_report = median_of_reports(finals);
    comparison.median_report.strategy = comparison.entry.label();
    comparison.median_report.snapshot_id = "median_final";
  }
  return report;
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw ConfigError("median of an empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

EvalReport median_of_reports(const std::vector<EvalReport>& reports) {
  if (reports.empty()) {
    throw ConfigError("median_of_reports: no reports");
  }
  const std::size_t n_months = reports.front().per_month_auc.size();
  EvalReport out;
  out.per_month_auc.resize(n_months);
  auto collect = [&](auto getter) {
    std::vector<double> values;
    values.reserve(reports.size());
    for (const EvalReport& r : reports) values.push_back(getter(r));
    return median(std::move(values));
  };
  for (std::size_t m = 0; m < n_months; ++m) {
    out.per_month_auc[m] =
        collect([m](const EvalReport& r) { return r.per_month_auc[m]; });
  }
  out.base_avg = collect([](const EvalReport& r) { return r.base_avg; });
  out.update_avg = collect([](const EvalReport& r) { return r.update_avg; });
  out.future_avg = collect([](const EvalReport& r) { return r.future_avg; });
  out.overall_avg = collect([](const EvalReport& r) { return r.overall_avg; });
  return out;
}

std::vector<std::string> write_comparison_csvs(
    const ComparisonReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  const auto runs_path = out_dir / "comparison_runs.csv";
  std::ofstream runs(runs_path);
  if (!runs) throw IoError("cannot write " + runs_path.string());
  runs << "strategy,variant,seed";
  for (int m = 0; m < 12; ++m) runs << ",month_" << m;
  runs << ",base_avg,update_avg,future_avg,overall_avg\n";
  for (const StrategyComparison& comparison : report.strategies) {
    if (comparison.failed()) continue;
    const VariantResult& variant = comparison.chosen_variant();
    for (const RunRecord& run : variant.runs) {
      const EvalReport& last = run.final_report();
      runs << comparison.entry.label() << ',' << variant.spec.label() << ','
           << run.seed;
      for (double v : last.per_month_auc) runs << ',' << format_auc(v);
      runs << ',' << format_auc(last.base_avg) << ','
           << format_auc(last.update_avg) << ','
           << format_auc(last.future_avg) << ','
           << format_auc(last.overall_avg) << '\n';
    }
  }
  runs.close();

  // Summary ordered by median overall AUC, best first; failed strategies
  // trail with empty metrics.
  std::vector<const StrategyComparison*> order;
  for (const StrategyComparison& c : report.strategies) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const StrategyComparison* a, const StrategyComparison* b) {
                     if (a->failed() != b->failed()) return !a->failed();
                     if (a->failed()) return false;
                     return a->median_report.overall_avg >
                            b->median_report.overall_avg;
                   });

  const auto summary_path = out_dir / "comparison_summary.csv";
  std::ofstream summary(summary_path);
  if (!summary) throw IoError("cannot write " + summary_path.string());
  summary << "strategy,chosen_variant,status,selection_val_auc,"
             "median_base_avg,median_update_avg,median_future_avg,"
             "median_overall_avg\n";
  for (const StrategyComparison* comparison : order) {
    summary << comparison->entry.label() << ',';
    if (comparison->failed()) {
      summary << ",failed: " << comparison->failure_message << ",,,,,\n";
      continue;
    }
    const VariantResult& variant = comparison->chosen_variant();
    summary << variant.spec.label() << ",ok,"
            << format_auc(variant.mean_update_val) << ','
            << format_auc(comparison->median_report.base_avg) << ','
            << format_auc(comparison->median_report.update_avg) << ','
            << format_auc(comparison->median_report.future_avg) << ','
            << format_auc(comparison->median_report.overall_avg) << '\n';
  }
  summary.close();

  return {"comparison_runs.csv", "comparison_summary.csv"};
}

std::vector<std::string> export_plot_data(const std::vector<RunRecord>& records,
                                          const std::filesystem::path& dir) {
  if (records.empty()) {
    throw ConfigError("export_plot_data: no records");
  }
  std::filesystem::create_directories(dir);

  struct Row {
    std::string strategy;
    std::size_t snapshot;
    std::string snapshot_id;
    std::size_t month;
    double auc_value;
    std::uint64_t seed;
  };
  std::vector<Row> rows;
  for (const RunRecord& record : records) {
    for (std::size_t s = 0; s < record.snapshot_ids.size(); ++s) {
      for (std::size_t m = 0; m < record.test_matrix.n_months; ++m) {
        rows.push_back({record.strategy.label(), s, record.snapshot_ids[s], m,
                        record.test_matrix.at(s, m), record.seed});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.strategy, a.snapshot, a.month, a.seed) <
           std::tie(b.strategy, b.snapshot, b.month, b.seed);
  });

  std::vector<std::string> files;
  std::ofstream out;
  std::string open_strategy;
  std::string open_slug;
  for (const Row& row : rows) {
    if (row.strategy != open_strategy || !out.is_open()) {
      if (out.is_open()) out.close();
      open_strategy = row.strategy;
      // slug from the first record carrying this label
      for (const RunRecord& record : records) {
        if (record.strategy.label() == row.strategy) {
          open_slug = record.strategy.slug();
          break;
        }
      }
      const auto path = dir / (open_slug + ".csv");
      out.open(path);
      if (!out) throw IoError("cannot write " + path.string());
      out << "strategy,snapshot,snapshot_id,month,auc,seed\n";
      files.push_back(open_slug + ".csv");
    }
    out << row.strategy << ',' << row.snapshot << ',' << row.snapshot_id << ','
        << row.month << ',' << format_auc(row.auc_value) << ',' << row.seed
        << '\n';
  }
  if (out.is_open()) out.close();
  return files;
}

}  // namespace forgetbench
