#pragma once

#include <cstddef>
#include <filesystem>

#include "forgetbench/experiment.hpp"

namespace forgetbench {

/// One swept hyperparameter setting of a strategy, run over all seeds.
struct VariantResult {
  StrategySpec spec;
  std::vector<RunRecord> runs;      // seed order; holes on failure
  std::vector<std::string> errors;  // per seed, empty on success
  double mean_update_val = 0.0;     // selection metric over seeds

  bool complete() const;
};

struct StrategyComparison {
  StrategySpec entry;                   // as configured
  std::vector<VariantResult> variants;  // sweep order
  std::ptrdiff_t chosen = -1;           // -1 when every variant failed
  EvalReport median_report;  // elementwise medians of chosen final reports
  std::string failure_message;

  bool failed() const { return chosen < 0; }
  const VariantResult& chosen_variant() const {
    return variants[static_cast<std::size_t>(chosen)];
  }
};

struct ComparisonReport {
  std::vector<StrategyComparison> strategies;  // config order
};

/// The sweep a configured strategy expands to: lambda values for L2, EWC
/// and the rehearsal+EWC combination, rehearsal proportions for rehearsal
/// (keeping the entry's epoch mode). Parameterless kinds expand to
/// themselves.
std::vector<StrategySpec> expand_sweep(const ExperimentConfig& config,
                                       const StrategySpec& entry);

/// Seeds used by run_comparison: train.seed + i for i in [0, n_seeds).
std::vector<std::uint64_t> comparison_seeds(const ExperimentConfig& config);

/// Runs every (strategy, variant, seed) protocol — independent runs may
/// execute on several threads — then, per strategy, selects the variant
/// with the highest mean validation AUC over the update months and reports
/// its per-seed test results plus seed medians. A strategy whose variants
/// all fail is reported as failed, never dropped. Assembly order is
/// canonical, so outputs do not depend on scheduling.
ComparisonReport run_comparison(const ExperimentConfig& config);

double median(std::vector<double> values);

/// Elementwise medians (per month and per group average) over final
/// snapshot reports.
EvalReport median_of_reports(const std::vector<EvalReport>& reports);

/// Writes comparison_runs.csv (one row per strategy and seed, chosen
/// variant) and comparison_summary.csv (one row per strategy, ordered by
/// median overall AUC). Returns the file names written.
std::vector<std::string> write_comparison_csvs(
    const ComparisonReport& report, const std::filesystem::path& out_dir);

/// Per-strategy CSV series of (snapshot, month, auc) rows, sorted by
/// (strategy, snapshot, month, seed); the scratch baseline lands in its own
/// file like every other strategy. Returns the file names written.
std::vector<std::string> export_plot_data(const std::vector<RunRecord>& records,
                                          const std::filesystem::path& dir);

}  // namespace forgetbench
