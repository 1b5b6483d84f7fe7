#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "forgetbench/anchor.hpp"
#include "forgetbench/drift.hpp"
#include "forgetbench/evaluation.hpp"
#include "forgetbench/optimizer.hpp"
#include "forgetbench/strategy_spec.hpp"

namespace forgetbench {

/// Everything a full benchmark run needs. The month structure is fixed at
/// 5 base / 4 update / 3 future months.
struct ExperimentConfig {
  DriftConfig drift{};
  TrainConfig train{};
  std::vector<std::size_t> hidden_dims = {64, 48, 32, 32, 32};
  std::vector<StrategySpec> strategies;
  std::vector<double> lambda_sweep = {0.1, 1.0, 10.0, 100.0};
  std::vector<double> ewc_lambda_sweep;  // empty -> lambda_sweep
  std::vector<double> rehearsal_sweep = {0.25, 0.5};
  std::size_t n_seeds = 5;
  std::size_t buffer_cap = 1000;
  std::size_t fisher_samples = 2000;
  bool averaging_includes_base = true;
  ConsolidationMode ewc_consolidation = ConsolidationMode::kAccumulateSum;
  std::size_t threads = 0;  // 0 -> hardware concurrency
  std::string output_dir = "out";

  std::vector<std::size_t> layer_dims() const;
  const std::vector<double>& effective_ewc_sweep() const {
    return ewc_lambda_sweep.empty() ? lambda_sweep : ewc_lambda_sweep;
  }
  void validate() const;

  static ExperimentConfig defaults();
};

/// Load from the versioned JSON config format (see README). Unknown keys
/// are a ConfigError so typos do not silently fall back to defaults.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// The resolved config as canonical JSON text (stable key order).
std::string experiment_config_to_json(const ExperimentConfig& config);

/// Training-cost accounting for one round. month_index is -1 for pooled
/// rounds (base and scratch training).
struct RoundCost {
  int month_index = 0;
  std::vector<std::size_t> epoch_sizes;  // examples per epoch
  std::vector<double> epoch_losses;      // mean training loss per epoch
  double wall_seconds = 0.0;

  std::size_t trained_examples() const;
};

/// Everything one (strategy, seed) protocol run produces.
struct RunRecord {
  StrategySpec strategy;
  std::uint64_t seed = 0;
  std::vector<std::string> snapshot_ids;
  std::vector<RoundCost> round_costs;   // base round first, then updates
  AucMatrix test_matrix;                // snapshots x months, test split
  std::vector<EvalReport> reports;      // one per snapshot
  std::vector<double> final_val_auc;    // final snapshot, months 5-8 val
  double update_val_mean = 0.0;         // hyperparameter selection metric
  double param_drift = 0.0;             // ||theta_final - theta_base||_2
  std::size_t ensemble_members = 0;     // ModelAveraging only

  /// Final trained model (the last sequential snapshot, the scratch model,
  /// or the last ensemble member). Not part of the JSON record; use the
  /// model snapshot format for persistence.
  MlpModel final_model;

  const EvalReport& final_report() const { return reports.back(); }
  std::size_t total_trained_examples() const;
};

}  // namespace forgetbench
