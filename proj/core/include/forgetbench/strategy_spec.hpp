#pragma once

#include <cstdint>
#include <string>

#include "forgetbench/rehearsal.hpp"

namespace forgetbench {

enum class StrategyKind {
  kNaive,
  kL2,
  kEwc,
  kRehearsal,
  kRehearsalPlusEwc,
  kModelAveraging,
  kScratch,
};

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(const std::string& name);

/// One update strategy with its hyperparameters. Only the fields a kind
/// needs are meaningful; use the factories and validate().
struct StrategySpec {
  StrategyKind kind = StrategyKind::kNaive;
  double lambda = 0.0;               // L2 / EWC / RehearsalPlusEwc
  std::size_t fisher_samples = 2000;  // EWC / RehearsalPlusEwc
  double rehearsal_p = 0.0;          // Rehearsal / RehearsalPlusEwc
  EpochMode epoch_mode = EpochMode::kFixed;

  static StrategySpec naive();
  static StrategySpec scratch();
  static StrategySpec model_averaging();
  static StrategySpec l2(double lambda);
  static StrategySpec ewc(double lambda, std::size_t fisher_samples = 2000);
  static StrategySpec rehearsal(double p, EpochMode mode);
  static StrategySpec rehearsal_plus_ewc(double p, EpochMode mode,
                                         double lambda,
                                         std::size_t fisher_samples = 2000);

  void validate() const;  // ConfigError on out-of-range parameters

  bool uses_lambda() const;
  bool uses_rehearsal() const;
  bool sequential() const;  // base + four update rounds

  /// Human-readable label, e.g. "l2(lambda=10)".
  std::string label() const;
  /// Filename-safe variant of label(), e.g. "l2_lambda10".
  std::string slug() const;
};

}  // namespace forgetbench
