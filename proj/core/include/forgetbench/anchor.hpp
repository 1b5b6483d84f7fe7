#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "forgetbench/mlp.hpp"
#include "forgetbench/param_vector.hpp"

namespace forgetbench {

enum class FisherEstimator { kSquaredGradient, kHessianDiagonal };

std::string to_string(FisherEstimator estimator);

/// Per-parameter importance estimate in ParamVector layout. The squared
/// gradient form is nonnegative by construction; the Hessian-diagonal form
/// may go negative and is kept as a diagnostic only.
struct FisherDiagonal {
  ParamVector values;
  FisherEstimator estimator = FisherEstimator::kSquaredGradient;
  std::size_t sample_count = 0;

  /// Fraction of entries strictly below zero.
  double negative_fraction() const;
};

/// Snapshot taken after a training round: the reference point for anchor
/// penalties. `fisher`, when present, shares theta_p's layout.
struct Anchor {
  ParamVector theta_p;
  std::optional<FisherDiagonal> fisher;
  int round_id = 0;
};

enum class ConsolidationMode { kReplace, kAccumulateSum };

std::string to_string(ConsolidationMode mode);
ConsolidationMode parse_consolidation_mode(const std::string& name);

/// Folds a freshly estimated Fisher diagonal into the anchor chain.
/// Replace keeps only the new estimate; AccumulateSum adds it elementwise to
/// the previous one. theta_p always becomes the trained model's parameters,
/// and round_id increments from the previous anchor (0 when there is none).
Anchor consolidate_anchor(const std::optional<Anchor>& previous,
                          const MlpModel& trained_model,
                          const FisherDiagonal& fisher,
                          ConsolidationMode mode);

}  // namespace forgetbench
