#include "forgetbench/anchor.hpp"

#include "forgetbench/errors.hpp"

namespace forgetbench {

std::string to_string(FisherEstimator estimator) {
  return estimator == FisherEstimator::kSquaredGradient ? "sqgrad"
                                                        : "hessian_diag";
}

double FisherDiagonal::negative_fraction() const {
  if (values.values.empty()) return 0.0;
  std::size_t negatives = 0;
  for (double v : values.values) {
    if (v < 0.0) ++negatives;
  }
  return static_cast<double>(negatives) /
         static_cast<double>(values.values.size());
}

std::string to_string(ConsolidationMode mode) {
  return mode == ConsolidationMode::kReplace ? "replace" : "accumulate_sum";
}

ConsolidationMode parse_consolidation_mode(const std::string& name) {
  if (name == "replace") return ConsolidationMode::kReplace;
  if (name == "accumulate_sum") return ConsolidationMode::kAccumulateSum;
  throw ConfigError("unknown consolidation mode '" + name + "'");
}

Anchor consolidate_anchor(const std::optional<Anchor>& previous,
                          const MlpModel& trained_model,
                          const FisherDiagonal& fisher,
                          ConsolidationMode mode) {
  require_compatible(fisher.values, trained_model.params,
                     "consolidate_anchor: fisher vs model");
  Anchor anchor;
  anchor.theta_p = trained_model.params;
  anchor.fisher = fisher;
  anchor.round_id = previous.has_value() ? previous->round_id + 1 : 0;

  if (mode == ConsolidationMode::kAccumulateSum && previous.has_value() &&
      previous->fisher.has_value()) {
    require_compatible(previous->fisher->values, fisher.values,
                       "consolidate_anchor: previous fisher");
    add_in_place(anchor.fisher->values, previous->fisher->values);
    anchor.fisher->sample_count += previous->fisher->sample_count;
  }
  return anchor;
}

}  // namespace forgetbench
