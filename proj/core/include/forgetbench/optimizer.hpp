#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forgetbench/param_vector.hpp"

namespace forgetbench {

enum class OptimizerKind { kSgd, kAdam };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(const std::string& name);

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::kAdam;
  AdamParams adam{};

  static OptimizerSpec sgd() { return {OptimizerKind::kSgd, {}}; }
  static OptimizerSpec adam_default() { return {OptimizerKind::kAdam, {}}; }
};

struct TrainConfig {
  std::size_t epochs = 10;  // one training or fine-tuning session
  std::size_t batch_size = 64;
  double learning_rate = 1e-3;
  OptimizerSpec optimizer{};
  std::uint64_t seed = 1;

  void validate() const;  // ConfigError on non-positive fields
};

/// Optimizer state threaded explicitly through steps. Moment buffers are
/// sized on first use.
struct OptimizerState {
  std::uint64_t step = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
};

/// One in-place update. SGD: theta -= lr * g. Adam: bias-corrected
/// first/second moment update. Throws NumericalError on a non-finite
/// gradient and ShapeError on layout mismatch.
void optimizer_step(ParamVector& params, const ParamVector& gradient,
                    OptimizerState& state, const TrainConfig& config);

}  // namespace forgetbench
