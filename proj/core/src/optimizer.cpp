#include "forgetbench/optimizer.hpp"

#include <cmath>

#include "forgetbench/errors.hpp"

namespace forgetbench {

std::string to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kSgd ? "sgd" : "adam";
}

OptimizerKind parse_optimizer_kind(const std::string& name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw ConfigError("unknown optimizer '" + name + "'");
}

void TrainConfig::validate() const {
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
  const auto& a = optimizer.adam;
  if (optimizer.kind == OptimizerKind::kAdam &&
      (a.beta1 < 0.0 || a.beta1 >= 1.0 || a.beta2 < 0.0 || a.beta2 >= 1.0 ||
       a.epsilon <= 0.0)) {
    throw ConfigError("adam parameters out of range");
  }
}

void optimizer_step(ParamVector& params, const ParamVector& gradient,
                    OptimizerState& state, const TrainConfig& config) {
  require_compatible(params, gradient, "optimizer_step");
  if (!all_finite(gradient.values)) {
    throw NumericalError("non-finite gradient in optimizer step");
  }

  const std::size_t n = params.values.size();
  const double lr = config.learning_rate;

  if (config.optimizer.kind == OptimizerKind::kSgd) {
    state.step += 1;
    for (std::size_t i = 0; i < n; ++i) {
      params.values[i] -= lr * gradient.values[i];
    }
    return;
  }

  const AdamParams& a = config.optimizer.adam;
  if (state.first_moment.size() != n) {
    state.first_moment.assign(n, 0.0);
    state.second_moment.assign(n, 0.0);
  }
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(a.beta1, t);
  const double bias2 = 1.0 - std::pow(a.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gradient.values[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = a.beta1 * m + (1.0 - a.beta1) * g;
    v = a.beta2 * v + (1.0 - a.beta2) * g * g;
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    params.values[i] -= lr * m_hat / (std::sqrt(v_hat) + a.epsilon);
  }
}

}  // namespace forgetbench
