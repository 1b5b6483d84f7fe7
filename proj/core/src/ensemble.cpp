#include "forgetbench/ensemble.hpp"

#include "forgetbench/errors.hpp"

namespace forgetbench {

std::vector<double> ensemble_average(const std::vector<MlpModel>& models,
                                     const Matrix& features) {
  if (models.empty()) {
    throw ConfigError("ensemble_average requires at least one model");
  }
  for (const MlpModel& m : models) {
    if (m.input_dim() != models.front().input_dim()) {
      throw ShapeError("ensemble members disagree on input dim");
    }
  }
  std::vector<double> mean(features.rows, 0.0);
  for (const MlpModel& m : models) {
    const std::vector<double> probs = forward(m, features);
    for (std::size_t i = 0; i < probs.size(); ++i) mean[i] += probs[i];
  }
  const double inv = 1.0 / static_cast<double>(models.size());
  for (double& v : mean) v *= inv;
  return mean;
}

}  // namespace forgetbench
