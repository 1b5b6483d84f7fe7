#pragma once

#include <vector>

#include "forgetbench/mlp.hpp"

namespace forgetbench {

/// Unweighted arithmetic mean of per-model output probabilities.
/// Throws ConfigError on an empty model list and ShapeError if the models
/// disagree on input dim.
std::vector<double> ensemble_average(const std::vector<MlpModel>& models,
                                     const Matrix& features);

}  // namespace forgetbench
