#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forgetbench/matrix.hpp"
#include "forgetbench/param_vector.hpp"
#include "forgetbench/penalty.hpp"

namespace forgetbench {

/// Probabilities are clamped into [kProbClamp, 1 - kProbClamp] before any
/// log. Oracle tests rely on this exact value.
inline constexpr double kProbClamp = 1e-7;

/// Fully connected ReLU network with a single sigmoid output. All math is
/// 64-bit and single-threaded deterministic.
struct MlpModel {
  std::vector<std::size_t> layer_dims;  // input, hidden..., 1
  ParamVector params;

  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t layer_count() const { return layer_dims.size() - 1; }
};

/// Seeded He-uniform weights, zero biases. Deterministic per
/// (layer_dims, seed). Throws ConfigError on an invalid architecture
/// (fewer than two dims, zero dims, or output dim != 1).
MlpModel init_model(const std::vector<std::size_t>& layer_dims,
                    std::uint64_t seed);

double sigmoid(double z);

/// Output probability per feature row. Pure in (params, features).
/// Throws ShapeError if the feature width does not match the model.
std::vector<double> forward(const MlpModel& model, const Matrix& features);

/// Mean binary cross entropy with the clamp above.
double bce_loss(std::span<const double> probs, std::span<const int> labels);

struct GradResult {
  double loss = 0.0;        // mean BCE plus penalty loss
  ParamVector gradient;     // backprop gradient plus penalty gradient
};

/// Analytic gradient of mean BCE over the batch, plus the penalty term.
/// Throws NumericalError naming the layer if an intermediate goes non-finite.
GradResult grad(const MlpModel& model, const Batch& batch,
                const Penalty& penalty);

}  // namespace forgetbench
