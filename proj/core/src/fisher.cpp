#include "forgetbench/fisher.hpp"

#include "forgetbench/errors.hpp"
#include "forgetbench/penalty.hpp"
#include "forgetbench/rng.hpp"

namespace forgetbench {

namespace {

std::vector<std::size_t> draw_sample_indices(const Batch& data,
                                             std::size_t n_samples,
                                             std::uint64_t seed) {
  data.check_consistent();
  if (data.size() == 0) {
    throw ConfigError("fisher estimation needs a nonempty data sample");
  }
  if (n_samples == 0) {
    throw ConfigError("fisher estimation needs n_samples >= 1");
  }
  if (n_samples > data.size()) {
    throw ConfigError("fisher estimation: n_samples " +
                      std::to_string(n_samples) + " exceeds available data " +
                      std::to_string(data.size()));
  }
  Rng rng(seed);
  return rng.sample_without_replacement(data.size(), n_samples);
}

}  // namespace

FisherDiagonal estimate_fisher_sqgrad(const MlpModel& model, const Batch& data,
                                      std::size_t n_samples,
                                      std::uint64_t seed) {
  const auto indices = draw_sample_indices(data, n_samples, seed);

  FisherDiagonal fisher;
  fisher.values = ParamVector::zeros(model.params.layout);
  fisher.estimator = FisherEstimator::kSquaredGradient;
  fisher.sample_count = indices.size();

  const ZeroPenalty no_penalty;
  for (std::size_t idx : indices) {
    const std::size_t one[] = {idx};
    const GradResult g = grad(model, data.select(one), no_penalty);
    for (std::size_t i = 0; i < fisher.values.values.size(); ++i) {
      const double gi = g.gradient.values[i];
      fisher.values.values[i] += gi * gi;
    }
  }
  scale_in_place(fisher.values, 1.0 / static_cast<double>(indices.size()));
  return fisher;
}

std::vector<double> fd_hessian_diag(
    const std::function<std::vector<double>(const std::vector<double>&)>&
        gradient_fn,
    const std::vector<double>& theta, double step) {
  if (step <= 0.0) {
    throw ConfigError("fd_hessian_diag requires a positive step");
  }
  std::vector<double> diag(theta.size());
  std::vector<double> probe = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + step;
    const double g_plus = gradient_fn(probe)[i];
    probe[i] = theta[i] - step;
    const double g_minus = gradient_fn(probe)[i];
    probe[i] = theta[i];
    diag[i] = (g_plus - g_minus) / (2.0 * step);
  }
  if (!all_finite(diag)) {
    throw NumericalError("fd_hessian_diag produced non-finite entries");
  }
  return diag;
}

FisherDiagonal estimate_hessian_diag(const MlpModel& model, const Batch& data,
                                     std::size_t n_samples, std::uint64_t seed,
                                     double fd_step) {
  const auto indices = draw_sample_indices(data, n_samples, seed);
  const Batch sample = data.select(indices);

  MlpModel probe = model;
  const ZeroPenalty no_penalty;
  auto gradient_fn = [&](const std::vector<double>& theta) {
    probe.params.values = theta;
    return grad(probe, sample, no_penalty).gradient.values;
  };

  FisherDiagonal fisher;
  fisher.values.layout = model.params.layout;
  fisher.values.values =
      fd_hessian_diag(gradient_fn, model.params.values, fd_step);
  fisher.estimator = FisherEstimator::kHessianDiagonal;
  fisher.sample_count = indices.size();
  return fisher;
}

}  // namespace forgetbench
