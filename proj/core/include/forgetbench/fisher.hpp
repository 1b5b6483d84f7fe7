#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "forgetbench/anchor.hpp"
#include "forgetbench/matrix.hpp"
#include "forgetbench/mlp.hpp"

namespace forgetbench {

/// Squared-gradient Fisher diagonal: the mean over n_samples single-example
/// gradients of (dL/dtheta_i)^2. Entries are nonnegative by construction.
/// Samples are drawn uniformly without replacement; deterministic per seed.
FisherDiagonal estimate_fisher_sqgrad(const MlpModel& model, const Batch& data,
                                      std::size_t n_samples,
                                      std::uint64_t seed);

/// Central-difference diagonal curvature of an arbitrary gradient field:
/// H_ii ~ (g_i(theta + h e_i) - g_i(theta - h e_i)) / (2h).
/// Exposed so diagnostics and tests can probe synthetic objectives.
std::vector<double> fd_hessian_diag(
    const std::function<std::vector<double>(const std::vector<double>&)>&
        gradient_fn,
    const std::vector<double>& theta, double step);

/// Hessian-diagonal estimate of the mean BCE over a uniformly drawn
/// n_samples subset, via fd_hessian_diag on the analytic gradient. Entries
/// may be negative; check negative_fraction() before trusting it as an
/// importance weight. Costs two full-batch gradients per parameter, so keep
/// it to diagnostic-sized models.
FisherDiagonal estimate_hessian_diag(const MlpModel& model, const Batch& data,
                                     std::size_t n_samples, std::uint64_t seed,
                                     double fd_step);

}  // namespace forgetbench
