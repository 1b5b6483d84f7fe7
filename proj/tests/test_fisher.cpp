#include <cmath>

#include <doctest.h>

#include "forgetbench/errors.hpp"
#include "forgetbench/fisher.hpp"
#include "test_util.hpp"

using namespace forgetbench;

namespace {

/// One logistic unit p = sigmoid(w x + b) with b = 0.
MlpModel logistic_unit(double w) {
  MlpModel m = init_model({1, 1}, 1);
  m.params.values = {w, 0.0};
  return m;
}

Batch single_example(double x, int y) {
  Batch batch;
  batch.features = Matrix(1, 1);
  batch.features.at(0, 0) = x;
  batch.labels = {y};
  return batch;
}

}  // namespace

TEST_CASE("sqgrad fisher entries are nonnegative for random inputs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MlpModel model = fbtest::random_model({5, 6, 1}, seed);
    const Batch data = fbtest::blob_batch(40, 5, seed * 13);
    const FisherDiagonal fisher = estimate_fisher_sqgrad(model, data, 25, seed);
    for (double f : fisher.values.values) CHECK(f >= 0.0);
    CHECK(fisher.estimator == FisherEstimator::kSquaredGradient);
    CHECK(fisher.sample_count == 25);
    CHECK(fisher.negative_fraction() == 0.0);
  }
}

TEST_CASE("sqgrad fisher vanishes when gradients vanish") {
  // Saturated unit classifying its sample perfectly: per-example gradients
  // are numerically zero, so F is numerically zero.
  const MlpModel m = logistic_unit(40.0);
  Batch data = single_example(1.0, 1);
  data.append(single_example(-2.0, 0));
  const FisherDiagonal fisher = estimate_fisher_sqgrad(m, data, 2, 3);
  for (double f : fisher.values.values) CHECK(f < 1e-20);
}

TEST_CASE("sqgrad fisher matches the logistic closed form") {
  // Single example (x, y): F_w = ((p - y) x)^2, F_b = (p - y)^2.
  const double w = 0.8, x = 1.7;
  const int y = 1;
  const MlpModel m = logistic_unit(w);
  const double p = sigmoid(w * x);
  const FisherDiagonal fisher =
      estimate_fisher_sqgrad(m, single_example(x, y), 1, 9);
  const double expected_w = ((p - y) * x) * ((p - y) * x);
  const double expected_b = (p - y) * (p - y);
  CHECK(fisher.values.values[0] == doctest::Approx(expected_w).epsilon(1e-10));
  CHECK(fisher.values.values[1] == doctest::Approx(expected_b).epsilon(1e-10));
}

TEST_CASE("sqgrad fisher is deterministic per seed and validates input") {
  const MlpModel model = fbtest::random_model({4, 5, 1}, 2);
  const Batch data = fbtest::blob_batch(30, 4, 8);
  const FisherDiagonal a = estimate_fisher_sqgrad(model, data, 10, 42);
  const FisherDiagonal b = estimate_fisher_sqgrad(model, data, 10, 42);
  CHECK(a.values.values == b.values.values);

  CHECK_THROWS_AS(estimate_fisher_sqgrad(model, data, 31, 1), ConfigError);
  CHECK_THROWS_AS(estimate_fisher_sqgrad(model, Batch{}, 1, 1), ConfigError);
}

TEST_CASE("fd_hessian_diag recovers constant quadratic curvature exactly") {
  // gradient of lambda * sum theta^2 is 2 lambda theta; curvature 2 lambda.
  const double lambda = 3.25;
  auto gradient_fn = [lambda](const std::vector<double>& theta) {
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) g[i] = 2.0 * lambda * theta[i];
    return g;
  };
  const std::vector<double> theta = {0.4, -1.2, 7.0};
  const std::vector<double> diag = fd_hessian_diag(gradient_fn, theta, 1e-4);
  for (double h : diag) {
    CHECK(h == doctest::Approx(2.0 * lambda).epsilon(1e-6));
  }
}

TEST_CASE("hessian diagonal matches the logistic closed form") {
  // Single example: d2L/dw2 = x^2 p (1 - p), d2L/db2 = p (1 - p).
  const double w = -0.6, x = 1.3;
  const MlpModel m = logistic_unit(w);
  const double p = sigmoid(w * x);
  const FisherDiagonal fisher =
      estimate_hessian_diag(m, single_example(x, 0), 1, 4, 1e-5);
  CHECK(fisher.estimator == FisherEstimator::kHessianDiagonal);
  CHECK(fisher.values.values[0] ==
        doctest::Approx(x * x * p * (1.0 - p)).epsilon(1e-6));
  CHECK(fisher.values.values[1] ==
        doctest::Approx(p * (1.0 - p)).epsilon(1e-6));
}

TEST_CASE("hessian diagonal reports a negative fraction in [0, 1]") {
  const MlpModel model = fbtest::random_model({4, 6, 1}, 11);
  const Batch data = fbtest::blob_batch(12, 4, 21);
  const FisherDiagonal fisher = estimate_hessian_diag(model, data, 8, 5, 1e-5);
  const double nf = fisher.negative_fraction();
  CHECK(nf >= 0.0);
  CHECK(nf <= 1.0);
}

TEST_CASE("fd_hessian_diag rejects a non-positive step") {
  auto gradient_fn = [](const std::vector<double>& theta) { return theta; };
  CHECK_THROWS_AS(fd_hessian_diag(gradient_fn, {1.0}, 0.0), ConfigError);
}
