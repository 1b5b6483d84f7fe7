#include <cmath>
#include <limits>

#include <doctest.h>

#include "forgetbench/errors.hpp"
#include "forgetbench/optimizer.hpp"
#include "forgetbench/param_vector.hpp"

using namespace forgetbench;

namespace {

ParamVector scalar_param(double value) {
  ParamVector v;
  v.layout = ParamLayout({{0, TensorRole::kBias, {1}, 0}});
  v.values = {value};
  return v;
}

}  // namespace

TEST_CASE("sgd step is theta minus lr times gradient") {
  ParamVector theta = scalar_param(1.0);
  const ParamVector g = scalar_param(2.0);
  OptimizerState state;
  TrainConfig config;
  config.optimizer = OptimizerSpec::sgd();
  config.learning_rate = 0.1;
  optimizer_step(theta, g, state, config);
  CHECK(theta.values[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(state.step == 1);
}

TEST_CASE("sgd with zero gradient leaves parameters unchanged") {
  ParamVector theta = scalar_param(0.37);
  const ParamVector g = scalar_param(0.0);
  OptimizerState state;
  TrainConfig config;
  config.optimizer = OptimizerSpec::sgd();
  optimizer_step(theta, g, state, config);
  CHECK(theta.values[0] == 0.37);
}

TEST_CASE("adam first step equals the bias-corrected hand value") {
  // With defaults and g = 1: m_hat = v_hat = 1, so the step is
  // lr * 1 / (1 + eps).
  ParamVector theta = scalar_param(0.0);
  const ParamVector g = scalar_param(1.0);
  OptimizerState state;
  TrainConfig config;  // Adam(0.9, 0.999, 1e-8), lr 1e-3
  optimizer_step(theta, g, state, config);
  const double expected = -1e-3 / (1.0 + 1e-8);
  CHECK(theta.values[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("adam state is threaded across steps") {
  ParamVector theta = scalar_param(0.0);
  const ParamVector g = scalar_param(1.0);
  OptimizerState state;
  TrainConfig config;
  optimizer_step(theta, g, state, config);
  optimizer_step(theta, g, state, config);
  CHECK(state.step == 2);
  // constant gradient: every bias-corrected step is the same size
  CHECK(theta.values[0] ==
        doctest::Approx(2.0 * (-1e-3 / (1.0 + 1e-8))).epsilon(1e-9));
}

TEST_CASE("optimizer rejects non-finite gradients and layout mismatches") {
  ParamVector theta = scalar_param(0.0);
  ParamVector g = scalar_param(std::numeric_limits<double>::quiet_NaN());
  OptimizerState state;
  TrainConfig config;
  CHECK_THROWS_AS(optimizer_step(theta, g, state, config), NumericalError);

  ParamVector wide;
  wide.layout = ParamLayout({{0, TensorRole::kBias, {2}, 0}});
  wide.values = {0.0, 0.0};
  CHECK_THROWS_AS(optimizer_step(theta, wide, state, config), ShapeError);
}

TEST_CASE("train config validation") {
  TrainConfig config;
  config.batch_size = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = TrainConfig{};
  config.learning_rate = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = TrainConfig{};
  config.optimizer.adam.beta1 = 1.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}
