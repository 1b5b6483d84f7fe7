#include <algorithm>

#include <doctest.h>

#include "forgetbench/ensemble.hpp"
#include "forgetbench/errors.hpp"
#include "test_util.hpp"

using namespace forgetbench;

TEST_CASE("single-model ensemble equals forward") {
  const MlpModel m = fbtest::random_model({3, 5, 1}, 6);
  const Batch batch = fbtest::blob_batch(20, 3, 7);
  CHECK(ensemble_average({m}, batch.features) == forward(m, batch.features));
}

TEST_CASE("two constant models average their outputs") {
  // Bias-only models give input-independent probabilities.
  MlpModel a = init_model({2, 1}, 1);
  MlpModel b = init_model({2, 1}, 1);
  // sigmoid(b) = 0.2 and 0.8 at b = +-ln(4)
  a.params.values = {0.0, 0.0, -std::log(4.0)};
  b.params.values = {0.0, 0.0, std::log(4.0)};
  const Batch batch = fbtest::blob_batch(4, 2, 3);
  for (double p : ensemble_average({a, b}, batch.features)) {
    CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("k copies of a model reproduce its output") {
  const MlpModel m = fbtest::random_model({4, 6, 1}, 9);
  const Batch batch = fbtest::blob_batch(10, 4, 5);
  const auto solo = forward(m, batch.features);
  const auto trio = ensemble_average({m, m, m}, batch.features);
  for (std::size_t i = 0; i < solo.size(); ++i) {
    CHECK(trio[i] == doctest::Approx(solo[i]).epsilon(1e-15));
  }
}

TEST_CASE("ensemble output lies within member min/max per row") {
  std::vector<MlpModel> members;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    members.push_back(fbtest::random_model({3, 4, 1}, s));
  }
  const Batch batch = fbtest::blob_batch(30, 3, 40);
  const auto mean = ensemble_average(members, batch.features);
  std::vector<std::vector<double>> each;
  for (const MlpModel& m : members) each.push_back(forward(m, batch.features));
  for (std::size_t r = 0; r < mean.size(); ++r) {
    double lo = 1.0, hi = 0.0;
    for (const auto& probs : each) {
      lo = std::min(lo, probs[r]);
      hi = std::max(hi, probs[r]);
    }
    CHECK(mean[r] >= lo - 1e-15);
    CHECK(mean[r] <= hi + 1e-15);
  }
}

TEST_CASE("ensemble_average error paths") {
  CHECK_THROWS_AS(ensemble_average({}, Matrix(1, 2)), ConfigError);
  const MlpModel a = init_model({2, 1}, 1);
  const MlpModel b = init_model({3, 1}, 1);
  CHECK_THROWS_AS(ensemble_average({a, b}, Matrix(1, 2)), ShapeError);
}
