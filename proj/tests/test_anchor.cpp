#include <doctest.h>

#include "forgetbench/anchor.hpp"
#include "forgetbench/errors.hpp"
#include "test_util.hpp"

using namespace forgetbench;

namespace {

FisherDiagonal fisher_like(const MlpModel& model, double a, double b) {
  FisherDiagonal fisher;
  fisher.values = ParamVector::zeros(model.params.layout);
  for (std::size_t i = 0; i < fisher.values.values.size(); ++i) {
    fisher.values.values[i] = i % 2 == 0 ? a : b;
  }
  fisher.sample_count = 10;
  return fisher;
}

}  // namespace

TEST_CASE("consolidate_anchor without a previous anchor starts round 0") {
  const MlpModel model = fbtest::random_model({2, 3, 1}, 4);
  const FisherDiagonal fisher = fisher_like(model, 1.0, 2.0);
  const Anchor anchor = consolidate_anchor(std::nullopt, model, fisher,
                                           ConsolidationMode::kAccumulateSum);
  CHECK(anchor.round_id == 0);
  CHECK(anchor.theta_p.values == model.params.values);
  REQUIRE(anchor.fisher.has_value());
  CHECK(anchor.fisher->values.values == fisher.values.values);
}

TEST_CASE("accumulate-sum adds fisher diagonals elementwise") {
  const MlpModel model = fbtest::random_model({2, 3, 1}, 4);
  const Anchor first = consolidate_anchor(
      std::nullopt, model, fisher_like(model, 1.0, 2.0),
      ConsolidationMode::kAccumulateSum);
  const Anchor second = consolidate_anchor(
      first, model, fisher_like(model, 3.0, 4.0),
      ConsolidationMode::kAccumulateSum);
  CHECK(second.round_id == 1);
  for (std::size_t i = 0; i < second.fisher->values.values.size(); ++i) {
    CHECK(second.fisher->values.values[i] == (i % 2 == 0 ? 4.0 : 6.0));
  }
  CHECK(second.fisher->sample_count == 20);
}

TEST_CASE("replace mode ignores the previous fisher entirely") {
  const MlpModel model = fbtest::random_model({2, 3, 1}, 4);
  const Anchor first = consolidate_anchor(
      std::nullopt, model, fisher_like(model, 1.0, 2.0),
      ConsolidationMode::kReplace);
  const FisherDiagonal fresh = fisher_like(model, 9.0, 9.0);
  const Anchor second =
      consolidate_anchor(first, model, fresh, ConsolidationMode::kReplace);
  CHECK(second.round_id == 1);
  CHECK(second.fisher->values.values == fresh.values.values);
}

TEST_CASE("consolidate_anchor checks layouts") {
  const MlpModel model = fbtest::random_model({2, 3, 1}, 4);
  const MlpModel other = fbtest::random_model({3, 3, 1}, 4);
  CHECK_THROWS_AS(
      consolidate_anchor(std::nullopt, other, fisher_like(model, 1.0, 1.0),
                         ConsolidationMode::kReplace),
      ShapeError);
}
