#include <filesystem>

#include <doctest.h>

#include "forgetbench/errors.hpp"
#include "forgetbench/model_io.hpp"
#include "test_util.hpp"

using namespace forgetbench;

namespace {
const auto kTmp = std::filesystem::temp_directory_path();
}

TEST_CASE("model snapshot round-trips bit-exactly") {
  const MlpModel model = fbtest::random_model({5, 7, 3, 1}, 17);
  const auto path = kTmp / "fb_model_roundtrip.model";
  save_model(path, model, "adam");
  const auto [loaded, optimizer] = load_model(path);
  std::filesystem::remove(path);

  CHECK(optimizer == "adam");
  CHECK(loaded.layer_dims == model.layer_dims);
  CHECK(loaded.params.values == model.params.values);
  CHECK(loaded.params.layout == model.params.layout);
}

TEST_CASE("model snapshot bytes are stable across saves") {
  const MlpModel model = fbtest::random_model({3, 4, 1}, 3);
  const auto a = kTmp / "fb_model_a.model";
  const auto b = kTmp / "fb_model_b.model";
  save_model(a, model, "sgd");
  save_model(b, model, "sgd");
  std::ifstream fa(a), fb(b);
  const std::string ta((std::istreambuf_iterator<char>(fa)), {});
  const std::string tb((std::istreambuf_iterator<char>(fb)), {});
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  CHECK(ta == tb);
  CHECK(ta.rfind("forgetbench-model v1\n", 0) == 0);
}

TEST_CASE("anchor snapshot round-trips with and without fisher") {
  const MlpModel model = fbtest::random_model({4, 5, 1}, 6);
  Anchor anchor;
  anchor.theta_p = model.params;
  anchor.round_id = 3;

  const auto path = kTmp / "fb_anchor_roundtrip.anchor";
  save_anchor(path, anchor, model.layer_dims);
  Anchor bare = load_anchor(path);
  CHECK(bare.round_id == 3);
  CHECK(bare.theta_p.values == anchor.theta_p.values);
  CHECK_FALSE(bare.fisher.has_value());

  FisherDiagonal fisher;
  fisher.values = ParamVector::zeros(model.params.layout);
  Rng rng(8);
  for (double& f : fisher.values.values) f = rng.uniform01();
  fisher.sample_count = 123;
  anchor.fisher = fisher;
  save_anchor(path, anchor, model.layer_dims);
  Anchor full = load_anchor(path);
  std::filesystem::remove(path);

  REQUIRE(full.fisher.has_value());
  CHECK(full.fisher->values.values == fisher.values.values);
  CHECK(full.fisher->sample_count == 123);
  CHECK(full.fisher->estimator == FisherEstimator::kSquaredGradient);
}

TEST_CASE("loaders reject foreign files") {
  const auto path = kTmp / "fb_not_a_model.txt";
  {
    std::ofstream out(path);
    out << "hello\n";
  }
  CHECK_THROWS_AS(load_model(path), IoError);
  CHECK_THROWS_AS(load_anchor(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_model(kTmp / "fb_missing.model"), IoError);
}
