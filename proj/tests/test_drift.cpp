#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include <doctest.h>

#include "forgetbench/dataset_io.hpp"
#include "forgetbench/drift.hpp"
#include "forgetbench/errors.hpp"

using namespace forgetbench;

namespace {

DriftConfig small_config() {
  DriftConfig config;
  config.n_months = 12;
  config.dim = 10;
  config.n_train = 200;
  config.n_val = 60;
  config.n_test = 60;
  config.seed = 77;
  return config;
}

double angle_degrees(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::acos(std::clamp(dot, -1.0, 1.0)) * 180.0 / 3.141592653589793;
}

}  // namespace

TEST_CASE("zero drift keeps the concept fixed") {
  DriftConfig config = small_config();
  config.drift_sigma = 0.0;
  const auto months = generate_stream(config);
  for (const MonthTask& month : months) {
    CHECK(month.concept_dir == months.front().concept_dir);
  }
}

TEST_CASE("generation is bit-identical per config") {
  const DriftConfig config = small_config();
  const auto a = generate_stream(config);
  const auto b = generate_stream(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].train.features.data == b[t].train.features.data);
    CHECK(a[t].train.labels == b[t].train.labels);
    CHECK(a[t].concept_dir == b[t].concept_dir);
  }
  DriftConfig other = config;
  other.seed += 1;
  CHECK(generate_stream(other)[0].train.features.data !=
        a[0].train.features.data);
}

TEST_CASE("concepts are unit vectors") {
  const auto months = generate_stream(small_config());
  for (const MonthTask& month : months) {
    double norm = 0.0;
    for (double v : month.concept_dir) norm += v * v;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("label prevalence stays within [0.35, 0.65] at default scale") {
  DriftConfig config;  // full defaults: 12 months x 4000/500/500, dim 20
  const auto months = generate_stream(config);
  for (const MonthTask& month : months) {
    for (const Batch* split : {&month.train, &month.val, &month.test}) {
      const double positives =
          std::accumulate(split->labels.begin(), split->labels.end(), 0.0);
      const double prevalence = positives / static_cast<double>(split->size());
      CHECK(prevalence >= 0.35);
      CHECK(prevalence <= 0.65);
    }
  }
}

TEST_CASE("mean concept angle grows with the month index") {
  // Spearman correlation between t and the mean angle to w_0 over 20
  // stream seeds must be positive for a drifting walk.
  std::vector<double> mean_angle(12, 0.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    DriftConfig config = small_config();
    config.n_train = 2;  // concept path is what matters here
    config.n_val = 1;
    config.n_test = 1;
    config.seed = seed;
    const auto months = generate_stream(config);
    for (std::size_t t = 0; t < months.size(); ++t) {
      mean_angle[t] +=
          angle_degrees(months[0].concept_dir, months[t].concept_dir);
    }
  }
  // ranks of mean_angle
  std::vector<std::size_t> order(12);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mean_angle[a] < mean_angle[b];
  });
  std::vector<double> rank(12);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[order[pos]] = static_cast<double>(pos);
  }
  double d2 = 0.0;
  for (std::size_t t = 0; t < 12; ++t) {
    const double d = rank[t] - static_cast<double>(t);
    d2 += d * d;
  }
  const double spearman = 1.0 - 6.0 * d2 / (12.0 * (144.0 - 1.0));
  CHECK(spearman > 0.0);
}

TEST_CASE("splits are disjoint draws with the configured sizes") {
  const DriftConfig config = small_config();
  const auto months = generate_stream(config);
  for (const MonthTask& month : months) {
    CHECK(month.train.size() == config.n_train);
    CHECK(month.val.size() == config.n_val);
    CHECK(month.test.size() == config.n_test);
    // continuous features collide with probability zero; identical rows
    // across splits would indicate shared examples
    CHECK(month.train.features.row(0)[0] != month.val.features.row(0)[0]);
    CHECK(month.val.features.row(0)[0] != month.test.features.row(0)[0]);
  }
}

TEST_CASE("concat_months pools split data in order") {
  const auto months = generate_stream(small_config());
  const Batch one = concat_months({months.data(), 1}, Split::kTrain);
  CHECK(one.features.data == months[0].train.features.data);

  const Batch five = concat_months({months.data(), 5}, Split::kTrain);
  CHECK(five.size() == 5 * 200);
  // identity preserved: month 3's first row sits at offset 3 * 200
  CHECK(five.features.row(600)[0] == months[3].train.features.row(0)[0]);

  CHECK_THROWS_AS(concat_months({months.data(), 0}, Split::kTrain),
                  ConfigError);
}

TEST_CASE("config validation rejects bad fields") {
  DriftConfig config = small_config();
  config.label_noise = 0.5;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.drift_sigma = -1.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.dim = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("dataset export/import round-trips exactly") {
  DriftConfig config = small_config();
  config.n_months = 3;
  const auto months = generate_stream(config);
  const auto path =
      std::filesystem::temp_directory_path() / "forgetbench_roundtrip.txt";
  export_dataset(path, config, months);
  const auto [loaded_config, loaded] = import_dataset(path);
  std::filesystem::remove(path);

  CHECK(loaded_config.dim == config.dim);
  CHECK(loaded_config.seed == config.seed);
  CHECK(loaded_config.drift_sigma == config.drift_sigma);
  REQUIRE(loaded.size() == months.size());
  for (std::size_t t = 0; t < months.size(); ++t) {
    CHECK(loaded[t].train.features.data == months[t].train.features.data);
    CHECK(loaded[t].train.labels == months[t].train.labels);
    CHECK(loaded[t].val.features.data == months[t].val.features.data);
    CHECK(loaded[t].test.features.data == months[t].test.features.data);
    CHECK(loaded[t].concept_dir.empty());  // generator-internal
  }
}

TEST_CASE("import rejects foreign files") {
  const auto path =
      std::filesystem::temp_directory_path() / "forgetbench_bogus.txt";
  {
    std::ofstream out(path);
    out << "something else\n";
  }
  CHECK_THROWS_AS(import_dataset(path), IoError);
  std::filesystem::remove(path);
}
