#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forgetbench/matrix.hpp"

namespace forgetbench {

/// Synthetic monthly task stream configuration. Defaults give 12 months of
/// 4000/500/500 train/val/test examples in 20 dimensions.
struct DriftConfig {
  std::size_t n_months = 12;
  std::size_t dim = 20;
  std::size_t n_train = 4000;
  std::size_t n_val = 500;
  std::size_t n_test = 500;
  double drift_sigma = 0.35;   // expected concept step length per month
  double label_noise = 0.05;   // independent flip probability, in [0, 0.5)
  std::uint64_t seed = 42;

  void validate() const;  // ConfigError on invalid fields
};

enum class Split { kTrain, kVal, kTest };

std::string to_string(Split split);
Split parse_split(const std::string& name);

/// One month of labeled data. `concept_dir` is the generator's ground-truth
/// labeling direction; it is empty on datasets loaded from a file.
struct MonthTask {
  int month_index = 0;
  Batch train;
  Batch val;
  Batch test;
  std::vector<double> concept_dir;

  const Batch& split(Split s) const {
    switch (s) {
      case Split::kTrain: return train;
      case Split::kVal: return val;
      case Split::kTest: return test;
    }
    return train;  // unreachable
  }
};

/// Seeded stream generator. The labeling concept performs a unit-sphere
/// random walk, w_{t+1} = normalize(w_t + (drift_sigma / sqrt(dim)) * eps_t)
/// with eps_t standard Gaussian, so drift_sigma is the expected step length.
/// Features are standard Gaussian; labels are the concept halfspace
/// indicator flipped independently with probability label_noise. Month data
/// is generated from per-month derived seeds, so months are independent of
/// generation order.
std::vector<MonthTask> generate_stream(const DriftConfig& config);

/// Concatenation of one split across months, preserving example identity.
/// Throws ShapeError on mixed dims, ConfigError on an empty task list.
Batch concat_months(std::span<const MonthTask> tasks, Split split);

}  // namespace forgetbench
