#include "forgetbench/drift.hpp"

#include <cmath>

#include "forgetbench/errors.hpp"
#include "forgetbench/rng.hpp"

namespace forgetbench {

namespace {

constexpr std::uint64_t kConceptTag = 0x434F4E43ULL;  // "CONC"
constexpr std::uint64_t kMonthTag = 0x4D4F4E54ULL;    // "MONT"

void normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    throw NumericalError("degenerate zero concept vector");
  }
  for (double& x : v) x /= norm;
}

Batch draw_examples(Rng& rng, const std::vector<double>& concept_dir,
                    std::size_t count, std::size_t dim, double label_noise) {
  Batch batch;
  batch.features = Matrix(count, dim);
  batch.labels.resize(count);
  for (std::size_t r = 0; r < count; ++r) {
    auto row = batch.features.row(r);
    double dot = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      row[c] = rng.normal();
      dot += row[c] * concept_dir[c];
    }
    int label = dot > 0.0 ? 1 : 0;
    if (rng.uniform01() < label_noise) label = 1 - label;
    batch.labels[r] = label;
  }
  return batch;
}

}  // namespace

void DriftConfig::validate() const {
  if (n_months == 0) throw ConfigError("n_months must be positive");
  if (dim == 0) throw ConfigError("dim must be positive");
  if (n_train == 0 || n_val == 0 || n_test == 0) {
    throw ConfigError("per-month split sizes must be positive");
  }
  if (drift_sigma < 0.0) throw ConfigError("drift_sigma must be nonnegative");
  if (label_noise < 0.0 || label_noise >= 0.5) {
    throw ConfigError("label_noise must be in [0, 0.5)");
  }
}

std::string to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  throw ConfigError("unknown split '" + name + "'");
}

std::vector<MonthTask> generate_stream(const DriftConfig& config) {
  config.validate();

  // Concept path first, so month payloads can use independent sub-seeds.
  std::vector<std::vector<double>> path(config.n_months);
  {
    Rng rng(derive_seed(config.seed, kConceptTag));
    std::vector<double> w(config.dim);
    for (double& x : w) x = rng.normal();
    normalize(w);
    path[0] = w;
    const double step = config.drift_sigma /
                        std::sqrt(static_cast<double>(config.dim));
    for (std::size_t t = 1; t < config.n_months; ++t) {
      for (double& x : w) x += step * rng.normal();
      normalize(w);
      path[t] = w;
    }
  }

  std::vector<MonthTask> months(config.n_months);
  for (std::size_t t = 0; t < config.n_months; ++t) {
    Rng rng(derive_seed(config.seed, kMonthTag, t));
    MonthTask& month = months[t];
    month.month_index = static_cast<int>(t);
    month.concept_dir = path[t];
    month.train = draw_examples(rng, path[t], config.n_train, config.dim,
                                config.label_noise);
    month.val = draw_examples(rng, path[t], config.n_val, config.dim,
                              config.label_noise);
    month.test = draw_examples(rng, path[t], config.n_test, config.dim,
                               config.label_noise);
  }
  return months;
}

Batch concat_months(std::span<const MonthTask> tasks, Split split) {
  if (tasks.empty()) {
    throw ConfigError("concat_months: empty task list");
  }
  Batch pool;
  for (const MonthTask& task : tasks) {
    pool.append(task.split(split));
  }
  return pool;
}

}  // namespace forgetbench
