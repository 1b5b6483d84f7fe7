#include "forgetbench/train.hpp"

#include <memory>

#include "forgetbench/errors.hpp"
#include "forgetbench/rng.hpp"

namespace forgetbench {

namespace {
constexpr std::uint64_t kEpochShuffleTag = 0x45504F43ULL;  // "EPOC"
}

TrainResult train(MlpModel model, const EpochSource& source,
                  const TrainConfig& config, const Penalty& penalty) {
  config.validate();
  TrainResult result;
  result.epoch_losses.reserve(config.epochs);

  OptimizerState state;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Batch data = source(epoch);
    data.check_consistent();
    if (data.size() == 0) {
      throw ConfigError("epoch " + std::to_string(epoch) + " yielded no data");
    }
    double loss_weighted = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t lo = 0; lo < data.size(); lo += config.batch_size) {
      const std::size_t hi = std::min(lo + config.batch_size, data.size());
      Batch chunk = data.slice(lo, hi);
      try {
        GradResult g = grad(model, chunk, penalty);
        optimizer_step(model.params, g.gradient, state, config);
        loss_weighted += g.loss * static_cast<double>(hi - lo);
      } catch (const NumericalError& e) {
        throw NumericalError("epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch_index) + ": " + e.what());
      }
      ++batch_index;
    }
    result.epoch_losses.push_back(loss_weighted /
                                  static_cast<double>(data.size()));
  }
  result.model = std::move(model);
  return result;
}

EpochSource shuffled_epoch_source(Batch pool, std::uint64_t seed) {
  auto shared = std::make_shared<Batch>(std::move(pool));
  return [shared, seed](std::size_t epoch) {
    Batch copy = *shared;
    Rng rng(derive_seed(seed, kEpochShuffleTag, epoch));
    copy.shuffle(rng);
    return copy;
  };
}

}  // namespace forgetbench
