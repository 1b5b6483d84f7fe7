#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "forgetbench/mlp.hpp"
#include "forgetbench/optimizer.hpp"
#include "forgetbench/penalty.hpp"

namespace forgetbench {

/// Produces the (already shuffled) examples for one epoch. The trainer
/// slices the result into consecutive mini-batches of config.batch_size.
using EpochSource = std::function<Batch(std::size_t epoch)>;

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_losses;  // mean per-example training loss
};

/// Runs config.epochs epochs. Deterministic given (model, source, config,
/// penalty). Numerical failures abort with epoch/batch coordinates.
TrainResult train(MlpModel model, const EpochSource& source,
                  const TrainConfig& config, const Penalty& penalty);

/// Epoch source that re-shuffles a fixed pool each epoch with a
/// per-epoch derived seed.
EpochSource shuffled_epoch_source(Batch pool, std::uint64_t seed);

}  // namespace forgetbench
