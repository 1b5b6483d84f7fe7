#pragma once

#include "forgetbench/experiment.hpp"

namespace forgetbench {

/// Runs the full sequential protocol for one strategy and seed:
/// generate the stream, train the base model on months 0-4, apply four
/// sequential update rounds on months 5-8 (penalties from the current
/// anchor, rehearsal epochs from the current buffer, as the strategy
/// dictates), snapshot after every round, and evaluate every snapshot on
/// all twelve months. Scratch trains one fresh model on months 0-8 pooled;
/// ModelAveraging builds the prediction-averaging ensemble instead.
///
/// The data stream depends only on (config.drift, seed), never on the
/// strategy, so strategies are compared on identical streams per seed.
RunRecord run_protocol(const ExperimentConfig& config,
                       const StrategySpec& strategy, std::uint64_t seed);

}  // namespace forgetbench
