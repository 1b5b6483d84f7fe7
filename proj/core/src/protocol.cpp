#include "forgetbench/protocol.hpp"

#include <chrono>
#include <memory>

#include "forgetbench/ensemble.hpp"
#include "forgetbench/errors.hpp"
#include "forgetbench/fisher.hpp"
#include "forgetbench/penalties.hpp"
#include "forgetbench/rehearsal.hpp"
#include "forgetbench/rng.hpp"
#include "forgetbench/train.hpp"

namespace forgetbench {

namespace {

constexpr std::uint64_t kStreamTag = 0x53545245ULL;   // data stream
constexpr std::uint64_t kInitTag = 0x494E4954ULL;     // model init
constexpr std::uint64_t kShuffleTag = 0x53485546ULL;  // epoch shuffling
constexpr std::uint64_t kFisherTag = 0x46495348ULL;   // fisher sampling
constexpr std::uint64_t kBufferTag = 0x42554646ULL;   // reservoir updates
constexpr std::uint64_t kEpochTag = 0x5245504FULL;    // rehearsal epochs
constexpr std::uint64_t kMemberTag = 0x4D454D42ULL;   // ensemble members

constexpr int kBaseMonths = 5;
constexpr int kUpdateMonths = 4;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Wraps an epoch source so the actually produced epoch sizes are recorded.
EpochSource recording_source(EpochSource inner,
                             std::shared_ptr<std::vector<std::size_t>> sizes) {
  return [inner = std::move(inner), sizes](std::size_t epoch) {
    Batch batch = inner(epoch);
    sizes->push_back(batch.size());
    return batch;
  };
}

struct ProtocolRunner {
  const ExperimentConfig& config;
  const StrategySpec& strategy;
  std::uint64_t seed;
  std::vector<MonthTask> months;
  TrainConfig train_config;
  RunRecord record;

  std::vector<std::shared_ptr<const MlpModel>> snapshot_models;

  MlpModel timed_train(MlpModel model, const EpochSource& source,
                       const Penalty& penalty, int month_index) {
    auto sizes = std::make_shared<std::vector<std::size_t>>();
    const auto start = Clock::now();
    TrainResult result =
        train(std::move(model), recording_source(source, sizes), train_config,
              penalty);
    RoundCost cost;
    cost.month_index = month_index;
    cost.epoch_sizes = std::move(*sizes);
    cost.epoch_losses = std::move(result.epoch_losses);
    cost.wall_seconds = seconds_since(start);
    record.round_costs.push_back(std::move(cost));
    return std::move(result.model);
  }

  void snapshot(std::string id, MlpModel model) {
    record.snapshot_ids.push_back(id);
    snapshot_models.push_back(
        std::make_shared<const MlpModel>(std::move(model)));
  }

  MlpModel train_base() {
    const Batch base_pool =
        concat_months({months.data(), static_cast<std::size_t>(kBaseMonths)},
                      Split::kTrain);
    MlpModel model =
        init_model(config.layer_dims(), derive_seed(seed, kInitTag));
    const ZeroPenalty none;
    return timed_train(
        std::move(model),
        shuffled_epoch_source(base_pool, derive_seed(seed, kShuffleTag, 0)),
        none, -1);
  }

  std::unique_ptr<Penalty> make_penalty(const std::optional<Anchor>& anchor) {
    switch (strategy.kind) {
      case StrategyKind::kL2:
        return std::make_unique<L2Penalty>(*anchor, strategy.lambda);
      case StrategyKind::kEwc:
      case StrategyKind::kRehearsalPlusEwc:
        return std::make_unique<EwcPenalty>(*anchor, strategy.lambda);
      default:
        return std::make_unique<ZeroPenalty>();
    }
  }

  void run_sequential() {
    MlpModel model = train_base();
    const ParamVector theta_base = model.params;
    snapshot("base", model);

    const bool with_ewc = strategy.kind == StrategyKind::kEwc ||
                          strategy.kind == StrategyKind::kRehearsalPlusEwc;
    const bool with_l2 = strategy.kind == StrategyKind::kL2;

    std::optional<Anchor> anchor;
    if (with_ewc) {
      const Batch base_pool = concat_months(
          {months.data(), static_cast<std::size_t>(kBaseMonths)},
          Split::kTrain);
      const FisherDiagonal fisher = estimate_fisher_sqgrad(
          model, base_pool, strategy.fisher_samples,
          derive_seed(seed, kFisherTag, 0));
      anchor = consolidate_anchor(std::nullopt, model, fisher,
                                  config.ewc_consolidation);
    } else if (with_l2) {
      anchor = Anchor{model.params, std::nullopt, 0};
    }

    std::optional<RehearsalBuffer> buffer;
    if (strategy.uses_rehearsal()) {
      buffer.emplace(config.buffer_cap, derive_seed(seed, kBufferTag));
      for (int m = 0; m < kBaseMonths; ++m) {
        buffer = update_buffer(*buffer, m, months[m].train,
                               derive_seed(seed, kBufferTag, m));
      }
    }

    for (int m = kBaseMonths; m < kBaseMonths + kUpdateMonths; ++m) {
      const Batch& pool = months[static_cast<std::size_t>(m)].train;
      const std::unique_ptr<Penalty> penalty = make_penalty(anchor);

      EpochSource source;
      if (strategy.uses_rehearsal()) {
        const EpochPlan plan = strategy.epoch_mode == EpochMode::kFixed
                                   ? EpochPlan::fixed(pool.size())
                                   : EpochPlan::expanded();
        // Capture the buffer by value: the epoch mix is frozen to the
        // buffer state entering this round.
        source = [pool, round_buffer = *buffer, p = strategy.rehearsal_p,
                  plan, base = derive_seed(seed, kEpochTag, m)](
                     std::size_t epoch) {
          return build_rehearsal_epoch(pool, round_buffer, p, plan,
                                       derive_seed(base, epoch));
        };
      } else {
        source =
            shuffled_epoch_source(pool, derive_seed(seed, kShuffleTag, m));
      }

      try {
        model = timed_train(std::move(model), source, *penalty, m);
      } catch (const Error& e) {
        throw NumericalError("update round on month " + std::to_string(m) +
                             " (" + strategy.label() + "): " + e.what());
      }
      snapshot("round_" + std::to_string(m), model);

      if (with_ewc) {
        const FisherDiagonal fisher = estimate_fisher_sqgrad(
            model, pool, strategy.fisher_samples,
            derive_seed(seed, kFisherTag, m));
        anchor = consolidate_anchor(anchor, model, fisher,
                                    config.ewc_consolidation);
      } else if (with_l2) {
        anchor = Anchor{model.params, std::nullopt, anchor->round_id + 1};
      }
      if (strategy.uses_rehearsal()) {
        buffer = update_buffer(*buffer, m, pool,
                               derive_seed(seed, kBufferTag, m));
      }
    }
    record.param_drift = l2_distance(model.params, theta_base);
    record.final_model = std::move(model);
  }

  void run_scratch() {
    const Batch pool = concat_months(
        {months.data(), static_cast<std::size_t>(kBaseMonths + kUpdateMonths)},
        Split::kTrain);
    MlpModel model =
        init_model(config.layer_dims(), derive_seed(seed, kInitTag));
    const ZeroPenalty none;
    model = timed_train(
        std::move(model),
        shuffled_epoch_source(pool, derive_seed(seed, kShuffleTag, 0)), none,
        -1);
    snapshot("scratch", model);
    record.final_model = std::move(model);
  }

  void run_model_averaging() {
    auto members = std::make_shared<std::vector<MlpModel>>();
    if (config.averaging_includes_base) {
      members->push_back(train_base());
    }
    const ZeroPenalty none;
    for (int m = kBaseMonths; m < kBaseMonths + kUpdateMonths; ++m) {
      MlpModel fresh = init_model(config.layer_dims(),
                                  derive_seed(seed, kMemberTag, m));
      members->push_back(timed_train(
          std::move(fresh),
          shuffled_epoch_source(months[m].train,
                                derive_seed(seed, kShuffleTag, m)),
          none, m));
    }
    record.ensemble_members = members->size();
    record.snapshot_ids.push_back("ensemble");
    record.final_model = members->back();
    ensemble_ = members;
  }

  void evaluate() {
    std::vector<SnapshotPredictor> predictors;
    if (ensemble_) {
      auto members = ensemble_;
      predictors.push_back({"ensemble", [members](const Matrix& x) {
                              return ensemble_average(*members, x);
                            }});
    } else {
      for (std::size_t s = 0; s < snapshot_models.size(); ++s) {
        auto model = snapshot_models[s];
        predictors.push_back({record.snapshot_ids[s],
                              [model](const Matrix& x) {
                                return forward(*model, x);
                              }});
      }
    }

    record.test_matrix = eval_matrix(predictors, months);
    for (std::size_t s = 0; s < predictors.size(); ++s) {
      EvalReport report = summarize(record.test_matrix.row(s));
      report.strategy = strategy.label();
      report.snapshot_id = record.snapshot_ids[s];
      record.reports.push_back(std::move(report));
    }

    const SnapshotPredictor& final_predictor = predictors.back();
    double val_sum = 0.0;
    for (int m = kBaseMonths; m < kBaseMonths + kUpdateMonths; ++m) {
      const double v = auc(final_predictor.predict(months[m].val.features),
                           months[m].val.labels);
      record.final_val_auc.push_back(v);
      val_sum += v;
    }
    record.update_val_mean = val_sum / static_cast<double>(kUpdateMonths);
  }

  std::shared_ptr<std::vector<MlpModel>> ensemble_;
};

}  // namespace

RunRecord run_protocol(const ExperimentConfig& config,
                       const StrategySpec& strategy, std::uint64_t seed) {
  config.validate();
  strategy.validate();

  DriftConfig drift = config.drift;
  drift.seed = derive_seed(seed, kStreamTag);

  ProtocolRunner runner{config, strategy, seed, generate_stream(drift),
                        config.train, {},    {},       {}};
  runner.train_config.seed = seed;
  runner.record.strategy = strategy;
  runner.record.seed = seed;

  switch (strategy.kind) {
    case StrategyKind::kScratch:
      runner.run_scratch();
      break;
    case StrategyKind::kModelAveraging:
      runner.run_model_averaging();
      break;
    default:
      runner.run_sequential();
      break;
  }
  runner.evaluate();
  return std::move(runner.record);
}

}  // namespace forgetbench
