#include "forgetbench/experiment.hpp"

#include <fstream>

#include <json.hpp>

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

StrategySpec parse_strategy_entry(const json& entry) {
  if (entry.is_string()) {
    StrategySpec spec;
    spec.kind = parse_strategy_kind(entry.get<std::string>());
    if (spec.kind == StrategyKind::kRehearsal ||
        spec.kind == StrategyKind::kRehearsalPlusEwc) {
      spec.rehearsal_p = 0.5;
      spec.epoch_mode = spec.kind == StrategyKind::kRehearsalPlusEwc
                            ? EpochMode::kExpanded
                            : EpochMode::kFixed;
    }
    spec.validate();
    return spec;
  }
  if (!entry.is_object()) {
    throw ConfigError("strategy entries must be strings or objects");
  }
  reject_unknown_keys(entry, "strategy entry",
                      {"kind", "lambda", "fisher_samples", "rehearsal_p",
                       "epoch_mode"});
  StrategySpec spec;
  spec.kind = parse_strategy_kind(entry.at("kind").get<std::string>());
  if (entry.contains("lambda")) spec.lambda = entry["lambda"].get<double>();
  if (entry.contains("fisher_samples")) {
    spec.fisher_samples = entry["fisher_samples"].get<std::size_t>();
  }
  if (entry.contains("rehearsal_p")) {
    spec.rehearsal_p = entry["rehearsal_p"].get<double>();
  } else if (spec.uses_rehearsal()) {
    spec.rehearsal_p = 0.5;
  }
  if (entry.contains("epoch_mode")) {
    spec.epoch_mode = parse_epoch_mode(entry["epoch_mode"].get<std::string>());
  } else if (spec.kind == StrategyKind::kRehearsalPlusEwc) {
    spec.epoch_mode = EpochMode::kExpanded;
  }
  spec.validate();
  return spec;
}

json strategy_entry_to_json(const StrategySpec& spec) {
  json entry;
  entry["kind"] = to_string(spec.kind);
  if (spec.uses_lambda()) entry["lambda"] = spec.lambda;
  if (spec.kind == StrategyKind::kEwc ||
      spec.kind == StrategyKind::kRehearsalPlusEwc) {
    entry["fisher_samples"] = spec.fisher_samples;
  }
  if (spec.uses_rehearsal()) {
    entry["rehearsal_p"] = spec.rehearsal_p;
    entry["epoch_mode"] = to_string(spec.epoch_mode);
  }
  return entry;
}

}  // namespace

std::vector<std::size_t> ExperimentConfig::layer_dims() const {
  std::vector<std::size_t> dims;
  dims.reserve(hidden_dims.size() + 2);
  dims.push_back(drift.dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(1);
  return dims;
}

void ExperimentConfig::validate() const {
  drift.validate();
  train.validate();
  if (drift.n_months != 12) {
    throw ConfigError(
        "the protocol requires exactly 12 months (5 base / 4 update / 3 "
        "future)");
  }
  if (hidden_dims.empty()) {
    throw ConfigError("hidden_dims must not be empty");
  }
  for (std::size_t d : hidden_dims) {
    if (d == 0) throw ConfigError("hidden dims must be positive");
  }
  if (n_seeds == 0) throw ConfigError("n_seeds must be positive");
  if (buffer_cap == 0) throw ConfigError("buffer_cap must be positive");
  if (fisher_samples == 0) throw ConfigError("fisher_samples must be positive");
  for (double l : lambda_sweep) {
    if (l < 0.0) throw ConfigError("lambda_sweep values must be nonnegative");
  }
  for (double l : ewc_lambda_sweep) {
    if (l < 0.0) throw ConfigError("ewc_lambda_sweep values must be nonnegative");
  }
  for (double p : rehearsal_sweep) {
    if (p < 0.0 || p > 1.0) {
      throw ConfigError("rehearsal_sweep values must be in [0, 1]");
    }
  }
  for (const StrategySpec& s : strategies) s.validate();
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig config;
  config.strategies = {
      StrategySpec::naive(),
      StrategySpec::scratch(),
      StrategySpec::model_averaging(),
      StrategySpec::l2(1.0),
      StrategySpec::ewc(1.0),
      StrategySpec::rehearsal(0.5, EpochMode::kFixed),
      StrategySpec::rehearsal(0.5, EpochMode::kExpanded),
      StrategySpec::rehearsal_plus_ewc(0.5, EpochMode::kExpanded, 1.0),
  };
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config '" + path.string() + "'");
  }
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in '" + path.string() + "': " + e.what());
  }

  reject_unknown_keys(
      root, "config",
      {"version", "drift", "train", "model", "strategies", "lambda_sweep",
       "ewc_lambda_sweep", "rehearsal_sweep", "n_seeds", "buffer_cap",
       "fisher_samples", "averaging_includes_base", "ewc_consolidation",
       "threads", "output_dir"});

  if (!root.contains("version") || root["version"].get<int>() != 1) {
    throw ConfigError("config must declare \"version\": 1");
  }

  ExperimentConfig config = ExperimentConfig::defaults();

  if (root.contains("drift")) {
    const json& d = root["drift"];
    reject_unknown_keys(d, "drift",
                        {"n_months", "dim", "n_train", "n_val", "n_test",
                         "drift_sigma", "label_noise", "seed"});
    if (d.contains("n_months")) config.drift.n_months = d["n_months"].get<std::size_t>();
    if (d.contains("dim")) config.drift.dim = d["dim"].get<std::size_t>();
    if (d.contains("n_train")) config.drift.n_train = d["n_train"].get<std::size_t>();
    if (d.contains("n_val")) config.drift.n_val = d["n_val"].get<std::size_t>();
    if (d.contains("n_test")) config.drift.n_test = d["n_test"].get<std::size_t>();
    if (d.contains("drift_sigma")) config.drift.drift_sigma = d["drift_sigma"].get<double>();
    if (d.contains("label_noise")) config.drift.label_noise = d["label_noise"].get<double>();
    if (d.contains("seed")) config.drift.seed = d["seed"].get<std::uint64_t>();
  }
  if (root.contains("train")) {
    const json& t = root["train"];
    reject_unknown_keys(t, "train",
                        {"epochs", "batch_size", "learning_rate", "optimizer",
                         "adam", "seed"});
    if (t.contains("epochs")) config.train.epochs = t["epochs"].get<std::size_t>();
    if (t.contains("batch_size")) config.train.batch_size = t["batch_size"].get<std::size_t>();
    if (t.contains("learning_rate")) config.train.learning_rate = t["learning_rate"].get<double>();
    if (t.contains("optimizer")) {
      config.train.optimizer.kind =
          parse_optimizer_kind(t["optimizer"].get<std::string>());
    }
    if (t.contains("adam")) {
      const json& a = t["adam"];
      reject_unknown_keys(a, "adam", {"beta1", "beta2", "epsilon"});
      if (a.contains("beta1")) config.train.optimizer.adam.beta1 = a["beta1"].get<double>();
      if (a.contains("beta2")) config.train.optimizer.adam.beta2 = a["beta2"].get<double>();
      if (a.contains("epsilon")) config.train.optimizer.adam.epsilon = a["epsilon"].get<double>();
    }
    if (t.contains("seed")) config.train.seed = t["seed"].get<std::uint64_t>();
  }
  if (root.contains("model")) {
    const json& m = root["model"];
    reject_unknown_keys(m, "model", {"hidden_dims"});
    if (m.contains("hidden_dims")) {
      config.hidden_dims = m["hidden_dims"].get<std::vector<std::size_t>>();
    }
  }
  if (root.contains("strategies")) {
    config.strategies.clear();
    for (const json& entry : root["strategies"]) {
      config.strategies.push_back(parse_strategy_entry(entry));
    }
  }
  if (root.contains("lambda_sweep")) {
    config.lambda_sweep = root["lambda_sweep"].get<std::vector<double>>();
  }
  if (root.contains("ewc_lambda_sweep")) {
    config.ewc_lambda_sweep =
        root["ewc_lambda_sweep"].get<std::vector<double>>();
  }
  if (root.contains("rehearsal_sweep")) {
    config.rehearsal_sweep = root["rehearsal_sweep"].get<std::vector<double>>();
  }
  if (root.contains("n_seeds")) config.n_seeds = root["n_seeds"].get<std::size_t>();
  if (root.contains("buffer_cap")) config.buffer_cap = root["buffer_cap"].get<std::size_t>();
  if (root.contains("fisher_samples")) {
    config.fisher_samples = root["fisher_samples"].get<std::size_t>();
  }
  if (root.contains("averaging_includes_base")) {
    config.averaging_includes_base = root["averaging_includes_base"].get<bool>();
  }
  if (root.contains("ewc_consolidation")) {
    config.ewc_consolidation =
        parse_consolidation_mode(root["ewc_consolidation"].get<std::string>());
  }
  if (root.contains("threads")) config.threads = root["threads"].get<std::size_t>();
  if (root.contains("output_dir")) config.output_dir = root["output_dir"].get<std::string>();

  config.validate();
  return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json root;
  root["version"] = 1;
  root["drift"] = {{"n_months", config.drift.n_months},
                   {"dim", config.drift.dim},
                   {"n_train", config.drift.n_train},
                   {"n_val", config.drift.n_val},
                   {"n_test", config.drift.n_test},
                   {"drift_sigma", config.drift.drift_sigma},
                   {"label_noise", config.drift.label_noise},
                   {"seed", config.drift.seed}};
  root["train"] = {{"epochs", config.train.epochs},
                   {"batch_size", config.train.batch_size},
                   {"learning_rate", config.train.learning_rate},
                   {"optimizer", to_string(config.train.optimizer.kind)},
                   {"adam",
                    {{"beta1", config.train.optimizer.adam.beta1},
                     {"beta2", config.train.optimizer.adam.beta2},
                     {"epsilon", config.train.optimizer.adam.epsilon}}},
                   {"seed", config.train.seed}};
  root["model"] = {{"hidden_dims", config.hidden_dims}};
  root["strategies"] = json::array();
  for (const StrategySpec& s : config.strategies) {
    root["strategies"].push_back(strategy_entry_to_json(s));
  }
  root["lambda_sweep"] = config.lambda_sweep;
  if (!config.ewc_lambda_sweep.empty()) {
    root["ewc_lambda_sweep"] = config.ewc_lambda_sweep;
  }
  root["rehearsal_sweep"] = config.rehearsal_sweep;
  root["n_seeds"] = config.n_seeds;
  root["buffer_cap"] = config.buffer_cap;
  root["fisher_samples"] = config.fisher_samples;
  root["averaging_includes_base"] = config.averaging_includes_base;
  root["ewc_consolidation"] = to_string(config.ewc_consolidation);
  root["threads"] = config.threads;
  root["output_dir"] = config.output_dir;
  return root.dump(2);
}

std::size_t RoundCost::trained_examples() const {
  std::size_t total = 0;
  for (std::size_t s : epoch_sizes) total += s;
  return total;
}

std::size_t RunRecord::total_trained_examples() const {
  std::size_t total = 0;
  for (const RoundCost& cost : round_costs) total += cost.trained_examples();
  return total;
}

}  // namespace forgetbench
