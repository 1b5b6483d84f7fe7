// forgetbench command line front end.
//
// Subcommands: generate (emit dataset files), run (one strategy),
// compare (full sweep), export-plots (re-emit plot CSVs from saved run
// records). All outputs land under --out together with a manifest.json
// listing produced artifacts and the resolved configuration. Failures
// leave a manifest with status "failed" and exit with a category-specific
// code (see README).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "forgetbench/comparison.hpp"
#include "forgetbench/dataset_io.hpp"
#include "forgetbench/errors.hpp"
#include "forgetbench/evaluation.hpp"
#include "forgetbench/model_io.hpp"
#include "forgetbench/protocol.hpp"
#include "forgetbench/records.hpp"

namespace fb = forgetbench;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(const std::string& category) {
  if (category == "config") return 2;
  if (category == "shape") return 3;
  if (category == "numerical") return 4;
  if (category == "estimator") return 5;
  if (category == "undefined_metric") return 6;
  if (category == "io") return 7;
  return 10;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const fb::ExperimentConfig& config,
                    const std::vector<std::string>& artifacts,
                    const std::string& status,
                    const std::string& error_category = "",
                    const std::string& error_message = "") {
  fs::create_directories(out_dir);
  json manifest;
  manifest["format"] = "forgetbench-manifest";
  manifest["version"] = 1;
  manifest["command"] = command;
  manifest["status"] = status;
  if (!error_category.empty()) {
    manifest["error"] = {{"category", error_category},
                         {"message", error_message}};
  }
  manifest["resolved_config"] =
      json::parse(fb::experiment_config_to_json(config));
  manifest["artifacts"] = artifacts;
  std::ofstream out(out_dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string strategy;
  std::string epoch_mode = "fixed";
  std::string records_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<double> rehearsal_p;
  std::optional<std::size_t> fisher_samples;
  std::optional<std::size_t> threads;
};

fb::ExperimentConfig resolve_config(const CliOptions& opt) {
  fb::ExperimentConfig config = opt.config_path.empty()
                                    ? fb::ExperimentConfig::defaults()
                                    : fb::load_experiment_config(opt.config_path);
  if (opt.seed) config.train.seed = *opt.seed;
  if (opt.threads) config.threads = *opt.threads;
  if (!opt.out_dir.empty()) config.output_dir = opt.out_dir;
  return config;
}

fb::StrategySpec resolve_strategy(const CliOptions& opt,
                                  const fb::ExperimentConfig& config) {
  fb::StrategySpec spec;
  spec.kind = fb::parse_strategy_kind(opt.strategy);
  spec.fisher_samples =
      opt.fisher_samples ? *opt.fisher_samples : config.fisher_samples;
  if (spec.uses_lambda()) {
    spec.lambda = opt.lambda ? *opt.lambda : 1.0;
  }
  if (spec.uses_rehearsal()) {
    spec.rehearsal_p = opt.rehearsal_p ? *opt.rehearsal_p : 0.5;
    spec.epoch_mode = fb::parse_epoch_mode(opt.epoch_mode);
  }
  spec.validate();
  return spec;
}

int cmd_generate(const CliOptions& opt) {
  const fb::ExperimentConfig config = resolve_config(opt);
  const fs::path out_dir = config.output_dir;
  std::vector<std::string> artifacts;
  try {
    fs::create_directories(out_dir);
    const auto months = fb::generate_stream(config.drift);
    fb::export_dataset(out_dir / "dataset.txt", config.drift, months);
    artifacts.push_back("dataset.txt");
    write_manifest(out_dir, "generate", config, artifacts, "ok");
  } catch (const fb::Error& e) {
    write_manifest(out_dir, "generate", config, artifacts, "failed",
                   e.category(), e.what());
    throw;
  }
  std::cout << "wrote " << (out_dir / "dataset.txt").string() << '\n';
  return 0;
}

int cmd_run(const CliOptions& opt) {
  const fb::ExperimentConfig config = resolve_config(opt);
  const fb::StrategySpec strategy = resolve_strategy(opt, config);
  const std::uint64_t seed = opt.seed ? *opt.seed : config.train.seed;
  const fs::path out_dir = config.output_dir;
  std::vector<std::string> artifacts;
  try {
    fs::create_directories(out_dir / "records");
    fs::create_directories(out_dir / "models");

    const fb::RunRecord record = fb::run_protocol(config, strategy, seed);

    const std::string stem =
        strategy.slug() + "_seed" + std::to_string(seed);
    fb::save_run_record(out_dir / "records" / (stem + ".json"), record);
    artifacts.push_back("records/" + stem + ".json");

    fb::save_model(out_dir / "models" / (stem + ".model"),
                   record.final_model,
                   fb::to_string(config.train.optimizer.kind));
    artifacts.push_back("models/" + stem + ".model");

    std::ofstream report_csv(out_dir / "run_report.csv");
    fb::write_report_csv(report_csv, record.reports);
    report_csv.close();
    artifacts.push_back("run_report.csv");

    for (const std::string& f :
         fb::export_plot_data({record}, out_dir / "plots")) {
      artifacts.push_back("plots/" + f);
    }
    write_manifest(out_dir, "run", config, artifacts, "ok");

    std::cout << "strategy " << strategy.label() << " seed " << seed
              << ": final overall_avg "
              << fb::format_auc(record.final_report().overall_avg) << '\n';
  } catch (const fb::Error& e) {
    write_manifest(out_dir, "run", config, artifacts, "failed", e.category(),
                   e.what());
    throw;
  }
  return 0;
}

int cmd_compare(const CliOptions& opt) {
  const fb::ExperimentConfig config = resolve_config(opt);
  const fs::path out_dir = config.output_dir;
  std::vector<std::string> artifacts;
  try {
    const fb::ComparisonReport report = fb::run_comparison(config);

    for (const std::string& f : fb::write_comparison_csvs(report, out_dir)) {
      artifacts.push_back(f);
    }

    std::vector<fb::RunRecord> chosen_records;
    fs::create_directories(out_dir / "records");
    for (const fb::StrategyComparison& comparison : report.strategies) {
      if (comparison.failed()) continue;
      for (const fb::RunRecord& run : comparison.chosen_variant().runs) {
        const std::string stem =
            run.strategy.slug() + "_seed" + std::to_string(run.seed);
        fb::save_run_record(out_dir / "records" / (stem + ".json"), run);
        artifacts.push_back("records/" + stem + ".json");
        chosen_records.push_back(run);
      }
    }
    for (const std::string& f :
         fb::export_plot_data(chosen_records, out_dir / "plots")) {
      artifacts.push_back("plots/" + f);
    }
    write_manifest(out_dir, "compare", config, artifacts, "ok");

    std::cout << "comparison (" << report.strategies.size()
              << " strategies) written to " << out_dir.string() << '\n';
    for (const fb::StrategyComparison& comparison : report.strategies) {
      if (comparison.failed()) {
        std::cout << "  " << comparison.entry.label()
                  << ": FAILED: " << comparison.failure_message << '\n';
      } else {
        std::cout << "  " << comparison.entry.label() << " -> "
                  << comparison.chosen_variant().spec.label()
                  << " median overall_avg "
                  << fb::format_auc(comparison.median_report.overall_avg)
                  << '\n';
      }
    }
  } catch (const fb::Error& e) {
    write_manifest(out_dir, "compare", config, artifacts, "failed",
                   e.category(), e.what());
    throw;
  }
  return 0;
}

int cmd_export_plots(const CliOptions& opt) {
  const fb::ExperimentConfig config = resolve_config(opt);
  const fs::path out_dir = config.output_dir;
  std::vector<std::string> artifacts;
  try {
    const std::vector<fb::RunRecord> records =
        fb::load_run_records(opt.records_dir);
    for (const std::string& f :
         fb::export_plot_data(records, out_dir / "plots")) {
      artifacts.push_back("plots/" + f);
    }
    write_manifest(out_dir, "export-plots", config, artifacts, "ok");
    std::cout << "exported " << artifacts.size() << " plot series to "
              << (out_dir / "plots").string() << '\n';
  } catch (const fb::Error& e) {
    write_manifest(out_dir, "export-plots", config, artifacts, "failed",
                   e.category(), e.what());
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forgetbench: sequential model-update benchmark engine"};
  app.require_subcommand(1);

  CliOptions opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path,
                    "JSON experiment config (defaults used when omitted)");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--seed", opt.seed, "base seed override");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)");
  };

  CLI::App* generate =
      app.add_subcommand("generate", "generate and export the dataset");
  add_common(generate);

  CLI::App* run = app.add_subcommand("run", "run one strategy end to end");
  add_common(run);
  run->add_option("--strategy", opt.strategy,
                  "naive|l2|ewc|rehearsal|rehearsal_ewc|model_averaging|"
                  "scratch")
      ->required();
  run->add_option("--lambda", opt.lambda, "penalty strength (l2/ewc)");
  run->add_option("--rehearsal-p", opt.rehearsal_p,
                  "rehearsal proportion in [0,1]");
  run->add_option("--epoch-mode", opt.epoch_mode, "fixed|expanded");
  run->add_option("--fisher-samples", opt.fisher_samples,
                  "single-example gradients per fisher estimate");

  CLI::App* compare =
      app.add_subcommand("compare", "sweep and compare all strategies");
  add_common(compare);

  CLI::App* export_plots = app.add_subcommand(
      "export-plots", "re-export plot CSVs from saved run records");
  add_common(export_plots);
  export_plots
      ->add_option("--records", opt.records_dir,
                   "directory containing run record *.json files")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(opt);
    if (run->parsed()) return cmd_run(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (export_plots->parsed()) return cmd_export_plots(opt);
  } catch (const fb::Error& e) {
    json err = {{"error", {{"category", e.category()}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    json err = {{"error", {{"category", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 10;
  }
  return 0;
}
