#include "forgetbench/records.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

using nlohmann::json;

json strategy_to_json(const StrategySpec& spec) {
  return {{"kind", to_string(spec.kind)},
          {"lambda", spec.lambda},
          {"fisher_samples", spec.fisher_samples},
          {"rehearsal_p", spec.rehearsal_p},
          {"epoch_mode", to_string(spec.epoch_mode)}};
}

StrategySpec strategy_from_json(const json& j) {
  StrategySpec spec;
  spec.kind = parse_strategy_kind(j.at("kind").get<std::string>());
  spec.lambda = j.at("lambda").get<double>();
  spec.fisher_samples = j.at("fisher_samples").get<std::size_t>();
  spec.rehearsal_p = j.at("rehearsal_p").get<double>();
  spec.epoch_mode = parse_epoch_mode(j.at("epoch_mode").get<std::string>());
  return spec;
}

json report_to_json(const EvalReport& report) {
  return {{"strategy", report.strategy},
          {"snapshot_id", report.snapshot_id},
          {"per_month_auc", report.per_month_auc},
          {"base_avg", report.base_avg},
          {"update_avg", report.update_avg},
          {"future_avg", report.future_avg},
          {"overall_avg", report.overall_avg}};
}

EvalReport report_from_json(const json& j) {
  EvalReport report;
  report.strategy = j.at("strategy").get<std::string>();
  report.snapshot_id = j.at("snapshot_id").get<std::string>();
  report.per_month_auc = j.at("per_month_auc").get<std::vector<double>>();
  report.base_avg = j.at("base_avg").get<double>();
  report.update_avg = j.at("update_avg").get<double>();
  report.future_avg = j.at("future_avg").get<double>();
  report.overall_avg = j.at("overall_avg").get<double>();
  return report;
}

}  // namespace

std::string run_record_to_json(const RunRecord& record) {
  json root;
  root["format"] = "forgetbench-run-record";
  root["version"] = 1;
  root["strategy"] = strategy_to_json(record.strategy);
  root["strategy_label"] = record.strategy.label();
  root["seed"] = record.seed;
  root["snapshot_ids"] = record.snapshot_ids;

  root["round_costs"] = json::array();
  for (const RoundCost& cost : record.round_costs) {
    root["round_costs"].push_back({{"month_index", cost.month_index},
                                   {"epoch_sizes", cost.epoch_sizes},
                                   {"epoch_losses", cost.epoch_losses},
                                   {"wall_seconds", cost.wall_seconds}});
  }

  root["test_matrix"] = {{"snapshot_labels", record.test_matrix.snapshot_labels},
                         {"n_months", record.test_matrix.n_months},
                         {"entries", record.test_matrix.entries}};

  root["reports"] = json::array();
  for (const EvalReport& report : record.reports) {
    root["reports"].push_back(report_to_json(report));
  }
  root["final_val_auc"] = record.final_val_auc;
  root["update_val_mean"] = record.update_val_mean;
  root["param_drift"] = record.param_drift;
  root["ensemble_members"] = record.ensemble_members;
  return root.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid run record JSON: ") + e.what());
  }
  if (!root.contains("format") ||
      root["format"].get<std::string>() != "forgetbench-run-record" ||
      root.at("version").get<int>() != 1) {
    throw IoError("not a forgetbench-run-record v1 document");
  }

  RunRecord record;
  record.strategy = strategy_from_json(root.at("strategy"));
  record.seed = root.at("seed").get<std::uint64_t>();
  record.snapshot_ids =
      root.at("snapshot_ids").get<std::vector<std::string>>();
  for (const json& j : root.at("round_costs")) {
    RoundCost cost;
    cost.month_index = j.at("month_index").get<int>();
    cost.epoch_sizes = j.at("epoch_sizes").get<std::vector<std::size_t>>();
    cost.epoch_losses = j.at("epoch_losses").get<std::vector<double>>();
    cost.wall_seconds = j.at("wall_seconds").get<double>();
    record.round_costs.push_back(std::move(cost));
  }
  const json& matrix = root.at("test_matrix");
  record.test_matrix.snapshot_labels =
      matrix.at("snapshot_labels").get<std::vector<std::string>>();
  record.test_matrix.n_months = matrix.at("n_months").get<std::size_t>();
  record.test_matrix.entries =
      matrix.at("entries").get<std::vector<double>>();
  for (const json& j : root.at("reports")) {
    record.reports.push_back(report_from_json(j));
  }
  record.final_val_auc = root.at("final_val_auc").get<std::vector<double>>();
  record.update_val_mean = root.at("update_val_mean").get<double>();
  record.param_drift = root.at("param_drift").get<double>();
  record.ensemble_members = root.at("ensemble_members").get<std::size_t>();
  return record;
}

void save_run_record(const std::filesystem::path& path,
                     const RunRecord& record) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << run_record_to_json(record) << '\n';
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

RunRecord load_run_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return run_record_from_json(text);
}

std::vector<RunRecord> load_run_records(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<RunRecord> records;
  records.reserve(paths.size());
  for (const auto& path : paths) {
    records.push_back(load_run_record(path));
  }
  if (records.empty()) {
    throw IoError("no run records (*.json) found in '" + dir.string() + "'");
  }
  return records;
}

}  // namespace forgetbench
