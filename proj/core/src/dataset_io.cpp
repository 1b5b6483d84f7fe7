#include "forgetbench/dataset_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

constexpr const char* kMagic = "forgetbench-dataset v1";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_batch(std::ofstream& out, const Batch& batch, int month,
                 Split split) {
  const std::string split_name = to_string(split);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const auto row = batch.features.row(r);
    for (double v : row) {
      out << format_double(v) << ' ';
    }
    out << batch.labels[r] << ' ' << month << ' ' << split_name << '\n';
  }
}

}  // namespace

void export_dataset(const std::filesystem::path& path,
                    const DriftConfig& config,
                    const std::vector<MonthTask>& months) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << kMagic << '\n';
  out << "dim " << config.dim << " months " << config.n_months << " train "
      << config.n_train << " val " << config.n_val << " test " << config.n_test
      << " drift_sigma " << format_double(config.drift_sigma)
      << " label_noise " << format_double(config.label_noise) << " seed "
      << config.seed << '\n';
  for (const MonthTask& month : months) {
    write_batch(out, month.train, month.month_index, Split::kTrain);
    write_batch(out, month.val, month.month_index, Split::kVal);
    write_batch(out, month.test, month.month_index, Split::kTest);
  }
  if (!out) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

std::pair<DriftConfig, std::vector<MonthTask>> import_dataset(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw IoError("'" + path.string() + "' is not a " + kMagic + " file");
  }

  DriftConfig config;
  if (!std::getline(in, line)) {
    throw IoError("missing dataset header in '" + path.string() + "'");
  }
  {
    std::istringstream hdr(line);
    std::string key;
    auto expect = [&](const char* want) {
      if (!(hdr >> key) || key != want) {
        throw IoError("malformed dataset header: expected '" +
                      std::string(want) + "'");
      }
    };
    expect("dim"); hdr >> config.dim;
    expect("months"); hdr >> config.n_months;
    expect("train"); hdr >> config.n_train;
    expect("val"); hdr >> config.n_val;
    expect("test"); hdr >> config.n_test;
    expect("drift_sigma"); hdr >> config.drift_sigma;
    expect("label_noise"); hdr >> config.label_noise;
    expect("seed"); hdr >> config.seed;
    if (!hdr) throw IoError("malformed dataset header values");
  }
  config.validate();

  std::vector<MonthTask> months(config.n_months);
  for (std::size_t t = 0; t < config.n_months; ++t) {
    months[t].month_index = static_cast<int>(t);
  }

  std::size_t line_no = 2;
  std::vector<double> features(config.dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    for (double& v : features) row >> v;
    int label = 0, month = 0;
    std::string split_name;
    row >> label >> month >> split_name;
    if (!row) {
      throw IoError("malformed example at line " + std::to_string(line_no));
    }
    if (month < 0 || static_cast<std::size_t>(month) >= config.n_months) {
      throw IoError("month out of range at line " + std::to_string(line_no));
    }
    Batch& target = [&]() -> Batch& {
      switch (parse_split(split_name)) {
        case Split::kTrain: return months[month].train;
        case Split::kVal: return months[month].val;
        case Split::kTest: return months[month].test;
      }
      return months[month].train;  // unreachable
    }();
    if (target.features.cols == 0) {
      target.features.cols = config.dim;
    }
    target.features.data.insert(target.features.data.end(), features.begin(),
                                features.end());
    target.features.rows += 1;
    target.labels.push_back(label);
  }

  for (const MonthTask& month : months) {
    if (month.train.size() != config.n_train ||
        month.val.size() != config.n_val ||
        month.test.size() != config.n_test) {
      throw IoError("dataset split sizes for month " +
                    std::to_string(month.month_index) +
                    " do not match the header");
    }
  }
  return {config, std::move(months)};
}

}  // namespace forgetbench
