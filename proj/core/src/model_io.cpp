#include "forgetbench/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

constexpr const char* kModelMagic = "forgetbench-model v1";
constexpr const char* kAnchorMagic = "forgetbench-anchor v1";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_values(std::ofstream& out, const std::vector<double>& values) {
  for (double v : values) out << format_double(v) << '\n';
}

std::vector<double> read_values(std::ifstream& in, std::size_t count,
                                const std::filesystem::path& path) {
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> values[i])) {
      throw IoError("truncated value block in '" + path.string() + "'");
    }
  }
  return values;
}

std::vector<std::size_t> read_layer_dims(std::istringstream& line) {
  std::vector<std::size_t> dims;
  std::size_t d;
  while (line >> d) dims.push_back(d);
  return dims;
}

}  // namespace

void save_model(const std::filesystem::path& path, const MlpModel& model,
                const std::string& optimizer_name) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << kModelMagic << '\n';
  out << "layer_dims";
  for (std::size_t d : model.layer_dims) out << ' ' << d;
  out << '\n';
  out << "optimizer " << optimizer_name << '\n';
  out << "params " << model.params.values.size() << '\n';
  write_values(out, model.params.values);
  if (!out) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

std::pair<MlpModel, std::string> load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic) {
    throw IoError("'" + path.string() + "' is not a " + kModelMagic + " file");
  }

  std::string key;
  std::getline(in, line);
  std::istringstream dims_line(line);
  dims_line >> key;
  if (key != "layer_dims") throw IoError("expected layer_dims line");
  const std::vector<std::size_t> layer_dims = read_layer_dims(dims_line);

  std::string optimizer_name;
  in >> key >> optimizer_name;
  if (key != "optimizer") throw IoError("expected optimizer line");

  std::size_t count = 0;
  in >> key >> count;
  if (key != "params") throw IoError("expected params line");

  MlpModel model;
  model.layer_dims = layer_dims;
  model.params.layout = ParamLayout::dense_mlp(layer_dims);
  if (count != model.params.layout.total_size()) {
    throw IoError("param count " + std::to_string(count) +
                  " does not match layer dims in '" + path.string() + "'");
  }
  model.params.values = read_values(in, count, path);
  return {std::move(model), optimizer_name};
}

void save_anchor(const std::filesystem::path& path, const Anchor& anchor,
                 const std::vector<std::size_t>& layer_dims) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << kAnchorMagic << '\n';
  out << "layer_dims";
  for (std::size_t d : layer_dims) out << ' ' << d;
  out << '\n';
  out << "round_id " << anchor.round_id << '\n';
  out << "theta " << anchor.theta_p.values.size() << '\n';
  write_values(out, anchor.theta_p.values);
  if (anchor.fisher.has_value()) {
    const FisherDiagonal& fisher = *anchor.fisher;
    out << "fisher " << to_string(fisher.estimator) << ' '
        << fisher.sample_count << ' '
        << format_double(fisher.negative_fraction()) << '\n';
    write_values(out, fisher.values.values);
  } else {
    out << "fisher none\n";
  }
  if (!out) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

Anchor load_anchor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line) || line != kAnchorMagic) {
    throw IoError("'" + path.string() + "' is not a " + kAnchorMagic +
                  " file");
  }
  std::string key;
  std::getline(in, line);
  std::istringstream dims_line(line);
  dims_line >> key;
  if (key != "layer_dims") throw IoError("expected layer_dims line");
  const std::vector<std::size_t> layer_dims = read_layer_dims(dims_line);
  const ParamLayout layout = ParamLayout::dense_mlp(layer_dims);

  Anchor anchor;
  in >> key >> anchor.round_id;
  if (key != "round_id") throw IoError("expected round_id line");

  std::size_t count = 0;
  in >> key >> count;
  if (key != "theta" || count != layout.total_size()) {
    throw IoError("malformed theta block in '" + path.string() + "'");
  }
  anchor.theta_p.layout = layout;
  anchor.theta_p.values = read_values(in, count, path);

  std::string estimator_name;
  in >> key >> estimator_name;
  if (key != "fisher") throw IoError("expected fisher line");
  if (estimator_name != "none") {
    FisherDiagonal fisher;
    double negative_fraction = 0.0;
    in >> fisher.sample_count >> negative_fraction;
    fisher.estimator = estimator_name == "sqgrad"
                           ? FisherEstimator::kSquaredGradient
                           : FisherEstimator::kHessianDiagonal;
    fisher.values.layout = layout;
    fisher.values.values = read_values(in, layout.total_size(), path);
    anchor.fisher = std::move(fisher);
  }
  return anchor;
}

}  // namespace forgetbench
