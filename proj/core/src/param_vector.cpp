#include "forgetbench/param_vector.hpp"

#include <cmath>

#include "forgetbench/errors.hpp"

namespace forgetbench {

std::string to_string(TensorRole role) {
  return role == TensorRole::kWeight ? "weight" : "bias";
}

std::size_t TensorSlot::size() const {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

ParamLayout::ParamLayout(std::vector<TensorSlot> slots)
    : slots_(std::move(slots)) {
  std::size_t offset = 0;
  for (auto& slot : slots_) {
    slot.offset = offset;
    offset += slot.size();
  }
  total_ = offset;
}

ParamLayout ParamLayout::dense_mlp(const std::vector<std::size_t>& layer_dims) {
  if (layer_dims.size() < 2) {
    throw ConfigError("dense_mlp layout needs at least two layer dims");
  }
  std::vector<TensorSlot> slots;
  slots.reserve(2 * (layer_dims.size() - 1));
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const std::size_t in = layer_dims[l];
    const std::size_t out = layer_dims[l + 1];
    slots.push_back({static_cast<int>(l), TensorRole::kWeight, {out, in}, 0});
    slots.push_back({static_cast<int>(l), TensorRole::kBias, {out}, 0});
  }
  return ParamLayout(std::move(slots));
}

ParamVector ParamVector::zeros(const ParamLayout& layout) {
  ParamVector v;
  v.layout = layout;
  v.values.assign(layout.total_size(), 0.0);
  return v;
}

void require_compatible(const ParamVector& a, const ParamVector& b,
                        const char* context) {
  if (!a.compatible_with(b)) {
    throw ShapeError(std::string(context) +
                     ": parameter vectors have incompatible layouts");
  }
}

void add_in_place(ParamVector& dst, const ParamVector& src) {
  require_compatible(dst, src, "add_in_place");
  for (std::size_t i = 0; i < dst.values.size(); ++i) {
    dst.values[i] += src.values[i];
  }
}

void scale_in_place(ParamVector& dst, double factor) {
  for (double& v : dst.values) v *= factor;
}

double l2_norm(const ParamVector& v) {
  double sum = 0.0;
  for (double x : v.values) sum += x * x;
  return std::sqrt(sum);
}

double l2_distance(const ParamVector& a, const ParamVector& b) {
  require_compatible(a, b, "l2_distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace forgetbench
