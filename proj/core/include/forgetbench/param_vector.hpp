#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace forgetbench {

enum class TensorRole { kWeight, kBias };

std::string to_string(TensorRole role);

/// One named tensor inside the flat parameter vector.
struct TensorSlot {
  int layer = 0;
  TensorRole role = TensorRole::kWeight;
  std::vector<std::size_t> shape;  // {out, in} for weights, {out} for biases
  std::size_t offset = 0;          // start within the flat value array

  std::size_t size() const;

  bool operator==(const TensorSlot&) const = default;
};

/// Ordered list of tensor slots. Two parameter vectors are compatible iff
/// their layouts compare equal.
class ParamLayout {
 public:
  ParamLayout() = default;

  /// Builds from (layer, role, shape) records; offsets are assigned here.
  explicit ParamLayout(std::vector<TensorSlot> slots);

  /// Layout of a dense MLP: per layer a (out x in) weight block followed by
  /// an (out) bias block.
  static ParamLayout dense_mlp(const std::vector<std::size_t>& layer_dims);

  const std::vector<TensorSlot>& slots() const { return slots_; }
  std::size_t total_size() const { return total_; }
  bool empty() const { return slots_.empty(); }

  bool operator==(const ParamLayout&) const = default;

 private:
  std::vector<TensorSlot> slots_;
  std::size_t total_ = 0;
};

/// Flat parameter vector plus its layout. The common currency of models,
/// gradients, penalties and Fisher diagonals.
struct ParamVector {
  ParamLayout layout;
  std::vector<double> values;

  static ParamVector zeros(const ParamLayout& layout);

  std::size_t size() const { return values.size(); }

  bool compatible_with(const ParamVector& other) const {
    return layout == other.layout;
  }

  std::span<double> slot_span(const TensorSlot& slot) {
    return {values.data() + slot.offset, slot.size()};
  }
  std::span<const double> slot_span(const TensorSlot& slot) const {
    return {values.data() + slot.offset, slot.size()};
  }
};

/// Throws ShapeError unless a and b share a layout.
void require_compatible(const ParamVector& a, const ParamVector& b,
                        const char* context);

void add_in_place(ParamVector& dst, const ParamVector& src);
void scale_in_place(ParamVector& dst, double factor);

double l2_norm(const ParamVector& v);
double l2_distance(const ParamVector& a, const ParamVector& b);

/// True iff every entry is finite.
bool all_finite(std::span<const double> values);

}  // namespace forgetbench
