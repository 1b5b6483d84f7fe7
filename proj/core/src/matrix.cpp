#include "forgetbench/matrix.hpp"

#include <numeric>

#include "forgetbench/errors.hpp"

namespace forgetbench {

void Batch::check_consistent() const {
  if (features.rows != labels.size()) {
    throw ShapeError("batch has " + std::to_string(features.rows) +
                     " feature rows but " + std::to_string(labels.size()) +
                     " labels");
  }
}

void Batch::append(const Batch& other) {
  other.check_consistent();
  if (size() == 0 && features.cols == 0) {
    *this = other;
    return;
  }
  if (other.dim() != dim()) {
    throw ShapeError("cannot append batch of dim " +
                     std::to_string(other.dim()) + " to batch of dim " +
                     std::to_string(dim()));
  }
  features.data.insert(features.data.end(), other.features.data.begin(),
                       other.features.data.end());
  features.rows += other.features.rows;
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

Batch Batch::select(std::span<const std::size_t> indices) const {
  Batch out;
  out.features = Matrix(indices.size(), dim());
  out.labels.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = features.row(indices[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(labels[indices[i]]);
  }
  return out;
}

Batch Batch::slice(std::size_t lo, std::size_t hi) const {
  Batch out;
  out.features = Matrix(hi - lo, dim());
  std::copy(features.data.begin() + lo * dim(),
            features.data.begin() + hi * dim(), out.features.data.begin());
  out.labels.assign(labels.begin() + lo, labels.begin() + hi);
  return out;
}

void Batch::shuffle(Rng& rng) {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  *this = select(order);
}

}  // namespace forgetbench
