#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "forgetbench/rng.hpp"

namespace forgetbench {

/// Dense row-major matrix of doubles. Feature blocks are small enough at
/// desk scale that value semantics are fine everywhere.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows * cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
  std::span<double> row(std::size_t r) {
    return {data.data() + r * cols, cols};
  }
};

/// Labeled examples. Labels are 0/1.
struct Batch {
  Matrix features;
  std::vector<int> labels;

  std::size_t size() const { return features.rows; }
  std::size_t dim() const { return features.cols; }

  /// Throws ShapeError if the row and label counts disagree.
  void check_consistent() const;

  /// Appends all examples of `other`; dims must match (ShapeError).
  void append(const Batch& other);

  /// New batch holding the rows at `indices`, in order.
  Batch select(std::span<const std::size_t> indices) const;

  /// Rows [lo, hi) as a new batch.
  Batch slice(std::size_t lo, std::size_t hi) const;

  /// In-place deterministic row permutation driven by `rng`.
  void shuffle(Rng& rng);
};

}  // namespace forgetbench
