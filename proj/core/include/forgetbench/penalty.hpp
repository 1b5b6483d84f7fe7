#pragma once

#include "forgetbench/param_vector.hpp"

namespace forgetbench {

/// Additive parameter penalty: loss contribution plus its gradient at theta.
struct PenaltyTerm {
  double loss = 0.0;
  ParamVector gradient;
};

/// Contract for anchor penalties plugged into training. The gradient must be
/// layout-compatible with the evaluated parameters.
class Penalty {
 public:
  virtual ~Penalty() = default;
  virtual PenaltyTerm evaluate(const ParamVector& theta) const = 0;
};

/// The no-op penalty: (0, zero vector).
class ZeroPenalty final : public Penalty {
 public:
  PenaltyTerm evaluate(const ParamVector& theta) const override {
    return {0.0, ParamVector::zeros(theta.layout)};
  }
};

}  // namespace forgetbench
