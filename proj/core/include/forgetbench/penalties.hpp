#pragma once

#include "forgetbench/anchor.hpp"
#include "forgetbench/penalty.hpp"

namespace forgetbench {

/// L2 anchor penalty: loss = lambda * sum_i (theta_c_i - theta_p_i)^2,
/// gradient_i = 2 * lambda * (theta_c_i - theta_p_i).
PenaltyTerm l2_penalty(const ParamVector& theta_c, const Anchor& anchor,
                       double lambda);

/// EWC penalty: loss = sum_i (lambda / 2) * F_i * (theta_c_i - theta_p_i)^2,
/// gradient_i = lambda * F_i * (theta_c_i - theta_p_i).
/// Requires anchor.fisher (ConfigError otherwise). Negative Fisher entries
/// are rejected for training use (EstimatorError): they would push
/// parameters away from the anchor without bound.
PenaltyTerm ewc_penalty(const ParamVector& theta_c, const Anchor& anchor,
                        double lambda);

class L2Penalty final : public Penalty {
 public:
  L2Penalty(Anchor anchor, double lambda);
  PenaltyTerm evaluate(const ParamVector& theta) const override;

 private:
  Anchor anchor_;
  double lambda_;
};

class EwcPenalty final : public Penalty {
 public:
  /// Validates fisher presence and nonnegativity up front.
  EwcPenalty(Anchor anchor, double lambda);
  PenaltyTerm evaluate(const ParamVector& theta) const override;

 private:
  Anchor anchor_;
  double lambda_;
};

}  // namespace forgetbench
