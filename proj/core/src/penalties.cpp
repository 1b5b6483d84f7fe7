#include "forgetbench/penalties.hpp"

#include "forgetbench/errors.hpp"

namespace forgetbench {

namespace {

void check_lambda(double lambda) {
  if (lambda < 0.0) {
    throw ConfigError("penalty strength lambda must be nonnegative");
  }
}

void check_fisher_for_training(const Anchor& anchor) {
  if (!anchor.fisher.has_value()) {
    throw ConfigError("ewc_penalty requires an anchor with a fisher diagonal");
  }
  for (double f : anchor.fisher->values.values) {
    if (f < 0.0) {
      throw EstimatorError(
          "ewc_penalty: negative fisher entries are rejected for training "
          "use (estimator " +
          to_string(anchor.fisher->estimator) + ")");
    }
  }
}

}  // namespace

PenaltyTerm l2_penalty(const ParamVector& theta_c, const Anchor& anchor,
                       double lambda) {
  check_lambda(lambda);
  require_compatible(theta_c, anchor.theta_p, "l2_penalty");

  PenaltyTerm term;
  term.gradient = ParamVector::zeros(theta_c.layout);
  double loss = 0.0;
  for (std::size_t i = 0; i < theta_c.values.size(); ++i) {
    const double d = theta_c.values[i] - anchor.theta_p.values[i];
    loss += lambda * d * d;
    term.gradient.values[i] = 2.0 * lambda * d;
  }
  term.loss = loss;
  return term;
}

PenaltyTerm ewc_penalty(const ParamVector& theta_c, const Anchor& anchor,
                        double lambda) {
  check_lambda(lambda);
  check_fisher_for_training(anchor);
  require_compatible(theta_c, anchor.theta_p, "ewc_penalty");
  require_compatible(theta_c, anchor.fisher->values, "ewc_penalty: fisher");

  PenaltyTerm term;
  term.gradient = ParamVector::zeros(theta_c.layout);
  double loss = 0.0;
  for (std::size_t i = 0; i < theta_c.values.size(); ++i) {
    const double f = anchor.fisher->values.values[i];
    const double d = theta_c.values[i] - anchor.theta_p.values[i];
    loss += 0.5 * lambda * f * d * d;
    term.gradient.values[i] = lambda * f * d;
  }
  term.loss = loss;
  return term;
}

L2Penalty::L2Penalty(Anchor anchor, double lambda)
    : anchor_(std::move(anchor)), lambda_(lambda) {
  check_lambda(lambda_);
}

PenaltyTerm L2Penalty::evaluate(const ParamVector& theta) const {
  return l2_penalty(theta, anchor_, lambda_);
}

EwcPenalty::EwcPenalty(Anchor anchor, double lambda)
    : anchor_(std::move(anchor)), lambda_(lambda) {
  check_lambda(lambda_);
  check_fisher_for_training(anchor_);
}

PenaltyTerm EwcPenalty::evaluate(const ParamVector& theta) const {
  return ewc_penalty(theta, anchor_, lambda_);
}

}  // namespace forgetbench
