#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "forgetbench/drift.hpp"
#include "forgetbench/matrix.hpp"

namespace forgetbench {

/// Area under the ROC curve: the Mann-Whitney U statistic normalized by
/// (#pos * #neg), ties counted 1/2 via midranks. O(n log n). Input with a
/// single class is an UndefinedMetricError, never a silent skip.
double auc(std::span<const double> scores, std::span<const int> labels);

/// Per-month AUC row with the 5/4/3 group means. overall_avg is computed as
/// (5*base + 4*update + 3*future) / 12 so the weighted-group identity holds
/// exactly in floating point.
struct EvalReport {
  std::string strategy;
  std::string snapshot_id;
  std::vector<double> per_month_auc;
  double base_avg = 0.0;    // months 0-4
  double update_avg = 0.0;  // months 5-8
  double future_avg = 0.0;  // months 9-11
  double overall_avg = 0.0;
};

/// Group means over a per-month AUC vector. The vector length must equal
/// boundaries[0] + boundaries[1] + boundaries[2] (ShapeError otherwise).
EvalReport summarize(const std::vector<double>& per_month_auc,
                     std::array<std::size_t, 3> boundaries = {5, 4, 3});

/// A named scoring function over feature matrices.
struct SnapshotPredictor {
  std::string label;
  std::function<std::vector<double>(const Matrix&)> predict;
};

/// Rectangular snapshot x month AUC grid over test splits.
struct AucMatrix {
  std::vector<std::string> snapshot_labels;
  std::size_t n_months = 0;
  std::vector<double> entries;  // row-major, snapshot-major

  double at(std::size_t snapshot, std::size_t month) const {
    return entries[snapshot * n_months + month];
  }
  std::vector<double> row(std::size_t snapshot) const {
    return {entries.begin() + snapshot * n_months,
            entries.begin() + (snapshot + 1) * n_months};
  }
};

/// AUC of every snapshot on every month's test split. Single-class failures
/// propagate with (snapshot, month) coordinates.
AucMatrix eval_matrix(const std::vector<SnapshotPredictor>& snapshots,
                      const std::vector<MonthTask>& months);

/// CSV with the fixed header
/// snapshot,month_0,...,month_11,base_avg,update_avg,future_avg,overall_avg
/// and 6-decimal fixed-point numbers.
void write_report_csv(std::ostream& out,
                      const std::vector<EvalReport>& reports);

std::string format_auc(double v);  // 6 decimal places

}  // namespace forgetbench
