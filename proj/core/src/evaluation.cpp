#include "forgetbench/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "forgetbench/errors.hpp"

namespace forgetbench {

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ShapeError("auc: " + std::to_string(scores.size()) + " scores vs " +
                     std::to_string(labels.size()) + " labels");
  }
  std::size_t n_pos = 0;
  for (int y : labels) n_pos += y == 1 ? 1 : 0;
  const std::size_t n = scores.size();
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw UndefinedMetricError(
        "auc undefined: input contains a single class (" +
        std::to_string(n_pos) + " positives of " + std::to_string(n) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Doubled midranks stay integral, so the final division is the only
  // rounding step and matches the pairwise-enumeration oracle bit for bit.
  double pos_rank2_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double rank2 = static_cast<double>(i + j + 1);  // 2 * midrank
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) pos_rank2_sum += rank2;
    }
    i = j;
  }
  const double u2 =
      pos_rank2_sum - static_cast<double>(n_pos) * (n_pos + 1);
  return u2 / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

EvalReport summarize(const std::vector<double>& per_month_auc,
                     std::array<std::size_t, 3> boundaries) {
  const std::size_t expected = boundaries[0] + boundaries[1] + boundaries[2];
  if (per_month_auc.size() != expected) {
    throw ShapeError("summarize: expected " + std::to_string(expected) +
                     " per-month entries, got " +
                     std::to_string(per_month_auc.size()));
  }
  auto mean_range = [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += per_month_auc[i];
    return sum / static_cast<double>(hi - lo);
  };
  EvalReport report;
  report.per_month_auc = per_month_auc;
  const std::size_t b0 = boundaries[0];
  const std::size_t b1 = b0 + boundaries[1];
  report.base_avg = mean_range(0, b0);
  report.update_avg = mean_range(b0, b1);
  report.future_avg = mean_range(b1, expected);
  report.overall_avg = (static_cast<double>(boundaries[0]) * report.base_avg +
                        static_cast<double>(boundaries[1]) * report.update_avg +
                        static_cast<double>(boundaries[2]) * report.future_avg) /
                       static_cast<double>(expected);
  return report;
}

AucMatrix eval_matrix(const std::vector<SnapshotPredictor>& snapshots,
                      const std::vector<MonthTask>& months) {
  AucMatrix matrix;
  matrix.n_months = months.size();
  matrix.entries.reserve(snapshots.size() * months.size());
  for (const SnapshotPredictor& snapshot : snapshots) {
    matrix.snapshot_labels.push_back(snapshot.label);
    for (const MonthTask& month : months) {
      try {
        const std::vector<double> scores = snapshot.predict(month.test.features);
        matrix.entries.push_back(auc(scores, month.test.labels));
      } catch (const UndefinedMetricError& e) {
        throw UndefinedMetricError(
            "snapshot '" + snapshot.label + "', month " +
            std::to_string(month.month_index) + ": " + e.what());
      }
    }
  }
  return matrix;
}

std::string format_auc(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_report_csv(std::ostream& out,
                      const std::vector<EvalReport>& reports) {
  out << "snapshot";
  const std::size_t n_months =
      reports.empty() ? 12 : reports.front().per_month_auc.size();
  for (std::size_t m = 0; m < n_months; ++m) out << ",month_" << m;
  out << ",base_avg,update_avg,future_avg,overall_avg\n";
  for (const EvalReport& report : reports) {
    out << report.snapshot_id;
    for (double v : report.per_month_auc) out << ',' << format_auc(v);
    out << ',' << format_auc(report.base_avg) << ','
        << format_auc(report.update_avg) << ','
        << format_auc(report.future_avg) << ','
        << format_auc(report.overall_avg) << '\n';
  }
}

}  // namespace forgetbench
