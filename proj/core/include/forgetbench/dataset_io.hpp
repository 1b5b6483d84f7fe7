#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "forgetbench/drift.hpp"

namespace forgetbench {

/// Columnar text dataset format, version 1:
///
///   forgetbench-dataset v1
///   dim D months M train NT val NV test NE drift_sigma S label_noise L seed X
///   <feature_0> ... <feature_{D-1}> <label> <month> <split>
///
/// One example per line, features printed with %.17g so doubles round-trip
/// exactly. Example order is month-major, train/val/test within a month.
void export_dataset(const std::filesystem::path& path,
                    const DriftConfig& config,
                    const std::vector<MonthTask>& months);

/// Inverse of export_dataset. Concept vectors are generator-internal and not
/// stored, so imported months carry an empty concept_dir.
std::pair<DriftConfig, std::vector<MonthTask>> import_dataset(
    const std::filesystem::path& path);

}  // namespace forgetbench
