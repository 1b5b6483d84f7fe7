#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "forgetbench/anchor.hpp"
#include "forgetbench/mlp.hpp"

namespace forgetbench {

/// Model snapshot, text format version 1:
///
///   forgetbench-model v1
///   layer_dims <d0> <d1> ... <dk>
///   optimizer <name>
///   params <count>
///   <one %.17g value per line, in layout order>
///
/// %.17g guarantees exact 64-bit round-trips; files are stable across runs.
void save_model(const std::filesystem::path& path, const MlpModel& model,
                const std::string& optimizer_name);

std::pair<MlpModel, std::string> load_model(const std::filesystem::path& path);

/// Anchor snapshot (theta_p plus optional Fisher diagonal), text format
/// version 1. The Fisher section header carries the estimator diagnostics
/// record: estimator name, sample_count and negative_fraction.
void save_anchor(const std::filesystem::path& path, const Anchor& anchor,
                 const std::vector<std::size_t>& layer_dims);

Anchor load_anchor(const std::filesystem::path& path);

}  // namespace forgetbench
